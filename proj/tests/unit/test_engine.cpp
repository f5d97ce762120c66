#include "straight_line.hpp"
#include "tables.hpp"

#include <weylbound/engine.hpp>

#include <doctest.h>

#include <random>

using namespace weylbound;

TEST_CASE("initialization") {
    const ExponentTable t = init_table(10, 600);
    CHECK(t.s_max() == 600);
    CHECK(t.delta(11) == 44);
    CHECK(t.entry(11).source == Source::HuaInit);
    CHECK(t.delta(100) == 44);
    CHECK(t.entry(100).source == Source::TrivialInit);
    CHECK(t.delta(1) == 54);
    CHECK(init_table(2, 10).delta(1) == 2);
    CHECK_THROWS_AS(init_table(1, 10), std::domain_error);
    CHECK_THROWS_AS(init_table(2, 3), std::domain_error);
    CHECK_NOTHROW(init_table(2, 4));
    CHECK_THROWS_AS(t.entry(0), std::out_of_range);
    CHECK_THROWS_AS(t.entry(601), std::out_of_range);
}

TEST_CASE("theta for small degrees") {
    ThetaResult r = phi_theta(3, 2);
    CHECK(r.theta == make_rational(7, 27));
    CHECK(r.j_min == 3);

    r = phi_theta(2, 3);
    CHECK(r.theta == make_rational(1, 8));
    CHECK(r.j_min == 2);

    // The j = 1 chain is just phi(1,1) = 1/k.
    for (int D : {0, 2, 5}) CHECK(phi_chain(3, 1, D).back() == make_rational(1, 3));
    CHECK(phi_theta(3, 40).theta <= make_rational(1, 3));
}

TEST_CASE("theta agrees with the straight-line transcription") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const int k = 2 + static_cast<int>(rng() % 19);
        const int K = k * (k + 1) / 2;
        const Rational D = make_rational(static_cast<std::int64_t>(rng() % (64 * K + 1)), 64);
        const ThetaResult mine = phi_theta(k, D);
        const auto ref = straight_line::theta(k, D);
        REQUIRE(mine.theta == ref.theta);
        REQUIRE(mine.j_min == ref.j);
        REQUIRE(differencing_candidate(k, D) == straight_line::step(k, D));
    }
}

TEST_CASE("differencing step") {
    std::vector<ExponentEntry> rows;
    for (int s = 1; s <= 6; ++s) rows.push_back({s, Rational(6 - s), s <= 4 ? Source::HuaInit : Source::TrivialInit, 0});
    rows[3].delta = 2;  // s = 4
    rows[4].delta = 2;
    rows[5].delta = 2;
    const ExponentTable t(3, rows);
    CHECK(differencing_step(t, 4) == make_rational(28, 27));
    CHECK(differencing_candidate(3, 2) == make_rational(28, 27));
    CHECK_THROWS_AS(differencing_step(t, 7), std::out_of_range);

    for (int k = 2; k <= 12; ++k) CHECK(differencing_candidate(k, 0) == 0);
}

TEST_CASE("differencing step from the initialized degree-10 table") {
    const ExponentTable t = init_table(10, 600);
    const Rational expected = parse_rational("2157887077736267/56700000000000");
    CHECK(phi_theta(10, 44).theta == parse_rational("7538568597229/113400000000000"));
    CHECK(phi_theta(10, 44).j_min == 10);
    CHECK(differencing_step(t, 11) == expected);
    CHECK(expected == straight_line::step(10, 44));
    CHECK(expected < t.delta(20));
}

TEST_CASE("hoelder interpolation") {
    std::vector<ExponentEntry> rows;
    for (int s = 1; s <= 6; ++s) rows.push_back({s, Rational(6 - s), Source::HuaInit, 0});
    rows[3].delta = 2;
    rows[5].delta = make_rational(28, 27);
    rows[4].delta = make_rational(28, 27);
    const ExponentTable t(3, rows);
    CHECK(holder_interpolate(t, 4, 1) == make_rational(41, 27));
    CHECK_THROWS_AS(holder_interpolate(t, 4, 0), std::domain_error);
    CHECK(holder_interpolate(t, 4, 2) == make_rational(28, 27));

    const ExponentTable flat = init_table(10, 100);
    for (int t9 = 1; t9 <= 9; ++t9) CHECK(holder_interpolate(flat, 30, t9) == 44);
    const ExponentTable& c = tables::converged(10);
    CHECK(holder_interpolate(c, 40, 9) == c.delta(49));
}

TEST_CASE("quasi-diagonal admissibility and u") {
    CHECK(quasi_diagonal_admissible(10, 3, 8));
    CHECK_FALSE(quasi_diagonal_admissible(10, 2, 8));
    CHECK_FALSE(quasi_diagonal_admissible(10, 3, 6));  // t < k - r
    CHECK(quasi_diagonal_admissible(10, 9, 1));
    CHECK_FALSE(quasi_diagonal_admissible(10, 10, 1));  // t < 2l
    CHECK_FALSE(quasi_diagonal_admissible(9, 8, 5));   // 2l = 8
    CHECK(quasi_diagonal_u(10, 60, 3) == 86);
    CHECK(quasi_diagonal_u(10, 7, 5) == 15);
    CHECK_THROWS_AS(quasi_diagonal(init_table(10, 100), 60, 2, 8), std::domain_error);
    CHECK(quasi_diagonal(init_table(10, 100), 60, 3, 8).has_value());
    CHECK_FALSE(quasi_diagonal(init_table(10, 70), 60, 3, 8).has_value());  // u = 86 > s_max
}

TEST_CASE("quasi-diagonal on the converged degree-10 table") {
    const ExponentTable& t = tables::converged(10);
    auto lookup = [&](int w) { return t.delta(w); };
    const auto mine = quasi_diagonal(t, 60, 3, 8);
    const auto ref = straight_line::quasi(10, 60, 3, 8, lookup);
    REQUIRE(mine.has_value());
    REQUIRE(ref.has_value());
    CHECK(*mine == *ref);
    CHECK(to_decimal(*mine, 9) == "27.229650593");

    for (int s = 11; s <= 400; s += 7)
        for (int tt = 3; tt <= 9; ++tt)
            for (int r = std::max(1, 10 - tt); r <= 40; r += 3) {
                if (!quasi_diagonal_admissible(10, tt, r)) continue;
                auto a = quasi_diagonal(t, s, tt, r);
                auto b = quasi_diagonal_u(10, s, tt) <= t.s_max() ? straight_line::quasi(10, s, tt, r, lookup)
                                                                   : std::optional<mpq_class>{};
                REQUIRE(a.has_value() == b.has_value());
                if (a) REQUIRE(*a == *b);
            }
}

TEST_CASE("quasi-diagonal collapses when both offsets vanish") {
    // delta_s = delta_u = 0 means Delta_w = K - w at s and u.
    const int k = 10, K = 55, s = 20, t = 3, r = 8;
    std::vector<ExponentEntry> rows;
    for (int w = 1; w <= 60; ++w) rows.push_back({w, Rational(std::max(0, K - w)), Source::HuaInit, 0});
    const ExponentTable synth(k, rows);
    const auto got = quasi_diagonal(synth, s, t, r);
    REQUIRE(got.has_value());
    const Rational expected = (s + make_rational((r + t - k - 1) * (r + t - k), 2)) / Rational(r) + K - (s + t);
    CHECK(*got == expected);
}

TEST_CASE("refinement passes") {
    ExponentTable t = init_table(10, 600);
    CHECK(refine_pass(t));
    CHECK(t.passes() == 1);

    ExponentTable c = tables::converged(10);
    ExponentTable before = c;
    CHECK_FALSE(refine_pass(c));
    for (int s = 1; s <= c.s_max(); ++s) CHECK(c.delta(s) == before.delta(s));
}

TEST_CASE("convergence pins") {
    const ExponentTable& nine = tables::converged(9);
    CHECK(nine.s_max() == 486);
    CHECK(nine.converged());
    CHECK(nine.passes() == 2);
    CHECK(tables::converged(8).passes() == 2);
    CHECK(tables::converged(10).passes() == 3);

    const ExponentTable two = converge(2, 10);
    CHECK(two.converged());
    for (const auto& e : two.entries()) {
        CHECK(e.delta >= 0);
        CHECK(e.delta <= 3);
    }
    CHECK(two.delta(1) == 2);
    CHECK(two.delta(3) == 0);
}

TEST_CASE("table invariants on converged tables") {
    for (int k : {3, 4, 5, 6, 7, 8, 9, 10}) {
        CAPTURE(k);
        const ExponentTable& t = tables::converged(k);
        CHECK(t.converged());
        CHECK(check_table_invariants(t).empty());
        CHECK(check_holder_consistency(t, 64).empty());
        const int K = k * (k + 1) / 2;
        for (int s = 1; s <= k + 1; ++s) CHECK(t.delta(s) == K - s);
        for (const auto& e : t.entries()) {
            CHECK(e.delta >= 0);
            CHECK(e.delta <= K);
            CHECK(e.pass <= t.passes());
            CHECK(e.delta >= std::max(0, K - e.s));
        }
        for (int s = 2; s <= t.s_max(); ++s) CHECK(t.delta(s) <= t.delta(s - 1));
    }
}

TEST_CASE("passes never increase an entry") {
    ExponentTable t = init_table(9, 486);
    for (int pass = 0; pass < 4; ++pass) {
        ExponentTable before = t;
        refine_pass(t);
        for (int s = 1; s <= t.s_max(); ++s) REQUIRE(t.delta(s) <= before.delta(s));
    }
}

TEST_CASE("invariant checker reports violations") {
    ExponentTable t = init_table(5, 40);
    std::vector<ExponentEntry> rows = t.entries();
    rows[20].delta = 100;
    CHECK_FALSE(check_table_invariants(ExponentTable(5, rows)).empty());
    rows = t.entries();
    rows[2].delta = 1;  // Hua row
    CHECK_FALSE(check_table_invariants(ExponentTable(5, rows)).empty());
}
