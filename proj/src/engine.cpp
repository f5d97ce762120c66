#include "weylbound/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace weylbound {

namespace {

// Slack for the double-precision prefilter. Exponents are at most ~210 and
// double evaluation of the candidates is accurate to ~1e-13, so anything the
// filter drops is genuinely worse than the stored value.
constexpr double kPrefilterSlack = 1e-9;

Rational frac(long a, long b) { return make_rational(a, b); }

double theta_approx(int k, double delta) {
    double best = 1.0 / k;
    for (int j = 2; j <= k; ++j) {
        double phi = 1.0 / k;
        for (int J = j; J >= 2; --J) {
            double star = 1.0 / (2 * k) +
                          (0.5 + (0.5 * (J - 1) * (J - 2) - delta) / (2.0 * k * (k - J + 1))) * phi;
            phi = std::min(1.0 / k, star);
        }
        best = std::min(best, phi);
    }
    return best;
}

double differencing_approx(int k, double delta) {
    double th = theta_approx(k, delta);
    return delta * (1 - th) + (k - 1) * (k * th - 1);
}

double quasi_diagonal_approx(int k, double half, int s, int u, int t, int r, double ds, double du) {
    double cross = 2.0 * (s * du - u * ds);
    double den = static_cast<double>(u) * r * t + cross;
    if (den <= 0) return HUGE_VAL;
    double th = std::max(cross / den, 1.0 / r);
    if (!(th > 0 && th <= 1)) return HUGE_VAL;
    return ds * (1 - th) + (s + 0.5 * (r + t - k - 1) * (r + t - k)) * th + half - (s + t);
}

int half_floor(int k) { return k / 2; }

}  // namespace

ExponentTable init_table(int k, int s_max) {
    if (k < 2) throw std::domain_error("degree k must be at least 2");
    if (s_max < k + 2) throw std::domain_error("s_max must be at least k+2");
    const int half = k * (k + 1) / 2;
    std::vector<ExponentEntry> entries;
    entries.reserve(static_cast<std::size_t>(s_max));
    for (int s = 1; s <= s_max; ++s) {
        if (s <= k + 1)
            entries.push_back({s, Rational(half - s), Source::HuaInit, 0});
        else
            entries.push_back({s, Rational(half - (k + 1)), Source::TrivialInit, 0});
    }
    return ExponentTable(k, std::move(entries));
}

std::vector<Rational> phi_chain(int k, int j, const Rational& delta_known) {
    if (k < 2) throw std::domain_error("degree k must be at least 2");
    if (j < 1 || j > k) throw std::domain_error("j must lie in [1, k]");
    const Rational cap = frac(1, k);
    const Rational base = frac(1, 2 * k);
    std::vector<Rational> chain;
    chain.reserve(static_cast<std::size_t>(j));
    Rational phi = cap;
    chain.push_back(phi);
    for (int J = j; J >= 2; --J) {
        Rational coeff = Rational(1, 2) + (Rational((J - 1) * (J - 2) / 2) - delta_known) /
                                              Rational(2 * k * (k - J + 1));
        Rational star = base + coeff * phi;
        phi = rational_min(cap, star);
        chain.push_back(phi);
    }
    return chain;
}

ThetaResult phi_theta(int k, const Rational& delta_known) {
    ThetaResult best{frac(1, k), 1};
    for (int j = 2; j <= k; ++j) {
        Rational phi1 = phi_chain(k, j, delta_known).back();
        if (phi1 < best.theta) best = {phi1, j};
    }
    return best;
}

Rational differencing_candidate(int k, const Rational& delta) {
    Rational theta = phi_theta(k, delta).theta;
    return delta * (1 - theta) + (k - 1) * (k * theta - 1);
}

Rational differencing_step(const ExponentTable& table, int s) {
    const int k = table.k();
    if (s < 1 || s + k - 1 > table.s_max())
        throw std::out_of_range("differencing target s+k-1 outside the table");
    return differencing_candidate(k, table.delta(s));
}

Rational holder_interpolate(const ExponentTable& table, int s, int t) {
    const int k = table.k();
    if (t < 1 || t > k - 1) throw std::domain_error("interpolation offset t must lie in [1, k-1]");
    if (s < 1 || s + k - 1 > table.s_max())
        throw std::out_of_range("interpolation endpoint s+k-1 outside the table");
    return ((k - 1 - t) * table.delta(s) + t * table.delta(s + k - 1)) / Rational(k - 1);
}

bool quasi_diagonal_admissible(int k, int t, int r) {
    const int l = half_floor(k);
    return r >= 1 && t >= 3 && t <= k && t < 2 * l && t >= std::max(1, k - r);
}

int quasi_diagonal_u(int k, int s, int t) {
    const int two_l = 2 * half_floor(k);
    if (t >= two_l) throw std::domain_error("quasi-diagonal needs t < 2 floor(k/2)");
    // s (1 - t/(2l))^-1 = 2ls / (2l - t)
    return static_cast<int>((static_cast<long long>(two_l) * s) / (two_l - t)) + 1;
}

std::optional<Rational> quasi_diagonal(const ExponentTable& table, int s, int t, int r) {
    const int k = table.k();
    if (!quasi_diagonal_admissible(k, t, r))
        throw std::domain_error("inadmissible quasi-diagonal parameters t=" + std::to_string(t) +
                                ", r=" + std::to_string(r) + " for k=" + std::to_string(k));
    if (s < 1 || s > table.s_max()) throw std::out_of_range("quasi-diagonal source outside the table");
    const int u = quasi_diagonal_u(k, s, t);
    if (u > table.s_max()) return std::nullopt;
    const Rational half = table.half_k_k1();
    const Rational ds = s - half + table.delta(s);
    const Rational du = u - half + table.delta(u);
    const Rational cross = 2 * (s * du - u * ds);
    const Rational den = Rational(static_cast<long>(u) * r * t) + cross;
    if (den <= 0) return std::nullopt;
    const Rational theta = rational_max(cross / den, frac(1, r));
    if (theta <= 0 || theta > 1) return std::nullopt;
    const Rational quad((r + t - k - 1) * (r + t - k) / 2);
    return ds * (1 - theta) + (s + quad) * theta + half - (s + t);
}

bool refine_pass(ExponentTable& table, const EngineConfig& config) {
    const int k = table.k();
    const int s_max = table.s_max();
    const int pass = table.passes() + 1;
    const Rational half = table.half_k_k1();
    const double half_d = k * (k + 1) / 2.0;
    bool changed = false;

    std::vector<double> approx(static_cast<std::size_t>(s_max) + 1, 0.0);
    for (int s = 1; s <= s_max; ++s) approx[static_cast<std::size_t>(s)] = to_double(table.delta(s));

    auto plausible = [&](int target, double candidate) {
        return candidate <= approx[static_cast<std::size_t>(target)] + kPrefilterSlack;
    };
    auto offer = [&](int target, const Rational& candidate, Source source) {
        // J_{s,k}(P) >= P^s forces Delta_{s,k} >= k(k+1)/2 - s.
        if (candidate < half - target)
            throw std::logic_error("candidate below the diagonal floor at s=" + std::to_string(target));
        if (target <= k + 1) return;
        ExponentEntry& e = table.entry(target);
        if (candidate < e.delta) {
            e.delta = candidate;
            e.source = source;
            e.pass = pass;
            approx[static_cast<std::size_t>(target)] = to_double(candidate);
            changed = true;
        }
    };
    auto store_rounded = [&](int target, Rational candidate, Source source) {
        if (candidate < 0) candidate = 0;
        offer(target, round_up_to_grid(candidate, config.grid_bits), source);
    };

    const int l = half_floor(k);
    const int r_max = config.effective_r_max(k);
    const int t_hi = std::min(k, 2 * l - 1);

    for (int s = 1; s <= s_max; ++s) {
        const int target = s + k - 1;
        if (target <= s_max) {
            if (target > k + 1 && plausible(target, differencing_approx(k, approx[static_cast<std::size_t>(s)])))
                store_rounded(target, differencing_step(table, s), Source::Theorem31);
            for (int t = 1; t <= k - 2; ++t) {
                const int at = s + t;
                if (at <= k + 1) continue;
                double h = ((k - 1 - t) * approx[static_cast<std::size_t>(s)] +
                            t * approx[static_cast<std::size_t>(target)]) / (k - 1);
                if (plausible(at, h)) store_rounded(at, holder_interpolate(table, s, t), Source::HolderInterp);
            }
        }
        if (!config.quasi_diagonal) continue;
        for (int t = 3; t <= t_hi; ++t) {
            const int at = s + t;
            if (at > s_max || at <= k + 1) continue;
            const int u = quasi_diagonal_u(k, s, t);
            if (u > s_max) continue;
            const double ds = s - half_d + approx[static_cast<std::size_t>(s)];
            const double du = u - half_d + approx[static_cast<std::size_t>(u)];
            for (int r = std::max(1, k - t); r <= r_max; ++r) {
                double c = quasi_diagonal_approx(k, half_d, s, u, t, r, ds, du);
                if (!plausible(at, std::max(0.0, c))) continue;
                if (auto exact = quasi_diagonal(table, s, t, r))
                    store_rounded(at, *exact, Source::QuasiDiagonal);
            }
        }
    }

    for (int s = 2; s <= s_max; ++s) {
        ExponentEntry& e = table.entry(s);
        const ExponentEntry& prev = table.entry(s - 1);
        if (prev.delta < e.delta) {
            e.delta = prev.delta;
            e.source = Source::Monotonize;
            e.pass = pass;
            changed = true;
        }
    }

    table.set_passes(pass);
    return changed;
}

ExponentTable converge(int k, int s_max, const EngineConfig& config) {
    if (config.max_passes < 1) throw std::domain_error("max_passes must be positive");
    ExponentTable table = init_table(k, s_max);
    for (int p = 0; p < config.max_passes; ++p) {
        if (!refine_pass(table, config)) {
            table.set_converged(true);
            return table;
        }
    }
    table.set_converged(false);
    return table;
}

std::vector<std::string> check_table_invariants(const ExponentTable& table) {
    std::vector<std::string> issues;
    const int k = table.k();
    const Rational half = table.half_k_k1();
    for (int s = 1; s <= table.s_max(); ++s) {
        const Rational& d = table.delta(s);
        const std::string at = "s=" + std::to_string(s) + ": ";
        if (d.get_den() <= 0) issues.push_back(at + "non-positive denominator");
        if (d < 0) issues.push_back(at + "negative exponent " + to_string(d));
        if (d > half) issues.push_back(at + "exponent above k(k+1)/2");
        if (s <= k + 1 && d != half - s) issues.push_back(at + "Hua row altered to " + to_string(d));
        if (s > 1 && table.delta(s - 1) < d) issues.push_back(at + "exponent increases in s");
    }
    return issues;
}

std::vector<std::string> check_holder_consistency(const ExponentTable& table,
                                                  std::optional<unsigned> grid_bits) {
    std::vector<std::string> issues;
    const int k = table.k();
    for (int s = 1; s + k - 1 <= table.s_max(); ++s)
        for (int t = 1; t <= k - 2; ++t) {
            Rational h = holder_interpolate(table, s, t);
            if (grid_bits) h = round_up_to_grid(h, *grid_bits);
            if (table.delta(s + t) > h)
                issues.push_back("s=" + std::to_string(s) + ", t=" + std::to_string(t) +
                                 ": entry exceeds Hölder interpolant");
        }
    return issues;
}

}  // namespace weylbound
