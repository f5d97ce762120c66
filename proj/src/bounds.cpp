#include "weylbound/bounds.hpp"

#include "weylbound/reference_values.hpp"

#include <stdexcept>
#include <string>

namespace weylbound {

namespace {

void require_lower_degree(const ExponentTable& table_km1, int k) {
    if (table_km1.k() != k - 1)
        throw std::invalid_argument("sigma(" + std::to_string(k) + ") needs the degree-" +
                                    std::to_string(k - 1) + " table, got degree " +
                                    std::to_string(table_km1.k()));
}

}  // namespace

Rational sigma_candidate(const ExponentTable& table_km1, int s) {
    return (3 - table_km1.delta(s)) / Rational(6 * s + 2);
}

SigmaResult sigma_of_k(const ExponentTable& table_km1, int k) {
    if (k < 4) throw std::domain_error("the minor-arc exponent requires k >= 4");
    require_lower_degree(table_km1, k);
    if (table_km1.s_max() < k) throw std::domain_error("degree-(k-1) table must reach s = k");

    SigmaResult out;
    out.k = k;
    out.argmax_s = k;
    out.sigma = sigma_candidate(table_km1, k);
    out.sigma_classical = 0;
    for (int s = k; s <= table_km1.s_max(); ++s) {
        Rational c = sigma_candidate(table_km1, s);
        if (c > out.sigma) {
            out.sigma = c;
            out.argmax_s = s;
        }
        Rational classical = (1 - table_km1.delta(s)) / Rational(2 * s);
        if (classical > out.sigma_classical) out.sigma_classical = classical;
    }
    if (out.sigma <= 0) throw std::domain_error("table yields no positive minor-arc exponent");
    out.rho = 1 / out.sigma;
    out.delta_choice = delta_sk(out.argmax_s, k, table_km1);
    out.sigma_weyl = 1 / reference::weyl_rho(k);
    if (k >= 6) out.tau_hb = 1 / reference::heath_brown_rho(k);
    out.maximizer_interior = out.argmax_s < table_km1.s_max();
    return out;
}

Rational delta_sk(int s, int k, const ExponentTable& table_km1) {
    require_lower_degree(table_km1, k);
    if (s < k) throw std::domain_error("delta(s,k) needs s >= k");
    return (3 - table_km1.delta(s)) / Rational(3 * s + 1);
}

Rational nu_sk(int s, int k, const Rational& del, const ExponentTable& table_km1) {
    require_lower_degree(table_km1, k);
    if (k < 4 || s < k) throw std::domain_error("nu(s,k) needs s >= k >= 4");
    if (del < 0 || del > 1) throw std::domain_error("nu(s,k) needs 0 <= del <= 1");
    return (3 - del - table_km1.delta(s)) / Rational(6 * s);
}

Integer gtilde_expression(const ExponentTable& table_k, int m, int s, const Rational& sigma) {
    Rational value = Rational(2 * s + m * (m - 1)) + table_k.delta(s) / (m * sigma);
    return ceil(value);
}

GtildeResult gtilde_bound(const ExponentTable& table_k, const Rational& sigma) {
    if (sigma <= 0) throw std::domain_error("G~ bound needs sigma > 0");
    GtildeResult best;
    best.k = table_k.k();
    best.sigma_used = sigma;
    bool have = false;
    for (int m = 1; m <= table_k.k(); ++m) {
        for (int s = 1; s <= table_k.s_max(); ++s) {
            Integer v = gtilde_expression(table_k, m, s, sigma);
            if (!have || v < best.bound) {
                best.bound = v;
                best.best_m = m;
                best.best_s = s;
                have = true;
            }
        }
    }
    return best;
}

GtildeResult gtilde_bound(const ExponentTable& table_k, const SigmaResult& sigma) {
    if (sigma.k != table_k.k()) throw std::invalid_argument("sigma and table disagree on k");
    return gtilde_bound(table_k, sigma.sigma);
}

std::string_view policy_name(MinorArcPolicy p) {
    return p == MinorArcPolicy::Theorem ? "theorem" : "best-known";
}

std::optional<MinorArcPolicy> parse_policy(std::string_view name) {
    if (name == "theorem") return MinorArcPolicy::Theorem;
    if (name == "best-known") return MinorArcPolicy::BestKnown;
    return std::nullopt;
}

MinorArcChoice select_minor_arc_exponent(const SigmaResult& sigma, MinorArcPolicy policy) {
    MinorArcChoice choice{sigma.sigma, "theorem"};
    if (policy == MinorArcPolicy::Theorem) return choice;
    if (sigma.sigma_weyl > choice.sigma) choice = {sigma.sigma_weyl, "weyl"};
    // Heath-Brown's bound holds on m_3 only; the G~(8) value it yields is the
    // one quoted in the literature, while for k >= 9 it would undercut them.
    if (sigma.tau_hb && sigma.k <= 8 && *sigma.tau_hb > choice.sigma) choice = {*sigma.tau_hb, "heath-brown"};
    return choice;
}

std::string render_rho(const Rational& rho) { return to_decimal(rho, 2, Rounding::Up); }

ComparisonReport comparison_report(int k, const SigmaResult& sigma) {
    if (k < 9 || k > 20) throw std::domain_error("comparison report covers 9 <= k <= 20");
    if (sigma.k != k) throw std::invalid_argument("sigma result is for a different degree");
    ComparisonReport r;
    r.k = k;
    r.rho = sigma.rho;
    r.rho_display = render_rho(sigma.rho);
    r.rho_weyl = reference::weyl_rho(k);
    r.rho_heath_brown = reference::heath_brown_rho(k);
    r.rho_parsell = reference::parsell_rho(k);
    r.rho_published = reference::published_rho(k);
    r.improves_on_weyl = r.rho < r.rho_weyl;
    if (r.rho_parsell) r.improves_on_parsell = r.rho < *r.rho_parsell;
    r.improves_on_heath_brown = r.rho < r.rho_heath_brown;
    return r;
}

}  // namespace weylbound
