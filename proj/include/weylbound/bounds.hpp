#pragma once

#include "weylbound/exponent_table.hpp"
#include "weylbound/rational.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace weylbound {

// Minor-arc saving exponent for |f_k| on m_1 and its comparison exponents.
struct SigmaResult {
    int k = 0;
    Rational sigma;             // max_{s >= k} (3 - Delta_{s,k-1}) / (6s + 2)
    Rational rho;               // 1 / sigma
    int argmax_s = 0;
    Rational delta_choice;      // delta(s,k) at argmax_s, equal to 2 sigma
    Rational sigma_classical;   // max_{s >= k} (1 - Delta_{s,k-1}) / (2s), floored at 0
    Rational sigma_weyl;        // 2^{1-k}
    std::optional<Rational> tau_hb;  // 1 / (3 2^{k-3}) for k >= 6
    // False when the maximizer sits at the last searched s, i.e. the table
    // may be too short for the truncated search.
    bool maximizer_interior = true;
};

struct GtildeResult {
    int k = 0;
    Integer bound;
    int best_m = 0;
    int best_s = 0;
    Rational sigma_used;
};

// Minor-arc exponent sigma(k) from the degree-(k-1) table. Requires k >= 4,
// table.k() == k-1 and s_max >= k.
SigmaResult sigma_of_k(const ExponentTable& table_km1, int k);

// The objective (3 - Delta_{s,k-1}) / (6s + 2).
Rational sigma_candidate(const ExponentTable& table_km1, int s);

// delta(s,k) = (3 - Delta_{s,k-1}) / (3s + 1).
Rational delta_sk(int s, int k, const ExponentTable& table_km1);

// nu(s,k) = (3 - del - Delta_{s,k-1}) / (6s).
Rational nu_sk(int s, int k, const Rational& del, const ExponentTable& table_km1);

// ceil(2s + m(m-1) + Delta_{s,k} / (m sigma)) for one grid point.
Integer gtilde_expression(const ExponentTable& table_k, int m, int s, const Rational& sigma);

// Minimum of gtilde_expression over 1 <= m <= k, 1 <= s <= s_max; ties go to
// the least (m, s). Throws std::domain_error when sigma <= 0.
GtildeResult gtilde_bound(const ExponentTable& table_k, const Rational& sigma);
GtildeResult gtilde_bound(const ExponentTable& table_k, const SigmaResult& sigma);

// Which minor-arc exponent feeds the G~(k) bound.
enum class MinorArcPolicy {
    // sigma(k) from the mean-value route only.
    Theorem,
    // Best of the mean-value route and Weyl's 2^{1-k}; Heath-Brown's
    // 1/(3 2^{k-3}) is admitted for 6 <= k <= 8.
    BestKnown,
};

std::string_view policy_name(MinorArcPolicy p);
std::optional<MinorArcPolicy> parse_policy(std::string_view name);

struct MinorArcChoice {
    Rational sigma;
    std::string source;  // "theorem", "weyl" or "heath-brown"
};

MinorArcChoice select_minor_arc_exponent(const SigmaResult& sigma, MinorArcPolicy policy);

// Side-by-side comparison with the Weyl, Heath-Brown and Parsell exponents.
struct ComparisonReport {
    int k = 0;
    Rational rho;
    std::string rho_display;  // rounded up at 2 places
    Rational rho_weyl;        // 2^{k-1}
    Rational rho_heath_brown; // 3 2^{k-3}
    std::optional<Rational> rho_parsell;
    std::optional<Rational> rho_published;
    bool improves_on_weyl = false;
    std::optional<bool> improves_on_parsell;
    bool improves_on_heath_brown = false;
};

// Requires 9 <= k <= 20.
ComparisonReport comparison_report(int k, const SigmaResult& sigma);

// rho rendered for display: rounded up to two decimals.
std::string render_rho(const Rational& rho);

}  // namespace weylbound
