#pragma once

#include "weylbound/exponent_table.hpp"
#include "weylbound/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace weylbound {

inline constexpr const char* kEngineVersion = "1";

struct EngineConfig {
    // Largest r tried by the quasi-diagonal estimate; 0 means 4k.
    int r_max = 0;
    // Stored candidates are rounded up to a multiple of 2^-grid_bits. Larger
    // exponents stay permissible; exact storage does not terminate.
    unsigned grid_bits = 64;
    bool quasi_diagonal = true;
    int max_passes = 100;

    int effective_r_max(int k) const { return r_max > 0 ? r_max : 4 * k; }
};

inline int default_s_max(int k) { return 6 * k * k; }

// Hua rows k(k+1)/2 - s for s <= k+1, the trivial value k(k+1)/2 - (k+1) above.
// Throws std::domain_error unless k >= 2 and s_max >= k+2.
ExponentTable init_table(int k, int s_max);

struct ThetaResult {
    Rational theta;
    int j_min = 0;
};

// phi(j, J) for J = j, j-1, ..., 1 from the efficient-differencing recursion,
// seeded with phi(j, j) = 1/k. Element i holds phi(j, j - i).
std::vector<Rational> phi_chain(int k, int j, const Rational& delta_known);

// theta = min_j phi(j, 1) with the least minimizing j.
ThetaResult phi_theta(int k, const Rational& delta_known);

// Delta*(1 - theta) + (k-1)(k theta - 1) with theta = phi_theta(k, delta).
Rational differencing_candidate(int k, const Rational& delta);

// Candidate for Delta_{s+k-1,k} from the stored Delta_{s,k}; exact, not clamped.
Rational differencing_step(const ExponentTable& table, int s);

// ((k-1-t) Delta_s + t Delta_{s+k-1}) / (k-1), exact.
Rational holder_interpolate(const ExponentTable& table, int s, int t);

// u = floor(s (1 - t/(2l))^-1 + 1) with l = floor(k/2).
int quasi_diagonal_u(int k, int s, int t);

// Quasi-diagonal exponent for Delta_{s+t,k}; nullopt when u > s_max, the
// theta* denominator is non-positive, or theta falls outside (0, 1].
// Throws std::domain_error when (t, r) is not admissible for k.
std::optional<Rational> quasi_diagonal(const ExponentTable& table, int s, int t, int r);

bool quasi_diagonal_admissible(int k, int t, int r);

// One sweep: the differencing step from every source, Hölder interpolation
// between each source and its target s+k-1, quasi-diagonal candidates, then a
// monotonizing pass in s. Returns true iff some entry strictly decreased.
bool refine_pass(ExponentTable& table, const EngineConfig& config = {});

// Repeats refine_pass until a pass changes nothing or max_passes is hit.
ExponentTable converge(int k, int s_max, const EngineConfig& config = {});
inline ExponentTable converge(int k, const EngineConfig& config = {}) {
    return converge(k, default_s_max(k), config);
}

// Structural invariants (Hua rows, bounds, monotonicity in s).
// Returns one message per violation.
std::vector<std::string> check_table_invariants(const ExponentTable& table);

// Every stored entry is at most each Hölder interpolant that covers it. With
// grid_bits set, the interpolant is first rounded up the way refine_pass
// stores it, which is the closure property a converged table satisfies.
std::vector<std::string> check_holder_consistency(const ExponentTable& table,
                                                  std::optional<unsigned> grid_bits = std::nullopt);

}  // namespace weylbound
