#pragma once

#include "weylbound/rational.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace weylbound::oracles {

// Size guards for brute-force enumeration. Exceeding one throws
// std::length_error unless accept_runtime is set.
struct Limits {
    std::uint64_t max_tuples = 100'000'000;    // P^s for the counting oracles
    std::int64_t max_weyl_length = 10'000'000; // P for the exponential sums
    bool accept_runtime = false;
};

// Sum_{x=1}^{P} e(alpha x^k). The double alpha is treated as the dyadic
// rational it represents, so alpha x^k is reduced mod 1 exactly before the
// exponential is taken.
std::complex<double> weyl_sum(int k, double alpha, std::int64_t P, const Limits& limits = {});

// Sum_{x=1}^{P} e(alpha_1 x + ... + alpha_k x^k), k = alphas.size().
std::complex<double> multi_weyl_sum(std::span<const double> alphas, std::int64_t P,
                                    const Limits& limits = {});

// J_{s,k}(P): pairs of s-tuples in [1,P]^s with equal power sums of degree
// 1..k, counted as the sum of squared multiplicities.
std::uint64_t mean_value_count(int s, int k, std::int64_t P, const Limits& limits = {});

// Solutions of sum_{i<=b} m_i^j = n_j (1 <= j <= r) with 1 <= m_i <= P,
// bucketed by n. Buckets are sorted by n.
struct Bucket {
    std::vector<std::int64_t> n;
    std::uint64_t count = 0;
};
std::vector<Bucket> power_sum_buckets(int b, int r, std::int64_t P, const Limits& limits = {});

struct UpsilonResult {
    std::uint64_t max_count = 0;
    std::vector<std::int64_t> argmax;  // lexicographically least maximizer
};
UpsilonResult upsilon_direct(int b, int r, std::int64_t P, const Limits& limits = {});

// Solutions of m1+m2+m3 = n1, m1^2+m2^2+m3^2 = n2 in [1,P]^3 counted through
// the representations 3X^2 + Y^2 = 6 n2 - 2 n1^2.
std::uint64_t upsilon32_reduced(std::int64_t P, std::int64_t n1, std::int64_t n2);

struct MinorArcWitness {
    double alpha = 0;
    std::int64_t P = 0;
    int k = 0;
    double theta = 0;
    bool in_minor = false;
    // Major arc: the reduced a/q with q <= P^theta and |q alpha - a| <= P^{theta-k}
    // of least q. Minor arc: the closest convergent with q <= P^theta.
    Integer a;
    Integer q;
};

// Membership of alpha in m_theta, decided through the continued fraction of alpha.
MinorArcWitness minor_arc_membership(double alpha, std::int64_t P, double theta, int k);

// Same decision by scanning every q <= P^theta with the two nearest a.
MinorArcWitness minor_arc_membership_scan(double alpha, std::int64_t P, double theta, int k);

// prod_{j=1}^{r} (P^-j + P^{j-k} + q^-1 + q P^-k)
double omega_r(double q, double P, int r, int k);

struct MinorArcSupSample {
    std::uint64_t seed = 0;
    int samples = 0;
    int accepted = 0;
    std::optional<double> max_ratio;  // max |f_k(alpha;P)| / P^{1-sigma}
    std::optional<double> worst_alpha;
};

// Random alpha in [0,1) from a seeded 64-bit Mersenne twister, kept only when
// in m_1. Diagnostic only: the implicit constant in the bound is unknown.
MinorArcSupSample empirical_minor_arc_sup(int k, std::int64_t P, int samples, double sigma,
                                          std::uint64_t seed, const Limits& limits = {});

// Uniform double in [0,1) from a 64-bit draw, identical on every platform.
double unit_from_bits(std::uint64_t bits);

}  // namespace weylbound::oracles
