#include "weylbound/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace weylbound::oracles {

namespace {

using u128 = unsigned __int128;

// alpha = mantissa * 2^-shift, or an integer when `integral`.
struct Dyadic {
    std::int64_t mantissa = 0;
    int shift = 0;
    bool integral = true;
};

Dyadic decompose(double alpha) {
    if (!std::isfinite(alpha)) throw std::domain_error("alpha must be finite");
    Dyadic d;
    if (alpha == 0) return d;
    int e = 0;
    double m = std::frexp(alpha, &e);
    d.mantissa = static_cast<std::int64_t>(std::ldexp(m, 53));
    d.shift = 53 - e;
    while (d.shift > 0 && (d.mantissa & 1) == 0) {
        d.mantissa /= 2;
        --d.shift;
    }
    d.integral = d.shift <= 0;
    return d;
}

// Fractional part of alpha * x^power in [0,1).
long double phase(const Dyadic& d, std::uint64_t x, int power) {
    if (d.integral) return 0.0L;
    if (d.shift <= 126) {
        u128 n = 1;
        for (int i = 0; i < power; ++i) n *= x;  // mod 2^128
        u128 prod = static_cast<u128>(static_cast<__int128>(d.mantissa)) * n;
        u128 mask = (static_cast<u128>(1) << d.shift) - 1;
        return std::ldexp(static_cast<long double>(prod & mask), -d.shift);
    }
    Integer n;
    mpz_ui_pow_ui(n.get_mpz_t(), x, static_cast<unsigned long>(power));
    n *= Integer(std::to_string(d.mantissa));
    Integer r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(d.shift));
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(d.shift));
    return static_cast<long double>(Rational(r, den).get_d());
}

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0;
    double comp_ = 0;
};

void guard_length(std::int64_t P, const Limits& limits) {
    if (P < 1) throw std::domain_error("P must be positive");
    if (!limits.accept_runtime && P > limits.max_weyl_length)
        throw std::length_error("P = " + std::to_string(P) + " exceeds the exponential-sum guard");
}

std::complex<double> sum_phases(std::int64_t P, auto&& phase_of) {
    CompensatedSum re, im;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (std::int64_t x = 1; x <= P; ++x) {
        long double angle = two_pi * phase_of(static_cast<std::uint64_t>(x));
        re.add(static_cast<double>(std::cos(angle)));
        im.add(static_cast<double>(std::sin(angle)));
    }
    return {re.value(), im.value()};
}

std::uint64_t guarded_tuple_count(int b, std::int64_t P, const Limits& limits) {
    if (b < 1) throw std::domain_error("number of variables must be positive");
    if (P < 1) throw std::domain_error("P must be positive");
    long double total = std::pow(static_cast<long double>(P), b);
    if (!limits.accept_runtime && total > static_cast<long double>(limits.max_tuples))
        throw std::length_error("P^s exceeds the enumeration guard");
    if (total > 1e15L) throw std::length_error("enumeration too large to index");
    return static_cast<std::uint64_t>(std::llround(total));
}

Integer to_integer(std::int64_t v) { return Integer(std::to_string(v)); }

long double power_bound(std::int64_t P, double exponent) {
    return std::pow(static_cast<long double>(P), static_cast<long double>(exponent));
}

std::int64_t floor_power(std::int64_t P, double theta) {
    // Nudge so exact integer powers such as 16^{3/2} are not lost to rounding.
    long double v = power_bound(P, theta);
    return static_cast<std::int64_t>(std::floor(v * (1 + 1e-15L)));
}

double distance(const Rational& alpha, const Integer& a, const Integer& q) {
    Rational d = q * alpha - a;
    return std::abs(d.get_d());
}

void check_arc_args(std::int64_t P, double theta, int k) {
    if (P < 2) throw std::domain_error("minor-arc membership needs P >= 2");
    if (k < 1) throw std::domain_error("degree must be positive");
    if (theta < 0 || theta > k / 2.0) throw std::domain_error("theta must lie in [0, k/2]");
}

}  // namespace

double unit_from_bits(std::uint64_t bits) { return std::ldexp(static_cast<double>(bits >> 11), -53); }

std::complex<double> weyl_sum(int k, double alpha, std::int64_t P, const Limits& limits) {
    if (k < 1) throw std::domain_error("degree must be positive");
    guard_length(P, limits);
    const Dyadic d = decompose(alpha);
    return sum_phases(P, [&](std::uint64_t x) { return phase(d, x, k); });
}

std::complex<double> multi_weyl_sum(std::span<const double> alphas, std::int64_t P, const Limits& limits) {
    if (alphas.empty()) throw std::domain_error("coefficient vector must be non-empty");
    guard_length(P, limits);
    std::vector<Dyadic> ds;
    ds.reserve(alphas.size());
    for (double a : alphas) ds.push_back(decompose(a));
    return sum_phases(P, [&](std::uint64_t x) {
        long double total = 0;
        for (std::size_t j = 0; j < ds.size(); ++j) total += phase(ds[j], x, static_cast<int>(j) + 1);
        return total - std::floor(total);
    });
}

std::vector<Bucket> power_sum_buckets(int b, int r, std::int64_t P, const Limits& limits) {
    if (r < 1) throw std::domain_error("number of equations must be positive");
    const std::uint64_t n_tuples = guarded_tuple_count(b, P, limits);
    if (static_cast<long double>(b) * std::pow(static_cast<long double>(P), r) > 9.2e18L)
        throw std::length_error("power sums overflow 64-bit integers");

    const auto ru = static_cast<std::size_t>(r);
    std::vector<std::int64_t> powers(static_cast<std::size_t>(P) * ru);
    for (std::int64_t x = 1; x <= P; ++x) {
        std::int64_t v = 1;
        for (std::size_t j = 0; j < ru; ++j) {
            v *= x;
            powers[static_cast<std::size_t>(x - 1) * ru + j] = v;
        }
    }

    std::vector<std::int64_t> keys(n_tuples * ru, 0);
    std::vector<std::int64_t> digits(static_cast<std::size_t>(b), 1);
    for (std::uint64_t i = 0; i < n_tuples; ++i) {
        std::int64_t* key = &keys[i * ru];
        for (std::int64_t x : digits)
            for (std::size_t j = 0; j < ru; ++j) key[j] += powers[static_cast<std::size_t>(x - 1) * ru + j];
        for (std::size_t pos = 0; pos < digits.size(); ++pos) {
            if (++digits[pos] <= P) break;
            digits[pos] = 1;
        }
    }

    std::vector<std::uint64_t> order(n_tuples);
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::uint64_t lhs, std::uint64_t rhs) {
        return std::lexicographical_compare(&keys[lhs * ru], &keys[lhs * ru] + ru, &keys[rhs * ru],
                                            &keys[rhs * ru] + ru);
    };
    std::sort(order.begin(), order.end(), less);

    std::vector<Bucket> buckets;
    for (std::uint64_t idx : order) {
        const std::int64_t* key = &keys[idx * ru];
        if (buckets.empty() || !std::equal(key, key + ru, buckets.back().n.begin()))
            buckets.push_back({std::vector<std::int64_t>(key, key + ru), 0});
        ++buckets.back().count;
    }
    return buckets;
}

std::uint64_t mean_value_count(int s, int k, std::int64_t P, const Limits& limits) {
    std::uint64_t total = 0;
    for (const Bucket& bucket : power_sum_buckets(s, k, P, limits)) total += bucket.count * bucket.count;
    return total;
}

UpsilonResult upsilon_direct(int b, int r, std::int64_t P, const Limits& limits) {
    UpsilonResult out;
    for (const Bucket& bucket : power_sum_buckets(b, r, P, limits)) {
        if (bucket.count > out.max_count) {
            out.max_count = bucket.count;
            out.argmax = bucket.n;
        }
    }
    return out;
}

std::uint64_t upsilon32_reduced(std::int64_t P, std::int64_t n1, std::int64_t n2) {
    if (P < 1) throw std::domain_error("P must be positive");
    if (std::abs(n1) > 3 * P || std::abs(n2) > 3 * P * P)
        throw std::domain_error("target outside |n1| <= 3P, |n2| <= 3P^2");
    const std::int64_t N = 6 * n2 - 2 * n1 * n1;
    if (N < 0) return 0;
    std::uint64_t count = 0;
    auto try_pair = [&](std::int64_t X, std::int64_t Y) {
        if ((Y + n1) % 3 != 0) return;
        const std::int64_t m2 = (Y + n1) / 3;
        if ((X - m2 + n1) % 2 != 0) return;
        const std::int64_t m1 = (X - m2 + n1) / 2;
        const std::int64_t m3 = n1 - m1 - m2;
        for (std::int64_t m : {m1, m2, m3})
            if (m < 1 || m > P) return;
        if (m1 * m1 + m2 * m2 + m3 * m3 == n2) ++count;
    };
    const auto x_max = static_cast<std::int64_t>(std::sqrt(static_cast<double>(N) / 3.0)) + 1;
    for (std::int64_t X = -x_max; X <= x_max; ++X) {
        const std::int64_t rest = N - 3 * X * X;
        if (rest < 0) continue;
        auto Y = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
        while (Y * Y > rest) --Y;
        while ((Y + 1) * (Y + 1) <= rest) ++Y;
        if (Y * Y != rest) continue;
        try_pair(X, Y);
        if (Y != 0) try_pair(X, -Y);
    }
    return count;
}

MinorArcWitness minor_arc_membership(double alpha, std::int64_t P, double theta, int k) {
    check_arc_args(P, theta, k);
    MinorArcWitness w{alpha, P, k, theta, true, Integer(0), Integer(0)};
    const Integer q_max = to_integer(floor_power(P, theta));
    const double eps = static_cast<double>(power_bound(P, theta - k));

    Rational exact;
    mpq_set_d(exact.get_mpq_t(), alpha);
    // Convergents h/c of the continued fraction of alpha.
    Integer h_prev(1), h_prev2(0), c_prev(0), c_prev2(1);
    Rational x = exact;
    while (true) {
        const Integer a = floor(x);
        const Integer h = a * h_prev + h_prev2;
        const Integer c = a * c_prev + c_prev2;
        if (c > q_max) break;
        w.a = h;
        w.q = c;
        if (distance(exact, h, c) <= eps) {
            w.in_minor = false;
            return w;
        }
        if (x == a) break;
        x = 1 / (x - a);
        h_prev2 = h_prev;
        h_prev = h;
        c_prev2 = c_prev;
        c_prev = c;
    }
    return w;
}

MinorArcWitness minor_arc_membership_scan(double alpha, std::int64_t P, double theta, int k) {
    check_arc_args(P, theta, k);
    MinorArcWitness w{alpha, P, k, theta, true, Integer(0), Integer(0)};
    const std::int64_t q_max = floor_power(P, theta);
    if (q_max > 100'000'000) throw std::length_error("scan range too large");
    const double eps = static_cast<double>(power_bound(P, theta - k));

    Rational exact;
    mpq_set_d(exact.get_mpq_t(), alpha);
    double best = HUGE_VAL;
    for (std::int64_t qi = 1; qi <= q_max; ++qi) {
        const Integer q = to_integer(qi);
        const Integer lo = floor(Rational(q * exact));
        for (const Integer& a : {lo, Integer(lo + 1)}) {
            Integer g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
            if (g != 1) continue;
            const double dist = distance(exact, a, q);
            if (dist <= eps) {
                w = {alpha, P, k, theta, false, a, q};
                return w;
            }
            if (dist < best) {
                best = dist;
                w.a = a;
                w.q = q;
            }
        }
    }
    return w;
}

double omega_r(double q, double P, int r, int k) {
    if (q < 1 || P < 1) throw std::domain_error("omega_r needs q >= 1 and P >= 1");
    if (r < 1 || r > k - 1) throw std::domain_error("omega_r needs 1 <= r <= k-1");
    long double prod = 1;
    const long double Pl = P, ql = q;
    for (int j = 1; j <= r; ++j)
        prod *= std::pow(Pl, -j) + std::pow(Pl, j - k) + 1 / ql + ql * std::pow(Pl, -k);
    return static_cast<double>(prod);
}

MinorArcSupSample empirical_minor_arc_sup(int k, std::int64_t P, int samples, double sigma,
                                          std::uint64_t seed, const Limits& limits) {
    if (!limits.accept_runtime && P > 1'000'000) throw std::length_error("P exceeds the sampling guard");
    if (samples < 0) throw std::domain_error("sample count must be non-negative");
    MinorArcSupSample out;
    out.seed = seed;
    out.samples = samples;
    std::mt19937_64 rng(seed);
    const double scale = std::pow(static_cast<double>(P), 1.0 - sigma);
    for (int i = 0; i < samples; ++i) {
        const double alpha = unit_from_bits(rng());
        if (!minor_arc_membership(alpha, P, 1.0, k).in_minor) continue;
        ++out.accepted;
        const double ratio = std::abs(weyl_sum(k, alpha, P, limits)) / scale;
        if (!out.max_ratio || ratio > *out.max_ratio) {
            out.max_ratio = ratio;
            out.worst_alpha = alpha;
        }
    }
    return out;
}

}  // namespace weylbound::oracles
