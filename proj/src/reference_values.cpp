#include "weylbound/reference_values.hpp"

#include <array>
#include <stdexcept>

namespace weylbound::reference {

namespace {

// k = 9..20
constexpr std::array<std::string_view, 12> kPublishedRho{
    "324.00", "440.87", "575.81", "733.58", "910.41", "1111.15",
    "1331.61", "1576.42", "1841.79", "2132.47", "2444.02", "2781.54"};

// k = 8..20
constexpr std::array<int, 13> kPublishedGtilde{
    233, 365, 497, 627, 771, 934, 1112, 1307, 1517, 1747, 1992, 2255, 2534};

// Parsell (2009), k = 11..20
constexpr std::array<std::string_view, 10> kParsellRho{
    "743.409", "999.270", "1223.475", "1420.574", "1632.247",
    "1856.535", "2114.819", "2436.255", "2779.680", "3150.605"};
constexpr std::array<int, 10> kParsellGtilde{706, 873, 1049, 1231, 1431, 1645, 1879, 2134, 2410, 2701};

// Ford (1995), k = 9..10
constexpr std::array<int, 2> kFordGtilde{393, 551};

template <typename T, std::size_t N>
std::optional<T> lookup(const std::array<T, N>& table, int first_k, int k) {
    if (k < first_k || k >= first_k + static_cast<int>(N)) return std::nullopt;
    return table[static_cast<std::size_t>(k - first_k)];
}

Rational pow2(int e) {
    if (e < 0) throw std::domain_error("negative power of two");
    Integer v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return Rational(v);
}

}  // namespace

std::optional<Rational> published_rho(int k) {
    auto v = lookup(kPublishedRho, 9, k);
    if (!v) return std::nullopt;
    return parse_rational(*v);
}

std::optional<int> published_gtilde(int k) { return lookup(kPublishedGtilde, 8, k); }

std::optional<Rational> parsell_rho(int k) {
    auto v = lookup(kParsellRho, 11, k);
    if (!v) return std::nullopt;
    return parse_rational(*v);
}

std::optional<int> parsell_gtilde(int k) { return lookup(kParsellGtilde, 11, k); }
std::optional<int> ford_gtilde(int k) { return lookup(kFordGtilde, 9, k); }

Rational weyl_rho(int k) { return pow2(k - 1); }

Rational heath_brown_rho(int k) {
    if (k < 6) throw std::domain_error("Heath-Brown's exponent needs k >= 6");
    return 3 * pow2(k - 3);
}

std::string_view published_rho_source(int k) {
    if (k == 9) return "hybrid mean-value bound, comparison text (k = 9)";
    if (k >= 10 && k <= 20) return "hybrid mean-value bound, rho table (10 <= k <= 20)";
    return "";
}

std::string_view published_gtilde_source(int k) {
    if (k == 8) return "hybrid mean-value bound, comparison text (k = 8)";
    if (k >= 9 && k <= 20) return "hybrid mean-value bound, G~ table (9 <= k <= 20)";
    return "";
}

}  // namespace weylbound::reference
