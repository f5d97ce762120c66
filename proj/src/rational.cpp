#include "weylbound/rational.hpp"

#include <stdexcept>

namespace weylbound {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    return make_rational(Integer(std::to_string(num)), Integer(std::to_string(den)));
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

Integer parse_integer(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    Integer v(std::string(s), 10);
    return neg ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer den = parse_integer(text.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("denominator must be positive");
        return make_rational(parse_integer(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view frac = text.substr(dot + 1);
        if (!frac.empty() && !all_digits(frac))
            throw std::invalid_argument("bad decimal: '" + std::string(text) + "'");
        std::string_view whole = text.substr(0, dot);
        bool neg = !whole.empty() && whole[0] == '-';
        if (whole == "-" || whole == "+" || whole.empty()) whole = "0";
        Integer ip = parse_integer(whole);
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Integer fp = frac.empty() ? Integer(0) : Integer(std::string(frac), 10);
        if (ip < 0) ip = -ip;
        Integer num = ip * scale + fp;
        if (neg) num = -num;
        return make_rational(num, scale);
    }
    return Rational(parse_integer(text));
}

std::string to_string(const Rational& x) { return x.get_str(10); }
std::string to_string(const Integer& x) { return x.get_str(10); }

Integer floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rational round_up_to_grid(const Rational& x, unsigned bits) {
    Integer scaled_num = x.get_num();
    mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), bits);
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den_mpz_t());
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
    return make_rational(q, den);
}

std::string to_decimal(const Rational& x, int places, Rounding mode) {
    if (places < 0) throw std::invalid_argument("negative decimal places");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    Rational scaled = x * scale;
    Integer q;
    switch (mode) {
        case Rounding::Up: q = ceil(scaled); break;
        case Rounding::Down: q = floor(scaled); break;
        case Rounding::Nearest: q = floor(scaled + Rational(1, 2)); break;
    }
    bool neg = q < 0;
    if (neg) q = -q;
    std::string digits = q.get_str(10);
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places))
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    return neg ? "-" + digits : digits;
}

}  // namespace weylbound
