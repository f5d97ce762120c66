#include "weylbound/exponent_table.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace weylbound {

namespace {

constexpr std::array<std::pair<Source, std::string_view>, 6> kSourceNames{{
    {Source::HuaInit, "HuaInit"},
    {Source::TrivialInit, "TrivialInit"},
    {Source::Theorem31, "Theorem31"},
    {Source::HolderInterp, "HolderInterp"},
    {Source::QuasiDiagonal, "QuasiDiagonal"},
    {Source::Monotonize, "Monotonize"},
}};

}  // namespace

std::string_view source_name(Source s) {
    for (const auto& [src, name] : kSourceNames)
        if (src == s) return name;
    return "?";
}

std::optional<Source> parse_source(std::string_view name) {
    for (const auto& [src, n] : kSourceNames)
        if (n == name) return src;
    return std::nullopt;
}

ExponentTable::ExponentTable(int k, std::vector<ExponentEntry> entries, int passes, bool converged)
    : k_(k), entries_(std::move(entries)), passes_(passes), converged_(converged) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].s != static_cast<int>(i) + 1)
            throw std::invalid_argument("exponent table entries must be indexed s = 1..s_max");
}

const ExponentEntry& ExponentTable::entry(int s) const {
    if (s < 1 || s > s_max())
        throw std::out_of_range("s = " + std::to_string(s) + " outside table [1, " + std::to_string(s_max()) + "]");
    return entries_[static_cast<std::size_t>(s - 1)];
}

ExponentEntry& ExponentTable::entry(int s) {
    return const_cast<ExponentEntry&>(static_cast<const ExponentTable&>(*this).entry(s));
}

Rational ExponentTable::half_k_k1() const { return Rational(k_ * (k_ + 1) / 2); }

}  // namespace weylbound
