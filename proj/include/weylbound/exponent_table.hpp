#pragma once

#include "weylbound/rational.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace weylbound {

// Which estimate last produced an entry.
enum class Source { HuaInit, TrivialInit, Theorem31, HolderInterp, QuasiDiagonal, Monotonize };

std::string_view source_name(Source s);
std::optional<Source> parse_source(std::string_view name);

// A permissible exponent Delta_{s,k}: J_{s,k}(P) << P^{2s - k(k+1)/2 + delta}.
struct ExponentEntry {
    int s = 0;
    Rational delta;
    Source source = Source::TrivialInit;
    int pass = 0;

    friend bool operator==(const ExponentEntry&, const ExponentEntry&) = default;
};

// Permissible exponents for one degree k, indexed s = 1..s_max.
class ExponentTable {
public:
    ExponentTable() = default;
    ExponentTable(int k, std::vector<ExponentEntry> entries, int passes = 0, bool converged = false);

    int k() const { return k_; }
    int s_max() const { return static_cast<int>(entries_.size()); }
    int passes() const { return passes_; }
    bool converged() const { return converged_; }

    // 1-based access; throws std::out_of_range.
    const ExponentEntry& entry(int s) const;
    ExponentEntry& entry(int s);
    const Rational& delta(int s) const { return entry(s).delta; }

    const std::vector<ExponentEntry>& entries() const { return entries_; }

    // k(k+1)/2
    Rational half_k_k1() const;

    void set_passes(int p) { passes_ = p; }
    void set_converged(bool c) { converged_ = c; }

    friend bool operator==(const ExponentTable&, const ExponentTable&) = default;

private:
    int k_ = 0;
    std::vector<ExponentEntry> entries_;
    int passes_ = 0;
    bool converged_ = false;
};

}  // namespace weylbound
