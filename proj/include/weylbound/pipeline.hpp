#pragma once

#include "weylbound/bounds.hpp"
#include "weylbound/engine.hpp"
#include "weylbound/table_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace weylbound {

enum class OutputFormat { Json, Csv, Text };
std::optional<OutputFormat> parse_format(std::string_view name);

struct RunConfig {
    std::vector<int> degrees;
    std::optional<int> s_max;  // default 6k^2
    int max_passes = 100;
    std::optional<std::string> cache_dir;
    bool use_cache = true;
    OutputFormat format = OutputFormat::Text;
    std::uint64_t seed = 1;
    int r_max = 0;  // 0: 4k
    unsigned grid_bits = 64;
    double tol_rho = 0.01;  // relative
    int tol_gtilde = 5;     // absolute
    MinorArcPolicy policy = MinorArcPolicy::BestKnown;

    EngineConfig engine() const;
    int s_max_for(int k) const { return s_max.value_or(default_s_max(k)); }
};

// Converged tables per degree, memoized and backed by the on-disk cache.
class TableProvider {
public:
    explicit TableProvider(RunConfig config);

    const ExponentTable& get(int k);
    // Builds the missing degrees on separate threads.
    void prefetch(const std::vector<int>& degrees);
    bool was_cache_hit(int k) const;

    const std::vector<std::string>& warnings() const { return warnings_; }
    const RunConfig& config() const { return config_; }

private:
    RunConfig config_;
    std::map<int, ExponentTable> tables_;
    std::map<int, bool> hits_;
    std::vector<std::string> warnings_;
};

struct SigmaReport {
    SigmaResult sigma;
    bool table_converged = true;
    std::vector<std::string> warnings;
};
SigmaReport run_sigma(int k, TableProvider& tables);

struct GtildeReport {
    GtildeResult result;
    SigmaResult sigma;
    MinorArcChoice choice;
    bool tables_converged = true;
    std::vector<std::string> warnings;
};
GtildeReport run_gtilde(int k, TableProvider& tables, MinorArcPolicy policy);

struct RhoRow {
    int k = 0;
    Rational computed;
    std::string display;
    Rational published;
    double relative_delta = 0;
    bool within = false;
    bool exact_two_places = false;
};

struct GtildeRow {
    int k = 0;
    Integer computed;
    int published = 0;
    long delta = 0;
    bool within = false;
    std::string sigma_source;
};

struct ImprovementRow {
    int k = 0;
    std::string against;  // "weyl" or "parsell"
    Rational computed_rho;
    Rational reference_rho;
    bool improves = false;
};

struct ReproduceReport {
    std::vector<RhoRow> rho;
    std::vector<GtildeRow> gtilde;
    std::vector<ImprovementRow> improvements;
    std::vector<std::string> warnings;
    bool all_within() const;
};

// rho(k) for 9 <= k <= 20 and G~(k) for 8 <= k <= 20 against the literature.
ReproduceReport reproduce(TableProvider& tables);

struct PropertyResult {
    std::string group;
    std::string name;
    bool passed = false;
    std::string detail;
};

inline const std::vector<std::string>& verify_groups() {
    static const std::vector<std::string> groups{"mean-value", "upsilon", "minor-arc", "weyl-sum", "omega"};
    return groups;
}

// Runs the brute-force property suite; `only` restricts it to some groups.
std::vector<PropertyResult> run_verify(std::uint64_t seed, const std::vector<std::string>& only = {});

nlohmann::json to_json(const SigmaResult& s);
nlohmann::json to_json(const SigmaReport& r);
nlohmann::json to_json(const GtildeReport& r);
nlohmann::json to_json(const ReproduceReport& r);
nlohmann::json to_json(const std::vector<PropertyResult>& results, std::uint64_t seed);

std::string to_text(const SigmaReport& r);
std::string to_text(const GtildeReport& r);
std::string to_text(const ReproduceReport& r);
std::string to_text(const std::vector<PropertyResult>& results);

std::string to_csv(const SigmaReport& r);
std::string to_csv(const GtildeReport& r);
std::string to_csv(const ReproduceReport& r);
std::string to_csv(const std::vector<PropertyResult>& results);

}  // namespace weylbound
