#pragma once

#include "weylbound/engine.hpp"
#include "weylbound/exponent_table.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace weylbound {

struct TableFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// {"num": "...", "den": "...", "decimal": "..."}; num/den are exact decimal
// integers, the decimal rendering is display only.
nlohmann::json rational_to_json(const Rational& x, int places = 6);
Rational rational_from_json(const nlohmann::json& j);

// Table file: exact integers per entry plus the engine settings that built it.
nlohmann::json table_to_json(const ExponentTable& table, const EngineConfig& config);
// Validates structure, canonical form and table invariants.
ExponentTable table_from_json(const nlohmann::json& j);

// "s,delta_num,delta_den,source,pass" rows under a header.
std::string table_to_csv(const ExponentTable& table);
ExponentTable table_from_csv(const std::string& csv, int k);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Flag value, else $WEYLBOUND_CACHE_DIR, else ".weylbound-cache".
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag);

// Converged tables on disk, keyed by (k, s_max, engine version, engine settings).
class TableCache {
public:
    explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::filesystem::path path_for(int k, int s_max, const EngineConfig& config) const;

    // nullopt on a miss. A corrupt file is reported through `warning` and
    // treated as a miss.
    std::optional<ExponentTable> load(int k, int s_max, const EngineConfig& config,
                                      std::string* warning = nullptr) const;
    void store(const ExponentTable& table, const EngineConfig& config) const;

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

}  // namespace weylbound
