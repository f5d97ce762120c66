#include "weylbound/table_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

namespace weylbound {

using nlohmann::json;

namespace {

constexpr const char* kFormatTag = "weylbound.exponent-table";
constexpr int kFormatVersion = 1;

json engine_settings(const EngineConfig& config, int k) {
    return {{"grid_bits", config.grid_bits},
            {"r_max", config.effective_r_max(k)},
            {"quasi_diagonal", config.quasi_diagonal},
            {"max_passes", config.max_passes}};
}

Integer parse_exact_integer(const json& j, const char* field) {
    if (!j.contains(field)) throw TableFormatError(std::string("missing field '") + field + "'");
    const json& v = j.at(field);
    std::string text;
    if (v.is_string())
        text = v.get<std::string>();
    else if (v.is_number_integer())
        text = v.dump();
    else
        throw TableFormatError(std::string("field '") + field + "' is not an exact integer");
    try {
        return parse_rational(text).get_num();
    } catch (const std::exception&) {
        throw TableFormatError(std::string("field '") + field + "' is not an integer: " + text);
    }
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    return out;
}

ExponentEntry checked_entry(int s, const Integer& num, const Integer& den, std::string_view source, int pass) {
    if (den <= 0) throw TableFormatError("non-positive denominator at s=" + std::to_string(s));
    Rational delta(num, den);
    Rational canon = delta;
    canon.canonicalize();
    if (canon.get_num() != num || canon.get_den() != den)
        throw TableFormatError("entry s=" + std::to_string(s) + " not in lowest terms");
    auto src = parse_source(source);
    if (!src) throw TableFormatError("unknown source '" + std::string(source) + "'");
    if (pass < 0) throw TableFormatError("negative pass index at s=" + std::to_string(s));
    return {s, canon, *src, pass};
}

}  // namespace

json rational_to_json(const Rational& x, int places) {
    return {{"num", to_string(x.get_num())}, {"den", to_string(x.get_den())}, {"decimal", to_decimal(x, places)}};
}

Rational rational_from_json(const json& j) {
    return make_rational(parse_exact_integer(j, "num"), parse_exact_integer(j, "den"));
}

json table_to_json(const ExponentTable& table, const EngineConfig& config) {
    json entries = json::array();
    for (const ExponentEntry& e : table.entries()) {
        entries.push_back({{"s", e.s},
                           {"delta_num", to_string(e.delta.get_num())},
                           {"delta_den", to_string(e.delta.get_den())},
                           {"source", std::string(source_name(e.source))},
                           {"pass", e.pass},
                           {"delta_display", to_decimal(e.delta, 12)}});
    }
    return {{"format", kFormatTag},
            {"format_version", kFormatVersion},
            {"engine_version", kEngineVersion},
            {"engine", engine_settings(config, table.k())},
            {"k", table.k()},
            {"s_max", table.s_max()},
            {"passes", table.passes()},
            {"converged", table.converged()},
            {"entries", std::move(entries)}};
}

ExponentTable table_from_json(const json& j) {
    try {
        if (!j.is_object() || j.value("format", "") != kFormatTag)
            throw TableFormatError("not an exponent table file");
        if (j.at("format_version").get<int>() != kFormatVersion)
            throw TableFormatError("unsupported table format version");
        const int k = j.at("k").get<int>();
        const int s_max = j.at("s_max").get<int>();
        const json& rows = j.at("entries");
        if (!rows.is_array() || static_cast<int>(rows.size()) != s_max)
            throw TableFormatError("entry count does not match s_max");
        std::vector<ExponentEntry> entries;
        entries.reserve(rows.size());
        for (const json& row : rows) {
            const int s = row.at("s").get<int>();
            if (s != static_cast<int>(entries.size()) + 1) throw TableFormatError("entries out of order");
            entries.push_back(checked_entry(s, parse_exact_integer(row, "delta_num"),
                                            parse_exact_integer(row, "delta_den"),
                                            row.at("source").get<std::string>(), row.at("pass").get<int>()));
        }
        ExponentTable table(k, std::move(entries), j.at("passes").get<int>(), j.at("converged").get<bool>());
        if (auto issues = check_table_invariants(table); !issues.empty())
            throw TableFormatError("table violates invariants: " + issues.front());
        return table;
    } catch (const json::exception& e) {
        throw TableFormatError(std::string("malformed table file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw TableFormatError(e.what());
    }
}

std::string table_to_csv(const ExponentTable& table) {
    std::ostringstream out;
    out << "s,delta_num,delta_den,source,pass\n";
    for (const ExponentEntry& e : table.entries())
        out << e.s << ',' << to_string(e.delta.get_num()) << ',' << to_string(e.delta.get_den()) << ','
            << source_name(e.source) << ',' << e.pass << '\n';
    return out.str();
}

ExponentTable table_from_csv(const std::string& csv, int k) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "s,delta_num,delta_den,source,pass")
        throw TableFormatError("missing CSV header");
    std::vector<ExponentEntry> entries;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != 5) throw TableFormatError("bad CSV row: " + line);
        try {
            entries.push_back(checked_entry(std::stoi(cells[0]), parse_rational(cells[1]).get_num(),
                                            parse_rational(cells[2]).get_num(), cells[3], std::stoi(cells[4])));
        } catch (const std::invalid_argument& e) {
            throw TableFormatError("bad CSV row: " + line);
        }
    }
    try {
        return ExponentTable(k, std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw TableFormatError(e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv("WEYLBOUND_CACHE_DIR"); env && *env) return env;
    return ".weylbound-cache";
}

std::filesystem::path TableCache::path_for(int k, int s_max, const EngineConfig& config) const {
    std::ostringstream name;
    name << "table_k" << k << "_s" << s_max << "_v" << kEngineVersion << "_g" << config.grid_bits << "_r"
         << config.effective_r_max(k) << (config.quasi_diagonal ? "_qd" : "_noqd") << "_p" << config.max_passes
         << ".json";
    return dir_ / name.str();
}

std::optional<ExponentTable> TableCache::load(int k, int s_max, const EngineConfig& config,
                                              std::string* warning) const {
    const auto path = path_for(k, s_max, config);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    try {
        json j = json::parse(read_file(path));
        if (j.value("engine_version", "") != kEngineVersion || j.value("engine", json{}) != engine_settings(config, k))
            throw TableFormatError("engine settings differ from the request");
        ExponentTable table = table_from_json(j);
        if (table.k() != k || table.s_max() != s_max) throw TableFormatError("table shape differs from its key");
        return table;
    } catch (const std::exception& e) {
        if (warning) *warning = "cache file " + path.string() + " is corrupt (" + e.what() + "); recomputing";
        return std::nullopt;
    }
}

void TableCache::store(const ExponentTable& table, const EngineConfig& config) const {
    write_file_atomic(path_for(table.k(), table.s_max(), config), table_to_json(table, config).dump(1) + "\n");
}

}  // namespace weylbound
