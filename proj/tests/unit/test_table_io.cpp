#include "tables.hpp"

#include <weylbound/table_io.hpp>

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace weylbound;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("weylbound_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("rational json") {
    const Rational x = make_rational(-2157887077736267, 56700000000000);
    const auto j = rational_to_json(x);
    CHECK(j["num"] == "-2157887077736267");
    CHECK(j["den"] == "56700000000000");
    CHECK(rational_from_json(j) == x);
    CHECK(rational_from_json(nlohmann::json{{"num", 6}, {"den", 4}}) == make_rational(3, 2));
    CHECK_THROWS_AS(rational_from_json(nlohmann::json{{"num", "1"}}), TableFormatError);
    CHECK_THROWS_AS(rational_from_json(nlohmann::json{{"num", "x"}, {"den", "1"}}), TableFormatError);
}

TEST_CASE("table round trips") {
    for (int k : {4, 9}) {
        const ExponentTable& t = tables::converged(k);
        const EngineConfig cfg;
        const nlohmann::json j = table_to_json(t, cfg);
        CHECK(j["entries"].size() == static_cast<std::size_t>(t.s_max()));
        const ExponentTable back = table_from_json(nlohmann::json::parse(j.dump()));
        CHECK(back == t);

        const std::string csv = table_to_csv(t);
        const ExponentTable from_csv = table_from_csv(csv, k);
        for (int s = 1; s <= t.s_max(); ++s) {
            REQUIRE(from_csv.delta(s) == t.delta(s));
            REQUIRE(from_csv.entry(s).source == t.entry(s).source);
        }
        std::istringstream lines(csv);
        std::string line;
        std::getline(lines, line);
        for (const auto& row : j["entries"]) {
            std::getline(lines, line);
            const std::string expect = std::to_string(row["s"].get<int>()) + "," + row["delta_num"].get<std::string>() +
                                       "," + row["delta_den"].get<std::string>() + ",";
            REQUIRE(line.rfind(expect, 0) == 0);
        }
    }
}

TEST_CASE("table files from the degree-9 run") {
    const nlohmann::json j = table_to_json(tables::converged(9), EngineConfig{});
    CHECK(j["entries"].size() == 486);
    CHECK(j["entries"][9]["s"] == 10);
    CHECK(j["entries"][9]["delta_num"] == "35");
    CHECK(j["entries"][9]["delta_den"] == "1");
    CHECK(j["engine_version"] == kEngineVersion);
}

TEST_CASE("malformed tables are rejected") {
    const ExponentTable& t = tables::converged(4);
    nlohmann::json j = table_to_json(t, EngineConfig{});

    auto broken = j;
    broken["entries"][20]["delta_den"] = "0";
    CHECK_THROWS_AS(table_from_json(broken), TableFormatError);

    broken = j;
    broken["entries"][20]["delta_num"] = "2";
    broken["entries"][20]["delta_den"] = "4";
    CHECK_THROWS_AS(table_from_json(broken), TableFormatError);

    broken = j;
    broken["entries"][20]["delta_num"] = "1000";
    CHECK_THROWS_AS(table_from_json(broken), TableFormatError);

    broken = j;
    broken["entries"][20]["source"] = "guess";
    CHECK_THROWS_AS(table_from_json(broken), TableFormatError);

    broken = j;
    broken["entries"].erase(5);
    CHECK_THROWS_AS(table_from_json(broken), TableFormatError);

    broken = j;
    broken["format"] = "other";
    CHECK_THROWS_AS(table_from_json(broken), TableFormatError);

    CHECK_THROWS_AS(table_from_csv("s,num\n1,2\n", 4), TableFormatError);
    CHECK_THROWS_AS(table_from_csv("s,delta_num,delta_den,source,pass\n2,1,1,hua-init,0\n", 4), TableFormatError);
}

TEST_CASE("cache") {
    const fs::path dir = scratch_dir("cache");
    const TableCache cache(dir);
    const EngineConfig cfg;
    CHECK_FALSE(cache.load(6, 216, cfg));

    const ExponentTable fresh = converge(6, 216, cfg);
    cache.store(fresh, cfg);
    const auto hit = cache.load(6, 216, cfg);
    REQUIRE(hit);
    CHECK(*hit == fresh);
    CHECK(*hit == converge(6, 216, cfg));

    EngineConfig other = cfg;
    other.grid_bits = 48;
    CHECK(cache.path_for(6, 216, other) != cache.path_for(6, 216, cfg));
    CHECK_FALSE(cache.load(6, 216, other));
    CHECK_FALSE(cache.load(6, 217, cfg));

    const std::string before = read_file(cache.path_for(6, 216, cfg));
    cache.store(*hit, cfg);
    CHECK(read_file(cache.path_for(6, 216, cfg)) == before);

    {
        std::ofstream out(cache.path_for(6, 216, cfg), std::ios::trunc);
        out << "{ truncated";
    }
    std::string warning;
    CHECK_FALSE(cache.load(6, 216, cfg, &warning));
    CHECK(warning.find("corrupt") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("cache directory resolution") {
    ::setenv("WEYLBOUND_CACHE_DIR", "/tmp/from-env", 1);
    CHECK(resolve_cache_dir(std::string("/tmp/from-flag")) == "/tmp/from-flag");
    CHECK(resolve_cache_dir(std::nullopt) == "/tmp/from-env");
    ::unsetenv("WEYLBOUND_CACHE_DIR");
    CHECK(resolve_cache_dir(std::nullopt) == ".weylbound-cache");
}

TEST_CASE("atomic writes leave no temporary file") {
    const fs::path dir = scratch_dir("atomic");
    write_file_atomic(dir / "sub" / "a.json", "first");
    write_file_atomic(dir / "sub" / "a.json", "second");
    CHECK(read_file(dir / "sub" / "a.json") == "second");
    CHECK_FALSE(fs::exists(dir / "sub" / "a.json.tmp"));
    fs::remove_all(dir);
}
