#include <cli.hpp>

#include <weylbound/table_io.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using weylbound::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

fs::path cache_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("weylbound_cli_" + std::to_string(::getpid()));
        fs::remove_all(p);
        return p;
    }();
    return dir;
}

Result cli(std::vector<std::string> args) {
    args.push_back("--cache-dir");
    args.push_back(cache_dir().string());
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

Result cli_plain(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("usage errors") {
    CHECK(cli_plain({}).code == 2);
    CHECK(cli_plain({"nonsense"}).code == 2);
    CHECK(cli({"exponents", "--k", "2", "--smax", "3"}).code == 2);
    CHECK(cli({"exponents", "--k", "1"}).code == 2);
    CHECK(cli({"exponents", "--k", "5", "--max-passes", "0"}).code == 2);
    CHECK(cli({"exponents", "--k", "5", "--format", "xml"}).code == 2);
    const Result s3 = cli({"sigma", "--k", "3"});
    CHECK(s3.code == 2);
    CHECK(s3.err.find("k >= 4") != std::string::npos);
    CHECK(cli_plain({"verify", "--only", "nothing"}).code == 2);
    CHECK(cli_plain({"oracle"}).code == 2);
    CHECK(cli_plain({"oracle", "jmean", "--s", "9", "--k", "2", "--P", "1000"}).code == 2);
    CHECK(cli_plain({"--help"}).code == 0);
}

TEST_CASE("exponents") {
    const Result first = cli({"exponents", "--k", "9", "--format", "json"});
    REQUIRE(first.code == 0);
    CHECK(first.err.find("computed") != std::string::npos);
    const auto j = nlohmann::json::parse(first.out);
    CHECK(j["entries"].size() == 486);
    CHECK(j["entries"][9]["delta_num"] == "35");
    CHECK(j["entries"][9]["delta_den"] == "1");
    CHECK(weylbound::table_from_json(j).converged());

    const Result second = cli({"exponents", "--k", "9", "--format", "json"});
    CHECK(second.code == 0);
    CHECK(second.err.find("cache hit") != std::string::npos);
    CHECK(second.out == first.out);

    const Result csv = cli({"exponents", "--k", "9", "--format", "csv"});
    CHECK(csv.out.rfind("s,delta_num,delta_den,source,pass\n", 0) == 0);
    CHECK(csv.out.find("\n10,35,1,HuaInit,0\n") != std::string::npos);

    const Result both = cli({"exponents", "--k", "3,4", "--format", "json"});
    CHECK(nlohmann::json::parse(both.out)["tables"].size() == 2);

    const fs::path file = cache_dir() / "out.json";
    CHECK(cli({"exponents", "--k", "4", "--format", "json", "--out", file.string()}).code == 0);
    CHECK(weylbound::table_from_json(nlohmann::json::parse(weylbound::read_file(file))).k() == 4);
}

TEST_CASE("corrupt cache is reported and recomputed") {
    const Result clean = cli({"exponents", "--k", "5", "--format", "json"});
    for (const auto& entry : fs::directory_iterator(cache_dir()))
        if (entry.path().filename().string().rfind("table_k5_", 0) == 0) {
            std::ofstream out(entry.path(), std::ios::trunc);
            out << "[]";
        }
    const Result again = cli({"exponents", "--k", "5", "--format", "json"});
    CHECK(again.code == 0);
    CHECK(again.err.find("corrupt") != std::string::npos);
    CHECK(again.out == clean.out);
}

TEST_CASE("sigma and gtilde") {
    const Result s = cli({"sigma", "--k", "10", "--format", "json"});
    REQUIRE(s.code == 0);
    const auto j = nlohmann::json::parse(s.out);
    const double rho = std::stod(j["rho"]["decimal"].get<std::string>());
    CHECK(std::abs(rho / 440.87 - 1) < 0.01);
    CHECK(j["comparison"]["improves_on_weyl"] == true);

    const Result text = cli({"sigma", "--k", "10"});
    CHECK(text.out.find("rho = 441.") != std::string::npos);

    const Result g = cli({"gtilde", "--k", "9", "--format", "json"});
    REQUIRE(g.code == 0);
    CHECK(nlohmann::json::parse(g.out)["bound"] == "365");
    const Result gt = cli({"gtilde", "--k", "9", "--minor-arc", "theorem", "--format", "csv"});
    CHECK(gt.out.find("theorem") != std::string::npos);
}

TEST_CASE("verify") {
    const Result r = cli_plain({"verify", "--only", "mean-value,omega", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    for (const auto& p : j["properties"]) CHECK((p["group"] == "mean-value" || p["group"] == "omega"));

    const Result a = cli_plain({"verify", "--only", "minor-arc", "--seed", "7", "--format", "csv"});
    const Result b = cli_plain({"verify", "--only", "minor-arc", "--seed", "7", "--format", "csv"});
    CHECK(a.out == b.out);
    CHECK(a.code == 0);
}

TEST_CASE("oracle records") {
    auto record = [](std::vector<std::string> args) {
        args.push_back("--format");
        args.push_back("json");
        const Result r = cli_plain(args);
        REQUIRE(r.code == 0);
        return nlohmann::json::parse(r.out);
    };
    auto j = record({"oracle", "jmean", "--s", "2", "--k", "2", "--P", "3"});
    CHECK(j["operation"] == "jmean");
    CHECK(j["inputs"]["P"] == 3);
    CHECK(j["seed"].is_null());
    CHECK(j["result"]["count"] == 15);

    j = record({"oracle", "upsilon", "--P", "2"});
    CHECK(j["result"]["max_count"] == 3);
    j = record({"oracle", "upsilon", "--P", "2", "--n1", "3", "--n2", "3"});
    CHECK(j["result"]["count"] == 1);
    j = record({"oracle", "weylsum", "--k", "2", "--alpha", "0.5", "--P", "3"});
    CHECK(std::abs(j["result"]["re"].get<double>() + 1) < 1e-12);
    j = record({"oracle", "minorarc", "--alpha", "0.5", "--P", "10", "--theta", "1", "--k", "3"});
    CHECK(j["result"]["in_minor"] == false);
    CHECK(j["result"]["q"] == "2");
    j = record({"oracle", "minorarc", "--k", "4", "--P", "200", "--samples", "20", "--sigma", "0.01", "--seed", "5"});
    CHECK(j["seed"] == 5);
    j = record({"oracle", "omega", "--q", "1", "--P", "1", "--r", "1", "--k", "2"});
    CHECK(j["result"]["value"] == 4.0);

    const Result csv = cli_plain({"oracle", "jmean", "--s", "2", "--k", "1", "--P", "3", "--format", "csv"});
    CHECK(csv.out == "operation,inputs,seed,result\njmean,\"{\"\"P\"\":3,\"\"k\"\":1,\"\"s\"\":2}\",,\"{\"\"count\"\":19}\"\n");
}
