#include "cli.hpp"

#include "weylbound/oracles.hpp"
#include "weylbound/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace weylbound::cli {

namespace {

using nlohmann::json;

struct UsageFailure : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::vector<int> degrees;
    int s_max = 0;
    int max_passes = 100;
    std::string cache_dir;
    bool no_cache = false;
    std::string format = "text";
    std::uint64_t seed = 1;
    int r_max = 0;
    unsigned grid_bits = 64;
    double tol_rho = 0.01;
    int tol_gtilde = 5;
    std::string minor_arc = "best-known";
    std::string out_path;
    std::vector<std::string> only;
};

void add_table_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--smax", o.s_max, "Largest s in each table (default 6k^2)")->check(CLI::PositiveNumber);
    cmd->add_option("--max-passes", o.max_passes, "Refinement pass limit")->check(CLI::PositiveNumber);
    cmd->add_option("--cache-dir", o.cache_dir, "Table cache directory (else $WEYLBOUND_CACHE_DIR)");
    cmd->add_flag("--no-cache", o.no_cache, "Neither read nor write the table cache");
    cmd->add_option("--r-max", o.r_max, "Largest r in the quasi-diagonal search (default 4k)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--grid-bits", o.grid_bits, "Stored exponents are rounded up to multiples of 2^-bits")
        ->check(CLI::Range(8u, 4096u));
}

void add_format_flag(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", o.out_path, "Write the output to this file instead of stdout");
}

RunConfig run_config(const Options& o) {
    RunConfig c;
    c.degrees = o.degrees;
    if (o.s_max > 0) c.s_max = o.s_max;
    c.max_passes = o.max_passes;
    if (!o.cache_dir.empty()) c.cache_dir = o.cache_dir;
    c.use_cache = !o.no_cache;
    c.format = *parse_format(o.format);
    c.seed = o.seed;
    c.r_max = o.r_max;
    c.grid_bits = o.grid_bits;
    c.tol_rho = o.tol_rho;
    c.tol_gtilde = o.tol_gtilde;
    c.policy = *parse_policy(o.minor_arc);
    return c;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    write_file_atomic(o.out_path, text);
}

std::string render(OutputFormat f, const json& j, const std::string& csv, const std::string& text) {
    switch (f) {
    case OutputFormat::Json:
        return j.dump(2) + "\n";
    case OutputFormat::Csv:
        return csv;
    case OutputFormat::Text:
        break;
    }
    return text;
}

void flush_warnings(const TableProvider& tables, std::ostream& err) {
    for (const auto& w : tables.warnings()) err << "warning: " << w << '\n';
}

int cmd_exponents(const Options& o, std::ostream& out, std::ostream& err) {
    RunConfig cfg = run_config(o);
    for (int k : cfg.degrees) {
        if (k < 2) throw UsageFailure("degree k must be at least 2");
        if (cfg.s_max_for(k) < k + 2)
            throw UsageFailure("s_max must be at least k+2 (k=" + std::to_string(k) + ")");
    }
    TableProvider tables(cfg);
    tables.prefetch(cfg.degrees);
    std::string text;
    json many = json::array();
    for (int k : cfg.degrees) {
        const ExponentTable& t = tables.get(k);
        err << "degree " << k << ": " << (tables.was_cache_hit(k) ? "cache hit" : "computed") << ", " << t.passes()
            << " passes" << (t.converged() ? "" : ", NOT converged") << '\n';
        switch (cfg.format) {
        case OutputFormat::Json:
            many.push_back(table_to_json(t, cfg.engine()));
            break;
        case OutputFormat::Csv:
            if (cfg.degrees.size() > 1) text += "# k=" + std::to_string(k) + "\n";
            text += table_to_csv(t);
            break;
        case OutputFormat::Text: {
            std::ostringstream os;
            os << "k = " << k << ", s_max = " << t.s_max() << ", passes = " << t.passes()
               << (t.converged() ? ", converged" : ", not converged") << '\n';
            for (const auto& e : t.entries())
                os << e.s << '\t' << to_decimal(e.delta, 12) << '\t' << source_name(e.source) << '\t' << e.pass
                   << '\n';
            text += os.str();
            break;
        }
        }
    }
    if (cfg.format == OutputFormat::Json) text = (many.size() == 1 ? many[0] : json{{"tables", many}}).dump(1) + "\n";
    flush_warnings(tables, err);
    emit(o, out, text);
    return Success;
}

int require_single_degree(const Options& o) {
    if (o.degrees.size() != 1) throw UsageFailure("exactly one --k is required");
    return o.degrees.front();
}

int cmd_sigma(const Options& o, std::ostream& out, std::ostream& err) {
    const int k = require_single_degree(o);
    if (k < 4) throw UsageFailure("the minor-arc exponent requires k >= 4");
    RunConfig cfg = run_config(o);
    TableProvider tables(cfg);
    SigmaReport r = run_sigma(k, tables);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    emit(o, out, render(cfg.format, to_json(r), to_csv(r), to_text(r)));
    return Success;
}

int cmd_gtilde(const Options& o, std::ostream& out, std::ostream& err) {
    const int k = require_single_degree(o);
    if (k < 4) throw UsageFailure("the G~(k) bound requires k >= 4");
    RunConfig cfg = run_config(o);
    TableProvider tables(cfg);
    tables.prefetch({k - 1, k});
    GtildeReport r = run_gtilde(k, tables, cfg.policy);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    emit(o, out, render(cfg.format, to_json(r), to_csv(r), to_text(r)));
    return Success;
}

int cmd_reproduce(const Options& o, std::ostream& out, std::ostream& err) {
    RunConfig cfg = run_config(o);
    TableProvider tables(cfg);
    ReproduceReport r = reproduce(tables);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    emit(o, out, render(cfg.format, to_json(r), to_csv(r), to_text(r)));
    return r.all_within() ? Success : GateFailure;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
    RunConfig cfg = run_config(o);
    for (const auto& g : o.only)
        if (std::find(verify_groups().begin(), verify_groups().end(), g) == verify_groups().end())
            throw UsageFailure("unknown verify group '" + g + "'");
    auto results = run_verify(cfg.seed, o.only);
    emit(o, out, render(cfg.format, to_json(results, cfg.seed), to_csv(results), to_text(results)));
    for (const auto& p : results)
        if (!p.passed) return GateFailure;
    return Success;
}

struct OracleOptions {
    int k = 2;
    int s = 2;
    int b = 3;
    int r = 2;
    std::int64_t P = 10;
    double alpha = 0;
    std::vector<double> alphas;
    double theta = 1;
    double q = 1;
    double Pd = 10;
    std::int64_t n1 = 0, n2 = 0;
    bool have_n = false;
    bool scan = false;
    int samples = 0;
    double sigma = 0;
    bool accept_runtime = false;
};

std::string csv_cell(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

json witness_json(const oracles::MinorArcWitness& w) {
    return {{"in_minor", w.in_minor}, {"a", to_string(w.a)}, {"q", to_string(w.q)}};
}

std::string complex_text(std::complex<double> z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i  |f| = " << std::abs(z);
    return os.str();
}

int cmd_oracle(const std::string& which, const OracleOptions& a, const Options& o, std::ostream& out) {
    oracles::Limits limits;
    limits.accept_runtime = a.accept_runtime;
    json inputs, result, seed = nullptr;
    std::string text;

    if (which == "weylsum") {
        std::complex<double> f;
        if (!a.alphas.empty()) {
            inputs = {{"alphas", a.alphas}, {"P", a.P}};
            f = oracles::multi_weyl_sum(a.alphas, a.P, limits);
        } else {
            inputs = {{"k", a.k}, {"alpha", a.alpha}, {"P", a.P}};
            f = oracles::weyl_sum(a.k, a.alpha, a.P, limits);
        }
        result = {{"re", f.real()}, {"im", f.imag()}, {"abs", std::abs(f)}};
        text = complex_text(f);
    } else if (which == "jmean") {
        inputs = {{"s", a.s}, {"k", a.k}, {"P", a.P}};
        const std::uint64_t J = oracles::mean_value_count(a.s, a.k, a.P, limits);
        result = {{"count", J}};
        text = std::to_string(J);
    } else if (which == "upsilon") {
        if (a.have_n) {
            if (a.b != 3 || a.r != 2) throw UsageFailure("--n1/--n2 are supported for b=3, r=2 only");
            inputs = {{"b", 3}, {"r", 2}, {"P", a.P}, {"n1", a.n1}, {"n2", a.n2}};
            const std::uint64_t c = oracles::upsilon32_reduced(a.P, a.n1, a.n2);
            result = {{"count", c}, {"method", "reduced"}};
            text = std::to_string(c);
        } else {
            inputs = {{"b", a.b}, {"r", a.r}, {"P", a.P}};
            const auto u = oracles::upsilon_direct(a.b, a.r, a.P, limits);
            result = {{"max_count", u.max_count}, {"argmax", u.argmax}, {"method", "direct"}};
            text = std::to_string(u.max_count);
        }
    } else if (which == "minorarc") {
        if (a.samples > 0) {
            if (a.sigma <= 0) throw UsageFailure("--sigma must be positive when --samples is given");
            inputs = {{"k", a.k}, {"P", a.P}, {"samples", a.samples}, {"sigma", a.sigma}};
            seed = o.seed;
            const auto sup = oracles::empirical_minor_arc_sup(a.k, a.P, a.samples, a.sigma, o.seed, limits);
            result = {{"accepted", sup.accepted},
                      {"max_ratio", sup.max_ratio ? json(*sup.max_ratio) : json(nullptr)},
                      {"worst_alpha", sup.worst_alpha ? json(*sup.worst_alpha) : json(nullptr)}};
            text = result.dump();
        } else {
            inputs = {{"alpha", a.alpha}, {"P", a.P}, {"theta", a.theta}, {"k", a.k}, {"scan", a.scan}};
            const auto w = a.scan ? oracles::minor_arc_membership_scan(a.alpha, a.P, a.theta, a.k)
                                  : oracles::minor_arc_membership(a.alpha, a.P, a.theta, a.k);
            result = witness_json(w);
            text = std::string(w.in_minor ? "minor" : "major") + " " + to_string(w.a) + "/" + to_string(w.q);
        }
    } else if (which == "omega") {
        inputs = {{"q", a.q}, {"P", a.Pd}, {"r", a.r}, {"k", a.k}};
        const double w = oracles::omega_r(a.q, a.Pd, a.r, a.k);
        result = {{"value", w}};
        std::ostringstream os;
        os.precision(17);
        os << w;
        text = os.str();
    }

    const nlohmann::ordered_json record = {{"operation", which}, {"inputs", inputs}, {"seed", seed}, {"result", result}};
    const OutputFormat f = *parse_format(o.format);
    const std::string csv = "operation,inputs,seed,result\n" + which + "," + csv_cell(inputs.dump()) + "," +
                            (seed.is_null() ? "" : seed.dump()) + "," + csv_cell(result.dump()) + "\n";
    emit(o, out, f == OutputFormat::Json ? record.dump(2) + "\n" : render(f, json(), csv, text + "\n"));
    return Success;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exponent tables and minor-arc bounds for Waring's problem"};
    app.name("weylbound");
    app.require_subcommand(1);
    Options o;
    OracleOptions a;

    auto* exponents = app.add_subcommand("exponents", "Build or load converged exponent tables");
    exponents->add_option("--k", o.degrees, "Degree(s)")->required()->delimiter(',');
    add_table_flags(exponents, o);
    add_format_flag(exponents, o);

    auto* sigma = app.add_subcommand("sigma", "Minor-arc exponent sigma(k) and rho(k) = 1/sigma(k)");
    sigma->add_option("--k", o.degrees, "Degree, at least 4")->required();
    add_table_flags(sigma, o);
    add_format_flag(sigma, o);

    auto* gtilde = app.add_subcommand("gtilde", "Upper bound for G~(k)");
    gtilde->add_option("--k", o.degrees, "Degree, at least 4")->required();
    gtilde->add_option("--minor-arc", o.minor_arc, "Minor-arc exponent policy")
        ->check(CLI::IsMember({"theorem", "best-known"}));
    add_table_flags(gtilde, o);
    add_format_flag(gtilde, o);

    auto* repro = app.add_subcommand("reproduce", "Compare rho(k) and G~(k) with the literature");
    repro->add_option("--tol-rho", o.tol_rho, "Relative tolerance for rho(k)")->check(CLI::NonNegativeNumber);
    repro->add_option("--tol-gtilde", o.tol_gtilde, "Absolute tolerance for G~(k)")->check(CLI::NonNegativeNumber);
    repro->add_option("--minor-arc", o.minor_arc, "Minor-arc exponent policy")
        ->check(CLI::IsMember({"theorem", "best-known"}));
    add_table_flags(repro, o);
    add_format_flag(repro, o);

    auto* verify = app.add_subcommand("verify", "Run the brute-force property suite");
    verify->add_option("--seed", o.seed, "Seed for sampled inputs");
    verify->add_option("--only", o.only, "Restrict to these groups")->delimiter(',');
    add_format_flag(verify, o);

    auto* oracle = app.add_subcommand("oracle", "Evaluate one brute-force oracle");
    oracle->require_subcommand(1);
    auto common = [&](CLI::App* c) {
        c->add_flag("--accept-runtime", a.accept_runtime, "Lift the enumeration size guards");
        c->add_option("--seed", o.seed, "Seed, recorded in the output");
        add_format_flag(c, o);
    };
    auto* o_weyl = oracle->add_subcommand("weylsum", "f_k(alpha;P), or g(alpha;P) with --alphas");
    o_weyl->add_option("--k", a.k)->check(CLI::PositiveNumber);
    o_weyl->add_option("--alpha", a.alpha);
    o_weyl->add_option("--alphas", a.alphas)->delimiter(',');
    o_weyl->add_option("--P", a.P)->check(CLI::NonNegativeNumber);
    common(o_weyl);
    auto* o_j = oracle->add_subcommand("jmean", "J_{s,k}(P) by enumeration");
    o_j->add_option("--s", a.s)->check(CLI::PositiveNumber);
    o_j->add_option("--k", a.k)->check(CLI::PositiveNumber);
    o_j->add_option("--P", a.P)->check(CLI::PositiveNumber);
    common(o_j);
    auto* o_u = oracle->add_subcommand("upsilon", "Upsilon_{b,r}(P), or one bucket with --n1/--n2");
    o_u->add_option("--b", a.b)->check(CLI::PositiveNumber);
    o_u->add_option("--r", a.r)->check(CLI::PositiveNumber);
    o_u->add_option("--P", a.P)->check(CLI::PositiveNumber);
    auto* n1 = o_u->add_option("--n1", a.n1);
    auto* n2 = o_u->add_option("--n2", a.n2);
    n1->needs(n2);
    n2->needs(n1);
    common(o_u);
    auto* o_m = oracle->add_subcommand("minorarc", "Membership in the minor arcs, or a sampled sup with --samples");
    o_m->add_option("--alpha", a.alpha);
    o_m->add_option("--P", a.P)->check(CLI::PositiveNumber);
    o_m->add_option("--theta", a.theta)->check(CLI::PositiveNumber);
    o_m->add_option("--k", a.k)->check(CLI::PositiveNumber);
    o_m->add_flag("--scan", a.scan, "Decide by exhaustive scan");
    o_m->add_option("--samples", a.samples)->check(CLI::NonNegativeNumber);
    o_m->add_option("--sigma", a.sigma);
    common(o_m);
    auto* o_w = oracle->add_subcommand("omega", "Omega_r(q,P) at degree k");
    o_w->add_option("--q", a.q)->check(CLI::PositiveNumber);
    o_w->add_option("--P", a.Pd)->check(CLI::PositiveNumber);
    o_w->add_option("--r", a.r)->check(CLI::PositiveNumber);
    o_w->add_option("--k", a.k)->check(CLI::PositiveNumber);
    common(o_w);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }
    a.have_n = n1->count() > 0;

    try {
        if (*exponents) return cmd_exponents(o, out, err);
        if (*sigma) return cmd_sigma(o, out, err);
        if (*gtilde) return cmd_gtilde(o, out, err);
        if (*repro) return cmd_reproduce(o, out, err);
        if (*verify) return cmd_verify(o, out, err);
        for (auto* sub : oracle->get_subcommands())
            if (*sub) return cmd_oracle(sub->get_name(), a, o, out);
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << " (pass --accept-runtime to run anyway)\n";
        return UsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return GateFailure;
    }
    return UsageError;
}

}  // namespace weylbound::cli
