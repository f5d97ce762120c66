#include "weylbound/pipeline.hpp"

#include <iomanip>
#include <sstream>

namespace weylbound {

using nlohmann::json;

namespace {

json optional_rational(const std::optional<Rational>& x) {
    return x ? rational_to_json(*x) : json(nullptr);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fixed(double x, int places) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(places) << x;
    return os.str();
}

void append_warnings(std::ostringstream& os, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) os << "warning: " << w << '\n';
}

}  // namespace

json to_json(const SigmaResult& s) {
    return {{"k", s.k},
            {"sigma", rational_to_json(s.sigma, 12)},
            {"rho", rational_to_json(s.rho, 6)},
            {"rho_display", render_rho(s.rho)},
            {"argmax_s", s.argmax_s},
            {"delta", rational_to_json(s.delta_choice, 12)},
            {"sigma_classical", rational_to_json(s.sigma_classical, 12)},
            {"sigma_weyl", rational_to_json(s.sigma_weyl, 12)},
            {"tau_heath_brown", optional_rational(s.tau_hb)},
            {"maximizer_interior", s.maximizer_interior}};
}

json to_json(const SigmaReport& r) {
    json j = to_json(r.sigma);
    if (r.sigma.k >= 9 && r.sigma.k <= 20) {
        const ComparisonReport c = comparison_report(r.sigma.k, r.sigma);
        j["comparison"] = {{"rho_weyl", rational_to_json(c.rho_weyl, 2)},
                           {"rho_heath_brown", rational_to_json(c.rho_heath_brown, 2)},
                           {"rho_parsell", optional_rational(c.rho_parsell)},
                           {"rho_published", optional_rational(c.rho_published)},
                           {"improves_on_weyl", c.improves_on_weyl},
                           {"improves_on_heath_brown", c.improves_on_heath_brown},
                           {"improves_on_parsell", c.improves_on_parsell ? json(*c.improves_on_parsell) : json(nullptr)}};
    }
    j["table_converged"] = r.table_converged;
    j["warnings"] = r.warnings;
    return j;
}

json to_json(const GtildeReport& r) {
    return {{"k", r.result.k},
            {"bound", to_string(r.result.bound)},
            {"m", r.result.best_m},
            {"s", r.result.best_s},
            {"sigma_used", rational_to_json(r.result.sigma_used, 12)},
            {"sigma_source", r.choice.source},
            {"sigma", to_json(r.sigma)},
            {"tables_converged", r.tables_converged},
            {"warnings", r.warnings}};
}

json to_json(const ReproduceReport& r) {
    json rho = json::array(), gtilde = json::array(), improvements = json::array();
    for (const auto& row : r.rho)
        rho.push_back({{"k", row.k},
                       {"computed", rational_to_json(row.computed, 6)},
                       {"display", row.display},
                       {"published", to_decimal(row.published, 2)},
                       {"relative_delta", row.relative_delta},
                       {"within", row.within},
                       {"exact_two_places", row.exact_two_places}});
    for (const auto& row : r.gtilde)
        gtilde.push_back({{"k", row.k},
                          {"computed", to_string(row.computed)},
                          {"published", row.published},
                          {"delta", row.delta},
                          {"within", row.within},
                          {"sigma_source", row.sigma_source}});
    for (const auto& row : r.improvements)
        improvements.push_back({{"k", row.k},
                                {"against", row.against},
                                {"rho", rational_to_json(row.computed_rho, 6)},
                                {"reference_rho", rational_to_json(row.reference_rho, 3)},
                                {"improves", row.improves}});
    return {{"rho", std::move(rho)},
            {"gtilde", std::move(gtilde)},
            {"improvements", std::move(improvements)},
            {"all_within", r.all_within()},
            {"warnings", r.warnings}};
}

json to_json(const std::vector<PropertyResult>& results, std::uint64_t seed) {
    json rows = json::array();
    bool ok = true;
    for (const auto& p : results) {
        ok = ok && p.passed;
        rows.push_back({{"group", p.group}, {"name", p.name}, {"passed", p.passed}, {"detail", p.detail}});
    }
    return {{"seed", seed}, {"passed", ok}, {"properties", std::move(rows)}};
}

std::string to_text(const SigmaReport& r) {
    const SigmaResult& s = r.sigma;
    std::ostringstream os;
    os << "k = " << s.k << '\n'
       << "sigma = " << to_string(s.sigma) << " (" << to_decimal(s.sigma, 12) << ")\n"
       << "rho = " << render_rho(s.rho) << '\n'
       << "argmax s = " << s.argmax_s << '\n'
       << "classical sigma = " << to_decimal(s.sigma_classical, 12) << '\n'
       << "weyl rho = " << to_decimal(Rational(1 / s.sigma_weyl), 2) << '\n';
    if (s.tau_hb) os << "heath-brown rho = " << to_decimal(Rational(1 / *s.tau_hb), 2) << '\n';
    if (s.k >= 9 && s.k <= 20) {
        const ComparisonReport c = comparison_report(s.k, s);
        if (c.rho_published) os << "published rho = " << to_decimal(*c.rho_published, 2) << '\n';
        if (c.rho_parsell)
            os << "parsell rho = " << to_decimal(*c.rho_parsell, 3) << (*c.improves_on_parsell ? " (improved)" : "")
               << '\n';
    }
    append_warnings(os, r.warnings);
    return os.str();
}

std::string to_text(const GtildeReport& r) {
    std::ostringstream os;
    os << "k = " << r.result.k << '\n'
       << "G~(k) <= " << to_string(r.result.bound) << '\n'
       << "m = " << r.result.best_m << ", s = " << r.result.best_s << '\n'
       << "minor-arc exponent = " << to_decimal(r.result.sigma_used, 12) << " (" << r.choice.source << ")\n"
       << "theorem rho(k) = " << render_rho(r.sigma.rho) << '\n';
    append_warnings(os, r.warnings);
    return os.str();
}

std::string to_text(const ReproduceReport& r) {
    std::ostringstream os;
    os << std::left;
    os << "rho(k)\n"
       << std::setw(4) << "k" << std::setw(12) << "computed" << std::setw(12) << "published" << std::setw(12)
       << "rel.delta" << "status\n";
    for (const auto& row : r.rho)
        os << std::setw(4) << row.k << std::setw(12) << row.display << std::setw(12) << to_decimal(row.published, 2)
           << std::setw(12) << fixed(row.relative_delta, 6) << (row.within ? "ok" : "OUTSIDE")
           << (row.exact_two_places ? " exact" : "") << '\n';
    os << "\nG~(k)\n"
       << std::setw(4) << "k" << std::setw(10) << "computed" << std::setw(11) << "published" << std::setw(7)
       << "delta" << std::setw(13) << "sigma" << "status\n";
    for (const auto& row : r.gtilde)
        os << std::setw(4) << row.k << std::setw(10) << to_string(row.computed) << std::setw(11) << row.published
           << std::setw(7) << row.delta << std::setw(13) << row.sigma_source << (row.within ? "ok" : "OUTSIDE")
           << '\n';
    os << "\nimprovements\n";
    for (const auto& row : r.improvements)
        os << std::setw(4) << row.k << std::setw(9) << row.against << std::setw(12) << render_rho(row.computed_rho)
           << std::setw(12) << to_decimal(row.reference_rho, 3) << (row.improves ? "yes" : "NO") << '\n';
    append_warnings(os, r.warnings);
    os << (r.all_within() ? "all rows within tolerance\n" : "some rows outside tolerance\n");
    return os.str();
}

std::string to_text(const std::vector<PropertyResult>& results) {
    std::ostringstream os;
    int failed = 0;
    for (const auto& p : results) {
        os << (p.passed ? "PASS " : "FAIL ") << '[' << p.group << "] " << p.name;
        if (!p.detail.empty()) os << " -- " << p.detail;
        os << '\n';
        if (!p.passed) ++failed;
    }
    os << results.size() - failed << '/' << results.size() << " properties passed\n";
    return os.str();
}

std::string to_csv(const SigmaReport& r) {
    const SigmaResult& s = r.sigma;
    std::ostringstream os;
    os << "k,sigma_num,sigma_den,rho_display,argmax_s,maximizer_interior,table_converged\n"
       << s.k << ',' << to_string(s.sigma.get_num()) << ',' << to_string(s.sigma.get_den()) << ','
       << render_rho(s.rho) << ',' << s.argmax_s << ',' << s.maximizer_interior << ',' << r.table_converged << '\n';
    return os.str();
}

std::string to_csv(const GtildeReport& r) {
    std::ostringstream os;
    os << "k,bound,m,s,sigma_source,sigma_num,sigma_den,tables_converged\n"
       << r.result.k << ',' << to_string(r.result.bound) << ',' << r.result.best_m << ',' << r.result.best_s << ','
       << r.choice.source << ',' << to_string(r.result.sigma_used.get_num()) << ','
       << to_string(r.result.sigma_used.get_den()) << ',' << r.tables_converged << '\n';
    return os.str();
}

std::string to_csv(const ReproduceReport& r) {
    std::ostringstream os;
    os << "quantity,k,computed,published,delta,within,note\n";
    for (const auto& row : r.rho)
        os << "rho," << row.k << ',' << row.display << ',' << to_decimal(row.published, 2) << ','
           << fixed(row.relative_delta, 8) << ',' << row.within << ','
           << (row.exact_two_places ? "exact" : "") << '\n';
    for (const auto& row : r.gtilde)
        os << "gtilde," << row.k << ',' << to_string(row.computed) << ',' << row.published << ',' << row.delta << ','
           << row.within << ',' << row.sigma_source << '\n';
    for (const auto& row : r.improvements)
        os << "improvement," << row.k << ',' << render_rho(row.computed_rho) << ','
           << to_decimal(row.reference_rho, 3) << ",," << row.improves << ',' << row.against << '\n';
    return os.str();
}

std::string to_csv(const std::vector<PropertyResult>& results) {
    std::ostringstream os;
    os << "group,name,passed,detail\n";
    for (const auto& p : results)
        os << p.group << ',' << csv_escape(p.name) << ',' << p.passed << ',' << csv_escape(p.detail) << '\n';
    return os.str();
}

}  // namespace weylbound
