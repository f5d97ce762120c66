#include "weylbound/pipeline.hpp"

#include "weylbound/reference_values.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace weylbound {

std::optional<OutputFormat> parse_format(std::string_view name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "text") return OutputFormat::Text;
    return std::nullopt;
}

EngineConfig RunConfig::engine() const {
    EngineConfig e;
    e.r_max = r_max;
    e.grid_bits = grid_bits;
    e.max_passes = max_passes;
    return e;
}

TableProvider::TableProvider(RunConfig config) : config_(std::move(config)) {
    if (config_.max_passes < 1) throw std::domain_error("max_passes must be at least 1");
}

const ExponentTable& TableProvider::get(int k) {
    if (auto it = tables_.find(k); it != tables_.end()) return it->second;
    if (k < 2) throw std::domain_error("degree k must be at least 2");
    const int s_max = config_.s_max_for(k);
    if (s_max < k + 2) throw std::domain_error("s_max must be at least k+2");
    const EngineConfig engine = config_.engine();

    std::optional<TableCache> cache;
    if (config_.use_cache) cache.emplace(resolve_cache_dir(config_.cache_dir));
    if (cache) {
        std::string warning;
        if (auto table = cache->load(k, s_max, engine, &warning)) {
            hits_[k] = true;
            return tables_.emplace(k, std::move(*table)).first->second;
        }
        if (!warning.empty()) warnings_.push_back(warning);
    }
    ExponentTable table = converge(k, s_max, engine);
    if (!table.converged())
        warnings_.push_back("degree " + std::to_string(k) + " table did not converge within " +
                            std::to_string(engine.max_passes) + " passes");
    if (cache) cache->store(table, engine);
    hits_[k] = false;
    return tables_.emplace(k, std::move(table)).first->second;
}

void TableProvider::prefetch(const std::vector<int>& degrees) {
    std::map<int, std::future<ExponentTable>> jobs;
    const EngineConfig engine = config_.engine();
    for (int k : degrees) {
        if (tables_.count(k) || jobs.count(k) || k < 2) continue;
        const int s_max = config_.s_max_for(k);
        if (s_max < k + 2) continue;
        if (config_.use_cache) {
            std::string warning;
            if (auto table = TableCache(resolve_cache_dir(config_.cache_dir)).load(k, s_max, engine, &warning)) {
                hits_[k] = true;
                tables_.emplace(k, std::move(*table));
                continue;
            }
            if (!warning.empty()) warnings_.push_back(warning);
        }
        jobs[k] = std::async(std::launch::async, [k, s_max, engine] { return converge(k, s_max, engine); });
    }
    for (auto& [k, job] : jobs) {
        ExponentTable table = job.get();
        if (!table.converged())
            warnings_.push_back("degree " + std::to_string(k) + " table did not converge within " +
                                std::to_string(engine.max_passes) + " passes");
        if (config_.use_cache) TableCache(resolve_cache_dir(config_.cache_dir)).store(table, engine);
        hits_[k] = false;
        tables_.emplace(k, std::move(table));
    }
}

bool TableProvider::was_cache_hit(int k) const {
    auto it = hits_.find(k);
    return it != hits_.end() && it->second;
}

SigmaReport run_sigma(int k, TableProvider& tables) {
    if (k < 4) throw std::domain_error("the minor-arc exponent requires k >= 4");
    SigmaReport report;
    const ExponentTable& lower = tables.get(k - 1);
    report.sigma = sigma_of_k(lower, k);
    report.table_converged = lower.converged();
    if (!lower.converged()) report.warnings.push_back("degree-" + std::to_string(k - 1) + " table not converged");
    if (!report.sigma.maximizer_interior)
        report.warnings.push_back("sigma maximizer at the table boundary; increase s_max");
    return report;
}

GtildeReport run_gtilde(int k, TableProvider& tables, MinorArcPolicy policy) {
    GtildeReport report;
    SigmaReport sigma = run_sigma(k, tables);
    const ExponentTable& table = tables.get(k);
    report.sigma = sigma.sigma;
    report.choice = select_minor_arc_exponent(sigma.sigma, policy);
    report.result = gtilde_bound(table, report.choice.sigma);
    report.tables_converged = sigma.table_converged && table.converged();
    report.warnings = sigma.warnings;
    if (!table.converged()) report.warnings.push_back("degree-" + std::to_string(k) + " table not converged");
    return report;
}

bool ReproduceReport::all_within() const {
    for (const auto& r : rho)
        if (!r.within) return false;
    for (const auto& g : gtilde)
        if (!g.within) return false;
    return true;
}

ReproduceReport reproduce(TableProvider& tables) {
    const RunConfig& cfg = tables.config();
    ReproduceReport report;
    std::map<int, SigmaResult> sigmas;
    std::vector<int> degrees;
    for (int k = 7; k <= 20; ++k) degrees.push_back(k);
    tables.prefetch(degrees);
    for (int k = 8; k <= 20; ++k) sigmas[k] = run_sigma(k, tables).sigma;

    for (int k = 9; k <= 20; ++k) {
        RhoRow row;
        row.k = k;
        row.computed = sigmas[k].rho;
        row.display = render_rho(row.computed);
        row.published = *reference::published_rho(k);
        row.relative_delta = std::abs(to_double(Rational(row.computed - row.published)) / to_double(row.published));
        row.within = row.relative_delta <= cfg.tol_rho;
        const std::string published = to_decimal(row.published, 2);
        row.exact_two_places = row.display == published || to_decimal(row.computed, 2) == published;
        report.rho.push_back(row);

        if (k == 10)
            report.improvements.push_back(
                {k, "weyl", row.computed, reference::weyl_rho(k), row.computed < reference::weyl_rho(k)});
        if (auto parsell = reference::parsell_rho(k))
            report.improvements.push_back({k, "parsell", row.computed, *parsell, row.computed < *parsell});
    }

    for (int k = 8; k <= 20; ++k) {
        MinorArcChoice choice = select_minor_arc_exponent(sigmas[k], cfg.policy);
        GtildeResult g = gtilde_bound(tables.get(k), choice.sigma);
        GtildeRow row;
        row.k = k;
        row.computed = g.bound;
        row.published = *reference::published_gtilde(k);
        row.delta = Integer(g.bound - row.published).get_si();
        row.within = std::labs(row.delta) <= cfg.tol_gtilde;
        row.sigma_source = choice.source;
        report.gtilde.push_back(row);
    }
    report.warnings = tables.warnings();
    return report;
}

}  // namespace weylbound
