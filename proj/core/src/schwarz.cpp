#include "schwarzchain/schwarz.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "schwarzchain/errors.hpp"

namespace schwarzchain {

namespace {

double field_norm(const std::vector<Eigen::VectorXd>& fields, NormKind kind,
                  double hx, double hy) {
    if (kind == NormKind::max) {
        double m = 0.0;
        for (const auto& u : fields) {
            if (u.size() != 0) m = std::max(m, u.cwiseAbs().maxCoeff());
        }
        return m;
    }
    double s = 0.0;
    for (const auto& u : fields) s += u.squaredNorm();
    return std::sqrt(hx * hy * s);
}

double tail_contraction(const std::vector<double>& history) {
    const int n = static_cast<int>(history.size());
    const int w = std::min(10, n - 1);
    if (w < 1) return std::numeric_limits<double>::quiet_NaN();
    const double head = history[n - 1 - w];
    const double tail = history[n - 1];
    if (!(head > 0.0) || !(tail > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::pow(tail / head, 1.0 / w);
}

} // namespace

IterationReport run_schwarz(const RunConfig& config, OperatorCache* cache) {
    const DomainChain chain(config.n_sub, config.sub_len, config.delta);
    if (!(config.tol > 0.0)) throw invalid_config("tolerance must be positive");
    if (config.max_iter < 1) throw invalid_config("max_iter must be at least 1");
    const int n = config.n_sub;

    OperatorCache local;
    OperatorCache& ops_cache = cache ? *cache : local;
    std::vector<SubdomainGrid> grids;
    std::vector<std::shared_ptr<const SubdomainOperator>> ops;
    grids.reserve(n);
    ops.reserve(n);
    for (int j = 1; j <= n; ++j) {
        grids.push_back(make_grid(chain, j, config.grid));
        ops.push_back(ops_cache.get(grids.back(), config.bc, config.trans,
                                    EndFlags{j == 1, j == n}));
    }
    const double hx = grids.front().hx;
    const double hy = grids.front().hy;

    // Zero source, zero external data: iterates are errors.  One stream fills
    // all subdomains in chain order so runs are reproducible from the seed.
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<Eigen::VectorXd> fields(n);
    for (int j = 0; j < n; ++j) {
        fields[j].resize(ops[j]->n_unknowns());
        for (Eigen::Index k = 0; k < fields[j].size(); ++k) fields[j](k) = unit(rng);
    }

    IterationReport report;
    report.config = config;
    if (field_norm(fields, config.norm, hx, hy) < config.tol) {
        report.observed_rho = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    const Eigen::VectorXd no_source;
    std::vector<Eigen::VectorXd> next(n);
    for (int it = 1; it <= config.max_iter; ++it) {
        // Gather every trace from the previous sweep before any solve.
        std::vector<Eigen::VectorXd> g_left(n), g_right(n);
        for (int j = 1; j <= n; ++j) {
            // Interface abscissae are taken in each operator's own frame so
            // congruent subdomains can share one cached operator.
            if (j > 1) {
                const auto& nb = *ops[j - 2];
                g_left[j - 1] = extract_trace(config.trans, Side::left, nb,
                                              fields[j - 2],
                                              nb.grid().origin_x + config.sub_len);
            }
            if (j < n) {
                const auto& nb = *ops[j];
                g_right[j - 1] = extract_trace(config.trans, Side::right, nb,
                                               fields[j],
                                               nb.grid().origin_x + 2.0 * config.delta);
            }
        }
        for (int j = 0; j < n; ++j) {
            next[j] = ops[j]->solve(ops[j]->build_rhs(no_source, g_left[j], g_right[j]));
        }
        fields.swap(next);

        const double e = field_norm(fields, config.norm, hx, hy);
        if (!std::isfinite(e)) throw numerical_error("iteration produced a non-finite norm");
        report.error_history.push_back(e);
        if (e < config.tol) {
            report.iters = it;
            report.observed_rho = tail_contraction(report.error_history);
            return report;
        }
    }
    report.iters = config.max_iter;
    report.exceeded = true;
    report.observed_rho = tail_contraction(report.error_history);
    return report;
}

double observed_contraction(const IterationReport& report, int window) {
    if (window < 1) throw invalid_config("window must be at least 1");
    const auto& h = report.error_history;
    const int n = static_cast<int>(h.size());
    if (n < window + 1) throw invalid_config("history shorter than window + 1");
    for (int k = n - 1 - window; k < n; ++k) {
        if (!(h[k] > 0.0)) throw invalid_config("history entries must be positive");
    }
    return std::pow(h[n - 1] / h[n - 1 - window], 1.0 / window);
}

std::vector<IterationReport> scalability_sweep(const RunConfig& base,
                                               const std::vector<int>& n_list,
                                               OperatorCache* cache) {
    OperatorCache local;
    OperatorCache& shared = cache ? *cache : local;
    std::vector<IterationReport> reports;
    reports.reserve(n_list.size());
    for (int n : n_list) {
        RunConfig config = base;
        config.n_sub = n;
        reports.push_back(run_schwarz(config, &shared));
    }
    return reports;
}

} // namespace schwarzchain
