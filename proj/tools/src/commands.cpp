#include "commands.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "schwarzchain/discretize.hpp"
#include "schwarzchain/errors.hpp"
#include "schwarzchain/fourier1d.hpp"
#include "schwarzchain/geometry.hpp"
#include "schwarzchain/schwarz.hpp"
#include "schwarzchain/spectral.hpp"

namespace schwarzchain::tools {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo)) throw invalid_config("need 0 < min < max for a log grid");
    if (points < 2) throw invalid_config("need at least 2 grid points");
    std::vector<double> g(points);
    const double r = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) g[i] = lo * std::exp(r * i);
    g.back() = hi;
    return g;
}

} // namespace

Dataset cmd_eigs(const std::string& pair_label, double q, int k_max) {
    const BcPair pair = bc_pair_from_label(pair_label, q);
    // Only the first mode of the double-Robin pair is catalogued.
    const bool rr = pair.bottom == BcKind::robin && pair.top == BcKind::robin;
    const int k_eff = rr ? std::min(k_max, 1) : k_max;
    Dataset d;
    d.command = "eigs";
    d.set("pair", pair.label());
    d.set("q", pair.q);
    d.set("k_max", k_eff);
    d.columns = {"k", "freq", "lambda", "norm_const"};
    for (const EigenMode& m : eigenmodes(pair, k_eff)) {
        d.rows.push_back({m.k, m.freq, m.lambda, m.norm_const});
    }
    return d;
}

Dataset cmd_bounds(double delta, double sub_len, double q, Convention conv,
                   const std::string& requested) {
    Dataset d;
    d.command = "bounds";
    d.set("delta", delta);
    d.set("L", sub_len);
    d.set("q", q);
    d.set("convention", convention_name(conv));
    d.set("convention_requested", requested);
    d.columns = {"pair", "lambda_min", "decay", "value"};
    for (const char* lbl : {"DD", "DR", "DN", "RR", "NR", "NN"}) {
        const ContractionBound b = pair_bound(bc_pair_from_label(lbl, q), delta, sub_len, conv);
        d.rows.push_back({b.pair_label, b.lambda_min, b.decay, b.value});
    }
    return d;
}

Dataset cmd_modes(int n_sub, double sub_len, double delta, bool robin_trace,
                  double p, double lambda_min, double lambda_max, int points,
                  Convention conv, const std::string& requested) {
    const DomainChain chain(n_sub, sub_len, delta);
    const Transmission trans = robin_trace ? Transmission::robin(p) : Transmission::dirichlet();
    Dataset d;
    d.command = "modes";
    d.set("N", n_sub);
    d.set("L", sub_len);
    d.set("delta", delta);
    d.set("method", robin_trace ? "osm" : "psm");
    if (robin_trace) d.set("p", p);
    d.set("convention", convention_name(conv));
    d.set("convention_requested", requested);
    d.columns = {"lambda", "radius", "bound", "holds"};
    for (double lambda : log_grid(lambda_min, lambda_max, points)) {
        const RadiusVsBound r = mode_radius_vs_bound(chain, lambda, trans, conv);
        d.rows.push_back({r.lambda, r.radius, r.bound, r.bound_holds});
    }
    return d;
}

Dataset cmd_solve(const SolveParams& sp) {
    RunConfig cfg;
    cfg.n_sub = sp.n_sub;
    cfg.sub_len = sp.sub_len;
    cfg.delta = sp.delta;
    cfg.bc = bc_pair_from_label(sp.pair, sp.q);
    cfg.trans = sp.robin_trace ? Transmission::robin(sp.p) : Transmission::dirichlet();
    cfg.grid = GridSpec::counts(sp.nx, sp.ny);
    cfg.tol = sp.tol;
    cfg.max_iter = sp.max_iter;
    cfg.seed = sp.seed;
    if (sp.norm == "l2") {
        cfg.norm = NormKind::l2_grid;
    } else if (sp.norm == "max") {
        cfg.norm = NormKind::max;
    } else {
        throw invalid_config("unknown norm '" + sp.norm + "'");
    }

    const IterationReport rep = run_schwarz(cfg);
    Dataset d;
    d.command = "solve";
    d.set("N", sp.n_sub);
    d.set("L", sp.sub_len);
    d.set("delta", sp.delta);
    d.set("pair", cfg.bc.label());
    d.set("q", cfg.bc.q);
    d.set("method", sp.robin_trace ? "osm" : "psm");
    if (sp.robin_trace) d.set("p", sp.p);
    d.set("nx", sp.nx);
    d.set("ny", sp.ny);
    d.set("tol", sp.tol);
    d.set("max_iter", sp.max_iter);
    d.set("seed", sp.seed);
    d.set("norm", sp.norm);
    d.set("iters", rep.iters);
    d.set("exceeded", rep.exceeded);
    d.set("observed_rho", rep.observed_rho);
    d.columns = {"iter", "error"};
    for (std::size_t i = 0; i < rep.error_history.size(); ++i) {
        d.rows.push_back({static_cast<int>(i) + 1, rep.error_history[i]});
    }
    return d;
}

namespace {

struct TableColumn {
    const char* header;
    const char* pair;
    double q;
};

constexpr TableColumn kTableColumns[] = {
    {"DD", "DD", 0.0},     {"DR(10)", "DR", 10.0}, {"DN", "DN", 0.0},
    {"RR(10)", "RR", 10.0}, {"NR(10)", "NR", 10.0}, {"NN", "NN", 0.0},
    {"RR(0.1)", "RR", 0.1},
};

struct TableGrid {
    int id;
    int nx, ny;
    double delta;
};

std::string cell_count(const IterationReport& r) {
    return r.exceeded ? ">" + std::to_string(r.config.max_iter) : std::to_string(r.iters);
}

} // namespace

Dataset cmd_table2(const std::string& grids, const std::vector<int>& n_list,
                   std::uint64_t seed, double tol, int max_iter, double p,
                   json* reports) {
    std::vector<TableGrid> grid_list;
    if (grids == "70" || grids == "both") grid_list.push_back({70, 70, 50, 10.0 / 51.0});
    if (grids == "90" || grids == "both") grid_list.push_back({90, 90, 50, 10.0 / 71.0});
    if (grid_list.empty()) throw invalid_config("grids must be 70, 90, or both");
    if (n_list.empty()) throw invalid_config("n-list must not be empty");

    Dataset d;
    d.command = "table2";
    d.set("grids", grids);
    d.set("n_list", n_list);
    d.set("L", 1.0);
    d.set("p", p);
    d.set("tol", tol);
    d.set("max_iter", max_iter);
    d.set("seed", seed);
    d.columns = {"grid", "N"};
    for (const TableColumn& col : kTableColumns) d.columns.push_back(col.header);

    if (reports) *reports = json::array();
    for (const TableGrid& g : grid_list) {
        // (grid row index, column) -> formatted cell
        std::map<std::pair<int, int>, std::string> cells;
        int ci = 0;
        for (const TableColumn& col : kTableColumns) {
            OperatorCache cache; // shared across N and both trace choices
            RunConfig base;
            base.sub_len = 1.0;
            base.delta = g.delta;
            base.bc = bc_pair_from_label(col.pair, col.q);
            base.grid = GridSpec::counts(g.nx, g.ny);
            base.tol = tol;
            base.max_iter = max_iter;
            base.seed = seed;
            for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
                RunConfig cfg = base;
                cfg.n_sub = n_list[ni];
                cfg.trans = Transmission::dirichlet();
                const IterationReport psm = run_schwarz(cfg, &cache);
                cfg.trans = Transmission::robin(p);
                const IterationReport osm = run_schwarz(cfg, &cache);
                cells[{static_cast<int>(ni), ci}] = cell_count(psm) + " - " + cell_count(osm);
                if (reports) {
                    reports->push_back(json{{"grid", g.id},
                                            {"nx", g.nx},
                                            {"ny", g.ny},
                                            {"delta", g.delta},
                                            {"N", n_list[ni]},
                                            {"column", col.header},
                                            {"pair", col.pair},
                                            {"q", col.q},
                                            {"psm_iters", psm.iters},
                                            {"psm_exceeded", psm.exceeded},
                                            {"psm_rho", psm.observed_rho},
                                            {"osm_iters", osm.iters},
                                            {"osm_exceeded", osm.exceeded},
                                            {"osm_rho", osm.observed_rho}});
                }
            }
            ++ci;
        }
        for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
            std::vector<json> row = {g.id, n_list[ni]};
            for (int c = 0; c < static_cast<int>(std::size(kTableColumns)); ++c) {
                row.push_back(cells.at({static_cast<int>(ni), c}));
            }
            d.rows.push_back(std::move(row));
        }
    }
    return d;
}

Dataset cmd_fig2left(double q_min, double q_max, int points) {
    Dataset d;
    d.command = "fig2left";
    d.set("q_min", q_min);
    d.set("q_max", q_max);
    d.set("points", points);
    d.columns = {"q", "mu1", "nu1", "tau1"};
    for (double q : log_grid(q_min, q_max, points)) {
        d.rows.push_back({q, find_root(RootFamily::dr, q, 1), find_root(RootFamily::nr, q, 1),
                          find_root(RootFamily::rr, q, 1)});
    }
    return d;
}

Dataset cmd_fig2right(double q_min, double q_max, int points, double delta,
                      double sub_len, Convention conv, const std::string& requested) {
    const auto decay = [conv](double freq) {
        return conv == Convention::sqrt_lambda ? freq : freq * freq;
    };
    Dataset d;
    d.command = "fig2right";
    d.set("q_min", q_min);
    d.set("q_max", q_max);
    d.set("points", points);
    d.set("delta", delta);
    d.set("L", sub_len);
    d.set("convention", convention_name(conv));
    d.set("convention_requested", requested);
    d.columns = {"q", "rho_dd", "rho_dr", "rho_nr", "rho_dn"};
    const double rho_dd = contraction_rho(decay(kPi), delta, sub_len);
    const double rho_dn = contraction_rho(decay(kPi / 2.0), delta, sub_len);
    for (double q : log_grid(q_min, q_max, points)) {
        const double mu1 = find_root(RootFamily::dr, q, 1);
        const double nu1 = find_root(RootFamily::nr, q, 1);
        d.rows.push_back({q, rho_dd, contraction_rho(decay(mu1), delta, sub_len),
                          contraction_rho(decay(nu1), delta, sub_len), rho_dn});
    }
    return d;
}

Dataset cmd_ordering(double delta, double sub_len, double q, Convention conv,
                     const std::string& requested) {
    const OrderingReport rep = check_orderings(delta, sub_len, q, conv);
    Dataset d;
    d.command = "ordering";
    d.set("delta", delta);
    d.set("L", sub_len);
    d.set("q", q);
    d.set("convention", convention_name(conv));
    d.set("convention_requested", requested);
    d.set("all_hold", rep.all_hold);
    d.columns = {"name", "lhs", "rhs", "margin", "holds"};
    for (const OrderingEntry& e : rep.entries) {
        d.rows.push_back({e.name, e.lhs, e.rhs, e.margin, e.holds});
    }
    return d;
}

} // namespace schwarzchain::tools
