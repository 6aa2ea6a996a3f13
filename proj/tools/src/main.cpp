#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dataset.hpp"
#include "schwarzchain/errors.hpp"
#include "schwarzchain/fourier1d.hpp"
#include "schwarzchain/schwarz.hpp"

#ifndef SCHWARZCHAIN_VERSION
#define SCHWARZCHAIN_VERSION "0.0.0"
#endif

namespace {

using schwarzchain::Convention;
using schwarzchain::invalid_config;
using schwarzchain::numerical_error;
using namespace schwarzchain::tools;

struct Common {
    std::string out;
    std::string format = "csv";
    std::string convention = "auto";
    std::string config_path;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "Output file (default: stdout)");
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--convention", c.convention,
                    "Decay-exponent convention for bounds: the value as printed, its "
                    "square root, or pick whichever the exact mode radii validate")
        ->check(CLI::IsMember({"paper", "sqrt", "auto"}))
        ->capture_default_str();
    sub->add_option("--config", c.config_path,
                    "JSON file with defaults for any option (flags take precedence)");
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream is(path);
    if (!is) throw invalid_config("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw invalid_config(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw invalid_config("config file must hold a JSON object");
    return j;
}

/// Fill `var` from the config object unless the flag was given explicitly.
template <class T>
void cfg_get(const json& cfg, CLI::App* sub, const std::string& name, T& var) {
    const CLI::Option* opt = sub->get_option_no_throw("--" + name);
    if (opt && opt->count() > 0) return;
    auto it = cfg.find(name);
    if (it == cfg.end()) return;
    try {
        var = it->get<T>();
    } catch (const json::exception& e) {
        throw invalid_config("config key '" + name + "': " + e.what());
    }
}

void merge_common(const json& cfg, CLI::App* sub, Common& c) {
    cfg_get(cfg, sub, "out", c.out);
    cfg_get(cfg, sub, "format", c.format);
    cfg_get(cfg, sub, "convention", c.convention);
}

Convention resolve_convention(const std::string& requested, double delta, double sub_len) {
    if (requested != "auto") return schwarzchain::convention_from_name(requested);
    return schwarzchain::validate_convention_default(delta, sub_len).validated;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schwarz iterations on a chain of rectangles: transverse eigenmodes, "
                 "contraction bounds, and the discrete runs that test them"};
    app.set_version_flag("--version", SCHWARZCHAIN_VERSION);
    app.require_subcommand(1);

    // eigs
    auto* eigs = app.add_subcommand("eigs", "Catalogue transverse eigenmodes of a boundary pair");
    Common eigs_c;
    std::string eigs_pair = "DD";
    double eigs_q = 10.0;
    int eigs_kmax = 8;
    eigs->add_option("--pair", eigs_pair, "Bottom/top boundary pair")
        ->check(CLI::IsMember({"DD", "DR", "DN", "RR", "NR", "NN"}, CLI::ignore_case))
        ->capture_default_str();
    eigs->add_option("--q", eigs_q, "Robin weight of the outer boundary")->capture_default_str();
    eigs->add_option("--kmax", eigs_kmax, "Highest mode index")->capture_default_str();
    add_common(eigs, eigs_c);
    eigs->callback([&] {
        const json cfg = load_config(eigs_c.config_path);
        merge_common(cfg, eigs, eigs_c);
        cfg_get(cfg, eigs, "pair", eigs_pair);
        cfg_get(cfg, eigs, "q", eigs_q);
        cfg_get(cfg, eigs, "kmax", eigs_kmax);
        write_dataset(eigs_c.out, eigs_c.format, cmd_eigs(eigs_pair, eigs_q, eigs_kmax));
    });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Slowest-mode contraction bound per boundary pair");
    Common bounds_c;
    double bounds_delta = 0.1, bounds_len = 1.0, bounds_q = 10.0;
    bounds->add_option("--delta", bounds_delta, "Half overlap")->capture_default_str();
    bounds->add_option("--L", bounds_len, "Subdomain spacing")->capture_default_str();
    bounds->add_option("--q", bounds_q, "Robin weight of the outer boundary")->capture_default_str();
    add_common(bounds, bounds_c);
    bounds->callback([&] {
        const json cfg = load_config(bounds_c.config_path);
        merge_common(cfg, bounds, bounds_c);
        cfg_get(cfg, bounds, "delta", bounds_delta);
        cfg_get(cfg, bounds, "L", bounds_len);
        cfg_get(cfg, bounds, "q", bounds_q);
        const Convention conv = resolve_convention(bounds_c.convention, bounds_delta, bounds_len);
        write_dataset(bounds_c.out, bounds_c.format,
                      cmd_bounds(bounds_delta, bounds_len, bounds_q, conv, bounds_c.convention));
    });

    // modes
    auto* modes = app.add_subcommand(
        "modes", "Interface-iteration spectral radius against the bound over a frequency sweep");
    Common modes_c;
    int modes_n = 3, modes_points = 40;
    double modes_len = 1.0, modes_delta = 0.1, modes_p = 10.0;
    double modes_lmin = 1e-2, modes_lmax = 1e3;
    std::string modes_method = "psm";
    modes->add_option("--N", modes_n, "Number of subdomains")->capture_default_str();
    modes->add_option("--L", modes_len, "Subdomain spacing")->capture_default_str();
    modes->add_option("--delta", modes_delta, "Half overlap")->capture_default_str();
    modes->add_option("--method", modes_method, "Trace choice: Dirichlet (psm) or Robin (osm)")
        ->check(CLI::IsMember({"psm", "osm"}))
        ->capture_default_str();
    modes->add_option("--p", modes_p, "Robin trace weight (osm)")->capture_default_str();
    modes->add_option("--lmin", modes_lmin, "Smallest frequency parameter")->capture_default_str();
    modes->add_option("--lmax", modes_lmax, "Largest frequency parameter")->capture_default_str();
    modes->add_option("--points", modes_points, "Log-grid size")->capture_default_str();
    add_common(modes, modes_c);
    modes->callback([&] {
        const json cfg = load_config(modes_c.config_path);
        merge_common(cfg, modes, modes_c);
        cfg_get(cfg, modes, "N", modes_n);
        cfg_get(cfg, modes, "L", modes_len);
        cfg_get(cfg, modes, "delta", modes_delta);
        cfg_get(cfg, modes, "method", modes_method);
        cfg_get(cfg, modes, "p", modes_p);
        cfg_get(cfg, modes, "lmin", modes_lmin);
        cfg_get(cfg, modes, "lmax", modes_lmax);
        cfg_get(cfg, modes, "points", modes_points);
        const Convention conv = resolve_convention(modes_c.convention, modes_delta, modes_len);
        write_dataset(modes_c.out, modes_c.format,
                      cmd_modes(modes_n, modes_len, modes_delta, modes_method == "osm", modes_p,
                                modes_lmin, modes_lmax, modes_points, conv, modes_c.convention));
    });

    // solve
    auto* solve = app.add_subcommand("solve", "Run one Schwarz iteration and report its error history");
    Common solve_c;
    SolveParams sp;
    sp.seed = schwarzchain::RunConfig{}.seed;
    std::string solve_method = "psm";
    solve->add_option("--N", sp.n_sub, "Number of subdomains")->capture_default_str();
    solve->add_option("--L", sp.sub_len, "Subdomain spacing")->capture_default_str();
    solve->add_option("--delta", sp.delta, "Half overlap")->capture_default_str();
    solve->add_option("--pair", sp.pair, "Bottom/top boundary pair")
        ->check(CLI::IsMember({"DD", "DR", "DN", "RR", "NR", "NN"}, CLI::ignore_case))
        ->capture_default_str();
    solve->add_option("--q", sp.q, "Robin weight of the outer boundary")->capture_default_str();
    solve->add_option("--method", solve_method, "Trace choice: Dirichlet (psm) or Robin (osm)")
        ->check(CLI::IsMember({"psm", "osm"}))
        ->capture_default_str();
    solve->add_option("--p", sp.p, "Robin trace weight (osm)")->capture_default_str();
    solve->add_option("--nx", sp.nx, "Interior grid lines across one subdomain")->capture_default_str();
    solve->add_option("--ny", sp.ny, "Interior grid lines across the strip height")->capture_default_str();
    solve->add_option("--tol", sp.tol, "Absolute error tolerance")->capture_default_str();
    solve->add_option("--max-iter", sp.max_iter, "Sweep limit")->capture_default_str();
    solve->add_option("--seed", sp.seed, "Random-start seed")->capture_default_str();
    solve->add_option("--norm", sp.norm, "Error norm: grid-weighted l2 or max")
        ->check(CLI::IsMember({"l2", "max"}))
        ->capture_default_str();
    add_common(solve, solve_c);
    solve->callback([&] {
        const json cfg = load_config(solve_c.config_path);
        merge_common(cfg, solve, solve_c);
        cfg_get(cfg, solve, "N", sp.n_sub);
        cfg_get(cfg, solve, "L", sp.sub_len);
        cfg_get(cfg, solve, "delta", sp.delta);
        cfg_get(cfg, solve, "pair", sp.pair);
        cfg_get(cfg, solve, "q", sp.q);
        cfg_get(cfg, solve, "method", solve_method);
        cfg_get(cfg, solve, "p", sp.p);
        cfg_get(cfg, solve, "nx", sp.nx);
        cfg_get(cfg, solve, "ny", sp.ny);
        cfg_get(cfg, solve, "tol", sp.tol);
        cfg_get(cfg, solve, "max-iter", sp.max_iter);
        cfg_get(cfg, solve, "seed", sp.seed);
        cfg_get(cfg, solve, "norm", sp.norm);
        sp.robin_trace = solve_method == "osm";
        write_dataset(solve_c.out, solve_c.format, cmd_solve(sp));
    });

    // table2
    auto* table2 = app.add_subcommand(
        "table2", "Iteration counts for both trace choices across boundary pairs and chain lengths");
    Common table2_c;
    std::string table2_grids = "70";
    std::vector<int> table2_n = {3, 4, 5, 10, 20, 30, 40, 50};
    std::uint64_t table2_seed = schwarzchain::RunConfig{}.seed;
    double table2_tol = 1e-6, table2_p = 10.0;
    int table2_maxit = 401;
    table2->add_option("--grids", table2_grids, "Mesh selection")
        ->check(CLI::IsMember({"70", "90", "both"}))
        ->capture_default_str();
    table2->add_option("--n-list", table2_n, "Chain lengths")->delimiter(',')->capture_default_str();
    table2->add_option("--seed", table2_seed, "Random-start seed")->capture_default_str();
    table2->add_option("--tol", table2_tol, "Absolute error tolerance")->capture_default_str();
    table2->add_option("--max-iter", table2_maxit, "Sweep limit")->capture_default_str();
    table2->add_option("--p", table2_p, "Robin trace weight of the osm column half")
        ->capture_default_str();
    add_common(table2, table2_c);
    table2->callback([&] {
        const json cfg = load_config(table2_c.config_path);
        merge_common(cfg, table2, table2_c);
        cfg_get(cfg, table2, "grids", table2_grids);
        cfg_get(cfg, table2, "n-list", table2_n);
        cfg_get(cfg, table2, "seed", table2_seed);
        cfg_get(cfg, table2, "tol", table2_tol);
        cfg_get(cfg, table2, "max-iter", table2_maxit);
        cfg_get(cfg, table2, "p", table2_p);
        json reports;
        const Dataset d = cmd_table2(table2_grids, table2_n, table2_seed, table2_tol,
                                     table2_maxit, table2_p, &reports);
        write_dataset(table2_c.out, table2_c.format, d);
        if (!table2_c.out.empty()) {
            const std::string path = table2_c.out + ".reports.json";
            std::ofstream os(path);
            if (!os) throw invalid_config("cannot open output file '" + path + "'");
            os << reports.dump(2) << "\n";
        }
    });

    // fig2left
    auto* f2l = app.add_subcommand(
        "fig2left", "First root of each characteristic family as the Robin weight varies");
    Common f2l_c;
    double f2l_qmin = 1e-3, f2l_qmax = 1e3;
    int f2l_points = 200;
    f2l->add_option("--qmin", f2l_qmin, "Smallest Robin weight")->capture_default_str();
    f2l->add_option("--qmax", f2l_qmax, "Largest Robin weight")->capture_default_str();
    f2l->add_option("--points", f2l_points, "Log-grid size")->capture_default_str();
    add_common(f2l, f2l_c);
    f2l->callback([&] {
        const json cfg = load_config(f2l_c.config_path);
        merge_common(cfg, f2l, f2l_c);
        cfg_get(cfg, f2l, "qmin", f2l_qmin);
        cfg_get(cfg, f2l, "qmax", f2l_qmax);
        cfg_get(cfg, f2l, "points", f2l_points);
        write_dataset(f2l_c.out, f2l_c.format, cmd_fig2left(f2l_qmin, f2l_qmax, f2l_points));
    });

    // fig2right
    auto* f2r = app.add_subcommand(
        "fig2right", "Slowest-mode contraction bounds as the Robin weight varies");
    Common f2r_c;
    double f2r_qmin = 1e-3, f2r_qmax = 1e3, f2r_delta = 0.1, f2r_len = 1.0;
    int f2r_points = 200;
    f2r->add_option("--qmin", f2r_qmin, "Smallest Robin weight")->capture_default_str();
    f2r->add_option("--qmax", f2r_qmax, "Largest Robin weight")->capture_default_str();
    f2r->add_option("--points", f2r_points, "Log-grid size")->capture_default_str();
    f2r->add_option("--delta", f2r_delta, "Half overlap")->capture_default_str();
    f2r->add_option("--L", f2r_len, "Subdomain spacing")->capture_default_str();
    add_common(f2r, f2r_c);
    f2r->callback([&] {
        const json cfg = load_config(f2r_c.config_path);
        merge_common(cfg, f2r, f2r_c);
        cfg_get(cfg, f2r, "qmin", f2r_qmin);
        cfg_get(cfg, f2r, "qmax", f2r_qmax);
        cfg_get(cfg, f2r, "points", f2r_points);
        cfg_get(cfg, f2r, "delta", f2r_delta);
        cfg_get(cfg, f2r, "L", f2r_len);
        const Convention conv = resolve_convention(f2r_c.convention, f2r_delta, f2r_len);
        write_dataset(f2r_c.out, f2r_c.format,
                      cmd_fig2right(f2r_qmin, f2r_qmax, f2r_points, f2r_delta, f2r_len, conv,
                                    f2r_c.convention));
    });

    // ordering
    auto* ord = app.add_subcommand("ordering", "Verify the strict ordering of the per-pair bounds");
    Common ord_c;
    double ord_delta = 0.1, ord_len = 1.0, ord_q = 10.0;
    ord->add_option("--delta", ord_delta, "Half overlap")->capture_default_str();
    ord->add_option("--L", ord_len, "Subdomain spacing")->capture_default_str();
    ord->add_option("--q", ord_q, "Robin weight of the outer boundary")->capture_default_str();
    add_common(ord, ord_c);
    ord->callback([&] {
        const json cfg = load_config(ord_c.config_path);
        merge_common(cfg, ord, ord_c);
        cfg_get(cfg, ord, "delta", ord_delta);
        cfg_get(cfg, ord, "L", ord_len);
        cfg_get(cfg, ord, "q", ord_q);
        const Convention conv = resolve_convention(ord_c.convention, ord_delta, ord_len);
        write_dataset(ord_c.out, ord_c.format,
                      cmd_ordering(ord_delta, ord_len, ord_q, conv, ord_c.convention));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const invalid_config& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
