#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "schwarzchain/bounds.hpp"

namespace schwarzchain::tools {

Dataset cmd_eigs(const std::string& pair, double q, int k_max);

Dataset cmd_bounds(double delta, double sub_len, double q, Convention conv,
                   const std::string& requested);

Dataset cmd_modes(int n_sub, double sub_len, double delta, bool robin_trace,
                  double p, double lambda_min, double lambda_max, int points,
                  Convention conv, const std::string& requested);

struct SolveParams {
    int n_sub = 3;
    double sub_len = 1.0;
    double delta = 10.0 / 51.0;
    std::string pair = "DD";
    double q = 10.0;
    bool robin_trace = false;
    double p = 10.0;
    int nx = 70;
    int ny = 50;
    double tol = 1e-6;
    int max_iter = 401;
    std::uint64_t seed = 0;
    std::string norm = "l2";
};

Dataset cmd_solve(const SolveParams& sp);

/// Iteration-count table over the seven boundary configurations.  `grids`
/// selects the 70- or 90-column mesh (or both).  When `reports` is non-null
/// it receives one JSON record per table cell with the raw run data.
Dataset cmd_table2(const std::string& grids, const std::vector<int>& n_list,
                   std::uint64_t seed, double tol, int max_iter, double p,
                   json* reports);

Dataset cmd_fig2left(double q_min, double q_max, int points);

Dataset cmd_fig2right(double q_min, double q_max, int points, double delta,
                      double sub_len, Convention conv, const std::string& requested);

Dataset cmd_ordering(double delta, double sub_len, double q, Convention conv,
                     const std::string& requested);

} // namespace schwarzchain::tools
