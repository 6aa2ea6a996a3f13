#pragma once

#include <cstdint>
#include <vector>

#include "schwarzchain/discretize.hpp"
#include "schwarzchain/geometry.hpp"
#include "schwarzchain/transmission.hpp"

namespace schwarzchain {

enum class NormKind { l2_grid, max };

/// One Schwarz run on the homogeneous problem: with zero source and zero
/// external data the iterates are the errors themselves, so convergence is
/// measured directly on the iterate norm.
struct RunConfig {
    int n_sub = 2;
    double sub_len = 1.0;
    double delta = 0.1;
    BcPair bc;
    Transmission trans;           ///< Dirichlet traces or Robin(p) traces
    GridSpec grid;
    double tol = 1e-6;
    int max_iter = 401;
    std::uint64_t seed = 8993;
    NormKind norm = NormKind::l2_grid;
};

struct IterationReport {
    RunConfig config;
    int iters = 0;                  ///< sweeps until the norm fell below tol
    bool exceeded = false;          ///< stopped at max_iter instead
    std::vector<double> error_history; ///< norm after each sweep, length iters
    double observed_rho = 0.0;      ///< geometric-mean contraction, last <= 10 sweeps
};

/// Run the parallel iteration: every subdomain is solved from the traces of
/// its neighbours' previous iterates (Jacobi ordering), starting from one
/// seeded uniform[-1, 1] stream consumed in subdomain order.  Results do not
/// depend on the order subdomain solves execute within a sweep.  An optional
/// cache shares factorizations across runs.
IterationReport run_schwarz(const RunConfig& config, OperatorCache* cache = nullptr);

/// Geometric mean of successive error ratios over the final `window` sweeps.
/// Requires at least window + 1 strictly positive history entries.
double observed_contraction(const IterationReport& report, int window);

/// One run per N with identical settings and seed policy.
std::vector<IterationReport> scalability_sweep(const RunConfig& base,
                                               const std::vector<int>& n_list,
                                               OperatorCache* cache = nullptr);

} // namespace schwarzchain
