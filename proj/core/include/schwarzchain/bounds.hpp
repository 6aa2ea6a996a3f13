#pragma once

#include <string>
#include <vector>

#include "schwarzchain/geometry.hpp"

namespace schwarzchain {

/// How a vertical eigenvalue lambda is turned into the decay parameter that
/// enters the exponentials of the contraction estimate.
///
/// `as_printed` substitutes lambda itself, reproducing the published closed
/// form verbatim.  `sqrt_lambda` substitutes sqrt(lambda), the rate at which
/// the mode -u'' + lambda*u = 0 actually decays in x.  Only the latter
/// upper-bounds the exact per-mode interface spectral radius (see
/// fourier1d.hpp's validate_convention); the former is kept so the printed
/// curves can be reproduced as-is.
enum class Convention { as_printed, sqrt_lambda };

std::string convention_name(Convention c);
Convention convention_from_name(const std::string& name);

/// Contraction estimate for one mode with decay parameter theta >= 0:
///   rho = (e^{2*theta*delta} + e^{theta*L}) / (e^{2*theta*delta + theta*L} + 1).
/// Evaluated in a form whose exponents are all non-positive, so large theta
/// underflows gracefully instead of overflowing.  rho(0) = 1, rho is strictly
/// decreasing in theta, and rho < 1 for theta > 0.
double contraction_rho(double theta, double delta, double sub_len);

/// Robin-transmission contraction estimate with parameter p >= 0:
/// phi(lambda, delta, 0) equals contraction_rho(lambda, delta, L) exactly and
/// phi is bounded by that value for every p.  lambda > 0 required.
double phi_osm(double lambda, double delta, double p, double sub_len);

/// Companion quantity controlling the sign balance of the Robin reflection:
/// strictly decreasing in p, positive at p = 0, negative for large p.
/// lambda > 0 required; throws numerical_error if the denominator vanishes.
double zeta_osm(double lambda, double delta, double p, double sub_len);

/// Worst-mode contraction estimate of a boundary pair: the smallest vertical
/// eigenvalue lambda_min is mapped to a decay parameter per the convention
/// and substituted into contraction_rho.  value == 1 iff lambda_min == 0 (NN).
struct ContractionBound {
    std::string pair_label;
    double lambda_min = 0.0; ///< smallest vertical eigenvalue
    double decay = 0.0;      ///< parameter substituted into the exponentials
    double delta = 0.0;
    double sub_len = 0.0;
    Convention convention = Convention::sqrt_lambda;
    double value = 0.0;
};

ContractionBound pair_bound(const BcPair& pair, double delta, double sub_len,
                            Convention convention, double root_tol = 1e-12);

/// One inequality of the bound-ordering chains, with its margin.
struct OrderingEntry {
    std::string name;  ///< e.g. "DD<DR"
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    double margin = 0.0; ///< rhs - lhs
};

/// Evaluates the two strict ordering chains of the six pair bounds at given
/// (delta, sub_len, q):  DD < DR < DN < NR < NN = 1  and  DD < RR < 1.
struct OrderingReport {
    double delta = 0.0;
    double sub_len = 0.0;
    double q = 0.0;
    Convention convention = Convention::sqrt_lambda;
    std::vector<OrderingEntry> entries;
    bool all_hold = false;
};

OrderingReport check_orderings(double delta, double sub_len, double q,
                               Convention convention);

} // namespace schwarzchain
