#pragma once

#include <vector>

#include "schwarzchain/geometry.hpp"

namespace schwarzchain {

/// The three boundary-condition pairs whose vertical frequencies are roots of
/// a transcendental characteristic function rather than multiples of pi.
enum class RootFamily { dr, rr, nr };

/// Characteristic function whose positive roots are the admissible vertical
/// frequencies:
///   dr:  q*sin(x) + x*cos(x)
///   rr:  2*q*x*cos(x) + (q^2 - x^2)*sin(x)
///   nr:  x*sin(x) - q*cos(x)
double char_function(RootFamily family, double q, double x);

/// k-th positive root of the characteristic function, located by scanning the
/// analytic bracket for the first sign change and bisecting to width <= tol.
/// Brackets: dr (k*pi - pi/2, k*pi), nr ((k-1)*pi, (k-1/2)*pi), rr (0, pi)
/// with k = 1 only.  Deterministic; throws numerical_error if no sign change
/// is found after nudging the bracket ends inward by 1e-12.
double find_root(RootFamily family, double q, int k, double tol = 1e-12);

enum class QLimit { to_zero, to_infinity };

/// Limit of the first root as q -> 0 or q -> infinity:
/// dr: pi/2, pi;  rr: 0, pi;  nr: 0, pi/2.
double limit_frequency(RootFamily family, QLimit limit);

/// One eigenpair of the vertical two-point problem -phi'' = lambda*phi on
/// (0, 1) under a BcPair: phi_k(y) is stored through its frequency, the
/// L2(0,1)-normalizing constant, and the pair that shaped it.
struct EigenMode {
    int k = 0;              ///< index as listed by eigenmodes()
    double freq = 0.0;      ///< vertical frequency; lambda = freq^2
    double lambda = 0.0;    ///< eigenvalue
    double norm_const = 0.0;///< multiplicative normalization, > 0
    BcPair pair;            ///< boundary pair (carries q and orientation)
};

/// Eigenpairs in increasing lambda order.
///
/// Index ranges: DD, DR, NR use k = 1..k_max; DN, NN use k = 0..k_max
/// (NN's k = 0 mode is the constant with lambda = 0, normalized to 1).
/// RR exposes only its first eigenpair, so k_max must be 1.
std::vector<EigenMode> eigenmodes(const BcPair& pair, int k_max, double tol = 1e-12);

/// Evaluate the normalized eigenfunction at y in [0, 1].  Mirrored pairs
/// (e.g. Robin below Dirichlet) evaluate the canonical shape at 1 - y.
double eval_eigenfunction(const EigenMode& mode, double y);

} // namespace schwarzchain
