#pragma once

#include <vector>

#include <Eigen/Dense>

#include "schwarzchain/bounds.hpp"
#include "schwarzchain/geometry.hpp"
#include "schwarzchain/transmission.hpp"

namespace schwarzchain {

/// Solution of -u'' + lambda*u = 0 on (a, b) expressed in the fundamental
/// basis u = A*s_a + B*s_b with s_a(x) = sinh(w(x-a)) * e^{-wH} and
/// s_b(x) = sinh(w(b-x)) * e^{-wH}, w = sqrt(lambda), H = b - a (affine basis
/// x-a, b-x when lambda = 0).  The scaling keeps every basis value in [0, 1/2]
/// so that large lambda underflows instead of overflowing.
class ModeSolution {
public:
    ModeSolution(double lambda, double a, double b, double coef_a, double coef_b);

    double value(double x) const;
    double deriv(double x) const;

    double lambda() const { return lambda_; }
    double coef_a() const { return coef_a_; }
    double coef_b() const { return coef_b_; }

private:
    double lambda_, a_, b_, w_, h_;
    double coef_a_, coef_b_;
};

/// Solve the 2x2 system fixing (A, B) from one condition per end:
/// a Dirichlet end fixes u, a Robin end fixes p*u - u' on the left or
/// p*u + u' on the right.  Throws numerical_error if the system is singular.
ModeSolution subdomain_mode_solution(double lambda, double a, double b,
                                     Transmission left, Transmission right,
                                     double g_left, double g_right);

/// Interface iteration of a single vertical mode on the chain.
///
/// State vector of dimension 2*(N-1), ordered interface by interface from the
/// left, left-going datum before right-going datum: for interface i between
/// subdomains i and i+1 the entries are
///   s[2i-2] = datum consumed at a_{i+1} by subdomain i+1 (produced by i),
///   s[2i-1] = datum consumed at b_i by subdomain i (produced by i+1).
/// One sweep solves every subdomain from the previous state and re-extracts
/// all traces, so the matrix couples each interface only to its neighbours.
struct ModeIteration {
    double lambda = 0.0;
    Transmission trans;
    Eigen::MatrixXd matrix;
    double spectral_radius = 0.0;
};

ModeIteration build_mode_iteration(const DomainChain& chain, double lambda,
                                   Transmission trans);

/// Largest eigenvalue modulus via a dense eigensolve (dimension <= 200) or
/// power iteration with a 1e-12 relative stagnation test above that.
double spectral_radius(const Eigen::MatrixXd& m);

/// Power iteration estimate of the spectral radius: growth factors are
/// averaged geometrically over an even window to tolerate modulus-paired
/// eigenvalues; iterates until the estimate stagnates to rel_tol.
double spectral_radius_power(const Eigen::MatrixXd& m, double rel_tol = 1e-12,
                             int max_steps = 200000);

/// Exact per-mode radius compared against the closed-form estimate under one
/// convention.
struct RadiusVsBound {
    double lambda = 0.0;
    double radius = 0.0;
    double bound = 0.0;
    bool bound_holds = false; ///< radius <= bound + 1e-10
    Convention convention = Convention::sqrt_lambda;
};

RadiusVsBound mode_radius_vs_bound(const DomainChain& chain, double lambda,
                                   Transmission trans, Convention convention);

/// One case of the convention validation experiment.
struct ConventionCase {
    double lambda = 0.0;
    int n_sub = 0;
    bool robin_trace = false;
    double radius = 0.0;
    double bound_printed = 0.0;
    double bound_sqrt = 0.0;
};

/// Decides which exponent convention upper-bounds the exact mode radii.
///
/// For every lambda in lambdas (and their square roots), every N in n_list
/// and both Dirichlet and Robin(p) traces, the exact spectral radius is
/// compared against both readings with the given slack.  The validated
/// convention is the printed one if it always holds (it is the tighter
/// claim), else the sqrt one; throws numerical_error if neither does.
struct ConventionValidation {
    Convention validated = Convention::sqrt_lambda;
    bool printed_holds = false;
    bool sqrt_holds = false;
    std::vector<ConventionCase> cases;
};

ConventionValidation validate_convention(double delta, double sub_len,
                                         const std::vector<double>& lambdas,
                                         const std::vector<int>& n_list,
                                         double p, double slack = 1e-10);

/// Default validation experiment: lambda in {pi^2/4, nu1(q)^2, mu1(q)^2,
/// pi^2} with q = 10, N in {3, 5, 10}, p = 10.
ConventionValidation validate_convention_default(double delta, double sub_len);

} // namespace schwarzchain
