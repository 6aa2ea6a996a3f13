#include "schwarzchain/fourier1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "schwarzchain/errors.hpp"
#include "schwarzchain/spectral.hpp"

namespace schwarzchain {

namespace {

// sinh(z) * e^{-s} and cosh(z) * e^{-s} for 0 <= z <= s, without overflow.
double scaled_sinh(double z, double s) {
    return 0.5 * (std::exp(z - s) - std::exp(-z - s));
}
double scaled_cosh(double z, double s) {
    return 0.5 * (std::exp(z - s) + std::exp(-z - s));
}

} // namespace

ModeSolution::ModeSolution(double lambda, double a, double b, double coef_a, double coef_b)
    : lambda_(lambda), a_(a), b_(b), w_(std::sqrt(lambda)), h_(b - a),
      coef_a_(coef_a), coef_b_(coef_b) {}

double ModeSolution::value(double x) const {
    if (lambda_ == 0.0) return coef_a_ * (x - a_) + coef_b_ * (b_ - x);
    const double s = w_ * h_;
    return coef_a_ * scaled_sinh(w_ * (x - a_), s) + coef_b_ * scaled_sinh(w_ * (b_ - x), s);
}

double ModeSolution::deriv(double x) const {
    if (lambda_ == 0.0) return coef_a_ - coef_b_;
    const double s = w_ * h_;
    return w_ * (coef_a_ * scaled_cosh(w_ * (x - a_), s) - coef_b_ * scaled_cosh(w_ * (b_ - x), s));
}

ModeSolution subdomain_mode_solution(double lambda, double a, double b,
                                     Transmission left, Transmission right,
                                     double g_left, double g_right) {
    if (!(b > a)) throw invalid_config("mode solution requires b > a");
    if (lambda < 0.0) throw invalid_config("mode solution requires lambda >= 0");
    const double w = std::sqrt(lambda);
    const double H = b - a;
    const double s = w * H;

    // Rows of the 2x2 condition system in the scaled basis (s_a, s_b).
    double sa_a, sb_a, dsa_a, dsb_a; // values and derivatives at x = a
    double sa_b, sb_b, dsa_b, dsb_b; // values and derivatives at x = b
    if (lambda == 0.0) {
        sa_a = 0.0;   sb_a = H;    dsa_a = 1.0;  dsb_a = -1.0;
        sa_b = H;     sb_b = 0.0;  dsa_b = 1.0;  dsb_b = -1.0;
    } else {
        sa_a = 0.0;                    sb_a = scaled_sinh(s, s);
        dsa_a = w * scaled_cosh(0, s); dsb_a = -w * scaled_cosh(s, s);
        sa_b = scaled_sinh(s, s);      sb_b = 0.0;
        dsa_b = w * scaled_cosh(s, s); dsb_b = -w * scaled_cosh(0, s);
    }

    double r11, r12; // left condition row
    if (left.is_robin()) {
        r11 = left.p * sa_a - dsa_a;
        r12 = left.p * sb_a - dsb_a;
    } else {
        r11 = sa_a;
        r12 = sb_a;
    }
    double r21, r22; // right condition row
    if (right.is_robin()) {
        r21 = right.p * sa_b + dsa_b;
        r22 = right.p * sb_b + dsb_b;
    } else {
        r21 = sa_b;
        r22 = sb_b;
    }

    const double det = r11 * r22 - r12 * r21;
    const double scale = std::max({std::abs(r11) * std::abs(r22), std::abs(r12) * std::abs(r21), 1e-300});
    if (std::abs(det) <= 1e-14 * scale) {
        throw numerical_error("trace condition system is singular, lambda = " + std::to_string(lambda));
    }
    const double ca = (g_left * r22 - g_right * r12) / det;
    const double cb = (r11 * g_right - r21 * g_left) / det;
    return ModeSolution(lambda, a, b, ca, cb);
}

namespace {

double apply_left_trace(const ModeSolution& u, Transmission trans, double x) {
    return trans.is_robin() ? trans.p * u.value(x) - u.deriv(x) : u.value(x);
}
double apply_right_trace(const ModeSolution& u, Transmission trans, double x) {
    return trans.is_robin() ? trans.p * u.value(x) + u.deriv(x) : u.value(x);
}

} // namespace

ModeIteration build_mode_iteration(const DomainChain& chain, double lambda,
                                   Transmission trans) {
    const int n = chain.n_sub();
    const int dim = 2 * (n - 1);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    auto idx_l = [](int i) { return 2 * (i - 1); };     // datum at a_{i+1}
    auto idx_r = [](int i) { return 2 * (i - 1) + 1; }; // datum at b_i

    for (int j = 1; j <= n; ++j) {
        const Transmission left = (j == 1) ? Transmission::dirichlet() : trans;
        const Transmission right = (j == n) ? Transmission::dirichlet() : trans;
        struct Input { bool is_left; int col; };
        std::vector<Input> inputs;
        if (j >= 2) inputs.push_back({true, idx_l(j - 1)});
        if (j <= n - 1) inputs.push_back({false, idx_r(j)});
        for (const Input& in : inputs) {
            const double gl = in.is_left ? 1.0 : 0.0;
            const double gr = in.is_left ? 0.0 : 1.0;
            const ModeSolution u = subdomain_mode_solution(lambda, chain.a(j), chain.b(j),
                                                           left, right, gl, gr);
            if (j <= n - 1) m(idx_l(j), in.col) += apply_left_trace(u, trans, chain.a(j + 1));
            if (j >= 2) m(idx_r(j - 1), in.col) += apply_right_trace(u, trans, chain.b(j - 1));
        }
    }

    ModeIteration it;
    it.lambda = lambda;
    it.trans = trans;
    it.matrix = std::move(m);
    it.spectral_radius = spectral_radius(it.matrix);
    return it;
}

namespace {

// Renormalized repeated squaring: rho(M) = lim ||M^m||^{1/m}.  With m = 2^k
// and per-step renormalization the estimate is exact up to kappa^{1/m}positive,
// which 48 squarings push far below 1e-10.
double spectral_radius_squaring(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd a = m;
    double log_scale = 0.0; // log ||M^m|| accumulated across renormalizations
    double inv_m = 1.0;
    for (int k = 0; k < 48; ++k) {
        const double norm = a.norm();
        if (norm == 0.0) return 0.0;
        a /= norm;
        log_scale = 2.0 * (log_scale + std::log(norm));
        inv_m *= 0.5;
        a = (a * a).eval();
    }
    const double norm = a.norm();
    if (norm == 0.0) return 0.0;
    return std::exp((log_scale + std::log(norm)) * inv_m * 0.5);
}

} // namespace

double spectral_radius_power(const Eigen::MatrixXd& m, double rel_tol, int max_steps) {
    const Eigen::Index dim = m.rows();
    if (dim == 0) return 0.0;
    Eigen::VectorXd x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = 1.0 + 1e-3 * static_cast<double>(i) / static_cast<double>(dim);
    x.normalize();

    constexpr int kWindow = 32; // even, so modulus-paired eigenvalues cancel
    std::vector<double> log_ratios;
    log_ratios.reserve(kWindow);
    double prev_est = -1.0;
    int stable = 0;
    for (int step = 0; step < max_steps; ++step) {
        Eigen::VectorXd y = m * x;
        const double growth = y.norm();
        if (growth == 0.0) return 0.0;
        x = y / growth;
        if (static_cast<int>(log_ratios.size()) == kWindow) log_ratios.erase(log_ratios.begin());
        log_ratios.push_back(std::log(growth));
        if (static_cast<int>(log_ratios.size()) < kWindow) continue;
        double sum = 0.0;
        for (double r : log_ratios) sum += r;
        const double est = std::exp(sum / kWindow);
        if (prev_est >= 0.0 && std::abs(est - prev_est) <= rel_tol * std::max(est, 1e-300)) {
            if (++stable >= 8) return est;
        } else {
            stable = 0;
        }
        prev_est = est;
    }
    throw numerical_error("power iteration did not stagnate");
}

double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw invalid_config("spectral radius needs a square matrix");
    if (m.rows() == 0) return 0.0;
    if (m.rows() <= 200) {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
        if (solver.info() != Eigen::Success) {
            throw numerical_error("dense eigensolver failed");
        }
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    try {
        return spectral_radius_power(m);
    } catch (const numerical_error&) {
        return spectral_radius_squaring(m);
    }
}

RadiusVsBound mode_radius_vs_bound(const DomainChain& chain, double lambda,
                                   Transmission trans, Convention convention) {
    RadiusVsBound r;
    r.lambda = lambda;
    r.convention = convention;
    r.radius = build_mode_iteration(chain, lambda, trans).spectral_radius;
    const double decay = convention == Convention::sqrt_lambda ? std::sqrt(lambda) : lambda;
    r.bound = contraction_rho(decay, chain.delta(), chain.sub_len());
    r.bound_holds = r.radius <= r.bound + 1e-10;
    return r;
}

ConventionValidation validate_convention(double delta, double sub_len,
                                         const std::vector<double>& lambdas,
                                         const std::vector<int>& n_list,
                                         double p, double slack) {
    // Each lambda is probed alongside its square root so both readings are
    // exercised on the same decay scales.
    std::vector<double> probes;
    for (double l : lambdas) {
        probes.push_back(l);
        probes.push_back(std::sqrt(l));
    }
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

    ConventionValidation v;
    v.printed_holds = true;
    v.sqrt_holds = true;
    for (double lambda : probes) {
        for (int n : n_list) {
            DomainChain chain(n, sub_len, delta);
            for (bool robin : {false, true}) {
                const Transmission trans = robin ? Transmission::robin(p) : Transmission::dirichlet();
                ConventionCase c;
                c.lambda = lambda;
                c.n_sub = n;
                c.robin_trace = robin;
                c.radius = build_mode_iteration(chain, lambda, trans).spectral_radius;
                c.bound_printed = contraction_rho(lambda, delta, sub_len);
                c.bound_sqrt = contraction_rho(std::sqrt(lambda), delta, sub_len);
                v.printed_holds = v.printed_holds && c.radius <= c.bound_printed + slack;
                v.sqrt_holds = v.sqrt_holds && c.radius <= c.bound_sqrt + slack;
                v.cases.push_back(c);
            }
        }
    }
    if (v.printed_holds) {
        v.validated = Convention::as_printed; // tighter claim, prefer when valid
    } else if (v.sqrt_holds) {
        v.validated = Convention::sqrt_lambda;
    } else {
        throw numerical_error("neither exponent convention bounds the exact mode radii");
    }
    return v;
}

ConventionValidation validate_convention_default(double delta, double sub_len) {
    constexpr double kPi = std::numbers::pi;
    const double q = 10.0;
    const double nu1 = find_root(RootFamily::nr, q, 1);
    const double mu1 = find_root(RootFamily::dr, q, 1);
    const std::vector<double> lambdas = {kPi * kPi / 4.0, nu1 * nu1, mu1 * mu1, kPi * kPi};
    return validate_convention(delta, sub_len, lambdas, {3, 5, 10}, 10.0);
}

} // namespace schwarzchain
