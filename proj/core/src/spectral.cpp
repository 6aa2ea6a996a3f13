#include "schwarzchain/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "schwarzchain/errors.hpp"

namespace schwarzchain {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_q(double q) {
    if (!(q > 0.0)) throw invalid_config("characteristic function requires q > 0");
}

struct Bracket {
    double lo, hi;
};

Bracket root_bracket(RootFamily family, int k) {
    switch (family) {
        case RootFamily::dr:
            if (k < 1) throw invalid_config("dr roots are indexed k >= 1");
            return {k * kPi - kPi / 2.0, k * kPi};
        case RootFamily::nr:
            if (k < 1) throw invalid_config("nr roots are indexed k >= 1");
            return {(k - 1) * kPi, (k - 0.5) * kPi};
        case RootFamily::rr:
            if (k != 1) throw invalid_config("only the first rr root is defined; got k = " + std::to_string(k));
            return {0.0, kPi};
    }
    throw invalid_config("unknown root family");
}

} // namespace

double char_function(RootFamily family, double q, double x) {
    require_positive_q(q);
    switch (family) {
        case RootFamily::dr: return q * std::sin(x) + x * std::cos(x);
        case RootFamily::rr: return 2.0 * q * x * std::cos(x) + (q * q - x * x) * std::sin(x);
        case RootFamily::nr: return x * std::sin(x) - q * std::cos(x);
    }
    throw invalid_config("unknown root family");
}

double find_root(RootFamily family, double q, int k, double tol) {
    require_positive_q(q);
    if (!(tol > 0.0)) throw invalid_config("root tolerance must be positive");
    Bracket br = root_bracket(family, k);
    // Nudge the ends inward; the rr bracket starts at a trivial zero of the
    // characteristic function and must not include it.
    double lo = br.lo + 1e-12;
    double hi = br.hi - 1e-12;

    // Scan for the first sign change, then bisect inside that segment.  The
    // dr/nr characteristic functions are monotone on their brackets; rr has a
    // single admissible root in (0, pi) and the scan pins the leftmost one.
    constexpr int kSegments = 128;
    const double step = (hi - lo) / kSegments;
    double x0 = lo;
    double f0 = char_function(family, q, x0);
    double x1 = 0.0, f1 = 0.0;
    bool found = false;
    for (int s = 1; s <= kSegments; ++s) {
        x1 = (s == kSegments) ? hi : lo + s * step;
        f1 = char_function(family, q, x1);
        if (f0 == 0.0) return x0;
        if ((f0 < 0.0) != (f1 < 0.0)) {
            found = true;
            break;
        }
        x0 = x1;
        f0 = f1;
    }
    if (!found) {
        throw numerical_error("no sign change on root bracket (family segment scan), q = " +
                              std::to_string(q) + ", k = " + std::to_string(k));
    }
    while (x1 - x0 > tol) {
        const double mid = 0.5 * (x0 + x1);
        const double fm = char_function(family, q, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (f0 < 0.0)) {
            x0 = mid;
            f0 = fm;
        } else {
            x1 = mid;
        }
    }
    return 0.5 * (x0 + x1);
}

double limit_frequency(RootFamily family, QLimit limit) {
    switch (family) {
        case RootFamily::dr: return limit == QLimit::to_zero ? kPi / 2.0 : kPi;
        case RootFamily::rr: return limit == QLimit::to_zero ? 0.0 : kPi;
        case RootFamily::nr: return limit == QLimit::to_zero ? 0.0 : kPi / 2.0;
    }
    throw invalid_config("unknown root family");
}

namespace {

double dr_norm_const(double mu) {
    return std::sqrt(4.0 * mu / (2.0 * mu - std::sin(2.0 * mu)));
}

double nr_norm_const(double nu) {
    return std::sqrt(4.0 * nu / (2.0 * nu + std::sin(2.0 * nu)));
}

double rr_norm_const(double q, double tau) {
    const double den = (tau * tau - q * q) * std::sin(2.0 * tau) +
                       4.0 * q * tau * std::sin(tau) * std::sin(tau) +
                       2.0 * tau * tau * tau + 2.0 * q * q * tau;
    if (den > 0.0) {
        const double c = std::sqrt(4.0 * tau / den);
        if (std::isfinite(c)) return c;
    }
    // Closed form degenerate: normalize by quadrature instead.  Composite
    // Simpson on 2048 cells is far below the 1e-10 target for these shapes.
    constexpr int n = 2048;
    const double h = 1.0 / n;
    auto f = [&](double y) {
        const double v = q * std::sin(tau * y) + tau * std::cos(tau * y);
        return v * v;
    };
    double s = f(0.0) + f(1.0);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    const double integral = s * h / 3.0;
    if (!(integral > 0.0)) throw numerical_error("rr mode normalization failed");
    return 1.0 / std::sqrt(integral);
}

EigenMode make_mode(int k, double freq, double norm_const, const BcPair& pair) {
    EigenMode m;
    m.k = k;
    m.freq = freq;
    m.lambda = freq * freq;
    m.norm_const = norm_const;
    m.pair = pair;
    return m;
}

} // namespace

std::vector<EigenMode> eigenmodes(const BcPair& pair, int k_max, double tol) {
    const std::string label = pair.label();
    std::vector<EigenMode> modes;
    constexpr double kSqrt2 = std::numbers::sqrt2;
    if (label == "DD") {
        if (k_max < 1) throw invalid_config("DD modes are indexed k >= 1");
        for (int k = 1; k <= k_max; ++k) modes.push_back(make_mode(k, k * kPi, kSqrt2, pair));
    } else if (label == "DN") {
        if (k_max < 0) throw invalid_config("DN modes are indexed k >= 0");
        for (int k = 0; k <= k_max; ++k) modes.push_back(make_mode(k, (2 * k + 1) * kPi / 2.0, kSqrt2, pair));
    } else if (label == "NN") {
        if (k_max < 0) throw invalid_config("NN modes are indexed k >= 0");
        // The k = 0 shape is the constant; sqrt(2)*cos(0) is not unit norm, so
        // it is normalized separately to 1.
        for (int k = 0; k <= k_max; ++k) modes.push_back(make_mode(k, k * kPi, k == 0 ? 1.0 : kSqrt2, pair));
    } else if (label == "DR") {
        if (k_max < 1) throw invalid_config("DR modes are indexed k >= 1");
        for (int k = 1; k <= k_max; ++k) {
            const double mu = find_root(RootFamily::dr, pair.q, k, tol);
            modes.push_back(make_mode(k, mu, dr_norm_const(mu), pair));
        }
    } else if (label == "NR") {
        if (k_max < 1) throw invalid_config("NR modes are indexed k >= 1");
        for (int k = 1; k <= k_max; ++k) {
            const double nu = find_root(RootFamily::nr, pair.q, k, tol);
            modes.push_back(make_mode(k, nu, nr_norm_const(nu), pair));
        }
    } else if (label == "RR") {
        if (k_max != 1) {
            throw invalid_config("RR exposes only its first mode; k_max must be 1");
        }
        const double tau = find_root(RootFamily::rr, pair.q, 1, tol);
        modes.push_back(make_mode(1, tau, rr_norm_const(pair.q, tau), pair));
    } else {
        throw invalid_config("unknown boundary label " + label);
    }
    return modes;
}

double eval_eigenfunction(const EigenMode& mode, double y) {
    if (y < 0.0 || y > 1.0) {
        throw invalid_config("eigenfunctions live on [0, 1], got y = " + std::to_string(y));
    }
    if (mode.pair.mirrored()) y = 1.0 - y;
    const std::string label = mode.pair.label();
    const double c = mode.norm_const;
    const double w = mode.freq;
    if (label == "DD" || label == "DN" || label == "DR") return c * std::sin(w * y);
    if (label == "NN") return mode.k == 0 ? c : c * std::cos(w * y);
    if (label == "NR") return c * std::cos(w * y);
    if (label == "RR") return c * (mode.pair.q * std::sin(w * y) + w * std::cos(w * y));
    throw invalid_config("unknown boundary label " + label);
}

} // namespace schwarzchain
