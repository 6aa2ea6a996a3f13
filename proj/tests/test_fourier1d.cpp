#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "schwarzchain/bounds.hpp"
#include "schwarzchain/errors.hpp"
#include "schwarzchain/fourier1d.hpp"
#include "schwarzchain/geometry.hpp"

using namespace schwarzchain;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed forms for the two building blocks of the interface iteration,
// written directly with std::sinh (s + t equals the contraction factor).
double t_factor(double theta, double delta, double L) {
    return std::sinh(theta * L) / std::sinh(theta * (L + 2 * delta));
}
double s_factor(double theta, double delta, double L) {
    return std::sinh(2 * theta * delta) / std::sinh(theta * (L + 2 * delta));
}

} // namespace

TEST_CASE("mode solutions differentiate consistently") {
    for (double lambda : {0.0, 2.0, 25.0}) {
        const ModeSolution u(lambda, 0.3, 1.7, 0.8, -0.4);
        const double h = 1e-6;
        for (double x : {0.5, 1.0, 1.5}) {
            const double fd = (u.value(x + h) - u.value(x - h)) / (2 * h);
            CHECK(u.deriv(x) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("mode solutions satisfy the one-dimensional equation") {
    for (double lambda : {0.5, 9.0, 100.0}) {
        const ModeSolution u(lambda, 0.0, 1.2, 1.0, 0.7);
        const double h = 1e-4;
        for (double x : {0.2, 0.6, 1.0}) {
            const double d2 = (u.value(x - h) - 2 * u.value(x) + u.value(x + h)) / (h * h);
            CHECK(d2 == doctest::Approx(lambda * u.value(x)).epsilon(1e-5));
        }
    }
}

TEST_CASE("trace conditions are satisfied by the solved coefficients") {
    const double a = 0.0, b = 1.2, p = 10.0;

    SUBCASE("value conditions at both ends") {
        for (double lambda : {0.0, 1.0, 9.87}) {
            const ModeSolution u = subdomain_mode_solution(
                lambda, a, b, Transmission::dirichlet(), Transmission::dirichlet(), 0.3, -0.9);
            CHECK(u.value(a) == doctest::Approx(0.3).epsilon(1e-12));
            CHECK(u.value(b) == doctest::Approx(-0.9).epsilon(1e-12));
        }
    }
    SUBCASE("impedance conditions at both ends") {
        for (double lambda : {0.0, 1.0, 9.87}) {
            const ModeSolution u = subdomain_mode_solution(
                lambda, a, b, Transmission::robin(p), Transmission::robin(p), 0.5, 1.1);
            CHECK(p * u.value(a) - u.deriv(a) == doctest::Approx(0.5).epsilon(1e-11));
            CHECK(p * u.value(b) + u.deriv(b) == doctest::Approx(1.1).epsilon(1e-11));
        }
    }
    SUBCASE("mixed conditions") {
        const ModeSolution u = subdomain_mode_solution(
            2.0, a, b, Transmission::dirichlet(), Transmission::robin(p), -1.0, 0.25);
        CHECK(u.value(a) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(p * u.value(b) + u.deriv(b) == doctest::Approx(0.25).epsilon(1e-11));
    }
}

TEST_CASE("large decay rates neither overflow nor lose the end conditions") {
    const ModeSolution u = subdomain_mode_solution(
        1e6, 0.0, 1.2, Transmission::dirichlet(), Transmission::dirichlet(), 1.0, 1.0);
    CHECK(u.value(0.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(u.value(1.2) == doctest::Approx(1.0).epsilon(1e-10));
    const double mid = u.value(0.6);
    CHECK(std::isfinite(mid));
    CHECK(std::abs(mid) < 1e-100); // boundary layers decay like e^{-1000*0.6}
}

TEST_CASE("mode solution construction validates its interval and eigenvalue") {
    CHECK_THROWS_AS(ModeSolution(1.0, 1.0, 1.0, 0.0, 0.0), invalid_config);
    CHECK_THROWS_AS(ModeSolution(1.0, 2.0, 1.0, 0.0, 0.0), invalid_config);
    CHECK_THROWS_AS(ModeSolution(-1.0, 0.0, 1.0, 0.0, 0.0), invalid_config);
}

TEST_CASE("two-subdomain iteration has the classical closed-form radius") {
    const DomainChain chain(2, 1.0, 0.1);
    const ModeIteration it = build_mode_iteration(chain, kPi * kPi, Transmission::dirichlet());
    CHECK(it.matrix.rows() == 2);
    CHECK(it.spectral_radius == doctest::Approx(0.53277499829463126).epsilon(1e-13));
    CHECK(it.spectral_radius == doctest::Approx(t_factor(kPi, 0.1, 1.0)).epsilon(1e-13));

    const ModeIteration flat = build_mode_iteration(chain, 0.0, Transmission::dirichlet());
    CHECK(flat.spectral_radius == doctest::Approx(1.0 / 1.2).epsilon(1e-13));
}

TEST_CASE("three-subdomain iteration has radius sqrt(t*(t+s))") {
    SUBCASE("zero eigenvalue, table geometry") {
        const DomainChain chain(3, 1.0, 10.0 / 51.0);
        const ModeIteration it = build_mode_iteration(chain, 0.0, Transmission::dirichlet());
        CHECK(it.matrix.rows() == 4);
        CHECK(it.spectral_radius == doctest::Approx(0.8475316272298811).epsilon(1e-12));
        const double W = 1.0 + 20.0 / 51.0;
        const double t = 1.0 / W, s = (20.0 / 51.0) / W;
        CHECK(it.spectral_radius == doctest::Approx(std::sqrt(t * (t + s))).epsilon(1e-12));
    }
    SUBCASE("positive eigenvalues") {
        const DomainChain chain(3, 1.0, 0.1);
        for (double lambda : {1.0, kPi * kPi}) {
            const double theta = std::sqrt(lambda);
            const ModeIteration it = build_mode_iteration(chain, lambda, Transmission::dirichlet());
            const double t = t_factor(theta, 0.1, 1.0), s = s_factor(theta, 0.1, 1.0);
            CHECK(it.spectral_radius == doctest::Approx(std::sqrt(t * (t + s))).epsilon(1e-12));
        }
    }
}

TEST_CASE("radius grows with chain length toward the infinite-chain value") {
    const double lambda = kPi * kPi;
    const double limit = contraction_rho(kPi, 0.1, 1.0);
    double prev = 0.0;
    for (int n : {2, 3, 5, 8, 12, 20, 30}) {
        const DomainChain chain(n, 1.0, 0.1);
        const double r = build_mode_iteration(chain, lambda, Transmission::dirichlet()).spectral_radius;
        CHECK(r > prev);
        CHECK(r <= limit + 1e-12);
        prev = r;
    }
    const DomainChain chain40(40, 1.0, 0.1);
    const double r40 = build_mode_iteration(chain40, lambda, Transmission::dirichlet()).spectral_radius;
    CHECK(r40 == doctest::Approx(0.5636056764294628).epsilon(1e-12));
    CHECK(limit - r40 < 2e-4);
}

TEST_CASE("at fixed positive eigenvalue the radius stays bounded away from 1") {
    for (int n = 2; n <= 30; ++n) {
        const DomainChain chain(n, 1.0, 0.1);
        CHECK(build_mode_iteration(chain, kPi * kPi, Transmission::dirichlet()).spectral_radius < 0.57);
    }
}

TEST_CASE("at zero eigenvalue the radius climbs toward 1 with chain length") {
    double prev = 0.0;
    for (int n : {2, 5, 10, 30}) {
        const DomainChain chain(n, 1.0, 0.1);
        const double r = build_mode_iteration(chain, 0.0, Transmission::dirichlet()).spectral_radius;
        CHECK(r > prev);
        CHECK(r < 1.0);
        prev = r;
    }
    CHECK(prev > 0.95);
}

TEST_CASE("impedance traces beat value traces mode by mode") {
    for (double lambda : {2.0, kPi * kPi}) {
        for (int n : {3, 5}) {
            const DomainChain chain(n, 1.0, 0.1);
            const double dirichlet =
                build_mode_iteration(chain, lambda, Transmission::dirichlet()).spectral_radius;
            const double robin =
                build_mode_iteration(chain, lambda, Transmission::robin(10.0)).spectral_radius;
            CHECK(robin < dirichlet);
        }
    }
}

TEST_CASE("power iteration agrees with the dense eigensolver to 1e-10") {
    const DomainChain chain(60, 1.0, 0.1);
    const ModeIteration it = build_mode_iteration(chain, kPi * kPi, Transmission::dirichlet());
    REQUIRE(it.matrix.rows() == 118); // small enough for the dense path
    const double dense = spectral_radius(it.matrix);
    const double power = spectral_radius_power(it.matrix);
    CHECK(std::abs(dense - power) <= 1e-10 * dense);
}

TEST_CASE("large matrices route through the power path and stay accurate") {
    const DomainChain chain(110, 1.0, 0.1);
    const ModeIteration it = build_mode_iteration(chain, 4.0, Transmission::dirichlet());
    REQUIRE(it.matrix.rows() == 218);
    const double via_api = spectral_radius(it.matrix); // dimension forces power iteration
    Eigen::EigenSolver<Eigen::MatrixXd> es(it.matrix, false);
    const double dense = es.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(via_api == doctest::Approx(dense).epsilon(1e-9));
}

TEST_CASE("spectral radius requires a square matrix") {
    CHECK_THROWS_AS(spectral_radius(Eigen::MatrixXd::Zero(3, 4)), invalid_config);
}

TEST_CASE("mode radii respect the sqrt reading and break the printed one") {
    const DomainChain chain(5, 1.0, 0.1);
    const RadiusVsBound ok =
        mode_radius_vs_bound(chain, kPi * kPi, Transmission::dirichlet(), Convention::sqrt_lambda);
    CHECK(ok.bound == doctest::Approx(contraction_rho(kPi, 0.1, 1.0)).epsilon(1e-13));
    CHECK(ok.bound_holds);
    CHECK(ok.radius <= ok.bound + 1e-10);

    const RadiusVsBound broken =
        mode_radius_vs_bound(chain, kPi * kPi, Transmission::dirichlet(), Convention::as_printed);
    CHECK(broken.bound == doctest::Approx(contraction_rho(kPi * kPi, 0.1, 1.0)).epsilon(1e-13));
    CHECK_FALSE(broken.bound_holds);
}

TEST_CASE("the default validation experiment selects the sqrt reading") {
    const ConventionValidation v = validate_convention_default(0.1, 1.0);
    CHECK(v.validated == Convention::sqrt_lambda);
    CHECK(v.sqrt_holds);
    CHECK_FALSE(v.printed_holds);
    CHECK(v.cases.size() == 48); // 8 deduplicated probes x 3 chain lengths x 2 trace kinds
    for (const auto& c : v.cases) {
        CHECK(c.radius <= c.bound_sqrt + 1e-10);
        CHECK(c.radius < 1.0);
    }
}
