#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "schwarzchain/errors.hpp"
#include "schwarzchain/spectral.hpp"

using namespace schwarzchain;

namespace {

constexpr double kPi = std::numbers::pi;

// Reference roots computed independently with 50-digit arithmetic (mpmath
// bisection on the same characteristic functions) and frozen here.
struct RootRow {
    double q, mu1, nu1, tau1;
};
const std::vector<RootRow> kRoots = {
    {0.001, 1.5714326886780491, 0.031617507105061674, 0.044717633111635934},
    {0.1,   1.6319945272148001, 0.31105284820029773,  0.4435207878818885},
    {1.0,   2.0287578381104342, 0.86033358901937976,  1.3065423741888062},
    {10.0,  2.8627725875152073, 1.428870011214077,    2.6276754329857966},
    {100.0, 3.1104977023055849, 1.5552451292561666,   3.0800118838008841},
    {1000.0, 3.1384542096845291, 1.5692271009819729,  3.1353220300768392},
};

// Plain bisection with no scan phase: an independent implementation shape
// used to cross-check find_root beyond the frozen constants.
double bisect_only(RootFamily family, double q, double lo, double hi) {
    double flo = char_function(family, q, lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = char_function(family, q, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Fourth-order one-sided and centered difference derivatives of an
// eigenfunction, staying inside [0, 1].
double fd_deriv(const EigenMode& mode, double y) {
    const double h = 1e-4;
    auto f = [&](double t) { return eval_eigenfunction(mode, t); };
    if (y < 2.0 * h) {
        return (-25.0 * f(y) + 48.0 * f(y + h) - 36.0 * f(y + 2 * h) + 16.0 * f(y + 3 * h) -
                3.0 * f(y + 4 * h)) /
               (12.0 * h);
    }
    if (y > 1.0 - 2.0 * h) {
        return (25.0 * f(y) - 48.0 * f(y - h) + 36.0 * f(y - 2 * h) - 16.0 * f(y - 3 * h) +
                3.0 * f(y - 4 * h)) /
               (12.0 * h);
    }
    return (f(y - 2 * h) - 8.0 * f(y - h) + 8.0 * f(y + h) - f(y + 2 * h)) / (12.0 * h);
}

double fd_second_deriv(const EigenMode& mode, double y) {
    const double h = 1e-4;
    auto f = [&](double t) { return eval_eigenfunction(mode, t); };
    return (-f(y - 2 * h) + 16.0 * f(y - h) - 30.0 * f(y) + 16.0 * f(y + h) - f(y + 2 * h)) /
           (12.0 * h * h);
}

double simpson_product(const EigenMode& a, const EigenMode& b) {
    constexpr int n = 2048;
    const double h = 1.0 / n;
    auto f = [&](double y) { return eval_eigenfunction(a, y) * eval_eigenfunction(b, y); };
    double s = f(0.0) + f(1.0);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

double residual_scale(RootFamily family, double q, double x) {
    if (family == RootFamily::rr) return 2.0 * q * x + q * q + x * x;
    return q + x;
}

} // namespace

TEST_CASE("first roots match 50-digit references") {
    for (const auto& row : kRoots) {
        CHECK(find_root(RootFamily::dr, row.q, 1) == doctest::Approx(row.mu1).epsilon(1e-12));
        CHECK(find_root(RootFamily::nr, row.q, 1) == doctest::Approx(row.nu1).epsilon(1e-12));
        CHECK(find_root(RootFamily::rr, row.q, 1) == doctest::Approx(row.tau1).epsilon(1e-12));
    }
}

TEST_CASE("higher roots match 50-digit references") {
    CHECK(find_root(RootFamily::dr, 1.0, 2) == doctest::Approx(4.9131804394348837).epsilon(1e-12));
    CHECK(find_root(RootFamily::dr, 1.0, 3) == doctest::Approx(7.9786657124132408).epsilon(1e-12));
    CHECK(find_root(RootFamily::nr, 1.0, 2) == doctest::Approx(3.4256184594817281).epsilon(1e-12));
    CHECK(find_root(RootFamily::nr, 1.0, 3) == doctest::Approx(6.4372981791719471).epsilon(1e-12));
}

TEST_CASE("find_root agrees with an independent pure-bisection search") {
    for (double q : {0.5, 3.0, 42.0}) {
        CHECK(find_root(RootFamily::dr, q, 1) ==
              doctest::Approx(bisect_only(RootFamily::dr, q, kPi / 2 + 1e-9, kPi)).epsilon(1e-11));
        CHECK(find_root(RootFamily::nr, q, 1) ==
              doctest::Approx(bisect_only(RootFamily::nr, q, 1e-9, kPi / 2)).epsilon(1e-11));
        CHECK(find_root(RootFamily::rr, q, 1) ==
              doctest::Approx(bisect_only(RootFamily::rr, q, 1e-9, kPi - 1e-9)).epsilon(1e-11));
    }
}

TEST_CASE("roots satisfy a scaled residual bound") {
    for (double q : {0.001, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
        for (auto family : {RootFamily::dr, RootFamily::nr, RootFamily::rr}) {
            const double x = find_root(family, q, 1);
            CHECK(std::abs(char_function(family, q, x)) <= 1e-10 * residual_scale(family, q, x));
        }
    }
    for (int k : {2, 5, 11}) {
        for (auto family : {RootFamily::dr, RootFamily::nr}) {
            const double x = find_root(family, 7.0, k);
            CHECK(std::abs(char_function(family, 7.0, x)) <= 1e-10 * residual_scale(family, 7.0, x));
        }
    }
}

TEST_CASE("roots stay inside their analytic brackets") {
    for (double q : {0.01, 1.0, 50.0}) {
        for (int k = 1; k <= 6; ++k) {
            const double mu = find_root(RootFamily::dr, q, k);
            CHECK(mu > k * kPi - kPi / 2);
            CHECK(mu < k * kPi);
            const double nu = find_root(RootFamily::nr, q, k);
            CHECK(nu > (k - 1) * kPi);
            CHECK(nu < (k - 0.5) * kPi);
        }
        const double tau = find_root(RootFamily::rr, q, 1);
        CHECK(tau > 0.0);
        CHECK(tau < kPi);
    }
}

TEST_CASE("first roots increase monotonically in q") {
    for (auto family : {RootFamily::dr, RootFamily::nr, RootFamily::rr}) {
        double prev = 0.0;
        for (int i = 0; i <= 24; ++i) {
            const double q = std::pow(10.0, -3.0 + 6.0 * i / 24.0);
            const double x = find_root(family, q, 1);
            if (i > 0) CHECK(x > prev);
            prev = x;
        }
    }
}

TEST_CASE("limit frequencies and endpoint asymptotics") {
    CHECK(limit_frequency(RootFamily::dr, QLimit::to_zero) == doctest::Approx(kPi / 2));
    CHECK(limit_frequency(RootFamily::dr, QLimit::to_infinity) == doctest::Approx(kPi));
    CHECK(limit_frequency(RootFamily::nr, QLimit::to_zero) == 0.0);
    CHECK(limit_frequency(RootFamily::nr, QLimit::to_infinity) == doctest::Approx(kPi / 2));
    CHECK(limit_frequency(RootFamily::rr, QLimit::to_zero) == 0.0);
    CHECK(limit_frequency(RootFamily::rr, QLimit::to_infinity) == doctest::Approx(kPi));

    // Small-q laws: nu1 ~ sqrt(q), tau1 ~ sqrt(2q), mu1 ~ pi/2 + 2q/pi.
    for (double q : {1e-3, 1e-2}) {
        CHECK(find_root(RootFamily::nr, q, 1) / std::sqrt(q) == doctest::Approx(1.0).epsilon(q));
        CHECK(find_root(RootFamily::rr, q, 1) / std::sqrt(2.0 * q) == doctest::Approx(1.0).epsilon(q));
        CHECK(find_root(RootFamily::dr, q, 1) ==
              doctest::Approx(kPi / 2 + 2.0 * q / kPi).epsilon(10.0 * q));
    }
    // Large-q laws: each first root approaches its limit like C/q.
    for (double q : {1e2, 1e3}) {
        CHECK(std::abs(find_root(RootFamily::dr, q, 1) - (kPi - kPi / q)) <= 5.0 / (q * q));
        CHECK(std::abs(find_root(RootFamily::nr, q, 1) - kPi / 2) <= 2.0 / q);
        CHECK(std::abs(find_root(RootFamily::rr, q, 1) - kPi) <= 7.0 / q);
    }
}

TEST_CASE("find_root validates its inputs") {
    CHECK_THROWS_AS(find_root(RootFamily::dr, 0.0, 1), invalid_config);
    CHECK_THROWS_AS(find_root(RootFamily::dr, -1.0, 1), invalid_config);
    CHECK_THROWS_AS(find_root(RootFamily::dr, 1.0, 0), invalid_config);
    CHECK_THROWS_AS(find_root(RootFamily::nr, 1.0, -2), invalid_config);
    CHECK_THROWS_AS(find_root(RootFamily::rr, 1.0, 2), invalid_config);
    CHECK_THROWS_AS(find_root(RootFamily::dr, 1.0, 1, 0.0), invalid_config);
    CHECK_THROWS_AS(char_function(RootFamily::dr, 0.0, 1.0), invalid_config);
}

TEST_CASE("mode tables have the documented index ranges and frequencies") {
    const auto dd = eigenmodes(bc_pair_from_label("DD"), 4);
    REQUIRE(dd.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(dd[i].k == i + 1);
        CHECK(dd[i].freq == doctest::Approx((i + 1) * kPi));
        CHECK(dd[i].lambda == doctest::Approx(dd[i].freq * dd[i].freq));
    }

    const auto dn = eigenmodes(bc_pair_from_label("DN"), 3);
    REQUIRE(dn.size() == 4); // k = 0..3
    for (int i = 0; i < 4; ++i) CHECK(dn[i].freq == doctest::Approx((2 * i + 1) * kPi / 2));

    const auto nn = eigenmodes(bc_pair_from_label("NN"), 3);
    REQUIRE(nn.size() == 4);
    CHECK(nn[0].lambda == 0.0);
    CHECK(nn[0].norm_const == 1.0);
    for (int i = 1; i < 4; ++i) CHECK(nn[i].freq == doctest::Approx(i * kPi));

    const auto rr = eigenmodes(bc_pair_from_label("RR", 10.0), 1);
    REQUIRE(rr.size() == 1);
    CHECK(rr[0].freq == doctest::Approx(2.6276754329857966).epsilon(1e-12));
    CHECK_THROWS_AS(eigenmodes(bc_pair_from_label("RR", 10.0), 2), invalid_config);

    for (const auto* label : {"DR", "NR"}) {
        const auto modes = eigenmodes(bc_pair_from_label(label, 1.0), 3);
        REQUIRE(modes.size() == 3);
        CHECK(modes[0].k == 1);
        CHECK(modes[1].lambda > modes[0].lambda);
        CHECK(modes[2].lambda > modes[1].lambda);
    }
}

TEST_CASE("eigenfunctions are orthonormal to 1e-8 under 2048-point Simpson") {
    std::vector<BcPair> pairs = {
        bc_pair_from_label("DD"), bc_pair_from_label("DN"), bc_pair_from_label("NN"),
        bc_pair_from_label("DR", 10.0), bc_pair_from_label("NR", 0.1),
    };
    for (const auto& pair : pairs) {
        const int k_max = pair.label() == "DD" || pair.label() == "DR" || pair.label() == "NR" ? 8 : 7;
        const auto modes = eigenmodes(pair, k_max);
        REQUIRE(modes.size() == 8);
        for (std::size_t i = 0; i < modes.size(); ++i) {
            for (std::size_t j = i; j < modes.size(); ++j) {
                const double expected = i == j ? 1.0 : 0.0;
                CHECK(std::abs(simpson_product(modes[i], modes[j]) - expected) <= 1e-8);
            }
        }
    }
    const auto rr = eigenmodes(bc_pair_from_label("RR", 3.0), 1);
    CHECK(std::abs(simpson_product(rr[0], rr[0]) - 1.0) <= 1e-8);
}

TEST_CASE("RR normalization closed form matches direct quadrature across q") {
    for (double q : {0.001, 0.1, 1.0, 10.0, 1000.0}) {
        const auto rr = eigenmodes(bc_pair_from_label("RR", q), 1);
        CHECK(std::abs(simpson_product(rr[0], rr[0]) - 1.0) <= 1e-8);
    }
}

TEST_CASE("eigenfunctions satisfy the differential equation") {
    std::vector<BcPair> pairs = {
        bc_pair_from_label("DD"), bc_pair_from_label("DN"), bc_pair_from_label("NN"),
        bc_pair_from_label("DR", 2.0), bc_pair_from_label("NR", 5.0),
        bc_pair_from_label("RR", 1.0),
    };
    for (const auto& pair : pairs) {
        const int k_max = pair.label() == "RR" ? 1 : 3;
        for (const auto& mode : eigenmodes(pair, k_max)) {
            for (int s = 0; s <= 10; ++s) {
                const double y = 0.05 + 0.9 * s / 10.0;
                const double residual = fd_second_deriv(mode, y) + mode.lambda * eval_eigenfunction(mode, y);
                CHECK(std::abs(residual) <= 1e-4 * std::max(1.0, mode.lambda));
            }
        }
    }
}

TEST_CASE("eigenfunctions satisfy their boundary conditions, both orientations") {
    auto check_edge = [](const EigenMode& mode, double y, BcKind kind, double q, bool bottom) {
        const double u = eval_eigenfunction(mode, y);
        const double du = fd_deriv(mode, y);
        const double tol = 1e-7 * std::max(1.0, q + mode.freq);
        switch (kind) {
            case BcKind::dirichlet: CHECK(std::abs(u) <= tol); break;
            case BcKind::neumann: CHECK(std::abs(du) <= tol); break;
            case BcKind::robin:
                // Outgoing form: q*u - u' at the bottom edge, q*u + u' at the top.
                CHECK(std::abs(q * u + (bottom ? -du : du)) <= tol);
                break;
        }
    };
    std::vector<BcPair> pairs = {
        bc_pair_from_label("DD"), bc_pair_from_label("DN"), bc_pair_from_label("NN"),
        bc_pair_from_label("DR", 2.0), bc_pair_from_label("NR", 5.0), bc_pair_from_label("RR", 1.0),
        // Mirrored orientations: the label is canonical but evaluation flips y.
        BcPair(BcKind::neumann, BcKind::dirichlet),
        BcPair(BcKind::robin, BcKind::dirichlet, 2.0),
        BcPair(BcKind::robin, BcKind::neumann, 5.0),
    };
    for (const auto& pair : pairs) {
        const int k_max = pair.label() == "RR" ? 1 : (pair.label() == "DD" || pair.label() == "DR" ||
                                                      pair.label() == "NR" ? 3 : 2);
        for (const auto& mode : eigenmodes(pair, k_max)) {
            check_edge(mode, 0.0, pair.bottom, pair.q, true);
            check_edge(mode, 1.0, pair.top, pair.q, false);
        }
    }
}

TEST_CASE("mirrored pairs evaluate as the vertical flip of the canonical shape") {
    const auto canonical = eigenmodes(BcPair(BcKind::dirichlet, BcKind::neumann), 2);
    const auto flipped = eigenmodes(BcPair(BcKind::neumann, BcKind::dirichlet), 2);
    for (std::size_t m = 0; m < canonical.size(); ++m) {
        CHECK(flipped[m].freq == doctest::Approx(canonical[m].freq).epsilon(1e-14));
        for (double y : {0.0, 0.25, 0.6, 1.0}) {
            CHECK(eval_eigenfunction(flipped[m], y) ==
                  doctest::Approx(eval_eigenfunction(canonical[m], 1.0 - y)).epsilon(1e-13));
        }
    }
}

TEST_CASE("evaluation outside the unit interval is rejected") {
    const auto dd = eigenmodes(bc_pair_from_label("DD"), 1);
    CHECK_THROWS_AS(eval_eigenfunction(dd[0], -0.001), invalid_config);
    CHECK_THROWS_AS(eval_eigenfunction(dd[0], 1.001), invalid_config);
    CHECK_NOTHROW(eval_eigenfunction(dd[0], 0.0));
    CHECK_NOTHROW(eval_eigenfunction(dd[0], 1.0));
}
