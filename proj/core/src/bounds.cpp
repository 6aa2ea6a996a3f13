#include "schwarzchain/bounds.hpp"

#include <cmath>
#include <numbers>

#include "schwarzchain/errors.hpp"
#include "schwarzchain/spectral.hpp"

namespace schwarzchain {

namespace {

constexpr double kPi = std::numbers::pi;

void require_geometry(double delta, double sub_len) {
    if (!(delta > 0.0) || !(delta < sub_len / 2.0)) {
        throw invalid_config("bound requires 0 < delta < L/2");
    }
}

} // namespace

std::string convention_name(Convention c) {
    return c == Convention::as_printed ? "paper" : "sqrt";
}

Convention convention_from_name(const std::string& name) {
    if (name == "paper") return Convention::as_printed;
    if (name == "sqrt") return Convention::sqrt_lambda;
    throw invalid_config("unknown convention '" + name + "' (expected paper or sqrt)");
}

double contraction_rho(double theta, double delta, double sub_len) {
    require_geometry(delta, sub_len);
    if (theta < 0.0) throw invalid_config("decay parameter must be >= 0");
    // (e^{2td} + e^{tL}) / (e^{t(L+2d)} + 1), divided through by the largest
    // exponential so every exponent is <= 0.
    const double L = sub_len;
    const double num = std::exp(-theta * L) + std::exp(-2.0 * theta * delta);
    const double den = 1.0 + std::exp(-theta * (L + 2.0 * delta));
    return num / den;
}

double phi_osm(double lambda, double delta, double p, double sub_len) {
    require_geometry(delta, sub_len);
    if (!(lambda > 0.0)) throw invalid_config("phi requires lambda > 0");
    if (p < 0.0) throw invalid_config("phi requires p >= 0");
    const double L = sub_len;
    const double W = L + 2.0 * delta;
    const double sp = lambda + p;
    const double sm = lambda - p;
    // All exponentials are scaled by e^{-lambda*W}; exponents stay <= 0.
    const double num = sp * sp * std::exp(-lambda * L)
                     - sm * sm * std::exp(-lambda * (L + 4.0 * delta))
                     + sp * std::abs(sm) * (std::exp(-2.0 * lambda * delta) - std::exp(-lambda * (2.0 * L + 2.0 * delta)));
    const double den = sp * sp - sm * sm * std::exp(-2.0 * lambda * W);
    if (!(den > 0.0)) throw numerical_error("phi denominator not positive");
    return num / den;
}

double zeta_osm(double lambda, double delta, double p, double sub_len) {
    require_geometry(delta, sub_len);
    if (!(lambda > 0.0)) throw invalid_config("zeta requires lambda > 0");
    if (p < 0.0) throw invalid_config("zeta requires p >= 0");
    const double L = sub_len;
    const double W = L + 2.0 * delta;
    const double sp = lambda + p;
    const double sm = lambda - p;
    // Scaled by e^{-lambda*W}.
    const double num = sp * std::exp(-lambda * (2.0 * L + 2.0 * delta)) + sm * std::exp(-2.0 * lambda * delta);
    const double den = sp + sm * std::exp(-2.0 * lambda * W);
    const double scale = std::abs(sp) + std::abs(sm);
    if (std::abs(den) <= 1e-300 || std::abs(den) <= 1e-15 * scale) {
        throw numerical_error("zeta denominator vanished");
    }
    return num / den;
}

ContractionBound pair_bound(const BcPair& pair, double delta, double sub_len,
                            Convention convention, double root_tol) {
    require_geometry(delta, sub_len);
    const std::string label = pair.label();
    double freq = 0.0;
    if (label == "DD") freq = kPi;
    else if (label == "DN") freq = kPi / 2.0;
    else if (label == "NN") freq = 0.0;
    else if (label == "DR") freq = find_root(RootFamily::dr, pair.q, 1, root_tol);
    else if (label == "NR") freq = find_root(RootFamily::nr, pair.q, 1, root_tol);
    else if (label == "RR") freq = find_root(RootFamily::rr, pair.q, 1, root_tol);
    else throw invalid_config("unknown boundary label " + label);

    ContractionBound b;
    b.pair_label = label;
    b.lambda_min = freq * freq;
    b.decay = convention == Convention::sqrt_lambda ? freq : freq * freq;
    b.delta = delta;
    b.sub_len = sub_len;
    b.convention = convention;
    b.value = contraction_rho(b.decay, delta, sub_len);
    return b;
}

OrderingReport check_orderings(double delta, double sub_len, double q,
                               Convention convention) {
    require_geometry(delta, sub_len);
    auto value = [&](const char* label) {
        return pair_bound(bc_pair_from_label(label, q), delta, sub_len, convention).value;
    };
    const double dd = value("DD");
    const double dr = value("DR");
    const double dn = value("DN");
    const double rr = value("RR");
    const double nr = value("NR");
    const double nn = value("NN");

    OrderingReport report;
    report.delta = delta;
    report.sub_len = sub_len;
    report.q = q;
    report.convention = convention;
    auto add = [&](const char* name, double lhs, double rhs) {
        OrderingEntry e;
        e.name = name;
        e.lhs = lhs;
        e.rhs = rhs;
        e.margin = rhs - lhs;
        e.holds = lhs < rhs;
        report.entries.push_back(e);
    };
    add("DD<DR", dd, dr);
    add("DR<DN", dr, dn);
    add("DN<NR", dn, nr);
    add("NR<NN", nr, nn);
    add("NN=1", std::abs(nn - 1.0), 1e-15); // equality up to roundoff
    add("DD<RR", dd, rr);
    add("RR<1", rr, 1.0);
    report.all_hold = true;
    for (const auto& e : report.entries) report.all_hold = report.all_hold && e.holds;
    return report;
}

} // namespace schwarzchain
