#include "schwarzchain/geometry.hpp"

#include <cmath>

#include "schwarzchain/errors.hpp"
#include "schwarzchain/transmission.hpp"

namespace schwarzchain {

Transmission Transmission::robin(double p) {
    if (!(p > 0.0)) throw invalid_config("robin transmission requires p > 0");
    return {Kind::robin, p};
}

char bc_char(BcKind k) {
    switch (k) {
        case BcKind::dirichlet: return 'D';
        case BcKind::neumann: return 'N';
        case BcKind::robin: return 'R';
    }
    throw invalid_config("unknown boundary kind");
}

BcKind bc_from_char(char c) {
    switch (c) {
        case 'D': case 'd': return BcKind::dirichlet;
        case 'N': case 'n': return BcKind::neumann;
        case 'R': case 'r': return BcKind::robin;
    }
    throw invalid_config(std::string("unknown boundary kind '") + c + "'");
}

namespace {

// Canonical letter order of the six labels: D before N, N before R.
int kind_rank(BcKind k) {
    switch (k) {
        case BcKind::dirichlet: return 0;
        case BcKind::neumann: return 1;
        case BcKind::robin: return 2;
    }
    return 3;
}

} // namespace

BcPair::BcPair(BcKind bottom_, BcKind top_, double q_) : bottom(bottom_), top(top_), q(q_) {
    if (has_robin()) {
        if (!(q > 0.0)) {
            throw invalid_config("Robin edge requires q > 0, got q = " + std::to_string(q));
        }
    } else {
        q = 0.0;
    }
}

bool BcPair::mirrored() const {
    return kind_rank(bottom) > kind_rank(top);
}

std::string BcPair::label() const {
    BcKind first = bottom, second = top;
    if (mirrored()) std::swap(first, second);
    return std::string{bc_char(first)} + bc_char(second);
}

BcPair bc_pair_from_label(const std::string& label, double q) {
    if (label.size() != 2) {
        throw invalid_config("boundary label must be two letters, got '" + label + "'");
    }
    return BcPair(bc_from_char(label[0]), bc_from_char(label[1]), q);
}

DomainChain::DomainChain(int n_sub, double sub_len, double delta)
    : n_sub_(n_sub), sub_len_(sub_len), delta_(delta) {
    if (n_sub < 2) {
        throw invalid_config("chain needs at least 2 subdomains, got " + std::to_string(n_sub));
    }
    if (!(sub_len > 0.0)) {
        throw invalid_config("subdomain length must be positive");
    }
    if (!(delta > 0.0) || !(delta < sub_len / 2.0)) {
        throw invalid_config("overlap parameter must satisfy 0 < delta < L/2, got delta = " +
                             std::to_string(delta) + ", L = " + std::to_string(sub_len));
    }
    a_.resize(static_cast<std::size_t>(n_sub) + 1);
    b_.resize(static_cast<std::size_t>(n_sub) + 1);
    a_[0] = 0.0;
    for (int j = 1; j <= n_sub; ++j) a_[static_cast<std::size_t>(j)] = a_[static_cast<std::size_t>(j) - 1] + sub_len;
    for (int j = 0; j <= n_sub; ++j) b_[static_cast<std::size_t>(j)] = a_[static_cast<std::size_t>(j)] + 2.0 * delta;
    // The recurrence must agree with the closed forms (j-1)L and jL + 2*delta.
    const double tol = 1e-12 * n_sub * sub_len;
    for (int j = 1; j <= n_sub + 1; ++j) {
        if (std::abs(a(j) - (j - 1) * sub_len) > tol) {
            throw numerical_error("chain recurrence drifted from closed form at a_" + std::to_string(j));
        }
    }
}

double DomainChain::a(int j) const {
    if (j < 1 || j > n_sub_ + 1) {
        throw invalid_config("a(j) defined for 1 <= j <= N+1, got j = " + std::to_string(j));
    }
    return a_[static_cast<std::size_t>(j) - 1];
}

double DomainChain::b(int j) const {
    if (j < 0 || j > n_sub_) {
        throw invalid_config("b(j) defined for 0 <= j <= N, got j = " + std::to_string(j));
    }
    return b_[static_cast<std::size_t>(j)];
}

} // namespace schwarzchain
