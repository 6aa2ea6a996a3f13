#pragma once

#include <string>
#include <vector>

namespace schwarzchain {

/// Condition imposed on one horizontal edge (bottom or top) of the strip.
enum class BcKind { dirichlet, neumann, robin };

char bc_char(BcKind k);
BcKind bc_from_char(char c);

/// External boundary conditions on the strip edges y = 0 and y = 1.
///
/// Robin edges use the impedance parameter q > 0: the outgoing form
/// q*u - du/dy at the bottom and q*u + du/dy at the top.  The two-letter
/// label is canonical up to a vertical flip, which leaves the vertical
/// spectrum unchanged: the six distinct labels are DD, DR, DN, RR, NR, NN.
struct BcPair {
    BcKind bottom = BcKind::dirichlet;
    BcKind top = BcKind::dirichlet;
    double q = 0.0;

    BcPair() = default;
    BcPair(BcKind bottom_, BcKind top_, double q_ = 0.0);

    /// Canonical two-letter label ("DD", "DR", "DN", "RR", "NR", "NN").
    std::string label() const;

    /// True when the stored orientation is flipped relative to the canonical
    /// label (e.g. Robin bottom with Dirichlet top reports "DR", mirrored).
    bool mirrored() const;

    bool has_robin() const { return bottom == BcKind::robin || top == BcKind::robin; }
};

/// Parse a two-letter label; q is required iff the label contains 'R'.
BcPair bc_pair_from_label(const std::string& label, double q = 0.0);

/// A chain of N congruent rectangular subdomains (a_j, b_j) x (0, 1) with
///   a_1 = 0,  a_{j+1} = a_j + L,  b_j = a_{j+1} + 2*delta,
/// so every subdomain has width L + 2*delta and consecutive subdomains
/// overlap in a band of width 2*delta.  Requires 0 < delta < L/2 so that
/// only neighbouring subdomains intersect.
class DomainChain {
public:
    DomainChain(int n_sub, double sub_len, double delta);

    int n_sub() const { return n_sub_; }
    double sub_len() const { return sub_len_; }
    double delta() const { return delta_; }

    /// Left edge a_j of subdomain j, j in [1, n_sub]; a(n_sub+1) is also
    /// defined since it locates the rightmost interior interface.
    double a(int j) const;
    /// Right edge b_j of subdomain j, j in [1, n_sub]; b(0) is also defined.
    double b(int j) const;

    double width() const { return sub_len_ + 2.0 * delta_; }
    double total_length() const { return n_sub_ * sub_len_ + 2.0 * delta_; }

private:
    int n_sub_;
    double sub_len_;
    double delta_;
    std::vector<double> a_; // a_1 .. a_{N+1}, built by the recurrence
    std::vector<double> b_; // b_0 .. b_N
};

} // namespace schwarzchain
