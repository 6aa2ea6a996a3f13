#pragma once

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "schwarzchain/geometry.hpp"
#include "schwarzchain/transmission.hpp"

namespace schwarzchain {

/// Mesh request: either a target spacing h (both directions; L and 2*delta
/// must then be integer multiples of h) or explicit interior counts.
struct GridSpec {
    std::optional<double> h;
    std::optional<int> nx;
    std::optional<int> ny;

    static GridSpec spacing(double h);
    static GridSpec counts(int nx, int ny);
};

/// Uniform tensor grid of one subdomain (a_j, b_j) x (0, 1): nx interior
/// lines in x at spacing hx = width/(nx+1), ny interior lines in y at
/// hy = 1/(ny+1).  The interior interface abscissae a_{j+1} and b_{j-1}
/// always coincide with grid lines (checked at construction): L and 2*delta
/// are integer numbers of cells.
struct SubdomainGrid {
    int nx = 0, ny = 0;
    double hx = 0.0, hy = 0.0;
    double origin_x = 0.0; ///< a_j
    int cells_sub_len = 0; ///< L / hx
    int cells_overlap = 0; ///< 2*delta / hx
};

SubdomainGrid make_grid(const DomainChain& chain, int j, const GridSpec& spec);

/// Which ends of the subdomain touch the outer boundary of the chain (outer
/// ends are clamped u = 0 regardless of the transmission choice).
struct EndFlags {
    bool left_outer = false;
    bool right_outer = false;
};

/// Five-point discretization of -Laplace(u) on one subdomain with the
/// boundary closure folded in:
///  - Dirichlet rows are eliminated; their data enters the right-hand side,
///  - Neumann/Robin horizontal edges and Robin vertical transmission sides
///    keep their boundary nodes as unknowns, closed by second-order ghost
///    elimination, so all interface data enters the right-hand side only
///    and the factorization is computed once per shape.
/// Instances are immutable after construction; concurrent solves must be
/// serialized by the caller.
class SubdomainOperator {
public:
    SubdomainOperator(const SubdomainGrid& grid, const BcPair& bc,
                      Transmission trans, EndFlags ends);

    const SubdomainGrid& grid() const { return grid_; }
    const BcPair& bc() const { return bc_; }
    Transmission trans() const { return trans_; }
    EndFlags ends() const { return ends_; }

    /// Inclusive global index ranges of the unknown grid lines.
    int i_lo() const { return i_lo_; }
    int i_hi() const { return i_hi_; }
    int j_lo() const { return j_lo_; }
    int j_hi() const { return j_hi_; }
    int n_cols() const { return i_hi_ - i_lo_ + 1; }
    int n_rows() const { return j_hi_ - j_lo_ + 1; }
    int n_unknowns() const { return n_cols() * n_rows(); }

    /// Flat index of unknown at grid line (i, j); x runs fastest.
    int index(int i, int j) const;

    const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }

    /// Right-hand side from a source field (interior values, may be empty for
    /// zero) and per-unknown-row interface data on the two vertical sides.
    /// Data vectors have length n_rows(); empty means homogeneous.
    Eigen::VectorXd build_rhs(const Eigen::VectorXd& f,
                              const Eigen::VectorXd& g_left,
                              const Eigen::VectorXd& g_right) const;

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

private:
    SubdomainGrid grid_;
    BcPair bc_;
    Transmission trans_;
    EndFlags ends_;
    int i_lo_, i_hi_, j_lo_, j_hi_;
    Eigen::SparseMatrix<double> matrix_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

enum class Side { left, right };

/// Trace data a receiving subdomain needs on its `side`, sampled from the
/// neighbour's solved field along the grid line at abscissa x_interface.
///
/// Dirichlet transmission returns solution values.  Robin transmission
/// returns p*u - du/dx (left side) or p*u + du/dx (right side) with the
/// derivative taken by the second-order one-sided stencil reaching into the
/// neighbour's bulk (away from the overlap).  Length equals the receiver's
/// n_rows(), which matches the neighbour's since both share the BcPair.
Eigen::VectorXd extract_trace(Transmission trans, Side side,
                              const SubdomainOperator& neighbor_op,
                              const Eigen::VectorXd& neighbor_field,
                              double x_interface);

/// Shape-keyed cache so congruent subdomains share one factorization: a chain
/// needs at most three distinct operators (left end, interior, right end).
class OperatorCache {
public:
    std::shared_ptr<const SubdomainOperator> get(const SubdomainGrid& grid,
                                                 const BcPair& bc,
                                                 Transmission trans,
                                                 EndFlags ends);

    std::size_t size() const { return cache_.size(); }

private:
    using Key = std::tuple<int, int, double, double, int, int, double, int, double, int, int>;
    static Key make_key(const SubdomainGrid& grid, const BcPair& bc,
                        Transmission trans, EndFlags ends);
    std::map<Key, std::shared_ptr<const SubdomainOperator>> cache_;
};

} // namespace schwarzchain
