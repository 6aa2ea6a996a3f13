#include "schwarzchain/discretize.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "schwarzchain/errors.hpp"

namespace schwarzchain {

namespace {

bool near_int(double v) {
    return std::abs(v - std::round(v)) <= 1e-10 * std::max(1.0, std::abs(v));
}

int to_cells(double v, const char* what) {
    if (!near_int(v)) {
        throw invalid_config(std::string(what) + " does not fall on the grid (" +
                             std::to_string(v) + " cells)");
    }
    return static_cast<int>(std::llround(v));
}

} // namespace

GridSpec GridSpec::spacing(double h) {
    if (!(h > 0.0)) throw invalid_config("grid spacing must be positive");
    GridSpec s;
    s.h = h;
    return s;
}

GridSpec GridSpec::counts(int nx, int ny) {
    if (nx < 4 || ny < 2) throw invalid_config("grid needs nx >= 4 and ny >= 2");
    GridSpec s;
    s.nx = nx;
    s.ny = ny;
    return s;
}

SubdomainGrid make_grid(const DomainChain& chain, int j, const GridSpec& spec) {
    if (j < 1 || j > chain.n_sub()) throw invalid_config("subdomain index out of range");
    const double width = chain.width();
    SubdomainGrid g;
    g.origin_x = chain.a(j);
    if (spec.h) {
        const double h = *spec.h;
        g.cells_sub_len = to_cells(chain.sub_len() / h, "subdomain length");
        g.cells_overlap = to_cells(2.0 * chain.delta() / h, "overlap");
        const int cells_y = to_cells(1.0 / h, "strip height");
        g.nx = g.cells_sub_len + g.cells_overlap - 1;
        g.ny = cells_y - 1;
        g.hx = h;
        g.hy = h;
    } else {
        g.nx = *spec.nx;
        g.ny = *spec.ny;
        g.hx = width / (g.nx + 1);
        g.hy = 1.0 / (g.ny + 1);
        g.cells_sub_len = to_cells(chain.sub_len() / g.hx, "subdomain length");
        g.cells_overlap = to_cells(2.0 * chain.delta() / g.hx, "overlap");
    }
    if (g.nx < 4 || g.ny < 2) throw invalid_config("grid needs nx >= 4 and ny >= 2");
    if (g.cells_overlap < 2 || g.cells_sub_len < 2) {
        throw invalid_config("grid does not resolve the overlap");
    }
    return g;
}

SubdomainOperator::SubdomainOperator(const SubdomainGrid& grid, const BcPair& bc,
                                     Transmission trans, EndFlags ends)
    : grid_(grid), bc_(bc), trans_(trans), ends_(ends) {
    // A vertical side keeps its boundary node only for a Robin transmission
    // interface; outer ends and Dirichlet transmission are eliminated.
    const bool left_robin = trans.is_robin() && !ends.left_outer;
    const bool right_robin = trans.is_robin() && !ends.right_outer;
    i_lo_ = left_robin ? 0 : 1;
    i_hi_ = right_robin ? grid.nx + 1 : grid.nx;
    j_lo_ = bc.bottom == BcKind::dirichlet ? 1 : 0;
    j_hi_ = bc.top == BcKind::dirichlet ? grid.ny : grid.ny + 1;

    const double ax = 1.0 / (grid.hx * grid.hx);
    const double ay = 1.0 / (grid.hy * grid.hy);
    const double q_bottom = bc.bottom == BcKind::robin ? bc.q : 0.0;
    const double q_top = bc.top == BcKind::robin ? bc.q : 0.0;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(n_unknowns()) * 5);
    for (int j = j_lo_; j <= j_hi_; ++j) {
        for (int i = i_lo_; i <= i_hi_; ++i) {
            const int row = index(i, j);
            double diag = 2.0 * ax + 2.0 * ay;
            if (i == 0 || i == grid.nx + 1) {
                // Ghost-eliminated Robin node: one neighbour, doubled.
                diag += 2.0 * trans.p / grid.hx;
                trip.emplace_back(row, index(i == 0 ? 1 : grid.nx, j), -2.0 * ax);
            } else {
                if (i - 1 >= i_lo_) trip.emplace_back(row, index(i - 1, j), -ax);
                if (i + 1 <= i_hi_) trip.emplace_back(row, index(i + 1, j), -ax);
            }
            if (j == 0 || j == grid.ny + 1) {
                diag += 2.0 * (j == 0 ? q_bottom : q_top) / grid.hy;
                trip.emplace_back(row, index(i, j == 0 ? 1 : grid.ny), -2.0 * ay);
            } else {
                if (j - 1 >= j_lo_) trip.emplace_back(row, index(i, j - 1), -ay);
                if (j + 1 <= j_hi_) trip.emplace_back(row, index(i, j + 1), -ay);
            }
            trip.emplace_back(row, row, diag);
        }
    }
    matrix_.resize(n_unknowns(), n_unknowns());
    matrix_.setFromTriplets(trip.begin(), trip.end());
    matrix_.makeCompressed();
    lu_.compute(matrix_);
    if (lu_.info() != Eigen::Success) {
        throw numerical_error("subdomain factorization failed");
    }
}

int SubdomainOperator::index(int i, int j) const {
    return (j - j_lo_) * n_cols() + (i - i_lo_);
}

Eigen::VectorXd SubdomainOperator::build_rhs(const Eigen::VectorXd& f,
                                             const Eigen::VectorXd& g_left,
                                             const Eigen::VectorXd& g_right) const {
    if (f.size() != 0 && f.size() != n_unknowns()) {
        throw invalid_config("source field has wrong length");
    }
    if (g_left.size() != 0 && g_left.size() != n_rows()) {
        throw invalid_config("left interface data has wrong length");
    }
    if (g_right.size() != 0 && g_right.size() != n_rows()) {
        throw invalid_config("right interface data has wrong length");
    }
    Eigen::VectorXd rhs = f.size() != 0 ? f : Eigen::VectorXd::Zero(n_unknowns());
    const double ax = 1.0 / (grid_.hx * grid_.hx);
    for (int j = j_lo_; j <= j_hi_; ++j) {
        const int r = j - j_lo_;
        if (g_left.size() != 0) {
            if (i_lo_ == 0) {
                rhs(index(0, j)) += 2.0 * g_left(r) / grid_.hx;
            } else {
                rhs(index(1, j)) += g_left(r) * ax;
            }
        }
        if (g_right.size() != 0) {
            if (i_hi_ == grid_.nx + 1) {
                rhs(index(grid_.nx + 1, j)) += 2.0 * g_right(r) / grid_.hx;
            } else {
                rhs(index(grid_.nx, j)) += g_right(r) * ax;
            }
        }
    }
    return rhs;
}

Eigen::VectorXd SubdomainOperator::solve(const Eigen::VectorXd& rhs) const {
    if (rhs.size() != n_unknowns()) throw invalid_config("rhs has wrong length");
    Eigen::VectorXd u = lu_.solve(rhs);
    if (lu_.info() != Eigen::Success) throw numerical_error("subdomain solve failed");
    return u;
}

Eigen::VectorXd extract_trace(Transmission trans, Side side,
                              const SubdomainOperator& neighbor_op,
                              const Eigen::VectorXd& neighbor_field,
                              double x_interface) {
    const SubdomainGrid& grid = neighbor_op.grid();
    if (neighbor_field.size() != neighbor_op.n_unknowns()) {
        throw invalid_config("neighbour field has wrong length");
    }
    const double fi = (x_interface - grid.origin_x) / grid.hx;
    const int i = static_cast<int>(std::llround(fi));
    if (std::abs(fi - i) > 1e-8 * std::max(1.0, std::abs(fi))) {
        throw invalid_config("interface is not grid aligned");
    }
    if (i < neighbor_op.i_lo() || i > neighbor_op.i_hi()) {
        throw invalid_config("interface line is outside the unknown range");
    }
    // One-sided derivative reaches into the neighbour's bulk, away from the
    // overlap: decreasing i when the neighbour lies to the left of the
    // receiver (receiver's left side), increasing i otherwise.
    const int step = side == Side::left ? -1 : 1;
    if (trans.is_robin() &&
        (i + 2 * step < neighbor_op.i_lo() || i + 2 * step > neighbor_op.i_hi())) {
        throw invalid_config("one-sided stencil leaves the unknown range");
    }

    Eigen::VectorXd out(neighbor_op.n_rows());
    for (int j = neighbor_op.j_lo(); j <= neighbor_op.j_hi(); ++j) {
        const double u0 = neighbor_field(neighbor_op.index(i, j));
        if (!trans.is_robin()) {
            out(j - neighbor_op.j_lo()) = u0;
            continue;
        }
        const double u1 = neighbor_field(neighbor_op.index(i + step, j));
        const double u2 = neighbor_field(neighbor_op.index(i + 2 * step, j));
        // step = -1: du = (3u0 - 4u1 + u2)/(2hx), datum p*u - du.
        // step = +1: du = (-3u0 + 4u1 - u2)/(2hx), datum p*u + du.
        // Both reduce to p*u0 - (3u0 - 4u1 + u2)/(2hx).
        out(j - neighbor_op.j_lo()) =
            trans.p * u0 - (3.0 * u0 - 4.0 * u1 + u2) / (2.0 * grid.hx);
    }
    return out;
}

OperatorCache::Key OperatorCache::make_key(const SubdomainGrid& grid, const BcPair& bc,
                                           Transmission trans, EndFlags ends) {
    return Key{grid.nx, grid.ny, grid.hx, grid.hy,
               static_cast<int>(bc.bottom), static_cast<int>(bc.top), bc.q,
               static_cast<int>(trans.kind), trans.p,
               ends.left_outer ? 1 : 0, ends.right_outer ? 1 : 0};
}

std::shared_ptr<const SubdomainOperator> OperatorCache::get(const SubdomainGrid& grid,
                                                            const BcPair& bc,
                                                            Transmission trans,
                                                            EndFlags ends) {
    const Key key = make_key(grid, bc, trans, ends);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto op = std::make_shared<const SubdomainOperator>(grid, bc, trans, ends);
    cache_.emplace(key, op);
    return op;
}

} // namespace schwarzchain
