#pragma once

// Steady-state heat conduction on a voxel grid with trilinear hexahedral
// elements. The assembled operator is a 27-point symmetric stencil in CSR
// form; solves use Jacobi-preconditioned conjugate gradients. Boundary
// pairs drive one axis (prescribed flux or prescribed temperature); lateral
// faces are insulated (natural).

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "thermoscale/errors.hpp"
#include "thermoscale/geometry.hpp"

namespace thermoscale {

enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        default: return "z";
    }
}

struct PhaseMaterial {
    double conductivity = 0.0;            // W/(m K)
    double volumetric_heat_capacity = 0.0;  // J/(m^3 K), unused in steady solves
};

struct MaterialTable {
    std::vector<PhaseMaterial> phases;

    const PhaseMaterial& at(std::uint8_t label) const {
        if (label >= phases.size())
            throw MissingPhaseEntry("MaterialTable: no entry for phase label " +
                                    std::to_string(label));
        return phases[label];
    }
    double conductivity(std::uint8_t label) const {
        const double k = at(label).conductivity;
        if (!(k > 0.0))
            throw MissingPhaseEntry("MaterialTable: non-positive conductivity for phase " +
                                    std::to_string(label));
        return k;
    }

    static MaterialTable two_phase(double k_matrix, double k_inclusion,
                                   double c_matrix = 1.0, double c_inclusion = 1.0) {
        return MaterialTable{{{k_matrix, c_matrix}, {k_inclusion, c_inclusion}}};
    }
};

struct BoundarySpec {
    enum class Kind { FluxPair, TemperaturePair };

    Axis axis = Axis::X;
    Kind kind = Kind::FluxPair;
    double flux = 1.0;        // +flux enters the low face, -flux leaves the high face
    double theta_low = 0.0;   // TemperaturePair face values
    double theta_high = 1.0;
    double body_source = 0.0;  // volumetric source Q

    static BoundarySpec flux_pair(Axis a, double q) {
        BoundarySpec bc;
        bc.axis = a;
        bc.kind = Kind::FluxPair;
        bc.flux = q;
        return bc;
    }
    static BoundarySpec temperature_pair(Axis a, double lo, double hi) {
        BoundarySpec bc;
        bc.axis = a;
        bc.kind = Kind::TemperaturePair;
        bc.theta_low = lo;
        bc.theta_high = hi;
        return bc;
    }
};

// Nodal temperature change on the (n+1)^3 structured lattice.
struct TemperatureField {
    int nodes_per_axis = 0;
    double cell_size = 0.0;
    std::vector<double> values;  // row-major, x slowest

    std::size_t index(int ix, int iy, int iz) const {
        const std::size_t m = static_cast<std::size_t>(nodes_per_axis);
        return (static_cast<std::size_t>(ix) * m + static_cast<std::size_t>(iy)) * m +
               static_cast<std::size_t>(iz);
    }
};

// Local node ordering inside a cell: l = 4*dx + 2*dy + dz, offsets in {0,1}.
namespace detail {

// Reference stiffness for the unit cube with unit conductivity, integrated
// with 2x2x2 Gauss points (exact: the integrand is at most quadratic per axis).
inline std::array<std::array<double, 8>, 8> make_reference_stiffness() {
    std::array<std::array<double, 8>, 8> K{};
    const double g0 = 0.5 - 0.5 / std::sqrt(3.0);
    const double g1 = 0.5 + 0.5 / std::sqrt(3.0);
    const double gp[2] = {g0, g1};
    auto shape1d = [](double s, int d) { return d ? s : 1.0 - s; };
    auto dshape1d = [](int d) { return d ? 1.0 : -1.0; };
    for (int qa = 0; qa < 2; ++qa)
        for (int qb = 0; qb < 2; ++qb)
            for (int qc = 0; qc < 2; ++qc) {
                const double x = gp[qa], y = gp[qb], z = gp[qc];
                double grad[8][3];
                for (int l = 0; l < 8; ++l) {
                    const int dx = (l >> 2) & 1, dy = (l >> 1) & 1, dz = l & 1;
                    grad[l][0] = dshape1d(dx) * shape1d(y, dy) * shape1d(z, dz);
                    grad[l][1] = shape1d(x, dx) * dshape1d(dy) * shape1d(z, dz);
                    grad[l][2] = shape1d(x, dx) * shape1d(y, dy) * dshape1d(dz);
                }
                const double w = 0.125;  // (1/2)^3
                for (int i = 0; i < 8; ++i)
                    for (int j = 0; j < 8; ++j)
                        K[i][j] += w * (grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1] +
                                        grad[i][2] * grad[j][2]);
            }
    return K;
}

inline const std::array<std::array<double, 8>, 8>& reference_stiffness() {
    static const auto K = make_reference_stiffness();
    return K;
}

}  // namespace detail

// Element stiffness for one cubic cell of edge a and conductivity k.
inline std::array<std::array<double, 8>, 8> element_stiffness(double k, double a) {
    auto K = detail::reference_stiffness();
    const double s = k * a;
    for (auto& row : K)
        for (double& v : row) v *= s;
    return K;
}

// Assembled stiffness over nodal temperatures. Symmetric positive
// semidefinite; the nullspace is the constant field until Dirichlet rows
// are imposed by the solver.
class StiffnessOperator {
  public:
    StiffnessOperator(const VoxelGrid& grid, const MaterialTable& materials) {
        n_ = grid.n_per_axis;
        m_ = n_ + 1;
        const std::size_t nodes = node_count();
        // CSR pattern: up to 27 neighbors per node, lexicographic offsets
        // give ascending column ids.
        row_ptr_.assign(nodes + 1, 0);
        for (int ix = 0; ix < m_; ++ix)
            for (int iy = 0; iy < m_; ++iy)
                for (int iz = 0; iz < m_; ++iz) {
                    const int su = span(ix), sv = span(iy), sw = span(iz);
                    row_ptr_[node_index(ix, iy, iz) + 1] =
                        static_cast<std::size_t>(su) * sv * sw;
                }
        for (std::size_t i = 0; i < nodes; ++i) row_ptr_[i + 1] += row_ptr_[i];
        col_.resize(row_ptr_[nodes]);
        val_.assign(row_ptr_[nodes], 0.0);
        for (int ix = 0; ix < m_; ++ix)
            for (int iy = 0; iy < m_; ++iy)
                for (int iz = 0; iz < m_; ++iz) {
                    std::size_t p = row_ptr_[node_index(ix, iy, iz)];
                    for (int u = lo(ix); u <= hi(ix); ++u)
                        for (int v = lo(iy); v <= hi(iy); ++v)
                            for (int w = lo(iz); w <= hi(iz); ++w)
                                col_[p++] = static_cast<std::int64_t>(
                                    node_index(ix + u, iy + v, iz + w));
                }

        const auto& Kref = detail::reference_stiffness();
        const double a = grid.cell_size;
        for (int cx = 0; cx < n_; ++cx)
            for (int cy = 0; cy < n_; ++cy)
                for (int cz = 0; cz < n_; ++cz) {
                    const double ka =
                        materials.conductivity(grid.phase[grid.index(cx, cy, cz)]) * a;
                    for (int l1 = 0; l1 < 8; ++l1) {
                        const int ax = cx + ((l1 >> 2) & 1), ay = cy + ((l1 >> 1) & 1),
                                  az = cz + (l1 & 1);
                        const std::size_t row = node_index(ax, ay, az);
                        for (int l2 = 0; l2 < 8; ++l2) {
                            const int bx = cx + ((l2 >> 2) & 1), by = cy + ((l2 >> 1) & 1),
                                      bz = cz + (l2 & 1);
                            val_[row_ptr_[row] + slot(ax, ay, az, bx - ax, by - ay, bz - az)] +=
                                ka * Kref[l1][l2];
                        }
                    }
                }
    }

    int nodes_per_axis() const { return m_; }
    std::size_t node_count() const {
        const std::size_t m = static_cast<std::size_t>(m_);
        return m * m * m;
    }
    std::size_t node_index(int ix, int iy, int iz) const {
        const std::size_t m = static_cast<std::size_t>(m_);
        return (static_cast<std::size_t>(ix) * m + static_cast<std::size_t>(iy)) * m +
               static_cast<std::size_t>(iz);
    }

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        const std::size_t nodes = node_count();
        for (std::size_t i = 0; i < nodes; ++i) {
            double acc = 0.0;
            for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
                acc += val_[p] * x[static_cast<std::size_t>(col_[p])];
            y[i] = acc;
        }
    }

    std::vector<double> diagonal() const {
        std::vector<double> d(node_count(), 0.0);
        for (std::size_t i = 0; i < node_count(); ++i)
            for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
                if (static_cast<std::size_t>(col_[p]) == i) d[i] = val_[p];
        return d;
    }

  private:
    int lo(int i) const { return i > 0 ? -1 : 0; }
    int hi(int i) const { return i < m_ - 1 ? 1 : 0; }
    int span(int i) const { return hi(i) - lo(i) + 1; }
    // Offset of column (i+du, j+dv, k+dw) inside row (i,j,k): offsets are
    // stored lexicographically over the node's valid neighbor ranges.
    std::size_t slot(int ix, int iy, int iz, int du, int dv, int dw) const {
        const int sv = span(iy), sw = span(iz);
        return static_cast<std::size_t>((du - lo(ix)) * sv * sw + (dv - lo(iy)) * sw +
                                        (dw - lo(iz)));
    }

    int n_ = 0;
    int m_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::int64_t> col_;
    std::vector<double> val_;
};

struct SolveResult {
    TemperatureField field;
    std::uint64_t iterations = 0;
    double relative_residual = 0.0;
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace detail

// Jacobi-preconditioned CG on the constrained system. Constrained entries
// (Dirichlet faces, or the pinned corner under pure-flux data) are frozen:
// every Krylov vector is zero there and the lifting carries the values.
inline SolveResult solve_steady(const VoxelGrid& grid, const MaterialTable& materials,
                                const BoundarySpec& bc, double tol = 1e-8,
                                std::uint64_t max_iterations = 0) {
    if (!(tol > 0.0)) throw ValidationError("solve_steady: tol must be > 0");
    const StiffnessOperator A(grid, materials);
    const int m = A.nodes_per_axis();
    const std::size_t nodes = A.node_count();
    const double a = grid.cell_size;

    std::vector<double> b(nodes, 0.0);
    if (bc.body_source != 0.0) {
        const double w = bc.body_source * a * a * a / 8.0;
        const int n = grid.n_per_axis;
        for (int cx = 0; cx < n; ++cx)
            for (int cy = 0; cy < n; ++cy)
                for (int cz = 0; cz < n; ++cz)
                    for (int l = 0; l < 8; ++l)
                        b[A.node_index(cx + ((l >> 2) & 1), cy + ((l >> 1) & 1),
                                       cz + (l & 1))] += w;
    }

    const int ax = static_cast<int>(bc.axis);
    auto face_nodes = [&](int coord, auto&& fn) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                int idx[3];
                idx[ax] = coord;
                idx[(ax + 1) % 3] = i;
                idx[(ax + 2) % 3] = j;
                fn(idx[0], idx[1], idx[2]);
            }
    };

    std::vector<std::uint8_t> constrained(nodes, 0);
    std::vector<double> lift(nodes, 0.0);

    if (bc.kind == BoundarySpec::Kind::FluxPair) {
        // Natural-BC load: each face cell spreads q*a^2/4 onto its 4 nodes;
        // inflow heats the low face, outflow cools the high face.
        const double w = bc.flux * a * a / 4.0;
        const int n = grid.n_per_axis;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int di = 0; di < 2; ++di)
                    for (int dj = 0; dj < 2; ++dj) {
                        int idx[3];
                        idx[(ax + 1) % 3] = i + di;
                        idx[(ax + 2) % 3] = j + dj;
                        idx[ax] = 0;
                        b[A.node_index(idx[0], idx[1], idx[2])] += w;
                        idx[ax] = m - 1;
                        b[A.node_index(idx[0], idx[1], idx[2])] -= w;
                    }
        constrained[A.node_index(0, 0, 0)] = 1;  // gauge: pin one corner at 0
    } else {
        face_nodes(0, [&](int i, int j, int k) {
            constrained[A.node_index(i, j, k)] = 1;
            lift[A.node_index(i, j, k)] = bc.theta_low;
        });
        face_nodes(m - 1, [&](int i, int j, int k) {
            constrained[A.node_index(i, j, k)] = 1;
            lift[A.node_index(i, j, k)] = bc.theta_high;
        });
    }

    // rhs = P (b - A g), solve P A P w = rhs, theta = g + w.
    std::vector<double> rhs(nodes), tmp(nodes);
    A.apply(lift, tmp);
    for (std::size_t i = 0; i < nodes; ++i)
        rhs[i] = constrained[i] ? 0.0 : b[i] - tmp[i];

    std::vector<double> invdiag = A.diagonal();
    for (std::size_t i = 0; i < nodes; ++i)
        invdiag[i] = (constrained[i] || invdiag[i] == 0.0) ? 0.0 : 1.0 / invdiag[i];

    const double load_norm = std::sqrt(detail::dot(rhs, rhs));
    SolveResult result;
    result.field.nodes_per_axis = m;
    result.field.cell_size = a;

    std::vector<double> x(nodes, 0.0);
    if (load_norm > 0.0) {
        const std::uint64_t cap =
            max_iterations > 0
                ? max_iterations
                : static_cast<std::uint64_t>(20.0 * std::sqrt(static_cast<double>(nodes))) +
                      1000;
        std::vector<double> r = rhs, z(nodes), p(nodes), q(nodes);
        for (std::size_t i = 0; i < nodes; ++i) z[i] = invdiag[i] * r[i];
        p = z;
        double rz = detail::dot(r, z);
        double rnorm = load_norm;
        std::uint64_t it = 0;
        while (rnorm > tol * load_norm) {
            if (it >= cap)
                throw NonConvergence("solve_steady: CG exceeded " + std::to_string(cap) +
                                         " iterations (residual " + std::to_string(rnorm / load_norm) +
                                         " of load)",
                                     it);
            A.apply(p, q);
            for (std::size_t i = 0; i < nodes; ++i)
                if (constrained[i]) q[i] = 0.0;
            const double alpha = rz / detail::dot(p, q);
            for (std::size_t i = 0; i < nodes; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * q[i];
            }
            for (std::size_t i = 0; i < nodes; ++i) z[i] = invdiag[i] * r[i];
            const double rz_new = detail::dot(r, z);
            const double beta = rz_new / rz;
            rz = rz_new;
            for (std::size_t i = 0; i < nodes; ++i) p[i] = z[i] + beta * p[i];
            rnorm = std::sqrt(detail::dot(r, r));
            ++it;
        }
        result.iterations = it;
        result.relative_residual = rnorm / load_norm;
    }

    result.field.values.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) result.field.values[i] = lift[i] + x[i];
    return result;
}

struct FluxAverages {
    std::array<double, 3> gradient{};  // volume-averaged grad(theta)
    std::array<double, 3> flux{};      // volume-averaged -k grad(theta)
};

// Cell-center gradients from trilinear shape-function derivatives. The
// center value times the cell volume is the exact element integral (the
// per-axis derivative is bilinear in the transverse coordinates).
inline FluxAverages average_gradient_and_flux(const TemperatureField& field,
                                              const VoxelGrid& grid,
                                              const MaterialTable& materials) {
    FluxAverages out;
    const int n = grid.n_per_axis;
    const double inv4a = 1.0 / (4.0 * grid.cell_size);
    double g[3] = {0.0, 0.0, 0.0};
    double q[3] = {0.0, 0.0, 0.0};
    for (int cx = 0; cx < n; ++cx)
        for (int cy = 0; cy < n; ++cy)
            for (int cz = 0; cz < n; ++cz) {
                double theta[8];
                for (int l = 0; l < 8; ++l)
                    theta[l] = field.values[field.index(cx + ((l >> 2) & 1),
                                                        cy + ((l >> 1) & 1), cz + (l & 1))];
                // local l = 4dx+2dy+dz
                const double gx = ((theta[4] + theta[5] + theta[6] + theta[7]) -
                                   (theta[0] + theta[1] + theta[2] + theta[3])) * inv4a;
                const double gy = ((theta[2] + theta[3] + theta[6] + theta[7]) -
                                   (theta[0] + theta[1] + theta[4] + theta[5])) * inv4a;
                const double gz = ((theta[1] + theta[3] + theta[5] + theta[7]) -
                                   (theta[0] + theta[2] + theta[4] + theta[6])) * inv4a;
                const double k = materials.conductivity(grid.phase[grid.index(cx, cy, cz)]);
                g[0] += gx;
                g[1] += gy;
                g[2] += gz;
                q[0] -= k * gx;
                q[1] -= k * gy;
                q[2] -= k * gz;
            }
    const double inv_cells = 1.0 / static_cast<double>(grid.cell_count());
    for (int c = 0; c < 3; ++c) {
        out.gradient[c] = g[c] * inv_cells;
        out.flux[c] = q[c] * inv_cells;
    }
    return out;
}

}  // namespace thermoscale
