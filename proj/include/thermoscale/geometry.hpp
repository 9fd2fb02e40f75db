#pragma once

// Periodic sphere packings and their rasterization to a phase-labeled voxel
// grid. Lengths are unit-agnostic (the solver only consumes ratios); the
// interface formula below is the one place that expects SI metres.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "thermoscale/errors.hpp"

namespace thermoscale {

inline constexpr double kPi = 3.14159265358979323846;

struct RveSpec {
    double edge_length = 100.0;          // cube edge L
    double sphere_radius = 10.0;         // equal-sphere radius r
    double target_volume_fraction = 0.2; // inclusion fraction, [0,1)
    double min_gap = -1.0;               // surface clearance; negative = 0.02 * r
    std::uint64_t rng_seed = 1;
    std::uint64_t max_attempts = 0;      // 0 = auto (1e5 per sphere)

    double gap() const { return min_gap >= 0.0 ? min_gap : 0.02 * sphere_radius; }

    void validate() const {
        if (!(edge_length > 0.0))
            throw ValidationError("RveSpec: edge_length must be > 0");
        if (!(sphere_radius > 0.0) || !(sphere_radius < edge_length / 2.0))
            throw ValidationError("RveSpec: sphere_radius must satisfy 0 < r < edge_length/2");
        if (!(target_volume_fraction >= 0.0) || !(target_volume_fraction < 1.0))
            throw ValidationError("RveSpec: target_volume_fraction must lie in [0,1)");
        if (!std::isfinite(min_gap))
            throw ValidationError("RveSpec: min_gap must be finite");
    }
};

struct SphereSet {
    double edge_length = 0.0;
    double radius = 0.0;
    std::vector<std::array<double, 3>> centers;  // components in [0, L)
};

// Minimum-image (periodic) distance between two points in a cube of edge L.
inline double min_image_distance(const std::array<double, 3>& a,
                                 const std::array<double, 3>& b, double L) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
        double d = a[c] - b[c];
        d -= L * std::round(d / L);
        s += d * d;
    }
    return std::sqrt(s);
}

inline double sphere_volume(double r) { return 4.0 / 3.0 * kPi * r * r * r; }

// Sphere count the target fraction rounds to.
inline std::uint64_t sphere_count(const RveSpec& spec) {
    const double cube = spec.edge_length * spec.edge_length * spec.edge_length;
    return static_cast<std::uint64_t>(
        std::llround(spec.target_volume_fraction * cube / sphere_volume(spec.sphere_radius)));
}

namespace detail {
// Canonical 53-bit double in [0,1); keeps packings reproducible across
// standard libraries (std::uniform_real_distribution is not pinned).
inline double canonical_u53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace detail

// Random sequential addition under periodic wrap: spheres are placed one at
// a time at uniform positions and rejected on minimum-image overlap.
inline SphereSet generate_packing(const RveSpec& spec) {
    spec.validate();
    const std::uint64_t n = sphere_count(spec);
    SphereSet set;
    set.edge_length = spec.edge_length;
    set.radius = spec.sphere_radius;
    set.centers.reserve(n);
    if (n == 0) return set;

    const std::uint64_t budget =
        spec.max_attempts > 0 ? spec.max_attempts : 100000ull * n;
    const double clearance = 2.0 * spec.sphere_radius + spec.gap();
    std::mt19937_64 rng(spec.rng_seed);

    std::uint64_t attempts = 0;
    while (set.centers.size() < n) {
        if (attempts >= budget)
            throw PackingInfeasible(
                "generate_packing: placed " + std::to_string(set.centers.size()) +
                    " of " + std::to_string(n) + " spheres (target_volume_fraction=" +
                    std::to_string(spec.target_volume_fraction) +
                    ") within " + std::to_string(budget) + " trial placements",
                attempts);
        ++attempts;
        std::array<double, 3> trial = {
            spec.edge_length * detail::canonical_u53(rng),
            spec.edge_length * detail::canonical_u53(rng),
            spec.edge_length * detail::canonical_u53(rng)};
        bool overlaps = false;
        for (const auto& c : set.centers) {
            if (min_image_distance(trial, c, spec.edge_length) < clearance) {
                overlaps = true;
                break;
            }
        }
        if (!overlaps) set.centers.push_back(trial);
    }
    return set;
}

// Exact: periodic spheres never overlap and wrapped parts stay inside the cell.
inline double achieved_volume_fraction(const SphereSet& s) {
    if (s.centers.empty()) return 0.0;
    const double cube = s.edge_length * s.edge_length * s.edge_length;
    return static_cast<double>(s.centers.size()) * sphere_volume(s.radius) / cube;
}

struct VoxelGrid {
    int n_per_axis = 0;
    double cell_size = 0.0;
    std::vector<std::uint8_t> phase;  // row-major, x slowest: ((ix*n)+iy)*n+iz

    std::size_t index(int ix, int iy, int iz) const {
        const std::size_t n = static_cast<std::size_t>(n_per_axis);
        return (static_cast<std::size_t>(ix) * n + static_cast<std::size_t>(iy)) * n +
               static_cast<std::size_t>(iz);
    }
    std::size_t cell_count() const {
        const std::size_t n = static_cast<std::size_t>(n_per_axis);
        return n * n * n;
    }
    double edge_length() const { return n_per_axis * cell_size; }

    std::vector<double> phase_fractions(std::size_t n_phases) const {
        std::vector<double> f(n_phases, 0.0);
        for (std::uint8_t p : phase) f.at(p) += 1.0;
        for (double& v : f) v /= static_cast<double>(cell_count());
        return f;
    }
};

// A cell is labeled inclusion iff its center lies within r (minimum image)
// of some sphere center; spheres are visited through their periodic images
// so only nearby cells are tested.
inline VoxelGrid voxelize(const SphereSet& s, int n_per_axis) {
    if (n_per_axis < 2) throw ValidationError("voxelize: n_per_axis must be >= 2");
    VoxelGrid grid;
    grid.n_per_axis = n_per_axis;
    grid.cell_size = s.edge_length > 0.0 ? s.edge_length / n_per_axis : 1.0;
    grid.phase.assign(grid.cell_count(), 0);
    if (s.centers.empty()) return grid;

    const double h = grid.cell_size;
    const double r2 = s.radius * s.radius;
    const int reach = static_cast<int>(std::ceil(s.radius / h)) + 1;
    const int n = n_per_axis;
    for (const auto& c : s.centers) {
        const int cx = static_cast<int>(std::floor(c[0] / h));
        const int cy = static_cast<int>(std::floor(c[1] / h));
        const int cz = static_cast<int>(std::floor(c[2] / h));
        for (int ix = cx - reach; ix <= cx + reach; ++ix) {
            const double px = (ix + 0.5) * h - c[0];
            const double dx = px - s.edge_length * std::round(px / s.edge_length);
            for (int iy = cy - reach; iy <= cy + reach; ++iy) {
                const double py = (iy + 0.5) * h - c[1];
                const double dy = py - s.edge_length * std::round(py / s.edge_length);
                for (int iz = cz - reach; iz <= cz + reach; ++iz) {
                    const double pz = (iz + 0.5) * h - c[2];
                    const double dz = pz - s.edge_length * std::round(pz / s.edge_length);
                    if (dx * dx + dy * dy + dz * dz <= r2) {
                        const int wx = ((ix % n) + n) % n;
                        const int wy = ((iy % n) + n) % n;
                        const int wz = ((iz % n) + n) % n;
                        grid.phase[grid.index(wx, wy, wz)] = 1;
                    }
                }
            }
        }
    }
    return grid;
}

// Folds a finite interfacial conductance h into the inclusion phase:
//   k_eq = k_i / (1 + k_i/(h r)),  r in metres.
// k_eq -> k_i as h -> inf and k_eq <= k_i always.
inline double equivalent_inclusion_conductivity(double k_i, double h, double r) {
    if (!(k_i > 0.0)) throw NonPositiveInput("equivalent_inclusion_conductivity: k_i must be > 0");
    if (!(h > 0.0)) throw NonPositiveInput("equivalent_inclusion_conductivity: h must be > 0");
    if (!(r > 0.0)) throw NonPositiveInput("equivalent_inclusion_conductivity: r must be > 0");
    return k_i / (1.0 + k_i / (h * r));
}

}  // namespace thermoscale
