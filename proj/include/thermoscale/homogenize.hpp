#pragma once

// Effective conductivity extraction: drive one axis, average gradient and
// flux over the cell, and read off k_eff = -<q> / <grad theta>. Ensemble
// runs repeat that over seeds and grid resolutions.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "thermoscale/effective_medium.hpp"
#include "thermoscale/errors.hpp"
#include "thermoscale/executor.hpp"
#include "thermoscale/geometry.hpp"
#include "thermoscale/heat_solver.hpp"

namespace thermoscale {

struct ConductivityTensor {
    double kxx = 0.0;
    double kyy = 0.0;
    double kzz = 0.0;

    double component(Axis a) const {
        switch (a) {
            case Axis::X: return kxx;
            case Axis::Y: return kyy;
            default: return kzz;
        }
    }
    double& component(Axis a) {
        switch (a) {
            case Axis::X: return kxx;
            case Axis::Y: return kyy;
            default: return kzz;
        }
    }
    double mean() const { return (kxx + kyy + kzz) / 3.0; }
};

// (max - min) / mean over the diagonal components.
inline double isotropy_deviation(const ConductivityTensor& t) {
    const double m = t.mean();
    if (!(m > 0.0)) throw NonPositiveInput("isotropy_deviation: mean must be > 0");
    const double hi = std::max({t.kxx, t.kyy, t.kzz});
    const double lo = std::min({t.kxx, t.kyy, t.kzz});
    return (hi - lo) / m;
}

struct SolveOptions {
    double tol = 1e-8;
    std::uint64_t max_iterations = 0;  // 0 = automatic cap
    double flux = 1.0;
    BoundarySpec::Kind bc_kind = BoundarySpec::Kind::FluxPair;
    double theta_low = 0.0;   // TemperaturePair drive
    double theta_high = 1.0;
};

namespace detail {

inline BoundarySpec drive_for(Axis axis, const SolveOptions& opt) {
    if (opt.bc_kind == BoundarySpec::Kind::FluxPair)
        return BoundarySpec::flux_pair(axis, opt.flux);
    return BoundarySpec::temperature_pair(axis, opt.theta_low, opt.theta_high);
}

}  // namespace detail

// Reduction of an already-solved field: -<q_a> / <d theta/d a>.
inline double effective_component(const TemperatureField& field, const VoxelGrid& grid,
                                  const MaterialTable& materials, Axis axis) {
    const FluxAverages avg = average_gradient_and_flux(field, grid, materials);
    const double g = avg.gradient[static_cast<int>(axis)];
    if (std::abs(g) < 1e-14)
        throw DegenerateGradient("effective_component: mean gradient along " +
                                 std::string(axis_name(axis)) + " is below 1e-14");
    return -avg.flux[static_cast<int>(axis)] / g;
}

struct ComponentResult {
    double k = 0.0;
    std::uint64_t iterations = 0;
};

inline ComponentResult effective_component(const VoxelGrid& grid,
                                           const MaterialTable& materials, Axis axis,
                                           const SolveOptions& opt = {}) {
    const SolveResult sol =
        solve_steady(grid, materials, detail::drive_for(axis, opt), opt.tol, opt.max_iterations);
    return {effective_component(sol.field, grid, materials, axis), sol.iterations};
}

struct TensorResult {
    ConductivityTensor tensor;
    std::uint64_t iterations = 0;  // summed over the three axis solves
};

// Three independent axis solves. The diagonal result must respect the
// series/parallel bounds at the voxelized fraction; a violation means the
// solver or assembly is broken, so it is a hard failure, not a data error.
inline TensorResult effective_tensor(const VoxelGrid& grid, const MaterialTable& materials,
                                     const SolveOptions& opt = {}) {
    TensorResult out;
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        const ComponentResult c = effective_component(grid, materials, a, opt);
        out.tensor.component(a) = c.k;
        out.iterations += c.iterations;
    }
    const auto fractions = grid.phase_fractions(2);
    const double phi = fractions[1];
    const double km = materials.conductivity(0);
    const double ki = materials.conductivity(1);
    const double lo = reuss_bound(km, ki, phi) * (1.0 - 1e-6);
    const double hi = voigt_bound(km, ki, phi) * (1.0 + 1e-6);
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        const double k = out.tensor.component(a);
        if (!(k >= lo && k <= hi))
            throw BoundsViolation("effective_tensor: k_" + std::string(axis_name(a)) +
                                  std::string(axis_name(a)) + " = " + std::to_string(k) +
                                  " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                  "] at voxel fraction " + std::to_string(phi));
    }
    return out;
}

inline TensorResult effective_tensor(const RveSpec& spec, const MaterialTable& materials,
                                     int n_per_axis, const SolveOptions& opt = {}) {
    const SphereSet packing = generate_packing(spec);
    const VoxelGrid grid = voxelize(packing, n_per_axis);
    return effective_tensor(grid, materials, opt);
}

struct EnsembleEntry {
    std::uint64_t seed = 0;
    ConductivityTensor tensor;
    std::uint64_t iterations = 0;
    double achieved_fraction = 0.0;  // voxelized inclusion fraction
};

struct EnsembleReport {
    RveSpec spec;
    int n_per_axis = 0;
    std::vector<EnsembleEntry> per_seed;
    ConductivityTensor mean;
    ConductivityTensor stddev;  // sample standard deviation per component
    double isotropy = 0.0;      // of the mean tensor
    bool single_sample = false;
};

// One full microstructure realization: pack, voxelize, solve three axes.
inline EnsembleEntry run_realization(const RveSpec& spec, const MaterialTable& materials,
                                     int n_per_axis, std::uint64_t seed,
                                     const SolveOptions& opt = {}) {
    RveSpec s = spec;
    s.rng_seed = seed;
    const SphereSet packing = generate_packing(s);
    const VoxelGrid grid = voxelize(packing, n_per_axis);
    const TensorResult t = effective_tensor(grid, materials, opt);
    EnsembleEntry e;
    e.seed = seed;
    e.tensor = t.tensor;
    e.iterations = t.iterations;
    e.achieved_fraction = grid.phase_fractions(2)[1];
    return e;
}

inline EnsembleReport run_ensemble(const RveSpec& spec, const MaterialTable& materials,
                                   int n_per_axis, const std::vector<std::uint64_t>& seeds,
                                   unsigned workers = 1, const SolveOptions& opt = {}) {
    if (seeds.empty()) throw ValidationError("run_ensemble: at least one seed is required");
    EnsembleReport report;
    report.spec = spec;
    report.n_per_axis = n_per_axis;
    report.per_seed.resize(seeds.size());
    run_jobs(seeds.size(), workers, [&](std::size_t i) {
        report.per_seed[i] = run_realization(spec, materials, n_per_axis, seeds[i], opt);
    });

    const double n = static_cast<double>(seeds.size());
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        double sum = 0.0;
        for (const auto& e : report.per_seed) sum += e.tensor.component(a);
        report.mean.component(a) = sum / n;
    }
    report.single_sample = seeds.size() < 2;
    if (!report.single_sample) {
        for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
            double ss = 0.0;
            for (const auto& e : report.per_seed) {
                const double d = e.tensor.component(a) - report.mean.component(a);
                ss += d * d;
            }
            report.stddev.component(a) = std::sqrt(ss / (n - 1.0));
        }
    }
    report.isotropy = isotropy_deviation(report.mean);
    return report;
}

// Cell sizes are indexed by target sphere count: the edge length follows
// from count, radius, and target fraction, and the grid resolution keeps a
// fixed number of voxels per sphere radius.
inline std::vector<EnsembleReport> convergence_study(
    const RveSpec& spec, const MaterialTable& materials, const std::vector<int>& sphere_counts,
    const std::vector<std::uint64_t>& seeds, unsigned workers = 1, const SolveOptions& opt = {},
    int voxels_per_radius = 4) {
    if (sphere_counts.empty())
        throw ValidationError("convergence_study: at least one sphere count is required");
    for (std::size_t i = 1; i < sphere_counts.size(); ++i)
        if (sphere_counts[i] <= sphere_counts[i - 1])
            throw ValidationError("convergence_study: sphere counts must be strictly increasing");
    if (!(spec.target_volume_fraction > 0.0))
        throw ValidationError("convergence_study: target volume fraction must be > 0");
    if (voxels_per_radius < 1)
        throw ValidationError("convergence_study: voxels_per_radius must be >= 1");

    std::vector<EnsembleReport> reports;
    reports.reserve(sphere_counts.size());
    for (int count : sphere_counts) {
        RveSpec sized = spec;
        sized.edge_length = std::cbrt(static_cast<double>(count) *
                                      sphere_volume(spec.sphere_radius) /
                                      spec.target_volume_fraction);
        const int n_per_axis = std::max(
            2, static_cast<int>(std::lround(voxels_per_radius * sized.edge_length /
                                            sized.sphere_radius)));
        reports.push_back(run_ensemble(sized, materials, n_per_axis, seeds, workers, opt));
    }
    return reports;
}

}  // namespace thermoscale
