#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "thermoscale/effective_medium.hpp"
#include "thermoscale/geometry.hpp"
#include "thermoscale/homogenize.hpp"

namespace ts = thermoscale;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ts::VoxelGrid uniform_grid(int n, double edge_length, std::uint8_t phase = 0) {
    ts::VoxelGrid g;
    g.n_per_axis = n;
    g.cell_size = edge_length / n;
    g.phase.assign(g.cell_count(), phase);
    return g;
}

ts::VoxelGrid laminate_grid(int n, double edge_length) {
    ts::VoxelGrid g = uniform_grid(n, edge_length);
    for (int ix = n / 2; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) g.phase[g.index(ix, iy, iz)] = 1;
    return g;
}

ts::VoxelGrid random_grid(int n, double edge_length, std::uint64_t seed) {
    ts::VoxelGrid g = uniform_grid(n, edge_length);
    std::mt19937_64 rng(seed);
    for (auto& p : g.phase) p = static_cast<std::uint8_t>(rng() & 1u);
    return g;
}

}  // namespace

TEST_CASE("effective-medium formulas match closed-form values") {
    CHECK_THAT(ts::reuss_bound(0.036, 0.56, 0.2), WithinRel(0.044288224956063269, 1e-14));
    CHECK_THAT(ts::voigt_bound(0.036, 0.56, 0.2), WithinRel(0.1408, 1e-14));
    CHECK_THAT(ts::maxwell_garnett(0.036, 0.56, 0.2), WithinRel(0.057468892261001517, 1e-14));
    CHECK_THAT(ts::reuss_bound(0.036, 0.56, 0.05), WithinRel(0.037766953915324091, 1e-14));
    CHECK_THAT(ts::maxwell_garnett(0.036, 0.56, 0.05), WithinRel(0.040670848464839881, 1e-14));

    CHECK_THAT(ts::maxwell_garnett(0.036, 0.56, 0.0), WithinRel(0.036, 1e-14));
    CHECK_THAT(ts::maxwell_garnett(0.036, 0.56, 1.0), WithinRel(0.56, 1e-14));

    for (double f : {0.1, 0.3, 0.7}) {
        const double lo = ts::reuss_bound(0.036, 0.56, f);
        const double hi = ts::voigt_bound(0.036, 0.56, f);
        const double mid = ts::maxwell_garnett(0.036, 0.56, f);
        CHECK(lo <= mid);
        CHECK(mid <= hi);
    }

    CHECK_THROWS_AS(ts::reuss_bound(0.0, 0.56, 0.2), ts::NonPositiveInput);
    CHECK_THROWS_AS(ts::voigt_bound(0.036, -1.0, 0.2), ts::NonPositiveInput);
    CHECK_THROWS_AS(ts::maxwell_garnett(0.036, 0.56, 1.2), ts::ValidationError);
}

TEST_CASE("isotropy deviation is the component spread over the mean") {
    CHECK_THAT(ts::isotropy_deviation({0.06, 0.066, 0.063}),
               WithinRel(0.095238095238095238, 1e-14));
    CHECK_THAT(ts::isotropy_deviation({0.25, 0.25, 0.25}), WithinAbs(0.0, 1e-15));
}

TEST_CASE("a single-phase grid recovers the phase conductivity exactly") {
    const ts::VoxelGrid g = uniform_grid(8, 1.0);
    const ts::TensorResult res =
        ts::effective_tensor(g, ts::MaterialTable::two_phase(0.036, 0.56));
    CHECK_THAT(res.tensor.kxx, WithinRel(0.036, 1e-6));
    CHECK_THAT(res.tensor.kyy, WithinRel(0.036, 1e-6));
    CHECK_THAT(res.tensor.kzz, WithinRel(0.036, 1e-6));
    CHECK(ts::isotropy_deviation(res.tensor) <= 1e-6);
    CHECK(res.iterations > 0);
}

TEST_CASE("a half/half laminate hits the series and parallel limits") {
    const ts::VoxelGrid g = laminate_grid(16, 1.0);
    const ts::MaterialTable materials = ts::MaterialTable::two_phase(0.1, 0.4);

    // Across the slabs the prescribed-flux solution is the exact series
    // profile; along the slabs only the prescribed-temperature drive keeps
    // the linear field (uniform boundary flux density is wrong there), so
    // the arithmetic limit is measured with the Dirichlet drive.
    CHECK_THAT(ts::effective_component(g, materials, ts::Axis::X).k, WithinRel(0.16, 1e-6));

    ts::SolveOptions dirichlet;
    dirichlet.bc_kind = ts::BoundarySpec::Kind::TemperaturePair;
    CHECK_THAT(ts::effective_component(g, materials, ts::Axis::X, dirichlet).k,
               WithinRel(0.16, 1e-6));
    CHECK_THAT(ts::effective_component(g, materials, ts::Axis::Y, dirichlet).k,
               WithinRel(0.25, 1e-6));
    CHECK_THAT(ts::effective_component(g, materials, ts::Axis::Z, dirichlet).k,
               WithinRel(0.25, 1e-6));

    // The flux drive bounds the in-plane component from below.
    const double flux_parallel = ts::effective_component(g, materials, ts::Axis::Y).k;
    CHECK(flux_parallel <= 0.25 + 1e-12);
    CHECK(flux_parallel >= 0.16 - 1e-12);
}

TEST_CASE("a constant field has no usable drive") {
    const ts::VoxelGrid g = uniform_grid(4, 1.0);
    const ts::MaterialTable materials = ts::MaterialTable::two_phase(0.036, 0.036);
    ts::TemperatureField field;
    field.nodes_per_axis = 5;
    field.cell_size = g.cell_size;
    field.values.assign(125, 3.0);
    CHECK_THROWS_AS(ts::effective_component(field, g, materials, ts::Axis::X),
                    ts::DegenerateGradient);
}

TEST_CASE("scaling both conductivities scales the tensor linearly") {
    const ts::VoxelGrid g = random_grid(6, 1.0, 23);
    const ts::TensorResult base =
        ts::effective_tensor(g, ts::MaterialTable::two_phase(0.036, 0.56));
    const ts::TensorResult scaled =
        ts::effective_tensor(g, ts::MaterialTable::two_phase(3 * 0.036, 3 * 0.56));
    CHECK_THAT(scaled.tensor.kxx, WithinRel(3 * base.tensor.kxx, 1e-6));
    CHECK_THAT(scaled.tensor.kyy, WithinRel(3 * base.tensor.kyy, 1e-6));
    CHECK_THAT(scaled.tensor.kzz, WithinRel(3 * base.tensor.kzz, 1e-6));
}

TEST_CASE("the recovered tensor does not depend on the drive magnitude") {
    const ts::VoxelGrid g = random_grid(6, 1.0, 31);
    const ts::MaterialTable materials = ts::MaterialTable::two_phase(0.036, 0.56);
    ts::SolveOptions weak, strong;
    weak.flux = 1.0;
    strong.flux = 2.0;
    const double k_weak = ts::effective_component(g, materials, ts::Axis::Y, weak).k;
    const double k_strong = ts::effective_component(g, materials, ts::Axis::Y, strong).k;
    CHECK_THAT(k_strong, WithinRel(k_weak, 1e-12));
}

TEST_CASE("realizations are reproducible for a fixed seed") {
    ts::RveSpec spec;
    spec.edge_length = 60.0;
    spec.sphere_radius = 10.0;
    spec.target_volume_fraction = 0.05;
    const ts::MaterialTable materials = ts::MaterialTable::two_phase(0.036, 0.56);

    const ts::EnsembleEntry a = ts::run_realization(spec, materials, 12, 9);
    const ts::EnsembleEntry b = ts::run_realization(spec, materials, 12, 9);
    CHECK(a.tensor.kxx == b.tensor.kxx);
    CHECK(a.tensor.kyy == b.tensor.kyy);
    CHECK(a.tensor.kzz == b.tensor.kzz);
    CHECK(a.iterations == b.iterations);
    CHECK(a.achieved_fraction == b.achieved_fraction);

    ts::RveSpec seeded = spec;
    seeded.rng_seed = 9;
    const ts::TensorResult direct = ts::effective_tensor(seeded, materials, 12);
    CHECK(direct.tensor.kxx == a.tensor.kxx);
    CHECK(direct.tensor.kzz == a.tensor.kzz);
}

TEST_CASE("ensemble statistics aggregate the per-seed tensors") {
    ts::RveSpec spec;
    spec.edge_length = 60.0;
    spec.sphere_radius = 10.0;
    spec.target_volume_fraction = 0.05;
    const ts::MaterialTable materials = ts::MaterialTable::two_phase(0.036, 0.56);
    const std::vector<std::uint64_t> seeds{1, 2, 3};

    const ts::EnsembleReport report = ts::run_ensemble(spec, materials, 12, seeds);
    REQUIRE(report.per_seed.size() == 3);
    CHECK_FALSE(report.single_sample);
    for (std::size_t i = 0; i < seeds.size(); ++i) CHECK(report.per_seed[i].seed == seeds[i]);

    double mean = 0.0;
    for (const auto& e : report.per_seed) mean += e.tensor.kxx;
    mean /= 3.0;
    double var = 0.0;
    for (const auto& e : report.per_seed) var += (e.tensor.kxx - mean) * (e.tensor.kxx - mean);
    var /= 2.0;
    CHECK_THAT(report.mean.kxx, WithinRel(mean, 1e-13));
    CHECK_THAT(report.stddev.kxx, WithinAbs(std::sqrt(var), 1e-15));
    CHECK_THAT(report.isotropy, WithinRel(ts::isotropy_deviation(report.mean), 1e-13));

    // worker count must not change the outcome
    const ts::EnsembleReport threaded = ts::run_ensemble(spec, materials, 12, seeds, 2);
    CHECK(threaded.mean.kxx == report.mean.kxx);
    CHECK(threaded.stddev.kzz == report.stddev.kzz);

    const ts::EnsembleReport lone = ts::run_ensemble(spec, materials, 12, {7});
    CHECK(lone.single_sample);
    CHECK(lone.stddev.kxx == 0.0);
    CHECK(lone.stddev.kyy == 0.0);
}

TEST_CASE("grid refinement contracts toward a resolution limit") {
    ts::SphereSet spheres;
    spheres.edge_length = 40.0;
    spheres.radius = 10.0;
    spheres.centers = {{20.0, 20.0, 20.0}};
    const ts::MaterialTable materials = ts::MaterialTable::two_phase(0.036, 0.56);

    double k[3];
    const int res[3] = {12, 24, 48};
    for (int i = 0; i < 3; ++i) {
        const ts::VoxelGrid g = ts::voxelize(spheres, res[i]);
        k[i] = ts::effective_component(g, materials, ts::Axis::X).k;
    }
    CHECK(std::abs(k[2] - k[1]) <= std::abs(k[1] - k[0]));
}

TEST_CASE("convergence study derives the cell size from the sphere budget") {
    ts::RveSpec spec;
    spec.sphere_radius = 10.0;
    spec.target_volume_fraction = 0.2;
    const ts::MaterialTable materials = ts::MaterialTable::two_phase(0.036, 0.56);

    const auto reports =
        ts::convergence_study(spec, materials, {8, 27}, {1, 2}, 1, {}, 2);
    REQUIRE(reports.size() == 2);
    CHECK_THAT(reports[0].spec.edge_length, WithinRel(55.129349352090626, 1e-12));
    CHECK_THAT(reports[1].spec.edge_length, WithinRel(82.694024028135938, 1e-12));
    CHECK(reports[0].n_per_axis == 11);
    CHECK(reports[1].n_per_axis == 17);
    for (const auto& r : reports) {
        REQUIRE(r.per_seed.size() == 2);
        CHECK(r.isotropy >= 0.0);
        CHECK(std::isfinite(r.isotropy));
        for (const auto& e : r.per_seed) {
            CHECK(e.tensor.kxx > 0.036);
            CHECK(e.tensor.kxx < 0.56);
        }
    }
}
