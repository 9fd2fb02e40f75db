// End-to-end acceptance checks for the two-scale thermal pipeline. Each
// criterion prints one [PASS]/[FAIL] line (with indented notes where a value
// is reported rather than asserted); the exit code is the number of failures.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "thermoscale/building.hpp"
#include "thermoscale/geometry.hpp"
#include "thermoscale/heat_solver.hpp"
#include "thermoscale/homogenize.hpp"
#include "thermoscale/io.hpp"
#include "thermoscale/mixtures.hpp"
#include "thermoscale/simulate.hpp"
#include "thermoscale/weather.hpp"

namespace ts = thermoscale;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double rel_diff(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

struct Checker {
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void note(const std::string& what) { notes.push_back(what); }
};

bool run_criterion(int id, const char* label, double time_limit_s,
                   const std::function<void(Checker&)>& body) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("threw: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0.0 && elapsed > time_limit_s)
        c.failures.push_back("took " + fmt(elapsed) + " s, limit " + fmt(time_limit_s) + " s");

    std::printf("[%s] criterion %2d: %s (%.2f s)\n", c.failures.empty() ? "PASS" : "FAIL", id,
                label, elapsed);
    for (const std::string& n : c.notes) std::printf("         note: %s\n", n.c_str());
    for (const std::string& f : c.failures) std::printf("         fail: %s\n", f.c_str());
    std::fflush(stdout);
    return c.failures.empty();
}

ts::VoxelGrid uniform_grid(int n) {
    ts::VoxelGrid grid;
    grid.n_per_axis = n;
    grid.cell_size = 1.0;
    grid.phase.assign(grid.cell_count(), 0);
    return grid;
}

// Half/half slabs stacked along x: phase 0 for ix < n/2, phase 1 above.
ts::VoxelGrid laminate_grid(int n) {
    ts::VoxelGrid grid = uniform_grid(n);
    for (int ix = n / 2; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) grid.phase[grid.index(ix, iy, iz)] = 1;
    return grid;
}

ts::Layer brick_layer() { return {0.1, 0.9, 1800.0, 840.0, std::nullopt}; }

ts::Layer pcm_layer(double melt_low, double melt_high) {
    return {0.03, 0.058, 250.0, 1800.0, ts::PcmProperties{180000.0, melt_low, melt_high}};
}

// -- CLI helpers for the determinism criterion ------------------------------

int run_cli(const std::string& stage_and_flags) {
    const std::string cmd =
        std::string("'") + THERMOSCALE_CLI_PATH + "' " + stage_and_flags + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

std::string stage_cmd(const std::string& stage, const fs::path& config, const fs::path& out) {
    return stage + " --config '" + config.string() + "' --out '" + out.string() + "'";
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) return "<unreadable: " + path.string() + ">";
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

ts::io::json inline_building_json() {
    ts::io::json heating;
    heating["setpoint"] = 21.0;
    heating["max_power"] = 5000.0;
    heating["efficiency"] = 0.9;
    heating["k_p"] = 500.0;
    ts::io::json zone;
    zone["name"] = "room";
    zone["capacitance"] = 2.0e5;
    zone["heating"] = heating;
    zone["infiltration_ua"] = 30.0;
    zone["window_ua"] = 20.0;
    zone["internal_gains"] = 100.0;
    ts::io::json b;
    b["zones"] = ts::io::json::array({zone});
    b["walls"] = ts::io::json::array();
    return b;
}

// Scenario results shared between the PCM-direction and comfort criteria.
struct ScenarioContext {
    ts::DeltaReport delta;
    bool ready = false;
};

}  // namespace

int main() {
    int failures = 0;
    ScenarioContext ctx;

    failures += !run_criterion(1, "uniform material recovery", 1.0, [](Checker& c) {
        const ts::VoxelGrid grid = uniform_grid(16);
        const ts::TensorResult res =
            ts::effective_tensor(grid, ts::MaterialTable::two_phase(0.036, 0.56));
        c.expect(rel_diff(res.tensor.kxx, 0.036) <= 1e-6, "kxx = " + fmt(res.tensor.kxx));
        c.expect(rel_diff(res.tensor.kyy, 0.036) <= 1e-6, "kyy = " + fmt(res.tensor.kyy));
        c.expect(rel_diff(res.tensor.kzz, 0.036) <= 1e-6, "kzz = " + fmt(res.tensor.kzz));
    });

    failures += !run_criterion(2, "series laminate reaches the harmonic mean", 10.0, [](Checker& c) {
        const ts::VoxelGrid grid = laminate_grid(32);
        const ts::ComponentResult res =
            ts::effective_component(grid, ts::MaterialTable::two_phase(0.1, 0.4), ts::Axis::X);
        c.expect(rel_diff(res.k, 0.16) <= 0.005, "k across the slabs = " + fmt(res.k));
    });

    failures += !run_criterion(3, "parallel laminate reaches the arithmetic mean", 10.0,
                               [](Checker& c) {
        const ts::VoxelGrid grid = laminate_grid(32);
        // In-plane conduction keeps a linear temperature field only under the
        // prescribed-temperature drive, so that is the drive measured here.
        ts::SolveOptions opt;
        opt.bc_kind = ts::BoundarySpec::Kind::TemperaturePair;
        const ts::ComponentResult res = ts::effective_component(
            grid, ts::MaterialTable::two_phase(0.1, 0.4), ts::Axis::Y, opt);
        c.expect(rel_diff(res.k, 0.25) <= 0.005, "k along the slabs = " + fmt(res.k));
    });

    failures += !run_criterion(4, "dilute suspension matches Maxwell-Garnett", 300.0,
                               [](Checker& c) {
        ts::RveSpec spec;
        spec.edge_length = 91.016550419749685;  // nine radius-10 spheres at phi = 0.05
        spec.sphere_radius = 10.0;
        spec.target_volume_fraction = 0.05;
        const double k_eq = ts::equivalent_inclusion_conductivity(0.56, 3.5e7, 1e-5);
        const ts::MaterialTable materials = ts::MaterialTable::two_phase(0.036, k_eq);
        const ts::EnsembleReport report = ts::run_ensemble(spec, materials, 48, {1, 2, 3});
        const double k_mean = report.mean.mean();
        const double closed_form = 0.040669424883310958;  // Maxwell-Garnett for these phases
        c.note("mean k = " + fmt(k_mean) + ", closed form = " + fmt(closed_form) +
               ", rel diff = " + fmt(rel_diff(k_mean, closed_form)));
        c.expect(rel_diff(k_mean, closed_form) <= 0.05,
                 "mean k = " + fmt(k_mean) + " vs " + fmt(closed_form));
    });

    failures += !run_criterion(5, "packed-sphere ensemble bounds and isotropy", 600.0,
                               [](Checker& c) {
        ts::RveSpec spec;
        spec.edge_length = 90.165878684120401;  // 35 radius-10 spheres at phi = 0.20
        spec.sphere_radius = 10.0;
        spec.target_volume_fraction = 0.20;
        c.expect(ts::sphere_count(spec) >= 30,
                 "sphere count = " + std::to_string(ts::sphere_count(spec)));
        const double k_eq = ts::equivalent_inclusion_conductivity(0.56, 3.5e7, 1e-5);
        const ts::MaterialTable materials = ts::MaterialTable::two_phase(0.036, k_eq);
        const ts::EnsembleReport report = ts::run_ensemble(spec, materials, 48, {1, 2, 3});

        const double lo = 0.0443;  // harmonic (series) mixture of the two phases
        const double hi = 0.1408;  // arithmetic (parallel) mixture
        auto in_bounds = [&](double k) { return k >= lo && k <= hi; };
        for (const ts::EnsembleEntry& e : report.per_seed) {
            for (ts::Axis a : {ts::Axis::X, ts::Axis::Y, ts::Axis::Z})
                c.expect(in_bounds(e.tensor.component(a)),
                         "seed " + std::to_string(e.seed) + " k = " + fmt(e.tensor.component(a)));
        }
        for (ts::Axis a : {ts::Axis::X, ts::Axis::Y, ts::Axis::Z})
            c.expect(in_bounds(report.mean.component(a)),
                     "mean k = " + fmt(report.mean.component(a)));
        c.expect(report.isotropy <= 0.05, "isotropy deviation = " + fmt(report.isotropy));

        const double k_mean = report.mean.mean();
        c.note("mean k = " + fmt(k_mean) + " W/(m K); the 0.24 reference value differs by " +
               fmt(100.0 * rel_diff(k_mean, 0.24)) + "%");
    });

    failures += !run_criterion(6, "drive invariance and material linearity", 0.0, [](Checker& c) {
        ts::RveSpec spec;
        spec.edge_length = 40.0;
        spec.sphere_radius = 10.0;
        spec.target_volume_fraction = 0.1;
        spec.rng_seed = 1;
        const ts::VoxelGrid grid = ts::voxelize(ts::generate_packing(spec), 16);

        const ts::MaterialTable materials = ts::MaterialTable::two_phase(0.036, 0.56);
        ts::SolveOptions opt;
        opt.flux = 1.0;
        const ts::TensorResult base = ts::effective_tensor(grid, materials, opt);
        opt.flux = 2.0;
        const ts::TensorResult doubled = ts::effective_tensor(grid, materials, opt);
        for (ts::Axis a : {ts::Axis::X, ts::Axis::Y, ts::Axis::Z})
            c.expect(rel_diff(doubled.tensor.component(a), base.tensor.component(a)) <= 1e-9,
                     "doubled drive moved k by " +
                         fmt(rel_diff(doubled.tensor.component(a), base.tensor.component(a))));

        const ts::TensorResult scaled =
            ts::effective_tensor(grid, ts::MaterialTable::two_phase(3.0 * 0.036, 3.0 * 0.56));
        for (ts::Axis a : {ts::Axis::X, ts::Axis::Y, ts::Axis::Z})
            c.expect(rel_diff(scaled.tensor.component(a), 3.0 * base.tensor.component(a)) <= 1e-6,
                     "tripled materials gave k = " + fmt(scaled.tensor.component(a)));
    });

    failures += !run_criterion(7, "rule of mixtures identities and properties", 0.0,
                               [](Checker& c) {
        c.expect(rel_diff(ts::rule_of_mixtures({{0.12}, {7.0}}), 0.12) <= 1e-12,
                 "single sample");
        c.expect(rel_diff(ts::rule_of_mixtures({{0.05, 0.06, 0.07}, {1.0, 1.0, 1.0}}), 0.06) <=
                     1e-12,
                 "equal weights");
        c.expect(rel_diff(ts::rule_of_mixtures({{0.05, 0.07}, {1.0, 3.0}}), 0.065) <= 1e-12,
                 "weights 1:3");

        std::mt19937_64 rng(20260816);
        auto uniform = [&rng](double lo, double hi) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            return lo + (hi - lo) * u;
        };
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t n = 1 + static_cast<std::size_t>(rng() % 8);
            ts::WeightedSamples s;
            for (std::size_t i = 0; i < n; ++i) {
                s.values.push_back(uniform(0.01, 2.0));
                s.weights.push_back(uniform(0.0, 5.0));
            }
            s.weights[0] += 0.1;  // keep the weight sum away from zero
            const double mixed = ts::rule_of_mixtures(s);
            const double lo = *std::min_element(s.values.begin(), s.values.end());
            const double hi = *std::max_element(s.values.begin(), s.values.end());
            c.expect(mixed >= lo - 1e-12 && mixed <= hi + 1e-12,
                     "trial " + std::to_string(trial) + " left the convex hull");

            ts::WeightedSamples scaled = s;
            for (double& w : scaled.weights) w *= 3.7;
            c.expect(rel_diff(ts::rule_of_mixtures(scaled), mixed) <= 1e-12,
                     "trial " + std::to_string(trial) + " changed under weight scaling");
        }
    });

    failures += !run_criterion(8, "RK4 convergence order on the scalar exponential", 0.0,
                               [](Checker& c) {
        const double lambda = 1e-3;
        const double y0 = 30.0;
        const double horizon = 3600.0;
        const double exact = y0 * std::exp(-lambda * horizon);
        auto rhs = [lambda](double, const std::vector<double>& y, std::vector<double>& dy) {
            dy[0] = -lambda * y[0];
        };

        const std::array<double, 4> dts{240.0, 120.0, 60.0, 30.0};
        std::array<double, 4> errors{};
        for (std::size_t i = 0; i < dts.size(); ++i) {
            std::vector<double> y{y0};
            const auto steps = static_cast<std::uint64_t>(horizon / dts[i]);
            ts::integrate_rk4(rhs, y, 0.0, dts[i], steps, steps,
                              [](std::uint64_t, double, const std::vector<double>&) {});
            errors[i] = std::abs(y[0] - exact);
        }
        for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
            const double order = std::log2(errors[i] / errors[i + 1]);
            c.note("order from dt=" + fmt(dts[i]) + " s to dt=" + fmt(dts[i + 1]) +
                   " s = " + fmt(order));
            c.expect(order >= 3.9, "measured order " + fmt(order) + " below 3.9");
        }
    });

    failures += !run_criterion(9, "adiabatic enthalpy conservation with a PCM wall", 120.0,
                               [](Checker& c) {
        ts::Zone zone;
        zone.name = "a";
        zone.capacitance = 5.0e6;
        zone.heating.max_power_w = 0.0;
        zone.infiltration_ua = 0.0;
        zone.window_ua = 0.0;
        ts::BuildingModel model;
        model.zones = {zone, zone};
        model.zones[1].name = "b";

        // Layer slices stay thick enough that every node's time constant is
        // far above the fixed 60 s step.
        ts::WallAssembly wall;
        wall.layers = {brick_layer(), pcm_layer(19.5, 21.5), brick_layer()};
        wall.area = 12.0;
        wall.nodes_per_layer = 2;
        wall.zone_a = 0;
        wall.zone_b = 1;
        model.walls = {wall};
        model.validate(false);

        const ts::ThermalNetwork network = ts::assemble_ode(model);
        std::mt19937_64 rng(2026);
        std::vector<double> y0(network.state_size());
        for (double& v : y0) v = 17.0 + 7.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
        c.expect(*std::min_element(y0.begin(), y0.end()) < 19.5 &&
                     *std::max_element(y0.begin(), y0.end()) > 21.5,
                 "initial temperatures do not span the melt range");

        ts::SyntheticWeatherParams flat;
        flat.mean_c = 0.0;
        flat.annual_amplitude = 0.0;
        flat.diurnal_amplitude = 0.0;
        flat.noise_std = 0.0;
        const ts::WeatherSeries weather = ts::synthesize_weather(flat);

        const double h0 = network.enthalpy(y0);
        const ts::IntegrationResult run =
            ts::rk4_integrate(network, weather, 60.0, 8760.0 * 3600.0, y0);
        const double h1 = network.enthalpy(run.final_state);
        const double drift = std::abs(h1 - h0) / std::abs(h0);
        c.note("enthalpy drift over the year = " + fmt(drift));
        c.expect(drift <= 1e-3, "drift = " + fmt(drift));
    });

    failures += !run_criterion(10, "PCM retrofit lowers fuel and steadies summer", 300.0,
                               [&ctx](Checker& c) {
        const std::string dir = THERMOSCALE_CONFIG_DIR;
        const ts::BuildingModel base =
            ts::io::parse_building_model(ts::io::load_json_file(dir + "/building_base.json"));
        const ts::BuildingModel variant =
            ts::io::parse_building_model(ts::io::load_json_file(dir + "/building_pcm.json"));
        const ts::WeatherSeries weather = ts::synthesize_weather({});

        ctx.delta = ts::compare_scenarios(base, variant, weather);
        ctx.ready = true;
        const ts::DeltaReport& d = ctx.delta;

        c.note("fuel heating: base " + fmt(d.base.ledger.fuel_heating_kwh) + " kWh, with PCM " +
               fmt(d.variant.ledger.fuel_heating_kwh) + " kWh");
        c.expect(d.fuel_delta_kwh < 0.0, "fuel delta = " + fmt(d.fuel_delta_kwh) + " kWh");

        std::int64_t optimal_delta = 0;
        for (const auto& per_zone : d.comfort_delta_hours) optimal_delta += per_zone[0];
        c.note("Optimal hours delta summed over zones = " + std::to_string(optimal_delta));
        c.expect(optimal_delta > 0, "Optimal hours delta = " + std::to_string(optimal_delta));

        double p2p_delta = 0.0;
        for (double v : d.summer_peak_to_peak_delta_c) p2p_delta += v;
        p2p_delta /= static_cast<double>(d.summer_peak_to_peak_delta_c.size());
        c.note("summer peak-to-peak delta averaged over zones = " + fmt(p2p_delta) + " K");
        c.expect(p2p_delta < 0.0, "summer peak-to-peak delta = " + fmt(p2p_delta));
    });

    failures += !run_criterion(11, "comfort hours bin correctly and cover the year", 0.0,
                               [&ctx](Checker& c) {
        c.expect(ctx.ready, "scenario comparison unavailable");
        if (!ctx.ready) return;
        for (const ts::ScenarioResult* r : {&ctx.delta.base, &ctx.delta.variant})
            for (const ts::ComfortReport& report : r->comfort)
                c.expect(report.total_hours() == 8760,
                         "zone " + std::to_string(report.zone) + " hours sum to " +
                             std::to_string(report.total_hours()));

        c.expect(ts::classify_comfort(19.0) == ts::ComfortBin::Acceptable, "19 C misbinned");
        c.expect(ts::classify_comfort(20.5) == ts::ComfortBin::Good, "20.5 C misbinned");
        c.expect(ts::classify_comfort(25.5) == ts::ComfortBin::Good, "25.5 C misbinned");
        c.expect(ts::classify_comfort(27.0) == ts::ComfortBin::Unacceptable, "27 C misbinned");
    });

    failures += !run_criterion(12, "every pipeline stage reruns byte-identically", 0.0,
                               [](Checker& c) {
        const fs::path ws = fs::temp_directory_path() / "thermoscale_acceptance";
        fs::remove_all(ws);
        fs::create_directories(ws);
        using ts::io::json;

        json rve_cfg;
        rve_cfg["rve"]["edge_length"] = 40.0;
        rve_cfg["rve"]["sphere_radius"] = 10.0;
        rve_cfg["rve"]["target_volume_fraction"] = 0.1;
        rve_cfg["rve"]["rng_seed"] = 3;
        rve_cfg["n_per_axis"] = 16;
        ts::io::save_json_file((ws / "rve.json").string(), rve_cfg);

        json materials;
        materials["matrix"]["conductivity"] = 0.036;
        materials["inclusion"]["conductivity"] = 0.56;

        // Stage inputs that depend on earlier outputs point at the first run.
        json solve_cfg;
        solve_cfg["voxels"] = (ws / "rve-gen_a" / "voxels.bin").string();
        solve_cfg["materials"] = materials;
        solve_cfg["boundary"]["axis"] = "x";
        solve_cfg["boundary"]["kind"] = "flux";
        ts::io::save_json_file((ws / "solve.json").string(), solve_cfg);

        json ens_cfg = rve_cfg;
        ens_cfg["n_per_axis"] = 8;
        ens_cfg["materials"] = materials;
        ens_cfg["seeds"] = json::array({1, 2});
        ts::io::save_json_file((ws / "homogenize.json").string(), ens_cfg);

        json mix_cfg;
        mix_cfg["ensemble"] = (ws / "homogenize_a" / "ensemble.json").string();
        ts::io::save_json_file((ws / "mix.json").string(), mix_cfg);

        json weather_cfg;
        weather_cfg["synthetic"]["seed"] = 11;
        ts::io::save_json_file((ws / "weather.json").string(), weather_cfg);

        json run_cfg;
        run_cfg["building"] = inline_building_json();
        run_cfg["weather"]["synthetic"]["seed"] = 11;
        run_cfg["simulation"]["dt_seconds"] = 300.0;
        run_cfg["simulation"]["hours"] = 48.0;
        ts::io::save_json_file((ws / "run.json").string(), run_cfg);

        json cmp_cfg;
        cmp_cfg["building_base"] = inline_building_json();
        cmp_cfg["building_variant"] = inline_building_json();
        cmp_cfg["building_variant"]["zones"][0]["heating"]["setpoint"] = 22.0;
        cmp_cfg["weather"]["synthetic"]["seed"] = 11;
        cmp_cfg["simulation"]["dt_seconds"] = 300.0;
        cmp_cfg["simulation"]["hours"] = 24.0;
        ts::io::save_json_file((ws / "compare.json").string(), cmp_cfg);

        struct Stage {
            const char* stage;
            const char* config;
            std::vector<const char*> artifacts;
        };
        const std::vector<Stage> stages = {
            {"rve-gen", "rve.json", {"spheres.json", "voxels.bin"}},
            {"solve", "solve.json", {"field.bin", "solve.json"}},
            {"homogenize", "homogenize.json", {"ensemble.json", "ensemble.csv"}},
            {"mix", "mix.json", {"macro.json"}},
            {"weather-synth", "weather.json", {"weather.csv"}},
            {"building-run", "run.json", {"trace.csv", "ledger.json", "ledger.csv", "comfort.json"}},
            {"building-compare", "compare.json",
             {"delta.json", "base_trace.csv", "variant_trace.csv"}},
        };

        for (const Stage& s : stages) {
            const fs::path out_a = ws / (std::string(s.stage) + "_a");
            const fs::path out_b = ws / (std::string(s.stage) + "_b");
            fs::create_directories(out_a);
            fs::create_directories(out_b);
            const int code_a = run_cli(stage_cmd(s.stage, ws / s.config, out_a));
            const int code_b = run_cli(stage_cmd(s.stage, ws / s.config, out_b));
            c.expect(code_a == 0 && code_b == 0,
                     std::string(s.stage) + " exited " + std::to_string(code_a) + "/" +
                         std::to_string(code_b));
            if (code_a != 0 || code_b != 0) continue;
            for (const char* artifact : s.artifacts)
                c.expect(read_bytes(out_a / artifact) == read_bytes(out_b / artifact),
                         std::string(s.stage) + " artifact " + artifact + " differs across runs");
        }
    });

    std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures;
}
