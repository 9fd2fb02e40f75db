// Pipeline front end: every stage reads a JSON config, writes data files
// into an existing output directory, and prints a short summary. Stages
// chain through files so each one can be cached, diffed, and rerun alone.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "thermoscale/building.hpp"
#include "thermoscale/errors.hpp"
#include "thermoscale/geometry.hpp"
#include "thermoscale/heat_solver.hpp"
#include "thermoscale/homogenize.hpp"
#include "thermoscale/io.hpp"
#include "thermoscale/mixtures.hpp"
#include "thermoscale/simulate.hpp"
#include "thermoscale/weather.hpp"

namespace ts = thermoscale;
namespace fs = std::filesystem;
using ts::io::json;

namespace {

struct StageArgs {
    std::string config_path;
    std::string out_dir;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::optional<std::uint64_t> seed_override;

    std::string config_dir() const { return fs::path(config_path).parent_path().string(); }
    std::string out(const std::string& name) const {
        return (fs::path(out_dir) / name).string();
    }
};

json load_config(const StageArgs& args) {
    if (!fs::exists(args.config_path))
        throw ts::ValidationError("config file does not exist: " + args.config_path);
    if (!fs::is_directory(args.out_dir))
        throw ts::ValidationError("output directory does not exist: " + args.out_dir);
    return ts::io::load_json_file(args.config_path);
}

const json& section(const json& cfg, const char* key) {
    return ts::io::require_key(cfg, key, "config");
}

json section_or_empty(const json& cfg, const char* key) {
    const auto it = cfg.find(key);
    return it == cfg.end() ? json::object() : *it;
}

int parse_resolution(const json& cfg) {
    const int n = static_cast<int>(ts::io::require_uint(cfg, "n_per_axis", "config"));
    if (n < 1) throw ts::ValidationError("config.n_per_axis must be >= 1");
    return n;
}

void cmd_rve_gen(const StageArgs& args) {
    const json cfg = load_config(args);
    ts::RveSpec spec = ts::io::parse_rve_spec(section(cfg, "rve"));
    const int n = parse_resolution(cfg);
    if (args.seed_override) spec.rng_seed = *args.seed_override;

    const ts::SphereSet packing = ts::generate_packing(spec);
    const ts::VoxelGrid grid = ts::voxelize(packing, n);
    ts::io::save_sphere_set(args.out("spheres.json"), packing);
    ts::io::save_voxel_grid(args.out("voxels.bin"), grid);
    std::printf("placed %zu spheres, achieved fraction %s, voxel fraction %s\n",
                packing.centers.size(),
                ts::io::format_double(ts::achieved_volume_fraction(packing)).c_str(),
                ts::io::format_double(grid.phase_fractions(2)[1]).c_str());
}

void cmd_solve(const StageArgs& args) {
    const json cfg = load_config(args);
    const std::string voxel_path = ts::io::resolve_path(
        args.config_dir(), ts::io::require_string(cfg, "voxels", "config"));
    if (!fs::exists(voxel_path))
        throw ts::ValidationError("voxel file does not exist: " + voxel_path);
    const ts::MaterialTable materials = ts::io::parse_materials(section(cfg, "materials"));
    const ts::BoundarySpec bc = ts::io::parse_boundary(section(cfg, "boundary"));
    const ts::SolveOptions opt = ts::io::parse_solver(section_or_empty(cfg, "solver"));

    const ts::VoxelGrid grid = ts::io::load_voxel_grid(voxel_path);
    const ts::SolveResult result =
        ts::solve_steady(grid, materials, bc, opt.tol, opt.max_iterations);
    const ts::FluxAverages avg = ts::average_gradient_and_flux(result.field, grid, materials);
    const double k_eff = ts::effective_component(result.field, grid, materials, bc.axis);

    ts::io::save_temperature_field(args.out("field.bin"), result.field);
    json summary;
    summary["axis"] = ts::axis_name(bc.axis);
    summary["kind"] = bc.kind == ts::BoundarySpec::Kind::FluxPair ? "flux" : "temperature";
    summary["iterations"] = result.iterations;
    summary["relative_residual"] = result.relative_residual;
    summary["average_gradient"] = json::array({avg.gradient[0], avg.gradient[1], avg.gradient[2]});
    summary["average_flux"] = json::array({avg.flux[0], avg.flux[1], avg.flux[2]});
    summary["k_eff"] = k_eff;
    ts::io::save_json_file(args.out("solve.json"), summary);
    std::printf("k_eff(%s) = %s after %llu iterations\n", ts::axis_name(bc.axis),
                ts::io::format_double(k_eff).c_str(),
                static_cast<unsigned long long>(result.iterations));
}

void cmd_homogenize(const StageArgs& args) {
    const json cfg = load_config(args);
    const ts::RveSpec spec = ts::io::parse_rve_spec(section(cfg, "rve"));
    const int n = parse_resolution(cfg);
    const ts::MaterialTable materials = ts::io::parse_materials(section(cfg, "materials"));
    const ts::SolveOptions opt = ts::io::parse_solver(section_or_empty(cfg, "solver"));
    std::vector<std::uint64_t> seeds =
        ts::io::parse_seeds(section(cfg, "seeds"), "config");
    if (args.seed_override) seeds = {*args.seed_override};

    const ts::EnsembleReport report =
        ts::run_ensemble(spec, materials, n, seeds, args.workers, opt);
    ts::io::save_json_file(args.out("ensemble.json"),
                           ts::io::ensemble_report_to_json(report, materials));
    ts::io::save_text_file(args.out("ensemble.csv"), ts::io::ensemble_report_to_csv(report));

    double mean_phi = 0.0;
    for (const auto& e : report.per_seed) mean_phi += e.achieved_fraction;
    mean_phi /= static_cast<double>(report.per_seed.size());
    const double km = materials.conductivity(0);
    const double ki = materials.conductivity(1);
    std::printf("seed       kxx          kyy          kzz\n");
    for (const auto& e : report.per_seed)
        std::printf("%-10llu %-12s %-12s %-12s\n", static_cast<unsigned long long>(e.seed),
                    ts::io::format_double(e.tensor.kxx).c_str(),
                    ts::io::format_double(e.tensor.kyy).c_str(),
                    ts::io::format_double(e.tensor.kzz).c_str());
    std::printf("mean       %-12s %-12s %-12s\n",
                ts::io::format_double(report.mean.kxx).c_str(),
                ts::io::format_double(report.mean.kyy).c_str(),
                ts::io::format_double(report.mean.kzz).c_str());
    std::printf("isotropy deviation %s; components within bounds [%s, %s] at phi %s\n",
                ts::io::format_double(report.isotropy).c_str(),
                ts::io::format_double(ts::reuss_bound(km, ki, mean_phi)).c_str(),
                ts::io::format_double(ts::voigt_bound(km, ki, mean_phi)).c_str(),
                ts::io::format_double(mean_phi).c_str());
}

void cmd_mix(const StageArgs& args) {
    const json cfg = load_config(args);
    const std::string path = ts::io::resolve_path(
        args.config_dir(), ts::io::require_string(cfg, "ensemble", "config"));
    if (!fs::exists(path))
        throw ts::ValidationError("ensemble file does not exist: " + path);
    ts::Weighting weighting = ts::Weighting::Uniform;
    if (cfg.find("weighting") != cfg.end()) {
        const std::string w = ts::io::require_string(cfg, "weighting", "config");
        if (w == "uniform") {
            weighting = ts::Weighting::Uniform;
        } else if (w == "by-achieved-volume-fraction") {
            weighting = ts::Weighting::ByAchievedVolumeFraction;
        } else {
            throw ts::ValidationError(
                "config.weighting must be 'uniform' or 'by-achieved-volume-fraction'");
        }
    }
    const ts::EnsembleReport report =
        ts::io::ensemble_report_from_json(ts::io::load_json_file(path));
    const ts::ConductivityTensor macro = ts::upscale_ensemble(report, weighting);
    ts::io::save_json_file(args.out("macro.json"), ts::io::macro_to_json(macro, weighting));
    std::printf("k_macro = (%s, %s, %s), weighting %s\n",
                ts::io::format_double(macro.kxx).c_str(),
                ts::io::format_double(macro.kyy).c_str(),
                ts::io::format_double(macro.kzz).c_str(), ts::weighting_name(weighting));
}

void cmd_weather_synth(const StageArgs& args) {
    const json cfg = load_config(args);
    ts::SyntheticWeatherParams params =
        ts::io::parse_synthetic_weather(section(cfg, "synthetic"));
    if (args.seed_override) params.seed = *args.seed_override;
    const ts::WeatherSeries weather = ts::synthesize_weather(params);
    ts::io::save_weather_csv(args.out("weather.csv"), weather);
    std::printf("synthesized year: january mean %s, july mean %s\n",
                ts::io::format_double(weather.monthly_mean(0)).c_str(),
                ts::io::format_double(weather.monthly_mean(6)).c_str());
}

ts::BuildingModel load_building(const json& cfg, const char* key,
                                const std::string& config_dir) {
    const json& ref = section(cfg, key);
    json doc;
    if (ref.is_string()) {
        const std::string path = ts::io::resolve_path(config_dir, ref.get<std::string>());
        if (!fs::exists(path))
            throw ts::ValidationError(std::string(key) + " file does not exist: " + path);
        doc = ts::io::load_json_file(path);
    } else if (ref.is_object()) {
        doc = ref;
    } else {
        throw ts::ValidationError(std::string("config.") + key +
                                  " must be a path or an inline object");
    }
    ts::BuildingModel model = ts::io::parse_building_model(doc);
    model.validate(true);
    return model;
}

ts::ScenarioOptions scenario_options(const json& cfg, const StageArgs& args,
                                     ts::WeatherSeries* weather_out) {
    json weather_cfg = section(cfg, "weather");
    if (args.seed_override && weather_cfg.find("synthetic") != weather_cfg.end())
        weather_cfg["synthetic"]["seed"] = *args.seed_override;
    *weather_out = ts::io::parse_weather_source(weather_cfg, args.config_dir());
    ts::ScenarioOptions opt =
        ts::io::parse_scenario_options(section_or_empty(cfg, "simulation"));
    opt.exogenous = ts::io::parse_exogenous(section_or_empty(cfg, "exogenous"));
    return opt;
}

void cmd_building_run(const StageArgs& args) {
    const json cfg = load_config(args);
    const ts::BuildingModel model = load_building(cfg, "building", args.config_dir());
    ts::WeatherSeries weather;
    const ts::ScenarioOptions opt = scenario_options(cfg, args, &weather);

    const ts::ScenarioResult result = ts::run_scenario(model, weather, opt);
    ts::io::save_text_file(args.out("trace.csv"), ts::io::trace_to_csv(result.trace));
    ts::io::save_json_file(args.out("ledger.json"), ts::io::ledger_to_json(result.ledger));
    ts::io::save_text_file(args.out("ledger.csv"), ts::io::ledger_to_csv(result.ledger));
    ts::io::save_json_file(args.out("comfort.json"),
                           ts::io::comfort_list_to_json(result.comfort));
    std::printf("fuel heating %s kWh, grand total %s kWh\n",
                ts::io::format_double(result.ledger.fuel_heating_kwh).c_str(),
                ts::io::format_double(result.ledger.grand_total_kwh()).c_str());
    for (const ts::ComfortReport& c : result.comfort)
        std::printf("zone %d comfort hours: optimal %llu, good %llu, acceptable %llu, "
                    "unacceptable %llu\n",
                    c.zone, static_cast<unsigned long long>(c.hours[0]),
                    static_cast<unsigned long long>(c.hours[1]),
                    static_cast<unsigned long long>(c.hours[2]),
                    static_cast<unsigned long long>(c.hours[3]));
}

void cmd_building_compare(const StageArgs& args) {
    const json cfg = load_config(args);
    const ts::BuildingModel base = load_building(cfg, "building_base", args.config_dir());
    const ts::BuildingModel variant =
        load_building(cfg, "building_variant", args.config_dir());
    ts::WeatherSeries weather;
    const ts::ScenarioOptions opt = scenario_options(cfg, args, &weather);

    const ts::DeltaReport report = ts::compare_scenarios(base, variant, weather, opt);
    ts::io::save_json_file(args.out("delta.json"), ts::io::delta_report_to_json(report));
    ts::io::save_text_file(args.out("base_trace.csv"),
                           ts::io::trace_to_csv(report.base.trace));
    ts::io::save_text_file(args.out("variant_trace.csv"),
                           ts::io::trace_to_csv(report.variant.trace));
    std::printf("fuel delta %s kWh (%s%%), grand total delta %s%%\n",
                ts::io::format_double(report.fuel_delta_kwh).c_str(),
                ts::io::format_double(report.fuel_delta_pct).c_str(),
                ts::io::format_double(report.grand_total_delta_pct).c_str());
    for (std::size_t z = 0; z < report.comfort_delta_hours.size(); ++z)
        std::printf("zone %zu: optimal hours %+lld, summer swing %s -> %s degC\n", z,
                    static_cast<long long>(report.comfort_delta_hours[z][0]),
                    ts::io::format_double(report.base.summer_peak_to_peak_c[z]).c_str(),
                    ts::io::format_double(report.variant.summer_peak_to_peak_c[z]).c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-scale thermal conductivity and building energy pipeline"};
    app.require_subcommand(1);

    StageArgs args;
    const struct {
        const char* name;
        const char* help;
        void (*run)(const StageArgs&);
    } stages[] = {
        {"rve-gen", "generate a periodic sphere packing and voxelize it", cmd_rve_gen},
        {"solve", "steady heat solve on a voxel grid for one driven axis", cmd_solve},
        {"homogenize", "effective conductivity tensor over an ensemble of seeds",
         cmd_homogenize},
        {"mix", "collapse an ensemble report to a macro tensor", cmd_mix},
        {"weather-synth", "synthesize an hourly outdoor temperature year",
         cmd_weather_synth},
        {"building-run", "annual building simulation: ledger, comfort, trace",
         cmd_building_run},
        {"building-compare", "run base and variant models, report deltas",
         cmd_building_compare},
    };
    void (*selected)(const StageArgs&) = nullptr;
    for (const auto& stage : stages) {
        CLI::App* sub = app.add_subcommand(stage.name, stage.help);
        sub->add_option("--config", args.config_path, "stage config JSON")->required();
        sub->add_option("--out", args.out_dir, "existing output directory")->required();
        sub->add_option("--workers", args.workers, "parallel worker count");
        sub->add_option("--seed-override", args.seed_override,
                        "replace every seed in the config");
        auto run = stage.run;
        sub->callback([&selected, run] { selected = run; });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        selected(args);
        return 0;
    } catch (const ts::PackingInfeasible& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const ts::NonConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const ts::MalformedWeather& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    } catch (const ts::NonFiniteState& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 6;
    } catch (const ts::DegenerateGradient& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ts::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
