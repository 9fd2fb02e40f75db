#pragma once

// Serialization and config parsing. JSON documents use insertion-ordered
// keys and shortest-round-trip doubles, so identical inputs produce
// byte-identical files; CSV goes through std::to_chars for the same reason.
// Grids and fields are stored as a one-line JSON header plus a raw
// little-endian payload.

#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "thermoscale/building.hpp"
#include "thermoscale/errors.hpp"
#include "thermoscale/geometry.hpp"
#include "thermoscale/heat_solver.hpp"
#include "thermoscale/homogenize.hpp"
#include "thermoscale/mixtures.hpp"
#include "thermoscale/simulate.hpp"
#include "thermoscale/weather.hpp"

namespace thermoscale::io {

using json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline json parse_json_text(const std::string& text, const std::string& context) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ValidationError(context + ": malformed JSON");
    return j;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_json_text(text, path);
}

inline void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);  // binary: no newline translation
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
    if (!out) throw ValidationError("write failed: " + path);
}

inline void save_json_file(const std::string& path, const json& j) {
    save_text_file(path, j.dump(2) + "\n");
}

inline const json& require_key(const json& j, const std::string& key,
                               const std::string& context) {
    const auto it = j.find(key);
    if (it == j.end()) throw ValidationError(context + ": missing key '" + key + "'");
    return *it;
}

inline double as_number(const json& j, const std::string& context) {
    if (!j.is_number()) throw ValidationError(context + ": expected a number");
    return j.get<double>();
}

inline double require_number(const json& j, const std::string& key,
                             const std::string& context) {
    return as_number(require_key(j, key, context), context + "." + key);
}

inline double number_or(const json& j, const std::string& key, double fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    return as_number(*it, key);
}

inline std::uint64_t require_uint(const json& j, const std::string& key,
                                  const std::string& context) {
    const json& v = require_key(j, key, context);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ValidationError(context + "." + key + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline std::uint64_t uint_or(const json& j, const std::string& key, std::uint64_t fallback) {
    if (j.find(key) == j.end()) return fallback;
    return require_uint(j, key, "config");
}

inline std::string require_string(const json& j, const std::string& key,
                                  const std::string& context) {
    const json& v = require_key(j, key, context);
    if (!v.is_string()) throw ValidationError(context + "." + key + ": expected a string");
    return v.get<std::string>();
}

inline std::string resolve_path(const std::string& base_dir, const std::string& p) {
    const std::filesystem::path fp(p);
    if (fp.is_absolute() || base_dir.empty()) return p;
    return (std::filesystem::path(base_dir) / fp).string();
}

// -------- sphere sets --------

inline json sphere_set_to_json(const SphereSet& s) {
    json j;
    j["edge_length"] = s.edge_length;
    j["radius"] = s.radius;
    json centers = json::array();
    for (const auto& c : s.centers) centers.push_back(json::array({c[0], c[1], c[2]}));
    j["centers"] = std::move(centers);
    return j;
}

inline SphereSet sphere_set_from_json(const json& j) {
    SphereSet s;
    s.edge_length = require_number(j, "edge_length", "sphere set");
    s.radius = require_number(j, "radius", "sphere set");
    const json& centers = require_key(j, "centers", "sphere set");
    if (!centers.is_array()) throw ValidationError("sphere set: centers must be an array");
    for (const json& c : centers) {
        if (!c.is_array() || c.size() != 3)
            throw ValidationError("sphere set: each center must be a 3-array");
        s.centers.push_back({as_number(c[0], "center"), as_number(c[1], "center"),
                             as_number(c[2], "center")});
    }
    return s;
}

inline void save_sphere_set(const std::string& path, const SphereSet& s) {
    save_json_file(path, sphere_set_to_json(s));
}

inline SphereSet load_sphere_set(const std::string& path) {
    return sphere_set_from_json(load_json_file(path));
}

// -------- voxel grids and temperature fields (header line + payload) --------

inline void save_voxel_grid(const std::string& path, const VoxelGrid& g) {
    json header;
    header["kind"] = "voxel_grid";
    header["n_per_axis"] = g.n_per_axis;
    header["cell_size"] = g.cell_size;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << header.dump() << '\n';
    out.write(reinterpret_cast<const char*>(g.phase.data()),
              static_cast<std::streamsize>(g.phase.size()));
    if (!out) throw ValidationError("write failed: " + path);
}

namespace detail {

inline json read_header_line(std::ifstream& in, const std::string& path,
                             const std::string& expected_kind) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path + ": missing header line");
    json header = parse_json_text(line, path + " header");
    if (require_string(header, "kind", path) != expected_kind)
        throw ValidationError(path + ": expected kind '" + expected_kind + "'");
    return header;
}

}  // namespace detail

inline VoxelGrid load_voxel_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    const json header = detail::read_header_line(in, path, "voxel_grid");
    VoxelGrid g;
    g.n_per_axis = static_cast<int>(require_uint(header, "n_per_axis", path));
    g.cell_size = require_number(header, "cell_size", path);
    if (g.n_per_axis < 1 || !(g.cell_size > 0.0))
        throw ValidationError(path + ": invalid grid header");
    g.phase.resize(g.cell_count());
    in.read(reinterpret_cast<char*>(g.phase.data()),
            static_cast<std::streamsize>(g.phase.size()));
    if (in.gcount() != static_cast<std::streamsize>(g.phase.size()))
        throw ValidationError(path + ": truncated voxel payload");
    return g;
}

inline void save_temperature_field(const std::string& path, const TemperatureField& f) {
    json header;
    header["kind"] = "temperature_field";
    header["nodes_per_axis"] = f.nodes_per_axis;
    header["cell_size"] = f.cell_size;
    header["dtype"] = "f64";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << header.dump() << '\n';
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!out) throw ValidationError("write failed: " + path);
}

inline TemperatureField load_temperature_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    const json header = detail::read_header_line(in, path, "temperature_field");
    if (require_string(header, "dtype", path) != "f64")
        throw ValidationError(path + ": unsupported dtype");
    TemperatureField f;
    f.nodes_per_axis = static_cast<int>(require_uint(header, "nodes_per_axis", path));
    f.cell_size = require_number(header, "cell_size", path);
    if (f.nodes_per_axis < 2 || !(f.cell_size > 0.0))
        throw ValidationError(path + ": invalid field header");
    const std::size_t m = static_cast<std::size_t>(f.nodes_per_axis);
    f.values.resize(m * m * m);
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(f.values.size() * sizeof(double)))
        throw ValidationError(path + ": truncated field payload");
    return f;
}

// -------- RVE / materials / solver configs --------

inline json rve_spec_to_json(const RveSpec& s) {
    json j;
    j["edge_length"] = s.edge_length;
    j["sphere_radius"] = s.sphere_radius;
    j["target_volume_fraction"] = s.target_volume_fraction;
    j["min_gap"] = s.gap();
    j["rng_seed"] = s.rng_seed;
    j["max_attempts"] = s.max_attempts;
    return j;
}

inline RveSpec parse_rve_spec(const json& j) {
    RveSpec s;
    s.edge_length = require_number(j, "edge_length", "rve");
    s.sphere_radius = require_number(j, "sphere_radius", "rve");
    s.target_volume_fraction = require_number(j, "target_volume_fraction", "rve");
    s.min_gap = number_or(j, "min_gap", s.min_gap);
    s.rng_seed = uint_or(j, "rng_seed", s.rng_seed);
    s.max_attempts = uint_or(j, "max_attempts", s.max_attempts);
    s.validate();
    return s;
}

// Two-phase table; the inclusion entry may fold a finite interface
// conductance into an equivalent conductivity (radius given in metres).
inline MaterialTable parse_materials(const json& j) {
    const json& matrix = require_key(j, "matrix", "materials");
    const json& inclusion = require_key(j, "inclusion", "materials");
    const double km = require_number(matrix, "conductivity", "materials.matrix");
    double ki = require_number(inclusion, "conductivity", "materials.inclusion");
    if (inclusion.find("interface_conductance") != inclusion.end()) {
        const double h = require_number(inclusion, "interface_conductance",
                                        "materials.inclusion");
        const double r = require_number(inclusion, "radius_m", "materials.inclusion");
        ki = equivalent_inclusion_conductivity(ki, h, r);
    }
    if (!(km > 0.0) || !(ki > 0.0))
        throw ValidationError("materials: conductivities must be > 0");
    return MaterialTable::two_phase(km, ki);
}

inline Axis parse_axis(const std::string& name) {
    if (name == "x") return Axis::X;
    if (name == "y") return Axis::Y;
    if (name == "z") return Axis::Z;
    throw ValidationError("axis must be one of x, y, z; got '" + name + "'");
}

inline BoundarySpec parse_boundary(const json& j) {
    BoundarySpec bc;
    bc.axis = parse_axis(require_string(j, "axis", "boundary"));
    const std::string kind = require_string(j, "kind", "boundary");
    if (kind == "flux") {
        bc.kind = BoundarySpec::Kind::FluxPair;
        bc.flux = number_or(j, "flux", 1.0);
    } else if (kind == "temperature") {
        bc.kind = BoundarySpec::Kind::TemperaturePair;
        bc.theta_low = number_or(j, "theta_low", 0.0);
        bc.theta_high = number_or(j, "theta_high", 1.0);
    } else {
        throw ValidationError("boundary.kind must be 'flux' or 'temperature'");
    }
    bc.body_source = number_or(j, "body_source", 0.0);
    return bc;
}

inline SolveOptions parse_solver(const json& j) {
    SolveOptions opt;
    opt.tol = number_or(j, "tol", opt.tol);
    opt.max_iterations = uint_or(j, "max_iterations", opt.max_iterations);
    opt.flux = number_or(j, "flux", opt.flux);
    if (j.find("bc_kind") != j.end()) {
        const std::string kind = require_string(j, "bc_kind", "solver");
        if (kind == "flux") {
            opt.bc_kind = BoundarySpec::Kind::FluxPair;
        } else if (kind == "temperature") {
            opt.bc_kind = BoundarySpec::Kind::TemperaturePair;
        } else {
            throw ValidationError("solver.bc_kind must be 'flux' or 'temperature'");
        }
    }
    if (!(opt.tol > 0.0)) throw ValidationError("solver.tol must be > 0");
    return opt;
}

inline std::vector<std::uint64_t> parse_seeds(const json& j, const std::string& context) {
    if (!j.is_array() || j.empty())
        throw ValidationError(context + ": seeds must be a non-empty array");
    std::vector<std::uint64_t> seeds;
    for (const json& v : j) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw ValidationError(context + ": seeds must be non-negative integers");
        seeds.push_back(v.get<std::uint64_t>());
    }
    return seeds;
}

// -------- ensemble reports --------

inline json tensor_to_json(const ConductivityTensor& t) {
    json j;
    j["kxx"] = t.kxx;
    j["kyy"] = t.kyy;
    j["kzz"] = t.kzz;
    return j;
}

inline ConductivityTensor tensor_from_json(const json& j, const std::string& context) {
    ConductivityTensor t;
    t.kxx = require_number(j, "kxx", context);
    t.kyy = require_number(j, "kyy", context);
    t.kzz = require_number(j, "kzz", context);
    return t;
}

inline json ensemble_report_to_json(const EnsembleReport& r, const MaterialTable& materials) {
    json j;
    j["spec"] = rve_spec_to_json(r.spec);
    json mats;
    mats["matrix_conductivity"] = materials.conductivity(0);
    mats["inclusion_conductivity"] = materials.conductivity(1);
    j["materials"] = std::move(mats);
    j["n_per_axis"] = r.n_per_axis;
    json rows = json::array();
    for (const EnsembleEntry& e : r.per_seed) {
        json row;
        row["seed"] = e.seed;
        row["kxx"] = e.tensor.kxx;
        row["kyy"] = e.tensor.kyy;
        row["kzz"] = e.tensor.kzz;
        row["iters"] = e.iterations;
        row["phi"] = e.achieved_fraction;
        rows.push_back(std::move(row));
    }
    j["per_seed"] = std::move(rows);
    j["mean"] = tensor_to_json(r.mean);
    j["std"] = tensor_to_json(r.stddev);
    j["isotropy_deviation"] = r.isotropy;
    j["single_sample"] = r.single_sample;
    return j;
}

inline EnsembleReport ensemble_report_from_json(const json& j) {
    EnsembleReport r;
    r.spec = parse_rve_spec(require_key(j, "spec", "ensemble"));
    r.n_per_axis = static_cast<int>(require_uint(j, "n_per_axis", "ensemble"));
    const json& rows = require_key(j, "per_seed", "ensemble");
    if (!rows.is_array() || rows.empty())
        throw ValidationError("ensemble: per_seed must be a non-empty array");
    for (const json& row : rows) {
        EnsembleEntry e;
        e.seed = require_uint(row, "seed", "ensemble.per_seed");
        e.tensor = tensor_from_json(row, "ensemble.per_seed");
        e.iterations = require_uint(row, "iters", "ensemble.per_seed");
        e.achieved_fraction = require_number(row, "phi", "ensemble.per_seed");
        r.per_seed.push_back(e);
    }
    r.mean = tensor_from_json(require_key(j, "mean", "ensemble"), "ensemble.mean");
    r.stddev = tensor_from_json(require_key(j, "std", "ensemble"), "ensemble.std");
    r.isotropy = require_number(j, "isotropy_deviation", "ensemble");
    r.single_sample = require_key(j, "single_sample", "ensemble").get<bool>();
    return r;
}

inline std::string ensemble_report_to_csv(const EnsembleReport& r) {
    std::string csv = "seed,kxx,kyy,kzz,iterations,phi\n";
    for (const EnsembleEntry& e : r.per_seed) {
        csv += std::to_string(e.seed) + ',' + format_double(e.tensor.kxx) + ',' +
               format_double(e.tensor.kyy) + ',' + format_double(e.tensor.kzz) + ',' +
               std::to_string(e.iterations) + ',' + format_double(e.achieved_fraction) + '\n';
    }
    return csv;
}

inline json macro_to_json(const ConductivityTensor& t, Weighting weighting) {
    json j;
    j["k_macro"] = tensor_to_json(t);
    j["weighting"] = weighting_name(weighting);
    return j;
}

// -------- building model --------

inline Layer parse_layer(const json& j) {
    Layer l;
    l.thickness = require_number(j, "thickness", "layer");
    l.conductivity = require_number(j, "conductivity", "layer");
    l.density = require_number(j, "density", "layer");
    l.specific_heat = require_number(j, "specific_heat", "layer");
    if (j.find("pcm") != j.end()) {
        const json& p = j.at("pcm");
        PcmProperties pcm;
        pcm.latent_heat = require_number(p, "latent_heat", "layer.pcm");
        pcm.melt_low_c = require_number(p, "melt_low", "layer.pcm");
        pcm.melt_high_c = require_number(p, "melt_high", "layer.pcm");
        l.pcm = pcm;
    }
    l.validate();
    return l;
}

inline BuildingModel parse_building_model(const json& j) {
    BuildingModel model;
    const json& zones = require_key(j, "zones", "building");
    if (!zones.is_array() || zones.empty())
        throw ValidationError("building: zones must be a non-empty array");
    for (const json& zj : zones) {
        Zone z;
        z.name = require_string(zj, "name", "zone");
        z.capacitance = require_number(zj, "capacitance", "zone");
        const json& h = require_key(zj, "heating", "zone");
        z.heating.setpoint_c = require_number(h, "setpoint", "zone.heating");
        z.heating.max_power_w = require_number(h, "max_power", "zone.heating");
        z.heating.efficiency = number_or(h, "efficiency", 1.0);
        z.heating.k_p = number_or(h, "k_p", 500.0);
        z.infiltration_ua = number_or(zj, "infiltration_ua", 0.0);
        z.window_ua = number_or(zj, "window_ua", 0.0);
        if (zj.find("internal_gains") != zj.end()) {
            const json& g = zj.at("internal_gains");
            if (g.is_number()) {
                z.internal_gains_w.assign(24, g.get<double>());
            } else if (g.is_array()) {
                for (const json& v : g)
                    z.internal_gains_w.push_back(as_number(v, "zone.internal_gains"));
            } else {
                throw ValidationError("zone.internal_gains: expected number or array");
            }
        }
        model.zones.push_back(std::move(z));
    }
    auto zone_index = [&model](const std::string& name) -> int {
        if (name == "exterior") return -1;
        for (std::size_t i = 0; i < model.zones.size(); ++i)
            if (model.zones[i].name == name) return static_cast<int>(i);
        throw ValidationError("building: unknown zone '" + name + "'");
    };
    const json& walls = require_key(j, "walls", "building");
    if (!walls.is_array()) throw ValidationError("building: walls must be an array");
    for (const json& wj : walls) {
        WallAssembly w;
        w.area = require_number(wj, "area", "wall");
        w.nodes_per_layer = static_cast<int>(uint_or(wj, "nodes_per_layer", 1));
        w.h_ext = number_or(wj, "h_ext", w.h_ext);
        w.h_int = number_or(wj, "h_int", w.h_int);
        w.zone_a = zone_index(require_string(wj, "zone_a", "wall"));
        w.zone_b = zone_index(require_string(wj, "zone_b", "wall"));
        const json& layers = require_key(wj, "layers", "wall");
        if (!layers.is_array() || layers.empty())
            throw ValidationError("wall: layers must be a non-empty array");
        for (const json& lj : layers) w.layers.push_back(parse_layer(lj));
        model.walls.push_back(std::move(w));
    }
    return model;
}

// -------- weather --------

inline std::string weather_to_csv(const WeatherSeries& w) {
    std::string csv = "hour,temp_c\n";
    for (int h = 0; h < kHoursPerYear; ++h)
        csv += std::to_string(h) + ',' + format_double(w.temp_c[static_cast<std::size_t>(h)]) +
               '\n';
    return csv;
}

inline void save_weather_csv(const std::string& path, const WeatherSeries& w) {
    save_text_file(path, weather_to_csv(w));
}

inline SyntheticWeatherParams parse_synthetic_weather(const json& j) {
    SyntheticWeatherParams p;
    p.mean_c = number_or(j, "mean", p.mean_c);
    p.annual_amplitude = number_or(j, "annual_amplitude", p.annual_amplitude);
    p.diurnal_amplitude = number_or(j, "diurnal_amplitude", p.diurnal_amplitude);
    p.noise_std = number_or(j, "noise_std", p.noise_std);
    p.seed = uint_or(j, "seed", p.seed);
    p.peak_day = number_or(j, "peak_day", p.peak_day);
    p.phase_hour = number_or(j, "phase_hour", p.phase_hour);
    return p;
}

// Either {"file": path} (relative to the config's directory) or
// {"synthetic": {...}}.
inline WeatherSeries parse_weather_source(const json& j, const std::string& base_dir) {
    const bool has_file = j.find("file") != j.end();
    const bool has_synth = j.find("synthetic") != j.end();
    if (has_file == has_synth)
        throw ValidationError("weather: exactly one of 'file' or 'synthetic' is required");
    if (has_file) {
        const std::string path = resolve_path(base_dir, require_string(j, "file", "weather"));
        if (!std::filesystem::exists(path))
            throw ValidationError("weather.file does not exist: " + path);
        return load_weather_csv(path);
    }
    return synthesize_weather(parse_synthetic_weather(j.at("synthetic")));
}

// -------- simulation outputs --------

inline std::string trace_to_csv(const SimulationTrace& trace) {
    std::string csv = "hour,zone,temp_c,heat_w,outdoor_c\n";
    for (std::size_t row = 0; row < trace.rows(); ++row)
        for (std::size_t z = 0; z < trace.zones(); ++z)
            csv += format_double(trace.hour[row]) + ',' + std::to_string(z) + ',' +
                   format_double(trace.zone_temp_c[z][row]) + ',' +
                   format_double(trace.zone_heat_w[z][row]) + ',' +
                   format_double(trace.outdoor_c[row]) + '\n';
    return csv;
}

inline json ledger_to_json(const EnergyLedger& l) {
    json j;
    j["fuel_heating_kwh"] = l.fuel_heating_kwh;
    j["lighting_facility_kwh"] = l.lighting_facility_kwh;
    j["electric_cooling_kwh"] = l.electric_cooling_kwh;
    j["hvac_aux_kwh"] = l.hvac_aux_kwh;
    j["equipment_tenant_kwh"] = l.equipment_tenant_kwh;
    json totals;
    totals["facility_electric_kwh"] = l.facility_electric_kwh();
    totals["facility_fuel_kwh"] = l.facility_fuel_kwh();
    totals["tenant_electric_kwh"] = l.tenant_electric_kwh();
    totals["grand_total_kwh"] = l.grand_total_kwh();
    j["totals"] = std::move(totals);
    return j;
}

inline std::string ledger_to_csv(const EnergyLedger& l) {
    std::string csv = "category,kwh\n";
    csv += "fuel_heating," + format_double(l.fuel_heating_kwh) + '\n';
    csv += "lighting_facility," + format_double(l.lighting_facility_kwh) + '\n';
    csv += "electric_cooling," + format_double(l.electric_cooling_kwh) + '\n';
    csv += "hvac_aux," + format_double(l.hvac_aux_kwh) + '\n';
    csv += "equipment_tenant," + format_double(l.equipment_tenant_kwh) + '\n';
    csv += "facility_electric," + format_double(l.facility_electric_kwh()) + '\n';
    csv += "facility_fuel," + format_double(l.facility_fuel_kwh()) + '\n';
    csv += "tenant_electric," + format_double(l.tenant_electric_kwh()) + '\n';
    csv += "grand_total," + format_double(l.grand_total_kwh()) + '\n';
    return csv;
}

inline json comfort_to_json(const ComfortReport& r) {
    json j;
    j["zone"] = r.zone;
    j["optimal_h"] = r.hours[0];
    j["good_h"] = r.hours[1];
    j["acceptable_h"] = r.hours[2];
    j["unacceptable_h"] = r.hours[3];
    return j;
}

inline json comfort_list_to_json(const std::vector<ComfortReport>& reports) {
    json zones = json::array();
    for (const ComfortReport& r : reports) zones.push_back(comfort_to_json(r));
    json j;
    j["zones"] = std::move(zones);
    return j;
}

inline json delta_report_to_json(const DeltaReport& d) {
    json j;
    j["fuel_delta_kwh"] = d.fuel_delta_kwh;
    j["fuel_delta_pct"] = d.fuel_delta_pct;
    j["grand_total_delta_pct"] = d.grand_total_delta_pct;
    j["base_ledger"] = ledger_to_json(d.base.ledger);
    j["variant_ledger"] = ledger_to_json(d.variant.ledger);
    json zones = json::array();
    for (std::size_t z = 0; z < d.comfort_delta_hours.size(); ++z) {
        json zj;
        zj["zone"] = static_cast<int>(z);
        zj["comfort_base"] = comfort_to_json(d.base.comfort[z]);
        zj["comfort_variant"] = comfort_to_json(d.variant.comfort[z]);
        json delta;
        delta["optimal_h"] = d.comfort_delta_hours[z][0];
        delta["good_h"] = d.comfort_delta_hours[z][1];
        delta["acceptable_h"] = d.comfort_delta_hours[z][2];
        delta["unacceptable_h"] = d.comfort_delta_hours[z][3];
        zj["comfort_delta"] = std::move(delta);
        zj["summer_peak_to_peak_base_c"] = d.base.summer_peak_to_peak_c[z];
        zj["summer_peak_to_peak_variant_c"] = d.variant.summer_peak_to_peak_c[z];
        zj["summer_peak_to_peak_delta_c"] = d.summer_peak_to_peak_delta_c[z];
        zones.push_back(std::move(zj));
    }
    j["zones"] = std::move(zones);
    return j;
}

inline ScenarioOptions parse_scenario_options(const json& j) {
    ScenarioOptions opt;
    opt.dt_seconds = number_or(j, "dt_seconds", opt.dt_seconds);
    opt.horizon_seconds = number_or(j, "hours", opt.horizon_seconds / kSecondsPerHour) *
                          kSecondsPerHour;
    opt.initial_temp_c = number_or(j, "initial_temp_c", opt.initial_temp_c);
    return opt;
}

inline ExogenousEnergy parse_exogenous(const json& j) {
    ExogenousEnergy e;
    e.lighting_facility_kwh = number_or(j, "lighting_facility_kwh", e.lighting_facility_kwh);
    e.electric_cooling_kwh = number_or(j, "electric_cooling_kwh", e.electric_cooling_kwh);
    e.hvac_aux_kwh = number_or(j, "hvac_aux_kwh", e.hvac_aux_kwh);
    e.equipment_tenant_kwh = number_or(j, "equipment_tenant_kwh", e.equipment_tenant_kwh);
    return e;
}

}  // namespace thermoscale::io
