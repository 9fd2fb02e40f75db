#pragma once

// Fixed-step classic RK4 over the building network, hourly trace capture,
// and the derived reports: energy ledger, comfort binning, and base-vs-PCM
// scenario deltas.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "thermoscale/building.hpp"
#include "thermoscale/errors.hpp"
#include "thermoscale/weather.hpp"

namespace thermoscale {

// Classic 4-stage RK4. The observer runs on the initial state and then
// after every `observe_every` steps; it may inspect but not modify y.
template <typename Rhs, typename Observer>
void integrate_rk4(Rhs&& rhs, std::vector<double>& y, double t0, double dt,
                   std::uint64_t steps, std::uint64_t observe_every, Observer&& observe) {
    if (!(dt > 0.0)) throw ValidationError("integrate_rk4: dt must be > 0");
    const std::size_t n = y.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n);
    observe(0, t0, y);
    for (std::uint64_t step = 0; step < steps; ++step) {
        const double t = t0 + static_cast<double>(step) * dt;
        rhs(t, y, k1);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + 0.5 * dt * k1[i];
        rhs(t + 0.5 * dt, stage, k2);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + 0.5 * dt * k2[i];
        rhs(t + 0.5 * dt, stage, k3);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + dt * k3[i];
        rhs(t + dt, stage, k4);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if ((step + 1) % observe_every == 0)
            observe(step + 1, t0 + static_cast<double>(step + 1) * dt, y);
    }
}

// Hourly samples: row h holds the instantaneous state at t = h * 3600 s.
struct SimulationTrace {
    std::vector<double> hour;                        // 0, 1, ...
    std::vector<double> outdoor_c;                   // per row
    std::vector<std::vector<double>> zone_temp_c;    // [zone][row]
    std::vector<std::vector<double>> zone_heat_w;    // [zone][row]

    std::size_t rows() const { return hour.size(); }
    std::size_t zones() const { return zone_temp_c.size(); }
};

struct IntegrationResult {
    SimulationTrace trace;
    std::vector<double> final_state;
};

inline IntegrationResult rk4_integrate(const ThermalNetwork& network,
                                       const WeatherSeries& weather, double dt_seconds,
                                       double horizon_seconds,
                                       const std::vector<double>& initial_state) {
    if (!(dt_seconds > 0.0) || dt_seconds > kSecondsPerHour)
        throw ValidationError("rk4_integrate: dt must lie in (0, 3600] s");
    const double per_hour = kSecondsPerHour / dt_seconds;
    if (std::abs(per_hour - std::round(per_hour)) > 1e-9)
        throw ValidationError("rk4_integrate: dt must divide 3600 s");
    const double hours = horizon_seconds / kSecondsPerHour;
    if (!(hours >= 1.0) || std::abs(hours - std::round(hours)) > 1e-9)
        throw ValidationError("rk4_integrate: horizon must be a positive whole number of hours");
    if (initial_state.size() != network.state_size())
        throw ValidationError("rk4_integrate: initial state has wrong dimension");

    const std::uint64_t steps_per_hour = static_cast<std::uint64_t>(std::llround(per_hour));
    const std::uint64_t total_hours = static_cast<std::uint64_t>(std::llround(hours));
    const std::size_t nz = network.zone_count();

    IntegrationResult out;
    out.trace.zone_temp_c.resize(nz);
    out.trace.zone_heat_w.resize(nz);
    for (std::size_t z = 0; z < nz; ++z) {
        out.trace.zone_temp_c[z].reserve(total_hours);
        out.trace.zone_heat_w[z].reserve(total_hours);
    }
    out.trace.hour.reserve(total_hours);
    out.trace.outdoor_c.reserve(total_hours);

    std::vector<double> y = initial_state;
    auto observe = [&](std::uint64_t, double t, const std::vector<double>& state) {
        for (double v : state)
            if (!std::isfinite(v))
                throw NonFiniteState("rk4_integrate: non-finite state at t = " +
                                     std::to_string(t) + " s");
        const std::uint64_t h = static_cast<std::uint64_t>(std::llround(t / kSecondsPerHour));
        if (h >= total_hours) return;  // the final observation only guards finiteness
        out.trace.hour.push_back(static_cast<double>(h));
        out.trace.outdoor_c.push_back(weather.value_at(t));
        for (std::size_t z = 0; z < nz; ++z) {
            out.trace.zone_temp_c[z].push_back(state[z]);
            out.trace.zone_heat_w[z].push_back(network.heating_power(z, state));
        }
    };
    auto rhs = [&](double t, const std::vector<double>& state, std::vector<double>& dy) {
        network.rhs(t, state, dy, weather);
    };
    integrate_rk4(rhs, y, 0.0, dt_seconds, steps_per_hour * total_hours, steps_per_hour,
                  observe);
    out.final_state = std::move(y);
    return out;
}

// Fixed energy categories reported alongside the simulated fuel heating.
struct ExogenousEnergy {
    double lighting_facility_kwh = 32199.0;
    double electric_cooling_kwh = 16062.0;
    double hvac_aux_kwh = 7258.0;
    double equipment_tenant_kwh = 24149.0;
};

struct EnergyLedger {
    double fuel_heating_kwh = 0.0;
    double lighting_facility_kwh = 0.0;
    double electric_cooling_kwh = 0.0;
    double hvac_aux_kwh = 0.0;
    double equipment_tenant_kwh = 0.0;

    double facility_electric_kwh() const {
        return lighting_facility_kwh + electric_cooling_kwh + hvac_aux_kwh;
    }
    double facility_fuel_kwh() const { return fuel_heating_kwh; }
    double tenant_electric_kwh() const { return equipment_tenant_kwh; }
    double grand_total_kwh() const {
        return facility_electric_kwh() + facility_fuel_kwh() + tenant_electric_kwh();
    }
};

// Heating is integrated from the hourly trace (1 h rectangles); fuel drawn
// is output power over the zone's conversion efficiency.
inline EnergyLedger build_energy_ledger(const SimulationTrace& trace,
                                        const BuildingModel& model,
                                        const ExogenousEnergy& exogenous = {}) {
    if (trace.zones() != model.zones.size())
        throw ValidationError("build_energy_ledger: trace and model zone counts differ");
    EnergyLedger ledger;
    ledger.lighting_facility_kwh = exogenous.lighting_facility_kwh;
    ledger.electric_cooling_kwh = exogenous.electric_cooling_kwh;
    ledger.hvac_aux_kwh = exogenous.hvac_aux_kwh;
    ledger.equipment_tenant_kwh = exogenous.equipment_tenant_kwh;
    for (std::size_t z = 0; z < trace.zones(); ++z) {
        const double eff = model.zones[z].heating.efficiency;
        double watt_hours = 0.0;
        for (double p : trace.zone_heat_w[z]) watt_hours += p / eff;
        ledger.fuel_heating_kwh += watt_hours / 1000.0;
    }
    return ledger;
}

enum class ComfortBin : int { Optimal = 0, Good = 1, Acceptable = 2, Unacceptable = 3 };

inline const char* comfort_bin_name(ComfortBin b) {
    switch (b) {
        case ComfortBin::Optimal: return "optimal";
        case ComfortBin::Good: return "good";
        case ComfortBin::Acceptable: return "acceptable";
        default: return "unacceptable";
    }
}

inline ComfortBin classify_comfort(double temp_c) {
    if (temp_c >= 21.0 && temp_c <= 25.0) return ComfortBin::Optimal;
    if ((temp_c >= 20.0 && temp_c < 21.0) || (temp_c > 25.0 && temp_c <= 26.0))
        return ComfortBin::Good;
    if (temp_c >= 18.0 && temp_c < 20.0) return ComfortBin::Acceptable;
    return ComfortBin::Unacceptable;
}

struct ComfortReport {
    int zone = 0;
    std::array<std::uint64_t, 4> hours{};  // indexed by ComfortBin

    std::uint64_t total_hours() const {
        return hours[0] + hours[1] + hours[2] + hours[3];
    }
};

inline ComfortReport build_comfort_report(const SimulationTrace& trace, int zone) {
    if (zone < 0 || static_cast<std::size_t>(zone) >= trace.zones())
        throw ValidationError("build_comfort_report: zone index out of range");
    ComfortReport report;
    report.zone = zone;
    for (double t : trace.zone_temp_c[static_cast<std::size_t>(zone)])
        ++report.hours[static_cast<std::size_t>(classify_comfort(t))];
    return report;
}

struct ScenarioOptions {
    double dt_seconds = 60.0;
    double horizon_seconds = kHoursPerYear * kSecondsPerHour;
    double initial_temp_c = 20.0;
    ExogenousEnergy exogenous;
    // June through August: peak-to-peak window for the summer swing metric.
    std::uint64_t summer_start_hour = 151 * 24;
    std::uint64_t summer_end_hour = 243 * 24;
};

struct ScenarioResult {
    SimulationTrace trace;
    EnergyLedger ledger;
    std::vector<ComfortReport> comfort;          // per zone
    std::vector<double> summer_peak_to_peak_c;   // per zone
};

inline double peak_to_peak(const std::vector<double>& values, std::uint64_t begin,
                           std::uint64_t end) {
    if (end > values.size()) end = values.size();
    if (begin >= end) throw ValidationError("peak_to_peak: empty window");
    double lo = values[begin], hi = values[begin];
    for (std::uint64_t i = begin; i < end; ++i) {
        lo = std::min(lo, values[i]);
        hi = std::max(hi, values[i]);
    }
    return hi - lo;
}

inline ScenarioResult run_scenario(const BuildingModel& model, const WeatherSeries& weather,
                                   const ScenarioOptions& options = {}) {
    model.validate(true);
    const ThermalNetwork network = assemble_ode(model);
    IntegrationResult run = rk4_integrate(network, weather, options.dt_seconds,
                                          options.horizon_seconds,
                                          network.uniform_state(options.initial_temp_c));
    ScenarioResult result;
    result.trace = std::move(run.trace);
    result.ledger = build_energy_ledger(result.trace, model, options.exogenous);
    // Horizons too short to reach the summer window fall back to the full span.
    std::uint64_t begin = options.summer_start_hour;
    std::uint64_t end = std::min<std::uint64_t>(options.summer_end_hour, result.trace.rows());
    if (begin >= end) {
        begin = 0;
        end = result.trace.rows();
    }
    for (std::size_t z = 0; z < model.zones.size(); ++z) {
        result.comfort.push_back(build_comfort_report(result.trace, static_cast<int>(z)));
        result.summer_peak_to_peak_c.push_back(
            peak_to_peak(result.trace.zone_temp_c[z], begin, end));
    }
    return result;
}

struct DeltaReport {
    ScenarioResult base;
    ScenarioResult variant;
    double fuel_delta_kwh = 0.0;        // variant - base
    double fuel_delta_pct = 0.0;        // relative to base fuel
    double grand_total_delta_pct = 0.0; // relative to base grand total
    std::vector<std::array<std::int64_t, 4>> comfort_delta_hours;  // per zone
    std::vector<double> summer_peak_to_peak_delta_c;               // per zone
};

inline DeltaReport compare_scenarios(const BuildingModel& base, const BuildingModel& variant,
                                     const WeatherSeries& weather,
                                     const ScenarioOptions& options = {}) {
    if (base.zones.size() != variant.zones.size())
        throw ValidationError("compare_scenarios: zone counts differ");
    DeltaReport report;
    report.base = run_scenario(base, weather, options);
    report.variant = run_scenario(variant, weather, options);
    report.fuel_delta_kwh =
        report.variant.ledger.fuel_heating_kwh - report.base.ledger.fuel_heating_kwh;
    report.fuel_delta_pct = report.base.ledger.fuel_heating_kwh > 0.0
                                ? 100.0 * report.fuel_delta_kwh /
                                      report.base.ledger.fuel_heating_kwh
                                : 0.0;
    const double base_total = report.base.ledger.grand_total_kwh();
    report.grand_total_delta_pct =
        base_total > 0.0 ? 100.0 *
                               (report.variant.ledger.grand_total_kwh() - base_total) /
                               base_total
                         : 0.0;
    for (std::size_t z = 0; z < base.zones.size(); ++z) {
        std::array<std::int64_t, 4> d{};
        for (std::size_t b = 0; b < 4; ++b)
            d[b] = static_cast<std::int64_t>(report.variant.comfort[z].hours[b]) -
                   static_cast<std::int64_t>(report.base.comfort[z].hours[b]);
        report.comfort_delta_hours.push_back(d);
        report.summer_peak_to_peak_delta_c.push_back(
            report.variant.summer_peak_to_peak_c[z] - report.base.summer_peak_to_peak_c[z]);
    }
    return report;
}

}  // namespace thermoscale
