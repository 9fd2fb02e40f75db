#pragma once

// Lumped-capacitance building thermal network. Walls are 1D node chains
// (optionally with a latent-heat layer via the effective-heat-capacity
// method), zones are single air nodes with proportional heating, and the
// exterior boundary reads an hourly weather series.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thermoscale/errors.hpp"
#include "thermoscale/weather.hpp"

namespace thermoscale {

struct PcmProperties {
    double latent_heat = 0.0;  // J/kg
    double melt_low_c = 0.0;
    double melt_high_c = 0.0;
};

struct Layer {
    double thickness = 0.0;      // m
    double conductivity = 0.0;   // W/(m K)
    double density = 0.0;        // kg/m^3
    double specific_heat = 0.0;  // J/(kg K), sensible baseline
    std::optional<PcmProperties> pcm;

    void validate() const {
        if (!(thickness > 0.0) || !(conductivity > 0.0) || !(density > 0.0) ||
            !(specific_heat > 0.0))
            throw ValidationError("Layer: thickness, conductivity, density, specific_heat "
                                  "must all be > 0");
        if (pcm) {
            if (!(pcm->latent_heat > 0.0))
                throw ValidationError("Layer: latent_heat must be > 0");
            if (!(pcm->melt_low_c < pcm->melt_high_c))
                throw ValidationError("Layer: melt range must satisfy low < high");
        }
    }
};

// Top-hat latent model: the baseline capacity plus L_h spread uniformly
// over the melt range, so integrating across the range recovers L_h exactly.
inline double effective_heat_capacity(double temp_c, const Layer& layer) {
    if (!layer.pcm) return layer.specific_heat;
    const PcmProperties& p = *layer.pcm;
    if (temp_c >= p.melt_low_c && temp_c <= p.melt_high_c)
        return layer.specific_heat + p.latent_heat / (p.melt_high_c - p.melt_low_c);
    return layer.specific_heat;
}

// Integral of the effective capacity from the 0 degC datum, J/kg.
inline double specific_enthalpy(double temp_c, const Layer& layer) {
    double h = layer.specific_heat * temp_c;
    if (layer.pcm) {
        const PcmProperties& p = *layer.pcm;
        const double melted = std::clamp(
            (temp_c - p.melt_low_c) / (p.melt_high_c - p.melt_low_c), 0.0, 1.0);
        h += p.latent_heat * melted;
    }
    return h;
}

struct WallAssembly {
    std::vector<Layer> layers;  // side A (exterior) first, side B (interior) last
    double area = 0.0;          // m^2
    int nodes_per_layer = 1;
    double h_ext = 25.0;  // film coefficient on side A, W/(m^2 K)
    double h_int = 7.7;   // film coefficient on side B
    int zone_a = -1;      // -1 = exterior
    int zone_b = 0;

    void validate(int zone_count) const {
        if (layers.empty()) throw ValidationError("WallAssembly: at least one layer");
        for (const Layer& l : layers) l.validate();
        if (!(area > 0.0)) throw ValidationError("WallAssembly: area must be > 0");
        if (nodes_per_layer < 1)
            throw ValidationError("WallAssembly: nodes_per_layer must be >= 1");
        if (!(h_ext > 0.0) || !(h_int > 0.0))
            throw ValidationError("WallAssembly: film coefficients must be > 0");
        for (int z : {zone_a, zone_b})
            if (z < -1 || z >= zone_count)
                throw ValidationError("WallAssembly: zone index " + std::to_string(z) +
                                      " out of range");
        if (zone_a == -1 && zone_b == -1)
            throw ValidationError("WallAssembly: wall connects exterior to exterior");
        if (zone_a == zone_b)
            throw ValidationError("WallAssembly: wall connects a zone to itself");
    }

    // Steady-state transmittance times area: series film + layer resistances.
    double steady_ua() const {
        double r = 1.0 / h_ext + 1.0 / h_int;
        for (const Layer& l : layers) r += l.thickness / l.conductivity;
        return area / r;
    }
};

// 1D chain: n nodes carry mass, n+1 links carry conductance. Link 0 joins
// side A to the first node (film plus half-slice); link n joins the last
// node to side B.
struct WallChain {
    std::vector<double> node_mass;     // kg
    std::vector<int> node_layer;       // index into the assembly's layers
    std::vector<double> conductance;   // W/K, node_mass.size() + 1 entries
};

inline WallChain discretize_wall(const WallAssembly& w) {
    WallChain chain;
    std::vector<double> half_res;  // half-slice resistance per node, K/W times area
    for (std::size_t li = 0; li < w.layers.size(); ++li) {
        const Layer& l = w.layers[li];
        const double dx = l.thickness / w.nodes_per_layer;
        for (int s = 0; s < w.nodes_per_layer; ++s) {
            chain.node_mass.push_back(l.density * w.area * dx);
            chain.node_layer.push_back(static_cast<int>(li));
            half_res.push_back(dx / (2.0 * l.conductivity));
        }
    }
    const std::size_t n = chain.node_mass.size();
    chain.conductance.resize(n + 1);
    chain.conductance[0] = w.area / (1.0 / w.h_ext + half_res[0]);
    for (std::size_t i = 0; i + 1 < n; ++i)
        chain.conductance[i + 1] = w.area / (half_res[i] + half_res[i + 1]);
    chain.conductance[n] = w.area / (half_res[n - 1] + 1.0 / w.h_int);
    return chain;
}

struct HeatingConfig {
    double setpoint_c = 21.0;
    double max_power_w = 0.0;  // 0 disables heating
    double efficiency = 1.0;   // fuel drawn = output / efficiency
    double k_p = 500.0;        // proportional gain, W/K
};

struct Zone {
    std::string name;
    double capacitance = 0.0;  // J/K, air plus fast-response contents
    HeatingConfig heating;
    double infiltration_ua = 0.0;  // W/K to outdoor air
    double window_ua = 0.0;        // W/K to outdoor air
    // Empty = none; 24 entries = daily cycle; 8760 entries = hour-of-year.
    std::vector<double> internal_gains_w;

    double gain_at(double hour_of_year) const {
        if (internal_gains_w.empty()) return 0.0;
        const std::size_t period = internal_gains_w.size();
        std::int64_t h = static_cast<std::int64_t>(std::floor(hour_of_year)) %
                         static_cast<std::int64_t>(period);
        if (h < 0) h += static_cast<std::int64_t>(period);
        return internal_gains_w[static_cast<std::size_t>(h)];
    }

    void validate() const {
        if (!(capacitance > 0.0)) throw ValidationError("Zone: capacitance must be > 0");
        if (!(heating.efficiency > 0.0) || heating.efficiency > 1.0)
            throw ValidationError("Zone: heating efficiency must lie in (0, 1]");
        if (heating.max_power_w < 0.0)
            throw ValidationError("Zone: max heating power must be >= 0");
        if (!(heating.k_p > 0.0)) throw ValidationError("Zone: k_p must be > 0");
        if (infiltration_ua < 0.0 || window_ua < 0.0)
            throw ValidationError("Zone: UA terms must be >= 0");
        const std::size_t g = internal_gains_w.size();
        if (g != 0 && g != 24 && g != 8760)
            throw ValidationError("Zone: gains schedule must have 0, 24, or 8760 entries");
        for (double v : internal_gains_w)
            if (!std::isfinite(v)) throw ValidationError("Zone: gains must be finite");
    }
};

inline double thermostat_power(double t_zone_c, const Zone& z) {
    const double demand = z.heating.k_p * (z.heating.setpoint_c - t_zone_c);
    return std::clamp(demand, 0.0, z.heating.max_power_w);
}

struct BuildingModel {
    std::vector<Zone> zones;
    std::vector<WallAssembly> walls;

    // require_exterior distinguishes simulation models (every zone must be
    // thermally reachable from outdoors) from closed test fixtures.
    void validate(bool require_exterior = true) const {
        if (zones.empty()) throw ValidationError("BuildingModel: at least one zone");
        for (const Zone& z : zones) z.validate();
        for (const WallAssembly& w : walls) w.validate(static_cast<int>(zones.size()));
        if (!require_exterior) return;
        std::vector<std::uint8_t> reached(zones.size(), 0);
        std::vector<int> frontier;
        for (std::size_t i = 0; i < zones.size(); ++i)
            if (zones[i].infiltration_ua > 0.0 || zones[i].window_ua > 0.0)
                reached[i] = 1;
        for (const WallAssembly& w : walls) {
            if (w.zone_a == -1 && w.zone_b >= 0) reached[static_cast<std::size_t>(w.zone_b)] = 1;
            if (w.zone_b == -1 && w.zone_a >= 0) reached[static_cast<std::size_t>(w.zone_a)] = 1;
        }
        for (std::size_t i = 0; i < zones.size(); ++i)
            if (reached[i]) frontier.push_back(static_cast<int>(i));
        while (!frontier.empty()) {
            const int z = frontier.back();
            frontier.pop_back();
            for (const WallAssembly& w : walls) {
                int other = -2;
                if (w.zone_a == z && w.zone_b >= 0) other = w.zone_b;
                if (w.zone_b == z && w.zone_a >= 0) other = w.zone_a;
                if (other >= 0 && !reached[static_cast<std::size_t>(other)]) {
                    reached[static_cast<std::size_t>(other)] = 1;
                    frontier.push_back(other);
                }
            }
        }
        for (std::size_t i = 0; i < zones.size(); ++i)
            if (!reached[i])
                throw ValidationError("BuildingModel: zone '" + zones[i].name +
                                      "' has no thermal path to the exterior");
    }
};

// State layout: [zone temps | wall 0 nodes | wall 1 nodes | ...], degC.
class ThermalNetwork {
  public:
    explicit ThermalNetwork(const BuildingModel& model) : model_(model) {
        std::size_t offset = model_.zones.size();
        for (const WallAssembly& w : model_.walls) {
            chains_.push_back(discretize_wall(w));
            chain_offset_.push_back(offset);
            offset += chains_.back().node_mass.size();
        }
        state_size_ = offset;
    }

    const BuildingModel& model() const { return model_; }
    std::size_t state_size() const { return state_size_; }
    std::size_t zone_count() const { return model_.zones.size(); }

    std::vector<double> uniform_state(double temp_c) const {
        return std::vector<double>(state_size_, temp_c);
    }

    // Energy balance; dy is used as a flow accumulator (W) and divided by
    // the temperature-dependent capacitances at the end.
    void rhs(double t_seconds, const std::vector<double>& y, std::vector<double>& dy,
             const WeatherSeries& weather) const {
        const double t_out = weather.value_at(t_seconds);
        const double hour = t_seconds / kSecondsPerHour;
        const std::size_t nz = model_.zones.size();
        std::fill(dy.begin(), dy.end(), 0.0);
        for (std::size_t z = 0; z < nz; ++z) {
            const Zone& zone = model_.zones[z];
            dy[z] += (zone.infiltration_ua + zone.window_ua) * (t_out - y[z]);
            dy[z] += zone.gain_at(hour);
            dy[z] += thermostat_power(y[z], zone);
        }
        for (std::size_t wi = 0; wi < chains_.size(); ++wi) {
            const WallAssembly& w = model_.walls[wi];
            const WallChain& c = chains_[wi];
            const std::size_t o = chain_offset_[wi];
            const std::size_t n = c.node_mass.size();
            const double ta = w.zone_a < 0 ? t_out : y[static_cast<std::size_t>(w.zone_a)];
            const double tb = w.zone_b < 0 ? t_out : y[static_cast<std::size_t>(w.zone_b)];
            const double fa = c.conductance[0] * (ta - y[o]);
            dy[o] += fa;
            if (w.zone_a >= 0) dy[static_cast<std::size_t>(w.zone_a)] -= fa;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double f = c.conductance[i + 1] * (y[o + i] - y[o + i + 1]);
                dy[o + i] -= f;
                dy[o + i + 1] += f;
            }
            const double fb = c.conductance[n] * (y[o + n - 1] - tb);
            dy[o + n - 1] -= fb;
            if (w.zone_b >= 0) dy[static_cast<std::size_t>(w.zone_b)] += fb;
        }
        for (std::size_t z = 0; z < nz; ++z) dy[z] /= model_.zones[z].capacitance;
        for (std::size_t wi = 0; wi < chains_.size(); ++wi) {
            const WallChain& c = chains_[wi];
            const std::size_t o = chain_offset_[wi];
            for (std::size_t i = 0; i < c.node_mass.size(); ++i) {
                const Layer& layer =
                    model_.walls[wi].layers[static_cast<std::size_t>(c.node_layer[i])];
                dy[o + i] /= c.node_mass[i] * effective_heat_capacity(y[o + i], layer);
            }
        }
    }

    double heating_power(std::size_t zone, const std::vector<double>& y) const {
        return thermostat_power(y[zone], model_.zones[zone]);
    }

    // Total stored energy relative to the 0 degC datum, J.
    double enthalpy(const std::vector<double>& y) const {
        double h = 0.0;
        for (std::size_t z = 0; z < model_.zones.size(); ++z)
            h += model_.zones[z].capacitance * y[z];
        for (std::size_t wi = 0; wi < chains_.size(); ++wi) {
            const WallChain& c = chains_[wi];
            const std::size_t o = chain_offset_[wi];
            for (std::size_t i = 0; i < c.node_mass.size(); ++i) {
                const Layer& layer =
                    model_.walls[wi].layers[static_cast<std::size_t>(c.node_layer[i])];
                h += c.node_mass[i] * specific_enthalpy(y[o + i], layer);
            }
        }
        return h;
    }

  private:
    BuildingModel model_;
    std::vector<WallChain> chains_;
    std::vector<std::size_t> chain_offset_;
    std::size_t state_size_ = 0;
};

inline ThermalNetwork assemble_ode(const BuildingModel& model) { return ThermalNetwork(model); }

}  // namespace thermoscale
