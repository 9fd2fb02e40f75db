#pragma once

// Weighted rule of mixtures: collapse an ensemble of meso-scale property
// samples into one macroscopic value.

#include <cstddef>
#include <vector>

#include "thermoscale/errors.hpp"
#include "thermoscale/homogenize.hpp"

namespace thermoscale {

struct WeightedSamples {
    std::vector<double> values;
    std::vector<double> weights;
};

inline double rule_of_mixtures(const WeightedSamples& s) {
    if (s.values.empty()) throw EmptySamples("rule_of_mixtures: no samples");
    if (s.values.size() != s.weights.size())
        throw ValidationError("rule_of_mixtures: values and weights differ in length");
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (s.weights[i] < 0.0)
            throw NegativeWeight("rule_of_mixtures: weight " + std::to_string(i) +
                                 " is negative");
        weighted += s.values[i] * s.weights[i];
        total += s.weights[i];
    }
    if (!(total > 0.0)) throw ZeroWeightSum("rule_of_mixtures: weights sum to zero");
    return weighted / total;
}

enum class Weighting { Uniform, ByAchievedVolumeFraction };

inline const char* weighting_name(Weighting w) {
    return w == Weighting::Uniform ? "uniform" : "by-achieved-volume-fraction";
}

inline ConductivityTensor upscale_ensemble(const EnsembleReport& report,
                                           Weighting weighting = Weighting::Uniform) {
    if (report.per_seed.empty()) throw EmptySamples("upscale_ensemble: empty ensemble");
    WeightedSamples s;
    s.values.resize(report.per_seed.size());
    s.weights.resize(report.per_seed.size());
    for (std::size_t i = 0; i < report.per_seed.size(); ++i)
        s.weights[i] = weighting == Weighting::Uniform
                           ? 1.0
                           : report.per_seed[i].achieved_fraction;
    ConductivityTensor out;
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        for (std::size_t i = 0; i < report.per_seed.size(); ++i)
            s.values[i] = report.per_seed[i].tensor.component(a);
        out.component(a) = rule_of_mixtures(s);
    }
    return out;
}

}  // namespace thermoscale
