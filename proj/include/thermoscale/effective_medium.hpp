#pragma once

// Classical bounds and dilute estimates for two-phase conductivity. These
// are closed-form references: the FE result must land between Reuss and
// Voigt, and dilute suspensions should approach Maxwell-Garnett.

#include <cmath>

#include "thermoscale/errors.hpp"

namespace thermoscale {

// Series (harmonic) bound: 1 / (f_m/k_m + f_i/k_i).
inline double reuss_bound(double k_matrix, double k_inclusion, double fraction) {
    if (!(k_matrix > 0.0) || !(k_inclusion > 0.0))
        throw NonPositiveInput("reuss_bound: conductivities must be > 0");
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw ValidationError("reuss_bound: fraction must lie in [0, 1]");
    return 1.0 / ((1.0 - fraction) / k_matrix + fraction / k_inclusion);
}

// Parallel (arithmetic) bound: f_m k_m + f_i k_i.
inline double voigt_bound(double k_matrix, double k_inclusion, double fraction) {
    if (!(k_matrix > 0.0) || !(k_inclusion > 0.0))
        throw NonPositiveInput("voigt_bound: conductivities must be > 0");
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw ValidationError("voigt_bound: fraction must lie in [0, 1]");
    return (1.0 - fraction) * k_matrix + fraction * k_inclusion;
}

// Maxwell-Garnett estimate for spherical inclusions in a matrix.
inline double maxwell_garnett(double k_matrix, double k_inclusion, double fraction) {
    if (!(k_matrix > 0.0) || !(k_inclusion > 0.0))
        throw NonPositiveInput("maxwell_garnett: conductivities must be > 0");
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw ValidationError("maxwell_garnett: fraction must lie in [0, 1]");
    const double d = k_inclusion - k_matrix;
    return k_matrix * (k_inclusion + 2.0 * k_matrix + 2.0 * fraction * d) /
           (k_inclusion + 2.0 * k_matrix - fraction * d);
}

}  // namespace thermoscale
