#pragma once

#include <cstddef>
#include <vector>

#include "catseye/field.hpp"
#include "catseye/flattened.hpp"

namespace catseye {

/// Scaled flow force per column,
///   S_bar = (Rbar/2 - 1) eta_bar - gamma eta_bar^2 / 2
///         + int_0^eta_bar [ (psi_y^2 - psi_x^2) / 2 + psi ] dy_bar,
/// evaluated on the flattened strip. The physical flow force is sqrt(b) S_bar.
std::vector<double> flow_force_scaled(const WaveField& field, const Discretization& disc = {});

/// Physical flow force at the grid column whose position is X (scaled x = sqrt(b) X).
/// Throws RangeError if X is not a grid column.
double flow_force(const WaveField& field, double b, double X, const Discretization& disc = {});

/// max_i |S_i - mean S| / |mean S|.
double flow_force_variation(const std::vector<double>& trace);

}  // namespace catseye
