#pragma once

// Text serialization of results: CSV with 17 significant digits, JSON via nlohmann/json.

#include <string>

#include "mgt/blocks.hpp"
#include "mgt/solver.hpp"
#include "mgt/spectral.hpp"

namespace mgt {

/// "%.17g"; round-trip safe, '.' decimal separator regardless of locale.
std::string format_double(double x);

/// {eta, regime, z:[re,im], c:[re,im], d:[re,im], growth_abscissa, unbounded_flag}
std::string regime_report_json(const RegimeReport& report);

/// Header t,z_norm,x23_norm_u,x13_norm_v,x0_norm_w,status. Every row but the last carries
/// status "running"; the last carries the trajectory status.
std::string trajectory_csv(const Trajectory& traj);

/// [{"t": ..., "u": [[re, im], ...], "v": ..., "w": ...}, ...]
std::string trajectory_states_json(const Trajectory& traj);

std::string eigen_sequence_json(const EigenSequence& eigs);

/// Parses a JSON array of positive, strictly increasing doubles into a user-supplied
/// sequence. Throws DataError on malformed input.
EigenSequence parse_eigen_sequence_json(const std::string& text);

}  // namespace mgt
