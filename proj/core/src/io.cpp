#include "mgt/io.hpp"

#include <array>
#include <cstdio>

#include <json.hpp>

#include "mgt/errors.hpp"

namespace mgt {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json pair(Complex c) { return json::array({c.real(), c.imag()}); }

ordered_json ordered_pair(Complex c) { return ordered_json::array({c.real(), c.imag()}); }

json coefficients(const CVector& c) {
  json out = json::array();
  for (const Complex& x : c) out.push_back(pair(x));
  return out;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 40> buf{};
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  std::snprintf(buf.data(), buf.size(), "%.17g", x);
  std::string s(buf.data());
  // snprintf honours LC_NUMERIC; the output contract is '.'.
  for (char& ch : s) {
    if (ch == ',') ch = '.';
  }
  return s;
}

std::string regime_report_json(const RegimeReport& report) {
  ordered_json j;
  j["eta"] = report.eta;
  j["regime"] = to_string(report.regime);
  j["z"] = ordered_pair(report.multipliers.z);
  j["c"] = ordered_pair(report.multipliers.c);
  j["d"] = ordered_pair(report.multipliers.d);
  j["growth_abscissa"] = report.growth.sup_re;
  j["unbounded_flag"] = report.growth.unbounded;
  return j.dump(2) + "\n";
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,z_norm,x23_norm_u,x13_norm_v,x0_norm_w,status\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const StateNorms& n = traj.norms[k];
    const bool last = k + 1 == traj.times.size();
    out += format_double(traj.times[k]) + ',' + format_double(n.z) + ',' + format_double(n.x23_u) + ',' +
           format_double(n.x13_v) + ',' + format_double(n.x0_w) + ',' +
           (last ? to_string(traj.status) : std::string("running")) + '\n';
  }
  return out;
}

std::string trajectory_states_json(const Trajectory& traj) {
  json out = json::array();
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const SpectralState& s = traj.states[k];
    out.push_back({{"t", traj.times[k]},
                   {"coords", s.coords == Coords::Natural ? "Natural" : "Reduced"},
                   {"u", coefficients(s.u)},
                   {"v", coefficients(s.v)},
                   {"w", coefficients(s.w)}});
  }
  return out.dump() + "\n";
}

std::string eigen_sequence_json(const EigenSequence& eigs) {
  json out = json::array();
  for (double mu : eigs.values()) out.push_back(mu);
  return out.dump() + "\n";
}

EigenSequence parse_eigen_sequence_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("eigenvalue list is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw DataError("eigenvalue list must be a JSON array");
  std::vector<double> values;
  for (const json& x : j) {
    if (!x.is_number()) throw DataError("eigenvalue list must contain numbers only");
    values.push_back(x.get<double>());
  }
  try {
    return EigenSequence::user_supplied(std::move(values));
  } catch (const InvalidArgument& e) {
    throw DataError(e.what());
  }
}

}  // namespace mgt
