// JSON records and plot-ready CSV for the analyses.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mixmaster/cllp.hpp"
#include "mixmaster/resonance.hpp"
#include "mixmaster/shadow.hpp"
#include "mixmaster/verify.hpp"

namespace mixmaster::io {

using nlohmann::json;

/// Six significant digits, for human-readable tables.
std::string fmt6(double v);
/// Shortest text that reads back to the same value.
std::string shortest(double v);
std::string shortest(long double v);

/// {sector, u_exact, u_float, sigma_plus, sigma_minus, eigenvalues{cross,two,minus,A}}
json to_json(const kasner::BasePoint& b);
/// nodes, transitions, passages, period
json to_json(const chains::HeteroclinicChain& chain);
/// index,sector,u
std::string sectors_csv(const chains::HeteroclinicChain& chain);

json to_json(const resonance::ResonanceReport& r);
json to_json(const std::vector<resonance::ResonanceReport>& reports);

json to_json(const cllp::Matrix2<double>& m);
json to_json(const cllp::EigenData& e);
json to_json(const cllp::CLLPMatrix& m);
/// Per-passage factors with cumulative products, the composed map and the
/// sequential return map for comparison.
json cllp_report(const chains::HeteroclinicChain& chain, const cllp::ComposeOptions& opts);

json to_json(const odes::Visit& v);
json to_json(const odes::ShadowReport& r);
json to_json(const odes::EndpointResult& r);
json to_json(const verify::VerifyReport& r);

std::vector<std::string> component_names(std::size_t dimension);
/// t, components, Omega_residual, g_residual, step_size, order
void write_trajectory_csv(std::ostream& out, const odes::Trajectory& traj);
/// t, section_id, components
void write_events_csv(std::ostream& out, const odes::Trajectory& traj);

}  // namespace mixmaster::io
