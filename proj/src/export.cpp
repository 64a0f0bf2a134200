#include "mixmaster/export.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace mixmaster::io {

namespace {

template <class T>
std::string to_chars_string(T v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json complex_json(std::complex<double> z) {
  if (z.imag() == 0) return z.real();
  return json{{"re", z.real()}, {"im", z.imag()}};
}

json optional_double(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string shortest(double v) { return to_chars_string(v); }
std::string shortest(long double v) { return to_chars_string(v); }

json to_json(const kasner::BasePoint& b) {
  auto e = kasner::eigenvalues_at(b);
  return json{{"sector", b.sector.index()},
              {"tag", b.sector.label()},
              {"u_exact", b.u.str()},
              {"u_float", b.u.to_double()},
              {"sigma_plus", b.sigma_plus.to_double()},
              {"sigma_minus", b.sigma_minus()},
              {"exponents", {b.exponents.p1.to_double(), b.exponents.p2.to_double(), b.exponents.p3.to_double()}},
              {"eigenvalues",
               {{"cross", e.lambda_cross.to_double()},
                {"two", e.lambda_two.to_double()},
                {"minus", e.lambda_minus.to_double()},
                {"A", e.lambda_A.to_double()}}},
              {"eigenvalues_exact",
               {{"cross", e.lambda_cross.str()},
                {"two", e.lambda_two.str()},
                {"minus", e.lambda_minus.str()},
                {"A", e.lambda_A.str()}}}};
}

json to_json(const chains::HeteroclinicChain& chain) {
  json nodes = json::array();
  for (const auto& n : chain.nodes) nodes.push_back(to_json(n));
  json transitions = json::array();
  for (std::size_t i = 0; i < chain.transitions.size(); ++i) {
    transitions.push_back({{"kind", chains::to_string(chain.transitions[i])},
                           {"variable", kasner::to_string(chains::variable_of(chain.transitions[i]))},
                           {"to_sector", chain.after(i).sector.index()}});
  }
  json passages = nullptr;
  if (auto segs = chains::try_segment_passages(chain)) {
    passages = json::array();
    for (const auto& p : *segs) {
      passages.push_back({{"label", chains::to_string(p.label)}, {"first", p.first}, {"length", p.length}});
    }
  }
  return json{{"nodes", nodes},
              {"transitions", transitions},
              {"sectors", chain.sectors()},
              {"passages", passages},
              {"period", chain.period ? json(*chain.period) : json(nullptr)},
              {"closed", chain.closed}};
}

std::string sectors_csv(const chains::HeteroclinicChain& chain) {
  std::ostringstream out;
  out << "index,sector,u\n";
  for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
    out << i << ',' << chain.nodes[i].sector.index() << ',' << shortest(chain.nodes[i].u.to_double()) << '\n';
  }
  return out.str();
}

json to_json(const resonance::ResonanceReport& r) {
  auto big = [](const surd::BigInt& v) { return json(v.get_str()); };
  json k = json::array();
  for (const auto& x : r.k) k.push_back(x.fits_slong_p() ? json(x.get_si()) : big(x));
  return json{{"node", r.node},
              {"sector", r.sector.index()},
              {"u", r.u.str()},
              {"pattern", r.key.pattern},
              {"m", r.key.m},
              {"k", k},
              {"z", r.z.fits_slong_p() ? json(r.z.get_si()) : big(r.z)},
              {"order", resonance::order(r.k).get_si()},
              {"alpha", r.alpha},
              {"beta", r.beta},
              {"passes_takens", r.passes_takens},
              {"fixture_k", r.fixture_k},
              {"fixture_k_match", r.fixture_k_match}};
}

json to_json(const std::vector<resonance::ResonanceReport>& reports) {
  json rows = json::array();
  for (const auto& r : reports) rows.push_back(to_json(r));
  return json{{"base_points", rows}, {"all_pass", resonance::all_pass(reports)}};
}

json to_json(const cllp::Matrix2<double>& m) { return json{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}; }

json to_json(const cllp::EigenData& e) {
  json out{{"values", {complex_json(e.values[0]), complex_json(e.values[1])}}, {"real", e.real}};
  if (e.real) out["vectors"] = {{e.vectors[0][0], e.vectors[0][1]}, {e.vectors[1][0], e.vectors[1][1]}};
  return out;
}

json to_json(const cllp::CLLPMatrix& m) {
  json witness = json::array();
  for (const auto& w : m.verdict.witness) witness.push_back({finite_or_null(w[0]), finite_or_null(w[1])});
  return json{{"matrix", to_json(m.m)},
              {"eigen", to_json(m.eigen)},
              {"trace", m.m[0][0] + m.m[1][1]},
              {"det", m.m[0][0] * m.m[1][1] - m.m[0][1] * m.m[1][0]},
              {"contraction", m.verdict.contraction},
              {"boundary", m.verdict.boundary},
              {"witness", witness}};
}

json cllp_report(const chains::HeteroclinicChain& chain, const cllp::ComposeOptions& opts) {
  json out;
  out["section"] = opts.section == cllp::Section::PassageBoundary ? "passage" : "node";
  out["order"] = opts.order == cllp::ProductOrder::ChainOrder ? "chain" : "sequential";
  if (opts.section == cllp::Section::PassageBoundary) {
    json factors = json::array();
    for (const auto& f : cllp::per_passage_factors(chain, opts.order)) {
      factors.push_back({{"passage", chains::to_string(f.passage.label)},
                         {"first_node", f.passage.first},
                         {"u_start", f.u_start.str()},
                         {"u_start_float", f.u_start.to_double()},
                         {"matrix", to_json(f.m)},
                         {"matrix_exact",
                          json::array({json::array({f.exact[0][0].str(), f.exact[0][1].str()}),
                                      json::array({f.exact[1][0].str(), f.exact[1][1].str()})})},
                         {"eigen", to_json(f.eigen)},
                         {"cumulative", to_json(f.cumulative)}});
    }
    out["factors"] = factors;
  }
  if (chain.nodes.size() <= 6) {
    auto sym = cllp::compose_symbolic(chain, opts);
    out["symbolic"] = json::array({json::array({sym[0][0].str(), sym[0][1].str()}),
                                  json::array({sym[1][0].str(), sym[1][1].str()})});
    json values = json::array();
    for (const auto& v : cllp::symbol_values(chain, opts.section)) values.push_back(v.to_double());
    out["symbols"] = values;
  }
  out["final"] = to_json(cllp::compose(chain, opts));
  cllp::ComposeOptions other = opts;
  other.order = opts.order == cllp::ProductOrder::ChainOrder ? cllp::ProductOrder::Sequential
                                                              : cllp::ProductOrder::ChainOrder;
  out[other.order == cllp::ProductOrder::ChainOrder ? "chain_order" : "sequential"] =
      to_json(cllp::compose(chain, other));
  return out;
}

json to_json(const odes::Visit& v) {
  return json{{"sector", v.location.sector.index()},
              {"u", finite_or_null(v.location.u)},
              {"t_enter", v.t_enter},
              {"t_exit", optional_double(v.t_exit)},
              {"t_closest", v.t_closest},
              {"log10_depth", finite_or_null(v.log10_depth)},
              {"sigma_plus", v.sigma_plus},
              {"sigma_minus", v.sigma_minus},
              {"exit_variable", v.exit_variable.empty() ? json(nullptr) : json(v.exit_variable)}};
}

json to_json(const odes::ShadowReport& r) {
  json visits = json::array();
  for (const auto& v : r.visits) visits.push_back(to_json(v));
  return json{{"visits", visits},
              {"observed", r.observed},
              {"expected", r.expected},
              {"distances", r.distances},
              {"compared", r.compared},
              {"matched_prefix", r.matched_prefix},
              {"first_mismatch", r.first_mismatch ? json(*r.first_mismatch) : json(nullptr)},
              {"match", r.match}};
}

json to_json(const odes::EndpointResult& r) {
  return json{{"u_measured", r.u_measured},
              {"u_expected", r.u_expected},
              {"error", r.error},
              {"t_arrival", r.t_arrival},
              {"arrival_sector", r.arrival_sector.index()}};
}

json to_json(const verify::VerifyReport& r) {
  json rows = json::array();
  for (const auto& c : r.rows) {
    rows.push_back({{"table", c.table},
                    {"row", c.row},
                    {"delta", finite_or_null(c.delta)},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass},
                    {"detail", c.detail}});
  }
  return json{{"rows", rows}, {"passed", r.passed()}, {"total", r.rows.size()}, {"pass", r.pass()}};
}

std::vector<std::string> component_names(std::size_t dimension) {
  if (dimension == odes::StateA::size) return {"N1", "N2", "N3", "Sigma_plus", "Sigma_minus"};
  if (dimension == odes::StateB::size) return {"Sigma_plus", "Sigma_minus", "Sigma_cross", "Sigma_two", "N_minus", "A"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dimension; ++i) out.push_back("y" + std::to_string(i + 1));
  return out;
}

void write_trajectory_csv(std::ostream& out, const odes::Trajectory& traj) {
  const std::size_t dim = traj.samples.empty() ? 0 : traj.samples.front().y.size();
  out << 't';
  for (const auto& n : component_names(dim)) out << ',' << n;
  out << ",Omega_residual,g_residual,step_size,order\n";
  for (const auto& s : traj.samples) {
    out << shortest(s.t);
    for (auto v : s.y) out << ',' << shortest(v);
    out << ',' << shortest(s.omega_residual) << ',' << shortest(s.g_residual) << ',' << shortest(s.step) << ','
        << s.order << '\n';
  }
}

void write_events_csv(std::ostream& out, const odes::Trajectory& traj) {
  const std::size_t dim = traj.samples.empty() ? 0 : traj.samples.front().y.size();
  out << "t,section_id";
  for (const auto& n : component_names(dim)) out << ',' << n;
  out << '\n';
  for (const auto& e : traj.events) {
    out << shortest(e.t) << ',' << e.id;
    for (auto v : e.y) out << ',' << shortest(v);
    out << '\n';
  }
}

}  // namespace mixmaster::io
