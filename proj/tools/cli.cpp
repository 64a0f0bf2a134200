#include "cli.hpp"

#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mixmaster/export.hpp"
#include "mixmaster/fixtures.hpp"

namespace mixmaster::cli {

namespace {

using io::json;
using kasner::QuadraticSurd;
using kasner::Sector;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kMismatch = 2;

struct ChainArgs {
  std::string cycle;
  std::string u;
  int sector = 0;
  std::string policy = "left";
  std::size_t steps = 18;
};

void add_chain_options(CLI::App* sub, ChainArgs& a) {
  sub->add_option("--cycle", a.cycle, "Named cycle: classic18, advanced18 or 3-cycle");
  sub->add_option("--u", a.u, "Kasner parameter, e.g. \"[;3,5]\", \"(1+sqrt(5))/2\" or 7/2");
  sub->add_option("--sector", a.sector, "Starting sector 1..6")->check(CLI::Range(1, 6));
  sub->add_option("--policy", a.policy, "Branch policy: left, right, classic, advanced or a comma list")->capture_default_str();
  sub->add_option("--steps", a.steps, "Number of transitions")->capture_default_str();
}

chains::HeteroclinicChain build_chain(const ChainArgs& a, const std::string& fallback) {
  if (!a.cycle.empty()) {
    if (!a.u.empty()) throw UsageError("--cycle and --u cannot be combined");
    return chains::named_cycle(a.cycle);
  }
  if (a.u.empty()) {
    if (fallback.empty()) throw UsageError("give --cycle, or --u with --sector");
    return chains::named_cycle(fallback);
  }
  if (a.sector == 0) throw UsageError("--u needs --sector");
  return chains::generate_chain(surd::parse_surd(a.u), Sector::from_index(a.sector),
                                chains::BranchPolicy::parse(a.policy), a.steps);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

double real_part(const json& v) { return v.is_number() ? v.get<double>() : v["re"].get<double>(); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string line(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string line(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  std::string s(buf);
  s.erase(s.find_last_not_of(' ') + 1);
  return s + "\n";
}

const char* g6(double v, char* buf) {
  std::snprintf(buf, 32, "%.6g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      out.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw UsageError("bad number '" + part + "'");
    }
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

std::string with_index(const std::string& path, std::size_t i, std::size_t n) {
  if (n == 1 || path.empty()) return path;
  auto dot = path.find_last_of('.');
  auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "." + std::to_string(i);
  return path.substr(0, dot) + "." + std::to_string(i) + path.substr(dot);
}

// kasner-orbit

struct OrbitArgs {
  std::string u;
  std::size_t steps = 10;
  std::string format = "text";
  std::string out;
};

int cmd_orbit(const OrbitArgs& a, std::ostream& out) {
  QuadraticSurd u = surd::parse_surd(a.u);
  json rows = json::array();
  std::string text = line("%4s  %-12s  %s", "step", "u", "exact");
  bool taub = false;
  char b[32];
  for (std::size_t i = 0; i <= a.steps; ++i) {
    rows.push_back({{"step", i}, {"u_exact", u.str()}, {"u_float", u.to_double()}, {"era_end", u < QuadraticSurd(2)}});
    text += line("%4zu  %-12s  %s", i, g6(u.to_double(), b), u.str().c_str());
    if (i == a.steps) break;
    auto next = kasner::kasner_map(u);
    if (!std::holds_alternative<QuadraticSurd>(next)) {
      taub = true;
      text += "      taub point reached\n";
      break;
    }
    u = std::get<QuadraticSurd>(next);
  }
  emit(out, a.out, a.format == "json" ? dump({{"orbit", rows}, {"taub", taub}}) : text);
  return 0;
}

// eigenvalues

struct EigenArgs {
  std::string u;
  int sector = 0;
  std::string format = "text";
  std::string out;
};

int cmd_eigen(const EigenArgs& a, std::ostream& out) {
  QuadraticSurd u = surd::parse_surd(a.u);
  std::vector<int> sectors;
  if (a.sector) {
    sectors.push_back(a.sector);
  } else {
    sectors = {1, 2, 3, 4, 5, 6};
  }
  json records = json::array();
  std::string text = line("%-6s  %-5s  %-10s  %-10s  %-10s  %-10s  %-10s  %-10s  %-10s", "sector", "tag", "cross",
                          "two", "minus", "A", "mu1", "mu2", "mu3");
  char b[7][32];
  for (int s : sectors) {
    auto bp = kasner::base_point(u, Sector::from_index(s));
    auto e = kasner::eigenvalues_at(bp);
    records.push_back(io::to_json(bp));
    text += line("%-6d  %-5s  %-10s  %-10s  %-10s  %-10s  %-10s  %-10s  %-10s", s, bp.sector.label().c_str(),
                 g6(e.lambda_cross.to_double(), b[0]), g6(e.lambda_two.to_double(), b[1]),
                 g6(e.lambda_minus.to_double(), b[2]), g6(e.lambda_A.to_double(), b[3]), g6(e.mu1.to_double(), b[4]),
                 g6(e.mu2.to_double(), b[5]), g6(e.mu3.to_double(), b[6]));
  }
  emit(out, a.out, a.format == "json" ? dump(a.sector ? records.front() : records) : text);
  return 0;
}

// chain

struct ChainCmdArgs {
  ChainArgs chain;
  std::string format = "text";
  std::string out;
};

std::string chain_text(const chains::HeteroclinicChain& c) {
  std::string text = line("%4s  %-6s  %-5s  %-10s  %-26s  %s", "node", "sector", "tag", "u", "u exact", "next");
  char b[32];
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    std::string next = i < c.transitions.size() ? chains::to_string(c.transitions[i]) : "";
    text += line("%4zu  %-6d  %-5s  %-10s  %-26s  %s", i, n.sector.index(), n.sector.label().c_str(),
                 g6(n.u.to_double(), b), n.u.str().c_str(), next.c_str());
  }
  if (auto segs = chains::try_segment_passages(c)) text += "passages: " + chains::passage_string(*segs) + "\n";
  text += c.period ? "period: " + std::to_string(*c.period) + "\n" : "period: none\n";
  return text;
}

int cmd_chain(const ChainCmdArgs& a, std::ostream& out) {
  auto c = build_chain(a.chain, "");
  std::string text;
  if (a.format == "json") {
    text = dump(io::to_json(c));
  } else if (a.format == "csv") {
    text = io::sectors_csv(c);
  } else {
    text = chain_text(c);
  }
  emit(out, a.out, text);
  return 0;
}

// resonance

struct ResonanceArgs {
  ChainArgs chain;
  std::string fixtures;
  std::string report;
  std::string format = "text";
  int search = 0;
};

int cmd_resonance(const ResonanceArgs& a, std::ostream& out) {
  auto c = build_chain(a.chain, "classic18");
  std::filesystem::path dir = a.fixtures.empty() ? fixtures::default_fixture_dir() : std::filesystem::path(a.fixtures);
  auto table = fixtures::AlphaTable::load(dir / fixtures::kTakensFile);
  auto reports = resonance::takens_check(c, table);
  json j = io::to_json(reports);
  if (a.search > 0) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      auto rel = resonance::search_resonances(kasner::eigenvalues_at(c.nodes[reports[i].node]), a.search);
      j["base_points"][i]["relations"] = rel;
    }
  }
  std::string text =
      line("%4s  %-6s  %-10s  %-7s  %-3s  %-22s  %-4s  %-5s  %-5s  %s", "node", "sector", "u", "pattern", "m", "k",
           "z", "|k|", "alpha", "takens");
  char b[32];
  bool fixture_match = true;
  for (const auto& r : reports) {
    std::ostringstream k;
    k << "{" << r.k[0] << "," << r.k[1] << "," << r.k[2] << "}";
    text += line("%4zu  %-6d  %-10s  %-7s  %-3d  %-22s  %-4s  %-5s  %-5d  %s", r.node, r.sector.index(),
                 g6(r.u.to_double(), b), r.key.pattern.c_str(), r.key.m, k.str().c_str(), r.z.get_str().c_str(),
                 resonance::order(r.k).get_str().c_str(), r.alpha, r.passes_takens ? "pass" : "fail");
    fixture_match = fixture_match && r.fixture_k_match;
  }
  text += std::string("Takens linearization: ") + (resonance::all_pass(reports) ? "all base points pass" : "fails") +
          "\n";
  if (!fixture_match) text += "fixture k vectors differ from the computed ones\n";
  if (!a.report.empty()) write_file(a.report, dump(j));
  out << (a.format == "json" ? dump(j) : text);
  return fixture_match ? 0 : kMismatch;
}

// cllp

struct CllpArgs {
  ChainArgs chain;
  std::string section = "auto";
  std::string order = "chain";
  std::string report;
  std::string format = "text";
};

int cmd_cllp(const CllpArgs& a, std::ostream& out) {
  auto c = build_chain(a.chain, "");
  cllp::ComposeOptions opts;
  opts.order = a.order == "sequential" ? cllp::ProductOrder::Sequential : cllp::ProductOrder::ChainOrder;
  if (a.section == "passage") {
    opts.section = cllp::Section::PassageBoundary;
  } else if (a.section == "node") {
    opts.section = cllp::Section::NodeEntry;
  } else {
    auto closed = c.closed ? c : chains::close_cycle(c);
    auto segs = chains::try_segment_passages(closed);
    opts.section = segs && segs->size() > 1 ? cllp::Section::PassageBoundary : cllp::Section::NodeEntry;
  }
  json j = io::cllp_report(c, opts);
  std::string text;
  char b[6][32];
  if (j.contains("factors")) {
    text += line("%5s  %-7s  %-10s  %-10s  %-10s  %-10s  %-10s", "block", "passage", "u_start", "mu1", "mu2", "v1",
                 "v2");
    int block = 1;
    for (const auto& f : j["factors"]) {
      const auto& e = f["eigen"];
      if (e["real"].get<bool>()) {
        text += line("%5d  %-7s  %-10s  %-10s  %-10s  %-10s  %-10s", block, f["passage"].get<std::string>().c_str(),
                     g6(f["u_start_float"].get<double>(), b[0]), g6(real_part(e["values"][0]), b[1]),
                     g6(real_part(e["values"][1]), b[2]), g6(e["vectors"][0][0].get<double>(), b[3]),
                     g6(e["vectors"][1][0].get<double>(), b[4]));
      } else {
        text += line("%5d  %-7s  %-10s  complex eigenvalues", block, f["passage"].get<std::string>().c_str(),
                     g6(f["u_start_float"].get<double>(), b[0]));
      }
      ++block;
    }
  }
  if (j.contains("symbolic")) {
    const auto& s = j["symbolic"];
    text += "symbolic: [[" + s[0][0].get<std::string>() + ", " + s[0][1].get<std::string>() + "], [" +
            s[1][0].get<std::string>() + ", " + s[1][1].get<std::string>() + "]]\n";
  }
  const auto& fin = j["final"];
  const auto& m = fin["matrix"];
  text += line("final: [[%s, %s], [%s, %s]]", g6(m[0][0].get<double>(), b[0]), g6(m[0][1].get<double>(), b[1]),
               g6(m[1][0].get<double>(), b[2]), g6(m[1][1].get<double>(), b[3]));
  const auto& ev = fin["eigen"]["values"];
  if (fin["eigen"]["real"].get<bool>()) {
    text += line("eigenvalues: %s, %s", g6(real_part(ev[0]), b[0]), g6(real_part(ev[1]), b[1]));
  } else {
    text += line("eigenvalues: %s +- %si", g6(real_part(ev[0]), b[0]), g6(ev[0]["im"].get<double>(), b[1]));
  }
  text += std::string("contraction: ") + (fin["contraction"].get<bool>() ? "yes" : "no") +
          (fin["boundary"].get<bool>() ? " (eigenvalue on the unit circle)" : "") + "\n";
  if (!a.report.empty()) write_file(a.report, dump(j));
  out << (a.format == "json" ? dump(j) : text);
  return 0;
}

// simulate

struct SimulateArgs {
  std::string system = "b6";
  ChainArgs chain;
  std::string eps = "1e-5";
  double transverse = -1;
  double delta = 1e-2;
  int entries = -1;
  double tol = 1e-10;
  double span = 1e5;
  bool project = false;
  std::size_t stride = 1;
  std::string trajectory;
  std::string events;
  std::string report;
  std::string format = "text";
};

odes::ShadowRunConfig run_config(const SimulateArgs& a, double eps, int entries) {
  odes::ShadowRunConfig cfg;
  cfg.eps = eps;
  cfg.transverse = a.transverse;
  cfg.rel_tol = a.tol;
  cfg.span = a.span;
  cfg.entries = entries;
  cfg.project = a.project;
  cfg.sample_stride = a.stride;
  cfg.shadow.delta = a.delta;
  return cfg;
}

void write_trajectory_files(const SimulateArgs& a, const odes::Trajectory& t, std::size_t i, std::size_t n) {
  if (!a.trajectory.empty()) {
    std::ostringstream s;
    io::write_trajectory_csv(s, t);
    write_file(with_index(a.trajectory, i, n), s.str());
  }
  if (!a.events.empty()) {
    std::ostringstream s;
    io::write_events_csv(s, t);
    write_file(with_index(a.events, i, n), s.str());
  }
}

json trajectory_json(const odes::Trajectory& t) {
  return {{"stop", odes::to_string(t.stop)},
          {"accepted", t.accepted},
          {"rejected", t.rejected},
          {"evaluations", t.evaluations},
          {"t_end", static_cast<double>(t.back().t)}};
}

std::string visits_text(const std::vector<odes::Visit>& visits, const std::vector<int>* expected) {
  std::string text = line("%5s  %-6s  %-8s  %-10s  %-11s  %-12s  %s", "visit", "sector", "expected", "u",
                          "log10 depth", "t closest", "exit");
  char b[3][32];
  for (std::size_t i = 0; i < visits.size(); ++i) {
    const auto& v = visits[i];
    std::string exp = expected && i < expected->size() ? std::to_string((*expected)[i]) : "-";
    text += line("%5zu  %-6d  %-8s  %-10s  %-11s  %-12s  %s", i, v.location.sector.index(), exp.c_str(),
                 g6(v.location.u, b[0]), g6(v.log10_depth, b[1]), g6(v.t_closest, b[2]),
                 v.exit_variable.empty() ? "-" : v.exit_variable.c_str());
  }
  return text;
}

int simulate_b6(const SimulateArgs& a, std::ostream& out) {
  auto c = build_chain(a.chain, "classic18");
  const auto eps = parse_list(a.eps);
  const int entries = a.entries >= 0 ? a.entries : static_cast<int>(c.transitions.size());
  std::vector<std::future<odes::ShadowRun>> jobs;
  for (double e : eps) {
    jobs.push_back(std::async(std::launch::async, [&c, cfg = run_config(a, e, entries)] { return odes::run_shadow(c, cfg); }));
  }
  std::vector<odes::ShadowRun> runs;
  for (auto& j : jobs) runs.push_back(j.get());

  json seeds = json::array();
  std::string text;
  bool all_match = true;
  char b[2][32];
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    write_trajectory_files(a, r.trajectory, i, runs.size());
    json s = trajectory_json(r.trajectory);
    s["eps"] = eps[i];
    s["max_omega_residual"] = r.max_omega_residual;
    s["max_g_residual"] = r.max_g_residual;
    s["shadow"] = io::to_json(r.report);
    seeds.push_back(s);
    const bool ok = r.report.match && r.report.compared >= static_cast<std::size_t>(entries);
    s["complete"] = ok;
    all_match = all_match && ok;
    text += line("seed %zu: eps %s", i, g6(eps[i], b[0]));
    text += visits_text(r.report.visits, &r.report.expected);
    text += line("sectors matched: %zu/%d (%s)", r.report.matched_prefix, entries, ok ? "match" : "mismatch");
    text += line("max |Omega| %s, max |g| %s, %zu steps", g6(r.max_omega_residual, b[0]), g6(r.max_g_residual, b[1]),
                 r.trajectory.accepted);
  }
  json j = {{"system", "bianchi6"}, {"chain", c.sectors()}, {"seeds", seeds}, {"match", all_match}};
  if (!a.report.empty()) write_file(a.report, dump(j));
  out << (a.format == "json" ? dump(j) : text);
  return all_match ? 0 : kMismatch;
}

int simulate_b9(const SimulateArgs& a, std::ostream& out) {
  if (a.chain.u.empty()) throw UsageError("simulate --system b9 needs --u");
  const QuadraticSurd u = surd::parse_surd(a.chain.u);
  const auto b = kasner::base_point(u, Sector::from_index(a.chain.sector ? a.chain.sector : 5));
  const auto eps = parse_list(a.eps);
  const int entries = a.entries >= 0 ? a.entries : 3;
  std::vector<std::future<odes::Bianchi9Run>> jobs;
  for (double e : eps) {
    jobs.push_back(std::async(std::launch::async, [&b, cfg = run_config(a, e, entries)] { return odes::run_bianchi9(b, cfg); }));
  }
  json seeds = json::array();
  std::string text;
  char buf[32];
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto r = jobs[i].get();
    write_trajectory_files(a, r.trajectory, i, jobs.size());
    json s = trajectory_json(r.trajectory);
    s["eps"] = eps[i];
    json visits = json::array();
    for (const auto& v : r.visits) visits.push_back(io::to_json(v));
    s["visits"] = visits;
    seeds.push_back(s);
    text += line("seed %zu: eps %s", i, g6(eps[i], buf));
    text += visits_text(r.visits, nullptr);
  }
  json j = {{"system", "bianchi9"}, {"u", u.str()}, {"seeds", seeds}};
  if (!a.report.empty()) write_file(a.report, dump(j));
  out << (a.format == "json" ? dump(j) : text);
  return 0;
}

int simulate_b2(const SimulateArgs& a, std::ostream& out) {
  if (a.chain.u.empty()) throw UsageError("simulate --system b2 needs --u");
  const QuadraticSurd u = surd::parse_surd(a.chain.u);
  odes::EndpointConfig cfg;
  cfg.eps = parse_list(a.eps).front();
  if (a.chain.sector) cfg.sector = a.chain.sector;
  auto r = odes::heteroclinic_endpoint_check(u, cfg);
  json j = io::to_json(r);
  j["u"] = u.str();
  const bool ok = r.error <= 1e-3;
  j["pass"] = ok;
  char b[4][32];
  std::string text = line("u %s -> measured %s, kasner map %s, error %s", g6(u.to_double(), b[0]),
                          g6(r.u_measured, b[1]), g6(r.u_expected, b[2]), g6(r.error, b[3]));
  if (!a.report.empty()) write_file(a.report, dump(j));
  out << (a.format == "json" ? dump(j) : text);
  return ok ? 0 : kMismatch;
}

// verify-appendix

struct VerifyArgs {
  std::string fixtures;
  std::string report;
  std::string format = "text";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  std::filesystem::path dir = a.fixtures.empty() ? fixtures::default_fixture_dir() : std::filesystem::path(a.fixtures);
  auto rep = verify::verify_appendix(dir);
  std::string text;
  char b[2][32];
  for (const auto& r : rep.rows) {
    text += line("%s  %-28s  %-30s  delta %-10s  tol %-8s  %s", r.pass ? "PASS" : "FAIL", r.table.c_str(),
                 r.row.c_str(), g6(r.delta, b[0]), g6(r.tolerance, b[1]), r.detail.c_str());
  }
  text += line("%s: %zu/%zu fixture rows", rep.pass() ? "PASS" : "FAIL", rep.passed(), rep.rows.size());
  json j = io::to_json(rep);
  if (!a.report.empty()) write_file(a.report, dump(j));
  out << (a.format == "json" ? dump(j) : text);
  return rep.pass() ? 0 : kMismatch;
}

void add_format(CLI::App* sub, std::string& format, std::vector<std::string> choices = {"text", "json"}) {
  sub->add_option("--format", format, "Output format")->capture_default_str()->check(CLI::IsMember(choices));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kasner-map dynamics, heteroclinic chains and Bianchi cosmology integrations"};
  app.name("mixmaster");
  app.require_subcommand(1);

  OrbitArgs orbit;
  auto* s_orbit = app.add_subcommand("kasner-orbit", "Iterate the Kasner map from u");
  s_orbit->add_option("--u", orbit.u, "Kasner parameter")->required();
  s_orbit->add_option("--steps", orbit.steps, "Number of iterations")->capture_default_str();
  add_format(s_orbit, orbit.format);
  s_orbit->add_option("--out", orbit.out, "Write to a file instead of stdout");

  EigenArgs eig;
  auto* s_eig = app.add_subcommand("eigenvalues", "Base point and eigenvalues for u in one or all sectors");
  s_eig->add_option("--u", eig.u, "Kasner parameter")->required();
  s_eig->add_option("--sector", eig.sector, "Sector 1..6 (default: all)")->check(CLI::Range(1, 6));
  add_format(s_eig, eig.format);
  s_eig->add_option("--out", eig.out, "Write to a file instead of stdout");

  ChainCmdArgs chain;
  auto* s_chain = app.add_subcommand("chain", "Generate a heteroclinic chain");
  add_chain_options(s_chain, chain.chain);
  add_format(s_chain, chain.format, {"text", "json", "csv"});
  s_chain->add_option("--out", chain.out, "Write to a file instead of stdout");

  ResonanceArgs res;
  auto* s_res = app.add_subcommand("resonance", "Resonance vectors and Takens verdicts along a chain");
  add_chain_options(s_res, res.chain);
  s_res->add_option("--fixtures", res.fixtures, "Fixture directory (default: MIXMASTER_FIXTURES or built-in)");
  s_res->add_option("--search", res.search, "Also list all relations up to this order")->check(CLI::Range(0, 30));
  s_res->add_option("--report", res.report, "Write the JSON report here");
  add_format(s_res, res.format);

  CllpArgs cl;
  auto* s_cllp = app.add_subcommand("cllp", "Combined linear local passage of a cycle");
  add_chain_options(s_cllp, cl.chain);
  s_cllp->add_option("--section", cl.section, "Section: auto, passage or node")->capture_default_str()
      ->check(CLI::IsMember({"auto", "passage", "node"}));
  s_cllp->add_option("--order", cl.order, "Product order: chain or sequential")->capture_default_str()
      ->check(CLI::IsMember({"chain", "sequential"}));
  s_cllp->add_option("--report", cl.report, "Write the JSON report here");
  add_format(s_cllp, cl.format);

  SimulateArgs sim;
  auto* s_sim = app.add_subcommand("simulate", "Integrate toward the singularity and compare with a chain");
  s_sim->add_option("--system", sim.system, "b6 (shadow a chain), b9 (Bianchi IX visits) or b2 (cap endpoint)")->capture_default_str()
      ->check(CLI::IsMember({"b6", "b9", "b2"}));
  add_chain_options(s_sim, sim.chain);
  s_sim->add_option("--eps", sim.eps, "Seed offset; a comma list runs several seeds concurrently")->capture_default_str();
  s_sim->add_option("--transverse", sim.transverse, "Offset of the other transition variables (default: eps)");
  s_sim->add_option("--delta", sim.delta, "Close-approach radius")->capture_default_str();
  s_sim->add_option("--entries", sim.entries, "Stop after this many new close approaches");
  s_sim->add_option("--tol", sim.tol, "Relative tolerance")->capture_default_str();
  s_sim->add_option("--span", sim.span, "Maximal time span")->capture_default_str();
  s_sim->add_flag("--project", sim.project, "Project onto the constraints after every step");
  s_sim->add_option("--stride", sim.stride, "Record every n-th step")->capture_default_str();
  s_sim->add_option("--trajectory", sim.trajectory, "Trajectory CSV");
  s_sim->add_option("--events", sim.events, "Event CSV");
  s_sim->add_option("--report", sim.report, "Write the JSON report here");
  add_format(s_sim, sim.format);

  VerifyArgs ver;
  auto* s_ver = app.add_subcommand("verify-appendix", "Recompute every transcribed fixture table");
  s_ver->add_option("--fixtures", ver.fixtures, "Fixture directory (default: MIXMASTER_FIXTURES or built-in)");
  s_ver->add_option("--report", ver.report, "Write the JSON report here");
  add_format(s_ver, ver.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (s_orbit->parsed()) return cmd_orbit(orbit, out);
    if (s_eig->parsed()) return cmd_eigen(eig, out);
    if (s_chain->parsed()) return cmd_chain(chain, out);
    if (s_res->parsed()) return cmd_resonance(res, out);
    if (s_cllp->parsed()) return cmd_cllp(cl, out);
    if (s_sim->parsed()) {
      if (sim.system == "b9") return simulate_b9(sim, out);
      if (sim.system == "b2") return simulate_b2(sim, out);
      return simulate_b6(sim, out);
    }
    if (s_ver->parsed()) return cmd_verify(ver, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv = {"mixmaster"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mixmaster::cli
