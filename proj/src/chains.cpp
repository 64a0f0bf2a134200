#include "mixmaster/chains.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace mixmaster::chains {

namespace {

using kasner::EigenvalueSet;

// Frame transitions swap two exponent slots; curvature moves follow the
// Kasner map.
int frame_target(TransitionKind k, int sector) {
  static const std::map<int, int> cross = {{1, 6}, {2, 5}, {3, 4}};
  static const std::map<int, int> two = {{1, 2}, {5, 4}, {6, 3}};
  const auto& table = k == TransitionKind::FrameSigmaCross ? cross : two;
  auto it = table.find(sector);
  if (it == table.end()) throw ChainError("no frame transition from sector " + std::to_string(sector));
  return it->second;
}

int curvature_target(int sector, bool era_continues) {
  if (sector == 4) return era_continues ? 3 : 2;
  if (sector == 5) return era_continues ? 6 : 1;
  throw ChainError("no curvature transition from sector " + std::to_string(sector));
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

TransitionVariable variable_of(TransitionKind k) {
  switch (k) {
    case TransitionKind::CurvatureNMinus: return TransitionVariable::NMinus;
    case TransitionKind::FrameSigmaCross: return TransitionVariable::SigmaCross;
    case TransitionKind::FrameSigmaTwo: return TransitionVariable::SigmaTwo;
  }
  return TransitionVariable::NMinus;
}

TransitionKind kind_for(TransitionVariable v) {
  switch (v) {
    case TransitionVariable::NMinus: return TransitionKind::CurvatureNMinus;
    case TransitionVariable::SigmaCross: return TransitionKind::FrameSigmaCross;
    case TransitionVariable::SigmaTwo: return TransitionKind::FrameSigmaTwo;
  }
  return TransitionKind::CurvatureNMinus;
}

std::string to_string(TransitionKind k) {
  switch (k) {
    case TransitionKind::CurvatureNMinus: return "curvature";
    case TransitionKind::FrameSigmaCross: return "frame_cross";
    case TransitionKind::FrameSigmaTwo: return "frame_two";
  }
  return "?";
}

char code(TransitionKind k) {
  switch (k) {
    case TransitionKind::CurvatureNMinus: return 'n';
    case TransitionKind::FrameSigmaCross: return 'c';
    case TransitionKind::FrameSigmaTwo: return 't';
  }
  return '?';
}

std::vector<Transition> admissible_transitions(const BasePoint& b) {
  if (b.u == QuadraticSurd(1)) {
    throw ChainError("base point in sector " + std::to_string(b.sector.index()) + " lies on a sector boundary (u = 1)");
  }
  EigenvalueSet e = kasner::eigenvalues_at(b);
  std::vector<Transition> out;
  const int s = b.sector.index();
  if (e.unstable(TransitionVariable::SigmaTwo)) {
    out.push_back({TransitionKind::FrameSigmaTwo, Sector::from_index(frame_target(TransitionKind::FrameSigmaTwo, s)), b.u});
  }
  if (e.unstable(TransitionVariable::SigmaCross)) {
    out.push_back({TransitionKind::FrameSigmaCross, Sector::from_index(frame_target(TransitionKind::FrameSigmaCross, s)), b.u});
  }
  if (e.unstable(TransitionVariable::NMinus)) {
    auto image = kasner::kasner_map(b.u);
    if (std::holds_alternative<kasner::Taub>(image)) throw ChainError("curvature transition reaches a Taub point");
    bool era_continues = b.u >= QuadraticSurd(2);
    out.push_back({TransitionKind::CurvatureNMinus, Sector::from_index(curvature_target(s, era_continues)),
                   std::get<QuadraticSurd>(image)});
  }
  return out;
}

BranchPolicy::BranchPolicy(std::vector<Branch> decisions, bool cyclic)
    : decisions_(std::move(decisions)), cyclic_(cyclic) {
  if (decisions_.empty() && cyclic_) throw ChainError("cyclic branch policy needs at least one decision");
}

BranchPolicy BranchPolicy::classic() { return BranchPolicy({Branch::Left}); }
BranchPolicy BranchPolicy::advanced() { return BranchPolicy({Branch::Right, Branch::Left}); }

BranchPolicy BranchPolicy::parse(std::string_view text) {
  std::string s = lower(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  bool cyclic = true;
  if (!s.empty() && s.back() == '!') {
    cyclic = false;
    s.pop_back();
  }
  if (s == "classic") return classic();
  if (s == "advanced" || s == "3-cycle" || s == "3cycle") return advanced();
  std::vector<Branch> decisions;
  std::size_t pos = 0;
  while (pos <= s.size() && !s.empty()) {
    std::size_t comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item == "l" || item == "left") {
      decisions.push_back(Branch::Left);
    } else if (item == "r" || item == "right") {
      decisions.push_back(Branch::Right);
    } else {
      throw ChainError("unknown branch decision '" + item + "' in policy '" + std::string(text) + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (decisions.empty() && cyclic) throw ChainError("empty branch policy");
  return BranchPolicy(std::move(decisions), cyclic);
}

Branch BranchPolicy::at(std::size_t i) const {
  if (i < decisions_.size()) return decisions_[i];
  if (!cyclic_ || decisions_.empty()) throw ChainError("branch policy exhausted at choice " + std::to_string(i + 1));
  return decisions_[i % decisions_.size()];
}

std::string to_string(PassageLabel l) {
  switch (l) {
    case PassageLabel::A: return "A";
    case PassageLabel::B1: return "B1";
    case PassageLabel::B2: return "B2";
    case PassageLabel::C1: return "C1";
    case PassageLabel::C2: return "C2";
    case PassageLabel::D: return "D";
    case PassageLabel::E: return "E";
  }
  return "?";
}

const std::vector<PassageType>& passage_table() {
  static const std::vector<PassageType> table = {
      {PassageLabel::A, {4, 3, 4}},
      {PassageLabel::B1, {4, 2, 5}},
      {PassageLabel::B2, {4, 2, 5, 4}},
      {PassageLabel::C1, {5, 1, 2, 5}},
      {PassageLabel::C2, {5, 1, 2, 5, 4}},
      {PassageLabel::D, {5, 6, 3, 4}},
      {PassageLabel::E, {5, 1, 6, 3, 4}},
  };
  return table;
}

const PassageType& passage(PassageLabel l) {
  for (const auto& p : passage_table()) {
    if (p.label == l) return p;
  }
  throw ChainError("unknown passage label");
}

std::vector<int> HeteroclinicChain::sectors() const {
  std::vector<int> out;
  out.reserve(nodes.size() + 1);
  for (const auto& n : nodes) out.push_back(n.sector.index());
  if (closed && !nodes.empty()) out.push_back(nodes.front().sector.index());
  return out;
}

const BasePoint& HeteroclinicChain::after(std::size_t i) const {
  if (i + 1 < nodes.size()) return nodes[i + 1];
  if (closed && i + 1 == nodes.size()) return nodes.front();
  throw ChainError("transition index out of range");
}

HeteroclinicChain generate_chain(const QuadraticSurd& u0, Sector s0, const BranchPolicy& policy,
                                 std::size_t steps) {
  HeteroclinicChain chain;
  chain.nodes.push_back(kasner::base_point(u0, s0));
  std::size_t choices = 0;
  for (std::size_t step = 0; step < steps; ++step) {
    const BasePoint& here = chain.nodes.back();
    auto options = admissible_transitions(here);
    if (options.empty()) throw ChainError("no admissible transition from sector " + std::to_string(here.sector.index()));
    const Transition* pick = &options.front();
    if (options.size() > 1) {
      Branch b = policy.at(choices++);
      pick = b == Branch::Left ? &options[0] : &options[1];
    }
    if (pick->next_u == QuadraticSurd(1)) {
      throw ChainError("chain reaches the sector boundary u = 1 after " + std::to_string(step + 1) + " steps");
    }
    chain.transitions.push_back(pick->kind);
    chain.nodes.push_back(kasner::base_point(pick->next_u, pick->next));
  }
  chain.period = detect_cycle(chain);
  return chain;
}

std::optional<std::size_t> detect_cycle(const HeteroclinicChain& chain) {
  if (chain.closed) return chain.nodes.size();
  const auto& n = chain.nodes;
  auto same = [](const BasePoint& a, const BasePoint& b) { return a.sector == b.sector && a.u == b.u; };
  for (std::size_t p = 1; p < n.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < n.size() && ok; ++i) ok = same(n[i], n[i + p]);
    if (ok) return p;
  }
  return std::nullopt;
}

HeteroclinicChain close_cycle(const HeteroclinicChain& chain) {
  if (chain.closed) return chain;
  auto p = detect_cycle(chain);
  if (!p) throw ChainError("chain does not close into a cycle");
  HeteroclinicChain out;
  out.nodes.assign(chain.nodes.begin(), chain.nodes.begin() + static_cast<std::ptrdiff_t>(*p));
  out.transitions.assign(chain.transitions.begin(), chain.transitions.begin() + static_cast<std::ptrdiff_t>(*p));
  out.period = p;
  out.closed = true;
  return out;
}

std::optional<std::vector<Passage>> try_segment_passages(const HeteroclinicChain& chain) {
  std::vector<int> s = chain.sectors();
  if (s.empty() || (s.front() != 4 && s.front() != 5)) return std::nullopt;
  std::vector<const PassageType*> order;
  for (const auto& p : passage_table()) order.push_back(&p);
  std::stable_sort(order.begin(), order.end(),
                   [](const PassageType* a, const PassageType* b) { return a->sector_path.size() > b->sector_path.size(); });
  std::vector<Passage> out;
  std::size_t i = 0;
  while (i + 1 < s.size()) {
    const PassageType* match = nullptr;
    for (const auto* p : order) {
      const auto& path = p->sector_path;
      if (i + path.size() > s.size()) continue;
      if (std::equal(path.begin(), path.end(), s.begin() + static_cast<std::ptrdiff_t>(i))) {
        match = p;
        break;
      }
    }
    if (!match) return std::nullopt;
    out.push_back({match->label, i, match->sector_path.size() - 1});
    i += match->sector_path.size() - 1;
  }
  return out;
}

std::vector<Passage> segment_passages(const HeteroclinicChain& chain) {
  auto out = try_segment_passages(chain);
  if (!out) throw ChainError("sector sequence cannot be segmented into passages");
  return *out;
}

std::vector<PassageType> decompose_passages(const HeteroclinicChain& chain) {
  std::vector<PassageType> out;
  for (const auto& p : segment_passages(chain)) out.push_back(passage(p.label));
  return out;
}

std::string passage_string(const std::vector<Passage>& passages) {
  std::string out;
  for (const auto& p : passages) {
    if (!out.empty()) out += " ";
    out += to_string(p.label);
  }
  return out;
}

HeteroclinicChain named_cycle(std::string_view name) {
  std::string n = lower(name);
  surd::PeriodicCF tail{{}, {3, 5}};
  if (n == "classic18" || n == "classic") {
    return generate_chain(surd::cf_to_surd(tail), Sector::from_index(4), BranchPolicy::classic(), 18);
  }
  if (n == "advanced18" || n == "advanced") {
    return generate_chain(surd::cf_to_surd(tail), Sector::from_index(5), BranchPolicy::advanced(), 18);
  }
  if (n == "3-cycle" || n == "3cycle" || n == "three") {
    return generate_chain(surd::cf_to_surd({{}, {1}}), Sector::from_index(5), BranchPolicy::advanced(), 3);
  }
  throw ChainError("unknown cycle '" + std::string(name) + "' (expected classic18, advanced18 or 3-cycle)");
}

}  // namespace mixmaster::chains
