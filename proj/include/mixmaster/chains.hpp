// Heteroclinic chains between Kasner base points of the Bianchi VI*_{-1/9}
// system: admissible transitions, branch policies, passages and cycles.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mixmaster/kasner.hpp"

namespace mixmaster::chains {

using kasner::BasePoint;
using kasner::QuadraticSurd;
using kasner::Sector;
using kasner::TransitionVariable;

class ChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TransitionKind { CurvatureNMinus, FrameSigmaCross, FrameSigmaTwo };

TransitionVariable variable_of(TransitionKind k);
TransitionKind kind_for(TransitionVariable v);
std::string to_string(TransitionKind k);
/// One-letter code used in compact listings: n, c or t.
char code(TransitionKind k);

struct Transition {
  TransitionKind kind;
  Sector next;
  QuadraticSurd next_u;
};

/// Moves whose variable grows toward the singularity at b. When there are
/// two, the Sigma_2 frame transition comes first ("left").
/// Throws ChainError at u = 1.
std::vector<Transition> admissible_transitions(const BasePoint& b);

enum class Branch { Left, Right };

class BranchPolicy {
 public:
  BranchPolicy() = default;
  BranchPolicy(std::vector<Branch> decisions, bool cyclic = true);

  /// "left", "right", "classic", "advanced", "3-cycle", or a comma list of
  /// L/R/left/right. A trailing "!" makes the list non-cyclic.
  static BranchPolicy parse(std::string_view text);
  static BranchPolicy classic();
  static BranchPolicy advanced();

  const std::vector<Branch>& decisions() const { return decisions_; }
  bool cyclic() const { return cyclic_; }

  /// Decision number i (0-based). Throws ChainError when a non-cyclic policy
  /// runs out.
  Branch at(std::size_t i) const;

 private:
  std::vector<Branch> decisions_ = {Branch::Left};
  bool cyclic_ = true;
};

enum class PassageLabel { A, B1, B2, C1, C2, D, E };

struct PassageType {
  PassageLabel label;
  std::vector<int> sector_path;
};

std::string to_string(PassageLabel l);
const std::vector<PassageType>& passage_table();
const PassageType& passage(PassageLabel l);

struct HeteroclinicChain {
  std::vector<BasePoint> nodes;
  std::vector<TransitionKind> transitions;
  std::optional<std::size_t> period;
  /// Closed chains have as many transitions as nodes; the last one returns
  /// to nodes.front().
  bool closed = false;

  std::vector<int> sectors() const;
  /// The node reached by transition i (wraps for closed chains).
  const BasePoint& after(std::size_t i) const;
};

HeteroclinicChain generate_chain(const QuadraticSurd& u0, Sector s0, const BranchPolicy& policy,
                                 std::size_t steps);

std::optional<std::size_t> detect_cycle(const HeteroclinicChain& chain);

/// Cuts a detected cycle down to one period. Throws ChainError if the chain
/// does not close.
HeteroclinicChain close_cycle(const HeteroclinicChain& chain);

struct Passage {
  PassageLabel label;
  std::size_t first;  // index of the starting node
  std::size_t length; // number of transitions
};

std::vector<Passage> segment_passages(const HeteroclinicChain& chain);
std::optional<std::vector<Passage>> try_segment_passages(const HeteroclinicChain& chain);
std::vector<PassageType> decompose_passages(const HeteroclinicChain& chain);

/// "A A B2 ..." form.
std::string passage_string(const std::vector<Passage>& passages);

/// Named cycles from the analysis: classic18, advanced18, 3-cycle.
HeteroclinicChain named_cycle(std::string_view name);

}  // namespace mixmaster::chains
