#pragma once

#include <variant>

#include "sstit/epistemic.hpp"
#include "sstit/model.hpp"

namespace sstit {

/// Positional (memoryless) coalition strategy: one available action per
/// coalition member and state.
struct PositionalStrategy {
  AgentSet coalition;
  std::vector<std::vector<ActionId>> table;  // [agent][state]; -1 outside the coalition

  static PositionalStrategy make(const Model& m, AgentSet coalition);
  ActionId action(AgentId i, StateId q) const { return table[i][q]; }
  void set(AgentId i, StateId q, ActionId a) { table[i][q] = a; }
  CoalitionAction coalition_action(StateId q) const;
  friend bool operator==(const PositionalStrategy&, const PositionalStrategy&) = default;
  friend auto operator<=>(const PositionalStrategy&, const PositionalStrategy&) = default;
};

/// Finite surrogate for a perfect recall strategy: explicit actions on the
/// valid histories of length <= depth+1 rooted at `root`, positional
/// fallback beyond (and for any history the node map does not cover).
struct TreeStrategy {
  AgentSet coalition;
  StateId root = 0;
  int depth = 0;
  std::map<std::vector<StateId>, CoalitionAction> nodes;
  PositionalStrategy fallback;

  CoalitionAction action(const History& h) const;
  friend bool operator==(const TreeStrategy&, const TreeStrategy&) = default;
};

enum class HoleKind { NoTrigger, Conflict, Ambiguous };

struct PartialOutcome {
  bool defined = false;
  CoalitionAction action;   // meaningful iff defined
  HoleKind hole = HoleKind::NoTrigger;
  friend bool operator==(const PartialOutcome&, const PartialOutcome&) = default;
};

/// Evaluation key of a moment-determinate condition: the current state, plus
/// the per-agent knowledge sets when any condition is epistemic.
struct EpKey {
  StateId q = 0;
  std::vector<std::uint64_t> kbits;  // empty when keys are state-only
  friend bool operator==(const EpKey&, const EpKey&) = default;
  friend auto operator<=>(const EpKey&, const EpKey&) = default;
};

/// Partial coalition strategy induced by a rule-based strategy: explicit
/// Defined/NoTrigger/Conflict/Ambiguous status per evaluation key. Holes are
/// never silently defaulted.
struct PartialStrategy {
  AgentSet coalition;
  bool epistemic_keys = false;
  std::map<EpKey, PartialOutcome> entries;

  EpKey key_for(StateId q, const KVec& kv) const;
  const PartialOutcome* find(StateId q, const KVec& kv) const;
};

/// A strategy profile: a coalition strategy for all agents.
using Profile = std::variant<PositionalStrategy, TreeStrategy>;
using AnyStrategy = std::variant<PositionalStrategy, TreeStrategy, PartialStrategy>;

AgentSet strategy_coalition(const AnyStrategy& s);
ActionProfile profile_action(const Model& m, const Profile& s, const History& h);
bool profile_is_full(const Model& m, const Profile& s);

/// s_C extends s'_C' iff C contains C' and they agree agent-wise on C'.
bool extends(const Model& m, const AnyStrategy& bigger, const AnyStrategy& smaller);

/// The unique play from q0 under a full positional profile, folded at the
/// first repeated state.
Lasso generated_play(const Model& m, StateId q0, const PositionalStrategy& profile);

/// All transition-valid extensions of h of length |h|+depth whose steps obey
/// the strategy where it constrains them (holes of a partial strategy leave
/// the step unconstrained). Ascending order.
std::vector<History> out_plays_frontier(const Model& m, const History& h, const AnyStrategy& s, int depth);

/// out_plays(h, s1) == out_plays(h, s2), decided exactly by comparing
/// successor constraints over all keys reachable along common plays.
bool play_equivalent(const Model& m, const History& h, const AnyStrategy& s1, const AnyStrategy& s2);

/// Uniformity of agent i's part: indistinguishable histories get equal
/// actions. Positional strategies need only the state-pair check.
bool is_uniform(const Model& m, const PositionalStrategy& s, AgentId i);
bool is_uniform(const Model& m, const TreeStrategy& s, AgentId i, int depth);

/// Parses `positional for {1,2}: q0 -> a c; ...` against a model.
PositionalStrategy parse_positional(const Model& m, std::string_view text);
std::string print_positional(const Model& m, const PositionalStrategy& s);

}  // namespace sstit
