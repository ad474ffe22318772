#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sstit/ids.hpp"

namespace sstit {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full action profile, one action per agent, indexed by agent id.
struct ActionProfile {
  std::vector<ActionId> acts;
  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;
  friend auto operator<=>(const ActionProfile&, const ActionProfile&) = default;
};

/// Action assignment for a coalition: acts[i] is meaningful iff members
/// contains i (it is -1 otherwise). members may be empty.
struct CoalitionAction {
  AgentSet members;
  std::vector<ActionId> acts;

  static CoalitionAction empty(int num_agents) { return {AgentSet{}, std::vector<ActionId>(num_agents, -1)}; }
  ActionId action_of(AgentId i) const { return acts[i]; }
  void assign(AgentId i, ActionId a) {
    members.add(i);
    acts[i] = a;
  }
  bool extended_by(const ActionProfile& p) const {
    for (AgentId i : members)
      if (p.acts[i] != acts[i]) return false;
    return true;
  }
  friend bool operator==(const CoalitionAction&, const CoalitionAction&) = default;
  friend auto operator<=>(const CoalitionAction&, const CoalitionAction&) = default;
};

/// Non-empty transition-valid state sequence; position index is length-1.
struct History {
  std::vector<StateId> states;

  StateId last() const { return states.back(); }
  int position() const { return static_cast<int>(states.size()) - 1; }
  friend bool operator==(const History&, const History&) = default;
  friend auto operator<=>(const History&, const History&) = default;
};

/// Finite carrier for an eventually periodic play: prefix followed by the
/// cycle repeated forever. The cycle is non-empty.
struct Lasso {
  std::vector<StateId> prefix;
  std::vector<StateId> cycle;

  StateId at(int k) const {
    if (k < static_cast<int>(prefix.size())) return prefix[k];
    return cycle[(k - prefix.size()) % cycle.size()];
  }
  friend bool operator==(const Lasso&, const Lasso&) = default;
};

struct Diagnostic {
  std::string code;
  std::string message;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Concurrent epistemic game model over interned ids. Immutable after
/// construction; all operations on it are pure.
struct Model {
  int num_agents = 0;
  std::vector<std::string> state_names;
  std::vector<std::string> action_names;
  std::vector<std::string> prop_names;

  // avail[agent][state] -> set of available actions
  std::vector<std::vector<ActionSet>> avail;
  // trans[state]: executable action profile -> successor
  std::vector<std::map<ActionProfile, StateId>> trans;
  // indist[agent]: partition blocks as declared (singletons filled in);
  // validate_model checks partition well-formedness.
  std::vector<std::vector<StateSet>> indist;
  // labels[state] -> set of propositions
  std::vector<PropSet> labels;

  int num_states() const { return static_cast<int>(state_names.size()); }
  int num_actions() const { return static_cast<int>(action_names.size()); }
  int num_props() const { return static_cast<int>(prop_names.size()); }

  std::optional<StateId> find_state(const std::string& name) const;
  std::optional<ActionId> find_action(const std::string& name) const;
  std::optional<PropId> find_prop(const std::string& name) const;

  bool prop_holds_at(StateId q, PropId p) const { return labels[q].contains(p); }
  std::optional<StateId> step(StateId q, const ActionProfile& alpha) const;
  StateSet successors(StateId q) const;
  /// Block of q under ~_i. Requires a validated partition.
  const StateSet& block_of(AgentId i, StateId q) const;
  bool valid_history(const History& h) const;
};

/// Parses the canonical model file format. Throws ParseError on syntax
/// errors, unknown identifier references and duplicate declarations; no
/// semantic validation beyond that (see validate_model).
Model parse_model(std::string_view text);

/// One diagnostic per violated structural invariant, deterministic order.
/// Empty result means the model is a well-formed CEGM.
std::vector<Diagnostic> validate_model(const Model& m);

/// All action profiles executable at q, ascending order.
std::vector<ActionProfile> action_profiles(const Model& m, StateId q);

/// { trans(q, alpha) : alpha executable at q, alpha extends ca }.
/// Throws ModelError if ca assigns an unavailable action at q.
StateSet out_set(const Model& m, StateId q, const CoalitionAction& ca);

std::string format_profile(const Model& m, const ActionProfile& p);
std::string format_coalition_action(const Model& m, const CoalitionAction& ca);
std::string format_history(const Model& m, const History& h);

}  // namespace sstit
