#pragma once

#include "sstit/eval.hpp"

namespace sstit {

/// Deterministic seeded generator (splitmix64).
struct Rng {
  std::uint64_t state;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  bool coin() { return next() & 1; }
};

struct EnumBounds {
  int max_states = 3;
  int max_agents = 2;
  int max_actions = 2;
  int max_props = 2;
  int history_depth = 2;
  int tree_depth = 2;
  int max_rules = 4;
  std::uint64_t seed = 7;
};

/// Literal reference semantics, kept free of the engine's machinery: no
/// memoization, no knowledge sets, no lasso detection, no closed forms.
/// Quantifiers range over positional profiles (see the project notes);
/// Knows enumerates valid indistinguishable histories explicitly; G and X
/// are bounded by `depth` and answer Unknown at the frontier.
Verdict oracle_eval(const Model& m, const History& h, const Profile& s, const FormulaPtr& f, int depth);

/// Seeded pseudo-random valid models, rejection-sampled against
/// validate_model; deterministic per seed.
std::vector<Model> enumerate_models(const EnumBounds& b, int count);

/// Every valid model with <= 2 states, 1 agent, the action pool {a,b} and
/// the proposition pool {p}. Deterministic order.
std::vector<Model> exhaustive_models();

/// All positional strategies for the coalition, deterministic ascending
/// order (mixed radix over (agent, state), actions ascending).
std::vector<PositionalStrategy> enumerate_strategies(const Model& m, AgentSet coalition);

/// All depth-bounded strategy trees rooted at `root` (one choice per valid
/// history of length <= depth+1 from the root), first-available positional
/// fallback. Count = product of per-history available-action counts.
std::vector<TreeStrategy> enumerate_tree_strategies(const Model& m, AgentSet coalition, StateId root,
                                                    int depth);

/// First-available positional strategy (the canonical fallback).
PositionalStrategy first_positional(const Model& m, AgentSet coalition);

/// All valid histories of length <= max_len, grouped by increasing length,
/// ascending within a length.
std::vector<History> enumerate_histories(const Model& m, int max_len);

}  // namespace sstit
