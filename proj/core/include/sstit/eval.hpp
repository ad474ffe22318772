#pragma once

#include "sstit/strategy.hpp"

namespace sstit {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Truth { False, True, Unknown };

struct Verdict {
  Truth truth;
  std::string reason;  // set for Unknown

  bool is_true() const { return truth == Truth::True; }
  bool is_false() const { return truth == Truth::False; }
  bool decisive() const { return truth != Truth::Unknown; }
  friend bool operator==(const Verdict& a, const Verdict& b) { return a.truth == b.truth; }
};

/// A validated evaluation tuple <k, lambda, s>: the history fixes position
/// k = |history|-1, the profile generates the future, and the knowledge
/// vector caches per-agent knowledge sets for the history.
struct EvalPoint {
  const Model* model = nullptr;
  History history;
  Profile profile;
  KVec kvec;
  bool past_consistent = false;
};

/// Builds a point, computing knowledge sets and the past-consistency flag
/// (the history is generated by the profile from history[0]). Throws
/// EvalError if require_past_consistent is set and the flag is false.
EvalPoint make_point(const Model& m, History h, Profile s, bool require_past_consistent = false);

/// True iff every Knows subformula has a propositional argument (the
/// fragment eval_exact decides exactly).
bool exact_fragment_ok(const FormulaPtr& f);

/// Exact verdict under the documented positional-quantifier semantics:
/// box and [C sstit] range over positional profiles; G is decided by lasso
/// detection on (state, knowledge vector, profile) configurations; Knows is
/// restricted to flat arguments. Throws EvalError outside the fragment or
/// for non-positional profiles.
bool eval_exact(const EvalPoint& pt, const FormulaPtr& f);

/// Horizon-bounded three-valued evaluation. Supports tree-strategy points
/// and non-flat Knows (by explicit enumeration of indistinguishable
/// histories and quantified positional profiles). Never contradicts
/// eval_exact on the exact fragment; Unknown marks horizon limits.
Verdict eval_bounded(const EvalPoint& pt, const FormulaPtr& f, int horizon);

/// [C acc]RS := [C sstit] AND_n (c_n -> [C sstit] e_n), closed form for
/// moment-determinate conditions and action-atom effects; generic evaluation
/// for non-atomic effects.
bool eval_acc(const EvalPoint& pt, const RuleStrategy& rs);

/// [C perf]RS := [C sstit] G [C acc]RS, closed form: acc holds at every key
/// reachable from the point inside out_plays(history, s_C).
bool eval_perf(const EvalPoint& pt, const RuleStrategy& rs);

/// The defining formulas, for generic cross-evaluation.
FormulaPtr acc_formula(const RuleStrategy& rs);
FormulaPtr perf_formula(const RuleStrategy& rs);

// --- rule/condition machinery shared with the representation pipeline ---

/// Truth of a moment-determinate condition at a key (state + knowledge
/// vector). Handles Prop/Not/And, flat Knows, and Nec over the same closure
/// (box is transparent on moment-determinate arguments). Throws otherwise.
bool condition_at_key(const Model& m, const FormulaPtr& c, StateId q, const KVec& kv);

/// True iff every condition is key-evaluable: syntactically
/// moment-determinate with flat knowledge subformulas.
bool conditions_key_evaluable(const RuleStrategy& rs);

/// True iff some condition mentions knowledge (keys then carry kvec).
bool conditions_epistemic(const RuleStrategy& rs);

/// True iff every effect is an action atom binding exactly rs.coalition.
bool effects_atomic(const RuleStrategy& rs);

struct RuleAnalysis {
  std::vector<int> triggered;              // indices of triggered rules
  std::vector<CoalitionAction> compliant;  // available C-actions obeying all triggered effects
};
RuleAnalysis analyze_rules(const Model& m, const RuleStrategy& rs, StateId q, const KVec& kv);

// --- closed-form composite certificates (all-plays key reachability) ---

/// box G OR_n c_n from state q: every key reachable from (q, initial
/// knowledge) along any valid play triggers some condition.
bool complete_from(const Model& m, const RuleStrategy& rs, StateId q);
bool complete_from_history(const Model& m, const RuleStrategy& rs, const History& h);

/// G dia [C acc]RS from h: every reachable key admits a compliant action.
bool able_from_history(const Model& m, const RuleStrategy& rs, const History& h);

/// K_i box G OR_n c_n at h: completeness from every indistinguishable history.
bool knows_complete(const Model& m, const RuleStrategy& rs, const History& h, AgentId i);

/// K_i G dia [i acc]RS at h: henceforth-ability from every indistinguishable
/// history.
bool knows_able(const Model& m, const RuleStrategy& rs, const History& h, AgentId i);

}  // namespace sstit
