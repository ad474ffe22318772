#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sstit/model.hpp"

namespace sstit {

enum class FKind { Prop, Act, And, Not, Next, Globally, Nec, Sstit, Knows };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node. Derived connectives (|, ->, <->, F, dia) are
/// desugared at construction; the AST only ever carries the nine core kinds.
struct Formula {
  FKind kind;
  std::string prop;                                       // Prop
  std::vector<std::pair<AgentId, std::string>> bindings;  // Act: (agent, action name), sorted
  AgentSet coalition;                                     // Act, Sstit
  AgentId agent = -1;                                     // Knows
  FormulaPtr lhs, rhs;
};

FormulaPtr f_prop(std::string name);
FormulaPtr f_act(std::vector<std::pair<AgentId, std::string>> bindings);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_next(FormulaPtr a);
FormulaPtr f_globally(FormulaPtr a);
FormulaPtr f_nec(FormulaPtr a);
FormulaPtr f_sstit(AgentSet coalition, FormulaPtr a);
FormulaPtr f_knows(AgentId agent, FormulaPtr a);
// sugar
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_eventually(FormulaPtr a);
FormulaPtr f_dia(FormulaPtr a);

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b);

/// Parses the canonical formula syntax. Agents are written 1-based; range
/// checks against a model happen at bind_check, not here.
FormulaPtr parse_formula(std::string_view text);

/// Inverse of parse_formula up to structural equality:
/// parse_formula(print_formula(f)) == f.
std::string print_formula(const FormulaPtr& f);

/// Checks every identifier in f against the model's symbol tables.
/// Throws ModelError on unknown propositions/actions or agents out of range.
void bind_check(const Model& m, const FormulaPtr& f);

enum class FragmentTag { Propositional, FlatKnowledge, General };

/// Propositional: built from Prop/And/Not only. FlatKnowledge: additionally
/// Knows nodes, each with a propositional argument. Everything else: General.
FragmentTag classify_condition_fragment(const FormulaPtr& f);

/// Conservative syntactic closure under which a formula is guaranteed
/// moment-determinate: Prop atoms, Knows(.), Nec(.), and boolean
/// combinations thereof. Sound, not complete.
bool is_moment_determinate_syntactic(const FormulaPtr& f);

/// Maximum nesting of temporal steps (X counts 1, G counts 1 + its body).
int temporal_depth(const FormulaPtr& f);

struct Rule {
  FormulaPtr condition;
  FormulaPtr effect;
};

struct RuleStrategy {
  AgentSet coalition;
  std::vector<Rule> rules;
};

/// Parses `strategy for {1,2}: cond => effect; ...`. Throws on empty rule
/// lists and syntax errors.
RuleStrategy parse_rules(std::string_view text);
std::string print_rules(const RuleStrategy& rs);

/// Resolves an Act atom's bindings against a model.
CoalitionAction bind_action_atom(const Model& m, const Formula& act);

}  // namespace sstit
