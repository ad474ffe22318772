#pragma once

#include "sstit/formula.hpp"
#include "sstit/model.hpp"

namespace sstit {

/// States an agent considers possible as endpoints of indistinguishable
/// valid histories. All members share one avail(i,.) set (Def. 3(2)).
struct KnowledgeSet {
  AgentId agent;
  StateSet states;
  friend bool operator==(const KnowledgeSet&, const KnowledgeSet&) = default;
};

/// All valid histories of the same length, pointwise ~_i-related to h.
/// Ascending lexicographic order.
std::vector<History> indistinguishable_histories(const Model& m, const History& h, AgentId i);

/// The ~_i block of q (knowledge at a length-1 history).
KnowledgeSet initial_knowledge_set(const Model& m, StateId q, AgentId i);

/// Exact successor abstraction: endpoints of one-step extensions of the
/// indistinguishable class, given the observed next state.
KnowledgeSet step_knowledge_set(const Model& m, const KnowledgeSet& ks, StateId q_next, AgentId i);

/// Truth of a propositional formula at a state.
bool prop_holds(const Model& m, StateId q, const FormulaPtr& f);

/// K_i c for propositional c: c holds at every state of the knowledge set.
/// Throws ModelError for non-propositional arguments.
bool knows_flat(const Model& m, const KnowledgeSet& ks, const FormulaPtr& c);

// Per-agent knowledge vectors, used as evaluation keys.
using KVec = std::vector<StateSet>;
KVec initial_kvec(const Model& m, StateId q);
KVec step_kvec(const Model& m, const KVec& kv, StateId q_next);
KVec history_kvec(const Model& m, const History& h);

}  // namespace sstit
