#include "sstit/epistemic.hpp"

#include <cassert>

namespace sstit {

std::vector<History> indistinguishable_histories(const Model& m, const History& h, AgentId i) {
  std::vector<History> out;
  std::vector<StateId> cur;
  auto rec = [&](auto&& self, size_t l) -> void {
    if (l == h.states.size()) {
      out.push_back(History{cur});
      return;
    }
    const StateSet& block = m.block_of(i, h.states[l]);
    for (StateId q : block) {
      if (l > 0 && !m.successors(cur.back()).contains(q)) continue;
      cur.push_back(q);
      self(self, l + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

KnowledgeSet initial_knowledge_set(const Model& m, StateId q, AgentId i) {
  return {i, m.block_of(i, q)};
}

KnowledgeSet step_knowledge_set(const Model& m, const KnowledgeSet& ks, StateId q_next, AgentId i) {
  StateSet reachable;
  for (StateId q : ks.states) reachable = reachable | m.successors(q);
  StateSet next = reachable & m.block_of(i, q_next);
  assert(!next.empty() && "q_next must extend some history in the class");
  return {i, next};
}

bool prop_holds(const Model& m, StateId q, const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Prop: {
      auto p = m.find_prop(f->prop);
      if (!p) throw ModelError("unknown proposition " + f->prop);
      return m.prop_holds_at(q, *p);
    }
    case FKind::Not:
      return !prop_holds(m, q, f->lhs);
    case FKind::And:
      return prop_holds(m, q, f->lhs) && prop_holds(m, q, f->rhs);
    default:
      throw ModelError("formula is not propositional: " + print_formula(f));
  }
}

bool knows_flat(const Model& m, const KnowledgeSet& ks, const FormulaPtr& c) {
  if (classify_condition_fragment(c) != FragmentTag::Propositional)
    throw ModelError("knows_flat requires a propositional argument: " + print_formula(c));
  for (StateId q : ks.states)
    if (!prop_holds(m, q, c)) return false;
  return true;
}

KVec initial_kvec(const Model& m, StateId q) {
  KVec kv;
  kv.reserve(m.num_agents);
  for (AgentId i = 0; i < m.num_agents; ++i) kv.push_back(m.block_of(i, q));
  return kv;
}

KVec step_kvec(const Model& m, const KVec& kv, StateId q_next) {
  KVec next;
  next.reserve(kv.size());
  for (AgentId i = 0; i < static_cast<int>(kv.size()); ++i)
    next.push_back(step_knowledge_set(m, {i, kv[i]}, q_next, i).states);
  return next;
}

KVec history_kvec(const Model& m, const History& h) {
  KVec kv = initial_kvec(m, h.states[0]);
  for (size_t l = 1; l < h.states.size(); ++l) kv = step_kvec(m, kv, h.states[l]);
  return kv;
}

}  // namespace sstit
