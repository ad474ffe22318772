#include "sstit/eval.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace sstit {

namespace {

std::vector<std::uint64_t> kbits(const KVec& kv) {
  std::vector<std::uint64_t> out;
  out.reserve(kv.size());
  for (const StateSet& s : kv) out.push_back(s.bits());
  return out;
}

constexpr long kProfileLimit = 200000;

// All flattened positional tables (agent-major, [i*S+q]) where the rows of
// `agents` run over available actions and every other cell is -1.
std::vector<std::vector<ActionId>> all_tables(const Model& m, AgentSet agents) {
  int S = m.num_states();
  std::vector<std::pair<AgentId, StateId>> cells;
  long count = 1;
  for (AgentId i : agents)
    for (StateId q = 0; q < S; ++q) {
      cells.emplace_back(i, q);
      count *= std::max(1, m.avail[i][q].count());
      if (count > kProfileLimit) throw EvalError("too many positional strategies to quantify over");
    }
  std::vector<std::vector<ActionId>> out;
  std::vector<ActionId> flat(static_cast<size_t>(m.num_agents) * S, -1);
  auto rec = [&](auto&& self, size_t c) -> void {
    if (c == cells.size()) {
      out.push_back(flat);
      return;
    }
    auto [i, q] = cells[c];
    if (m.avail[i][q].empty()) return;  // no strategy exists on invalid models
    for (ActionId a : m.avail[i][q]) {
      flat[static_cast<size_t>(i) * S + q] = a;
      self(self, c + 1);
    }
    flat[static_cast<size_t>(i) * S + q] = -1;
  };
  rec(rec, 0);
  return out;
}

CoalitionAction project(const Model& m, const ActionProfile& alpha, AgentSet c) {
  CoalitionAction ca = CoalitionAction::empty(m.num_agents);
  for (AgentId i : c) ca.assign(i, alpha.acts[i]);
  return ca;
}

// --------------------------------------------------------------------------
// exact mode

class ExactEvaluator {
public:
  explicit ExactEvaluator(const Model& m) : m_(m) {}

  int intern(const std::vector<ActionId>& flat) {
    auto [it, fresh] = ids_.emplace(flat, static_cast<int>(tables_.size()));
    if (fresh) tables_.push_back(flat);
    return it->second;
  }

  int intern_positional(const PositionalStrategy& s) {
    int S = m_.num_states();
    std::vector<ActionId> flat(static_cast<size_t>(m_.num_agents) * S, -1);
    for (AgentId i = 0; i < m_.num_agents; ++i)
      for (StateId q = 0; q < S; ++q) flat[static_cast<size_t>(i) * S + q] = s.table[i][q];
    return intern(flat);
  }

  bool eval(StateId q, const KVec& kv, int pid, const Formula* f) {
    Key key{q, kbits(kv), pid, f};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = compute(q, kv, pid, f);
    memo_.emplace(std::move(key), result);
    return result;
  }

  void retain(FormulaPtr f) { retained_.push_back(std::move(f)); }

private:
  struct Key {
    StateId q;
    std::vector<std::uint64_t> kb;
    int pid;
    const Formula* f;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  ActionId act_of(int pid, AgentId i, StateId q) const {
    return tables_[pid][static_cast<size_t>(i) * m_.num_states() + q];
  }

  const std::vector<int>& all_profiles() {
    if (all_.empty()) {
      for (const auto& flat : all_tables(m_, AgentSet::range(m_.num_agents))) all_.push_back(intern(flat));
    }
    return all_;
  }

  // positional profiles agreeing with pid on the coalition's rows
  const std::vector<int>& extensions_of(int pid, AgentSet c) {
    std::vector<ActionId> restriction;
    for (AgentId i : c)
      for (StateId q = 0; q < m_.num_states(); ++q) restriction.push_back(act_of(pid, i, q));
    auto key = std::make_pair(c, std::move(restriction));
    auto it = ext_cache_.find(key);
    if (it != ext_cache_.end()) return it->second;
    std::vector<int> ids;
    for (int cand : all_profiles()) {
      bool ok = true;
      for (AgentId i : c) {
        for (StateId q = 0; q < m_.num_states() && ok; ++q)
          if (act_of(cand, i, q) != act_of(pid, i, q)) ok = false;
        if (!ok) break;
      }
      if (ok) ids.push_back(cand);
    }
    return ext_cache_.emplace(std::move(key), std::move(ids)).first->second;
  }

  std::pair<StateId, KVec> step_config(StateId q, const KVec& kv, int pid) {
    ActionProfile alpha;
    alpha.acts.resize(m_.num_agents);
    for (AgentId i = 0; i < m_.num_agents; ++i) alpha.acts[i] = act_of(pid, i, q);
    auto next = m_.step(q, alpha);
    if (!next)
      throw EvalError("no transition from " + m_.state_names[q] + " under " + format_profile(m_, alpha));
    return {*next, step_kvec(m_, kv, *next)};
  }

  const CoalitionAction& atom_action(const Formula* f) {
    auto it = atom_cache_.find(f);
    if (it != atom_cache_.end()) return it->second;
    return atom_cache_.emplace(f, bind_action_atom(m_, *f)).first->second;
  }

  bool compute(StateId q, const KVec& kv, int pid, const Formula* f) {
    switch (f->kind) {
      case FKind::Prop: {
        auto p = m_.find_prop(f->prop);
        if (!p) throw ModelError("unknown proposition " + f->prop);
        return m_.prop_holds_at(q, *p);
      }
      case FKind::Act: {
        const CoalitionAction& ca = atom_action(f);
        for (AgentId i : ca.members)
          if (act_of(pid, i, q) != ca.acts[i]) return false;
        return true;
      }
      case FKind::And:
        return eval(q, kv, pid, f->lhs.get()) && eval(q, kv, pid, f->rhs.get());
      case FKind::Not:
        return !eval(q, kv, pid, f->lhs.get());
      case FKind::Next: {
        auto [q2, kv2] = step_config(q, kv, pid);
        return eval(q2, kv2, pid, f->lhs.get());
      }
      case FKind::Globally: {
        StateId cq = q;
        KVec ckv = kv;
        std::set<std::pair<StateId, std::vector<std::uint64_t>>> seen;
        while (seen.emplace(cq, kbits(ckv)).second) {
          if (!eval(cq, ckv, pid, f->lhs.get())) return false;
          auto [nq, nkv] = step_config(cq, ckv, pid);
          cq = nq;
          ckv = std::move(nkv);
        }
        return true;
      }
      case FKind::Nec: {
        for (int pid2 : all_profiles())
          if (!eval(q, kv, pid2, f->lhs.get())) return false;
        return true;
      }
      case FKind::Sstit: {
        for (int pid2 : extensions_of(pid, f->coalition))
          if (!eval(q, kv, pid2, f->lhs.get())) return false;
        return true;
      }
      case FKind::Knows:
        return knows_flat(m_, KnowledgeSet{f->agent, kv[f->agent]}, f->lhs);
    }
    throw EvalError("unreachable formula kind");
  }

  const Model& m_;
  std::map<std::vector<ActionId>, int> ids_;
  std::vector<std::vector<ActionId>> tables_;
  std::vector<int> all_;
  std::map<std::pair<AgentSet, std::vector<ActionId>>, std::vector<int>> ext_cache_;
  std::map<Key, bool> memo_;
  std::map<const Formula*, CoalitionAction> atom_cache_;
  std::vector<FormulaPtr> retained_;
};

}  // namespace

EvalPoint make_point(const Model& m, History h, Profile s, bool require_past_consistent) {
  if (!m.valid_history(h)) throw EvalError("invalid history: " + format_history(m, h));
  if (!profile_is_full(m, s)) throw EvalError("profile must be a strategy for all agents");
  if (const auto* pos = std::get_if<PositionalStrategy>(&s)) {
    for (AgentId i = 0; i < m.num_agents; ++i)
      for (StateId q = 0; q < m.num_states(); ++q)
        if (pos->table[i][q] < 0 || !m.avail[i][q].contains(pos->table[i][q]))
          throw EvalError("profile assigns no available action to agent " + std::to_string(i + 1) + " at " +
                          m.state_names[q]);
  }
  EvalPoint pt;
  pt.model = &m;
  pt.kvec = history_kvec(m, h);
  pt.past_consistent = true;
  for (size_t l = 0; l + 1 < h.states.size(); ++l) {
    History prefix{std::vector<StateId>(h.states.begin(), h.states.begin() + l + 1)};
    auto next = m.step(h.states[l], profile_action(m, s, prefix));
    if (!next || *next != h.states[l + 1]) {
      pt.past_consistent = false;
      break;
    }
  }
  if (require_past_consistent && !pt.past_consistent)
    throw EvalError("history " + format_history(m, h) + " is not generated by the profile");
  pt.history = std::move(h);
  pt.profile = std::move(s);
  return pt;
}

bool exact_fragment_ok(const FormulaPtr& f) {
  if (!f) return true;
  if (f->kind == FKind::Knows)
    return classify_condition_fragment(f->lhs) == FragmentTag::Propositional;
  return exact_fragment_ok(f->lhs) && exact_fragment_ok(f->rhs);
}

bool eval_exact(const EvalPoint& pt, const FormulaPtr& f) {
  const Model& m = *pt.model;
  const auto* pos = std::get_if<PositionalStrategy>(&pt.profile);
  if (!pos) throw EvalError("exact mode requires a positional profile");
  if (!exact_fragment_ok(f))
    throw EvalError("formula outside the exact fragment (non-flat knowledge): " + print_formula(f));
  bind_check(m, f);
  ExactEvaluator ev(m);
  ev.retain(f);
  return ev.eval(pt.history.last(), pt.kvec, ev.intern_positional(*pos), f.get());
}

// --------------------------------------------------------------------------
// bounded mode

namespace {

Verdict v_true() { return {Truth::True, ""}; }
Verdict v_false() { return {Truth::False, ""}; }
Verdict v_unknown(std::string why) { return {Truth::Unknown, std::move(why)}; }

class BoundedEvaluator {
public:
  BoundedEvaluator(const Model& m) : m_(m) {}

  struct BProfile {
    const TreeStrategy* tree = nullptr;  // supplies actions for tree_agents
    AgentSet tree_agents;
    std::vector<ActionId> pos;  // flattened rows for everyone else
  };

  ActionProfile action_at(const BProfile& bp, const History& h) const {
    ActionProfile alpha;
    alpha.acts.assign(m_.num_agents, -1);
    CoalitionAction tree_part = bp.tree ? bp.tree->action(h) : CoalitionAction::empty(m_.num_agents);
    for (AgentId i = 0; i < m_.num_agents; ++i)
      alpha.acts[i] = bp.tree_agents.contains(i) ? tree_part.acts[i]
                                                 : bp.pos[static_cast<size_t>(i) * m_.num_states() + h.last()];
    return alpha;
  }

  Verdict eval(const History& h, const BProfile& bp, const KVec& kv, const Formula* f, int left) {
    switch (f->kind) {
      case FKind::Prop: {
        auto p = m_.find_prop(f->prop);
        if (!p) throw ModelError("unknown proposition " + f->prop);
        return m_.prop_holds_at(h.last(), *p) ? v_true() : v_false();
      }
      case FKind::Act: {
        CoalitionAction ca = bind_action_atom(m_, *f);
        ActionProfile alpha = action_at(bp, h);
        for (AgentId i : ca.members)
          if (alpha.acts[i] != ca.acts[i]) return v_false();
        return v_true();
      }
      case FKind::Not: {
        Verdict v = eval(h, bp, kv, f->lhs.get(), left);
        if (!v.decisive()) return v;
        return v.is_true() ? v_false() : v_true();
      }
      case FKind::And: {
        Verdict a = eval(h, bp, kv, f->lhs.get(), left);
        if (a.is_false()) return v_false();
        Verdict b = eval(h, bp, kv, f->rhs.get(), left);
        if (b.is_false()) return v_false();
        if (!a.decisive()) return a;
        if (!b.decisive()) return b;
        return v_true();
      }
      case FKind::Next: {
        if (left <= 0) return v_unknown("horizon reached at X");
        auto [h2, kv2] = step(h, bp, kv);
        return eval(h2, bp, kv2, f->lhs.get(), left - 1);
      }
      case FKind::Globally: {
        bool lasso = bp.tree == nullptr && exact_fragment_ok_raw(f->lhs.get());
        History ch = h;
        KVec ckv = kv;
        std::set<std::pair<StateId, std::vector<std::uint64_t>>> seen;
        bool any_unknown = false;
        for (int j = 0;; ++j) {
          if (lasso && !any_unknown && !seen.emplace(ch.last(), kbits(ckv)).second)
            return v_true();  // configuration orbit closed with the body true throughout
          if (j > left) break;
          Verdict v = eval(ch, bp, ckv, f->lhs.get(), left - j);
          if (v.is_false()) return v_false();
          if (!v.decisive()) any_unknown = true;
          auto [nh, nkv] = step(ch, bp, ckv);
          ch = std::move(nh);
          ckv = std::move(nkv);
        }
        return v_unknown("horizon reached at G");
      }
      case FKind::Nec: {
        Verdict out = v_true();
        for (const auto& flat : quantified_tables()) {
          BProfile q{nullptr, AgentSet{}, flat};
          Verdict v = eval(h, q, kv, f->lhs.get(), left);
          if (v.is_false()) return v_false();
          if (!v.decisive()) out = v;
        }
        return out;
      }
      case FKind::Sstit: {
        Verdict out = v_true();
        for (const auto& flat : quantified_tables()) {
          BProfile q;
          q.tree = bp.tree;
          q.tree_agents = bp.tree_agents & f->coalition;
          q.pos = flat;
          // coalition members with positional rows keep the current rows
          for (AgentId i : f->coalition.minus(q.tree_agents))
            for (StateId s = 0; s < m_.num_states(); ++s)
              q.pos[static_cast<size_t>(i) * m_.num_states() + s] =
                  bp.pos[static_cast<size_t>(i) * m_.num_states() + s];
          Verdict v = eval(h, q, kv, f->lhs.get(), left);
          if (v.is_false()) return v_false();
          if (!v.decisive()) out = v;
        }
        return out;
      }
      case FKind::Knows: {
        if (classify_condition_fragment(f->lhs) == FragmentTag::Propositional)
          return knows_flat(m_, KnowledgeSet{f->agent, kv[f->agent]}, f->lhs) ? v_true() : v_false();
        Verdict out = v_true();
        for (const History& h2 : indistinguishable_histories(m_, h, f->agent)) {
          KVec kv2 = history_kvec(m_, h2);
          for (const auto& flat : quantified_tables()) {
            BProfile q{nullptr, AgentSet{}, flat};
            Verdict v = eval(h2, q, kv2, f->lhs.get(), left);
            if (v.is_false()) return v_false();
            if (!v.decisive()) out = v;
          }
        }
        return out;
      }
    }
    throw EvalError("unreachable formula kind");
  }

private:
  static bool exact_fragment_ok_raw(const Formula* f) {
    if (!f) return true;
    if (f->kind == FKind::Knows) {
      FormulaPtr arg = f->lhs;
      return classify_condition_fragment(arg) == FragmentTag::Propositional;
    }
    return exact_fragment_ok_raw(f->lhs.get()) && exact_fragment_ok_raw(f->rhs.get());
  }

  std::pair<History, KVec> step(const History& h, const BProfile& bp, const KVec& kv) {
    ActionProfile alpha = action_at(bp, h);
    auto next = m_.step(h.last(), alpha);
    if (!next)
      throw EvalError("no transition from " + m_.state_names[h.last()] + " under " + format_profile(m_, alpha));
    History h2 = h;
    h2.states.push_back(*next);
    return {std::move(h2), step_kvec(m_, kv, *next)};
  }

  const std::vector<std::vector<ActionId>>& quantified_tables() {
    if (tables_.empty()) tables_ = all_tables(m_, AgentSet::range(m_.num_agents));
    return tables_;
  }

  const Model& m_;
  std::vector<std::vector<ActionId>> tables_;
};

}  // namespace

Verdict eval_bounded(const EvalPoint& pt, const FormulaPtr& f, int horizon) {
  const Model& m = *pt.model;
  bind_check(m, f);
  if (temporal_depth(f) > horizon)
    return v_unknown("horizon " + std::to_string(horizon) + " below temporal depth " +
                     std::to_string(temporal_depth(f)));
  BoundedEvaluator ev(m);
  BoundedEvaluator::BProfile bp;
  if (const auto* pos = std::get_if<PositionalStrategy>(&pt.profile)) {
    bp.pos.assign(static_cast<size_t>(m.num_agents) * m.num_states(), -1);
    for (AgentId i = 0; i < m.num_agents; ++i)
      for (StateId q = 0; q < m.num_states(); ++q)
        bp.pos[static_cast<size_t>(i) * m.num_states() + q] = pos->table[i][q];
  } else {
    bp.tree = &std::get<TreeStrategy>(pt.profile);
    bp.tree_agents = AgentSet::range(m.num_agents);
  }
  return ev.eval(pt.history, bp, pt.kvec, f.get(), horizon);
}

// --------------------------------------------------------------------------
// rule machinery and closed forms

bool condition_at_key(const Model& m, const FormulaPtr& c, StateId q, const KVec& kv) {
  switch (c->kind) {
    case FKind::Prop:
      return prop_holds(m, q, c);
    case FKind::Not:
      return !condition_at_key(m, c->lhs, q, kv);
    case FKind::And:
      return condition_at_key(m, c->lhs, q, kv) && condition_at_key(m, c->rhs, q, kv);
    case FKind::Knows:
      return knows_flat(m, KnowledgeSet{c->agent, kv[c->agent]}, c->lhs);
    case FKind::Nec:
      // box is transparent on moment-determinate arguments
      return condition_at_key(m, c->lhs, q, kv);
    default:
      throw ModelError("condition is not moment-determinate: " + print_formula(c));
  }
}

namespace {

bool key_evaluable(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Prop:
      return true;
    case FKind::Not:
    case FKind::Nec:
      return key_evaluable(f->lhs);
    case FKind::And:
      return key_evaluable(f->lhs) && key_evaluable(f->rhs);
    case FKind::Knows:
      return classify_condition_fragment(f->lhs) == FragmentTag::Propositional;
    default:
      return false;
  }
}

bool mentions_knowledge(const FormulaPtr& f) {
  if (!f) return false;
  if (f->kind == FKind::Knows) return true;
  return mentions_knowledge(f->lhs) || mentions_knowledge(f->rhs);
}

}  // namespace

bool conditions_key_evaluable(const RuleStrategy& rs) {
  for (const Rule& r : rs.rules)
    if (!key_evaluable(r.condition) || !is_moment_determinate_syntactic(r.condition)) return false;
  return true;
}

bool conditions_epistemic(const RuleStrategy& rs) {
  for (const Rule& r : rs.rules)
    if (mentions_knowledge(r.condition)) return true;
  return false;
}

bool effects_atomic(const RuleStrategy& rs) {
  for (const Rule& r : rs.rules)
    if (r.effect->kind != FKind::Act || r.effect->coalition != rs.coalition) return false;
  return true;
}

RuleAnalysis analyze_rules(const Model& m, const RuleStrategy& rs, StateId q, const KVec& kv) {
  RuleAnalysis ra;
  for (size_t n = 0; n < rs.rules.size(); ++n)
    if (condition_at_key(m, rs.rules[n].condition, q, kv)) ra.triggered.push_back(static_cast<int>(n));

  std::vector<CoalitionAction> forced;
  for (int n : ra.triggered) forced.push_back(bind_action_atom(m, *rs.rules[n].effect));

  // available coalition actions at q obeying every triggered effect
  std::vector<AgentId> members(rs.coalition.begin(), rs.coalition.end());
  CoalitionAction cur = CoalitionAction::empty(m.num_agents);
  auto rec = [&](auto&& self, size_t idx) -> void {
    if (idx == members.size()) {
      for (const CoalitionAction& e : forced)
        for (AgentId i : e.members)
          if (cur.acts[i] != e.acts[i]) return;
      ra.compliant.push_back(cur);
      return;
    }
    AgentId i = members[idx];
    for (ActionId a : m.avail[i][q]) {
      cur.assign(i, a);
      self(self, idx + 1);
    }
    cur.acts[i] = -1;
  };
  rec(rec, 0);
  if (members.empty()) {
    // empty coalition: the empty action is compliant iff no triggered effect
    // demands anything (they cannot: effects bind the coalition)
    ra.compliant.clear();
    ra.compliant.push_back(CoalitionAction::empty(m.num_agents));
  }
  return ra;
}

FormulaPtr acc_formula(const RuleStrategy& rs) {
  FormulaPtr conj;
  for (const Rule& r : rs.rules) {
    FormulaPtr one = f_implies(r.condition, f_sstit(rs.coalition, r.effect));
    conj = conj ? f_and(conj, one) : one;
  }
  return f_sstit(rs.coalition, conj);
}

FormulaPtr perf_formula(const RuleStrategy& rs) { return f_sstit(rs.coalition, f_globally(acc_formula(rs))); }

namespace {

void require_key_evaluable(const RuleStrategy& rs) {
  if (!conditions_key_evaluable(rs))
    throw EvalError("rule conditions must be moment-determinate with flat knowledge");
}

bool acc_at_key(const Model& m, const RuleStrategy& rs, StateId q, const KVec& kv, const CoalitionAction& mine) {
  RuleAnalysis ra = analyze_rules(m, rs, q, kv);
  for (int n : ra.triggered) {
    CoalitionAction e = bind_action_atom(m, *rs.rules[n].effect);
    for (AgentId i : e.members)
      if (mine.acts[i] != e.acts[i]) return false;
  }
  return true;
}

}  // namespace

bool eval_acc(const EvalPoint& pt, const RuleStrategy& rs) {
  const Model& m = *pt.model;
  require_key_evaluable(rs);
  if (!effects_atomic(rs)) return eval_exact(pt, acc_formula(rs));
  CoalitionAction mine = project(m, profile_action(m, pt.profile, pt.history), rs.coalition);
  return acc_at_key(m, rs, pt.history.last(), pt.kvec, mine);
}

bool eval_perf(const EvalPoint& pt, const RuleStrategy& rs) {
  const Model& m = *pt.model;
  require_key_evaluable(rs);
  if (!effects_atomic(rs)) return eval_exact(pt, perf_formula(rs));

  int tree_horizon = 0;
  if (const auto* t = std::get_if<TreeStrategy>(&pt.profile)) tree_horizon = t->depth + 2;

  struct Node {
    History hist;
    KVec kv;
  };
  std::deque<Node> queue{{pt.history, pt.kvec}};
  std::set<EpKey> visited;
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(node.hist.states.size()) > tree_horizon) {
      EpKey key{node.hist.last(), kbits(node.kv)};
      if (!visited.emplace(std::move(key)).second) continue;
    }
    CoalitionAction mine = project(m, profile_action(m, pt.profile, node.hist), rs.coalition);
    if (!acc_at_key(m, rs, node.hist.last(), node.kv, mine)) return false;
    for (StateId q : out_set(m, node.hist.last(), mine)) {
      Node child{node.hist, step_kvec(m, node.kv, q)};
      child.hist.states.push_back(q);
      queue.push_back(std::move(child));
    }
  }
  return true;
}

namespace {

// BFS over (state, knowledge vector) keys under all-plays branching; the
// visitor returns false to report a failed key.
bool key_closure(const Model& m, StateId q0, const KVec& kv0,
                 const std::function<bool(StateId, const KVec&)>& check) {
  std::deque<std::pair<StateId, KVec>> queue{{q0, kv0}};
  std::set<EpKey> visited;
  while (!queue.empty()) {
    auto [q, kv] = std::move(queue.front());
    queue.pop_front();
    EpKey key{q, kbits(kv)};
    if (!visited.emplace(std::move(key)).second) continue;
    if (!check(q, kv)) return false;
    for (StateId q2 : out_set(m, q, CoalitionAction::empty(m.num_agents)))
      queue.emplace_back(q2, step_kvec(m, kv, q2));
  }
  return true;
}

}  // namespace

bool complete_from_history(const Model& m, const RuleStrategy& rs, const History& h) {
  require_key_evaluable(rs);
  return key_closure(m, h.last(), history_kvec(m, h), [&](StateId q, const KVec& kv) {
    return !analyze_rules(m, rs, q, kv).triggered.empty();
  });
}

bool complete_from(const Model& m, const RuleStrategy& rs, StateId q) {
  return complete_from_history(m, rs, History{{q}});
}

bool able_from_history(const Model& m, const RuleStrategy& rs, const History& h) {
  require_key_evaluable(rs);
  return key_closure(m, h.last(), history_kvec(m, h), [&](StateId q, const KVec& kv) {
    return !analyze_rules(m, rs, q, kv).compliant.empty();
  });
}

bool knows_complete(const Model& m, const RuleStrategy& rs, const History& h, AgentId i) {
  for (const History& h2 : indistinguishable_histories(m, h, i))
    if (!complete_from_history(m, rs, h2)) return false;
  return true;
}

bool knows_able(const Model& m, const RuleStrategy& rs, const History& h, AgentId i) {
  for (const History& h2 : indistinguishable_histories(m, h, i))
    if (!able_from_history(m, rs, h2)) return false;
  return true;
}

}  // namespace sstit
