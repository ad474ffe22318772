#include "sstit/strategy.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace sstit {

PositionalStrategy PositionalStrategy::make(const Model& m, AgentSet coalition) {
  PositionalStrategy s;
  s.coalition = coalition;
  s.table.assign(m.num_agents, std::vector<ActionId>(m.num_states(), -1));
  return s;
}

CoalitionAction PositionalStrategy::coalition_action(StateId q) const {
  CoalitionAction ca = CoalitionAction::empty(static_cast<int>(table.size()));
  for (AgentId i : coalition) ca.assign(i, table[i][q]);
  return ca;
}

CoalitionAction TreeStrategy::action(const History& h) const {
  auto it = nodes.find(h.states);
  if (it != nodes.end()) return it->second;
  return fallback.coalition_action(h.last());
}

EpKey PartialStrategy::key_for(StateId q, const KVec& kv) const {
  EpKey key;
  key.q = q;
  if (epistemic_keys)
    for (const StateSet& ks : kv) key.kbits.push_back(ks.bits());
  return key;
}

const PartialOutcome* PartialStrategy::find(StateId q, const KVec& kv) const {
  auto it = entries.find(key_for(q, kv));
  return it == entries.end() ? nullptr : &it->second;
}

AgentSet strategy_coalition(const AnyStrategy& s) {
  return std::visit([](const auto& x) { return x.coalition; }, s);
}

ActionProfile profile_action(const Model& m, const Profile& s, const History& h) {
  ActionProfile alpha;
  alpha.acts.assign(m.num_agents, -1);
  CoalitionAction ca = std::visit(
      [&](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, PositionalStrategy>)
          return x.coalition_action(h.last());
        else
          return x.action(h);
      },
      s);
  for (AgentId i = 0; i < m.num_agents; ++i) alpha.acts[i] = ca.acts[i];
  return alpha;
}

bool profile_is_full(const Model& m, const Profile& s) {
  return std::visit([&](const auto& x) { return x.coalition == AgentSet::range(m.num_agents); }, s);
}

namespace {

void check_dims(const Model& m, const PositionalStrategy& s) {
  if (s.table.size() != static_cast<size_t>(m.num_agents) ||
      (!s.table.empty() && s.table[0].size() != static_cast<size_t>(m.num_states())))
    throw ModelError("strategy does not match the model");
}

bool agree_positional(const PositionalStrategy& a, const PositionalStrategy& b, AgentSet on, int num_states) {
  for (AgentId i : on)
    for (StateId q = 0; q < num_states; ++q)
      if (a.table[i][q] != b.table[i][q]) return false;
  return true;
}

// Optional constraint the strategy places on the next step at (history, kvec).
std::optional<CoalitionAction> step_constraint(const Model& m, const AnyStrategy& s, const History& h,
                                               const KVec& kv) {
  if (const auto* pos = std::get_if<PositionalStrategy>(&s)) return pos->coalition_action(h.last());
  if (const auto* tree = std::get_if<TreeStrategy>(&s)) return tree->action(h);
  const auto& part = std::get<PartialStrategy>(s);
  const PartialOutcome* out = part.find(h.last(), kv);
  if (out && out->defined) return out->action;
  return std::nullopt;
}

}  // namespace

bool extends(const Model& m, const AnyStrategy& bigger, const AnyStrategy& smaller) {
  AgentSet big_c = strategy_coalition(bigger);
  AgentSet small_c = strategy_coalition(smaller);
  if (!small_c.subset_of(big_c)) return false;

  if (const auto* bp = std::get_if<PositionalStrategy>(&bigger)) {
    check_dims(m, *bp);
    if (const auto* sp = std::get_if<PositionalStrategy>(&smaller)) {
      check_dims(m, *sp);
      return agree_positional(*bp, *sp, small_c, m.num_states());
    }
    if (const auto* st = std::get_if<TreeStrategy>(&smaller)) {
      for (const auto& [hist, ca] : st->nodes)
        for (AgentId i : small_c)
          if (ca.acts[i] != bp->table[i][hist.back()]) return false;
      return agree_positional(*bp, st->fallback, small_c, m.num_states());
    }
  }
  if (const auto* bt = std::get_if<TreeStrategy>(&bigger)) {
    if (const auto* sp = std::get_if<PositionalStrategy>(&smaller)) {
      check_dims(m, *sp);
      for (const auto& [hist, ca] : bt->nodes)
        for (AgentId i : small_c)
          if (ca.acts[i] != sp->table[i][hist.back()]) return false;
      return agree_positional(bt->fallback, *sp, small_c, m.num_states());
    }
    if (const auto* st = std::get_if<TreeStrategy>(&smaller)) {
      // agreement on every stored history of either tree, and on fallbacks
      auto agree_at = [&](const std::vector<StateId>& hist) {
        History h{hist};
        CoalitionAction a = bt->action(h), b = st->action(h);
        for (AgentId i : small_c)
          if (a.acts[i] != b.acts[i]) return false;
        return true;
      };
      for (const auto& [hist, ca] : bt->nodes)
        if (!agree_at(hist)) return false;
      for (const auto& [hist, ca] : st->nodes)
        if (!agree_at(hist)) return false;
      return agree_positional(bt->fallback, st->fallback, small_c, m.num_states());
    }
  }
  throw ModelError("extends: unsupported strategy representation pair");
}

Lasso generated_play(const Model& m, StateId q0, const PositionalStrategy& profile) {
  check_dims(m, profile);
  if (profile.coalition != AgentSet::range(m.num_agents))
    throw ModelError("generated_play requires a full strategy profile");
  std::vector<StateId> seq{q0};
  std::vector<int> first_seen(m.num_states(), -1);
  first_seen[q0] = 0;
  StateId q = q0;
  while (true) {
    ActionProfile alpha;
    alpha.acts.resize(m.num_agents);
    for (AgentId i = 0; i < m.num_agents; ++i) {
      alpha.acts[i] = profile.table[i][q];
      if (alpha.acts[i] < 0 || !m.avail[i][q].contains(alpha.acts[i]))
        throw ModelError("profile assigns an unavailable action at " + m.state_names[q]);
    }
    auto next = m.step(q, alpha);
    if (!next) throw ModelError("model has no transition from " + m.state_names[q] + " under " + format_profile(m, alpha));
    q = *next;
    if (first_seen[q] >= 0) {
      Lasso l;
      l.prefix.assign(seq.begin(), seq.begin() + first_seen[q]);
      l.cycle.assign(seq.begin() + first_seen[q], seq.end());
      return l;
    }
    first_seen[q] = static_cast<int>(seq.size());
    seq.push_back(q);
  }
}

std::vector<History> out_plays_frontier(const Model& m, const History& h, const AnyStrategy& s, int depth) {
  struct Node {
    History hist;
    KVec kv;
  };
  std::vector<Node> level{{h, history_kvec(m, h)}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Node> next_level;
    for (const Node& node : level) {
      std::optional<CoalitionAction> constraint = step_constraint(m, s, node.hist, node.kv);
      StateSet succ = out_set(m, node.hist.last(),
                              constraint ? *constraint : CoalitionAction::empty(m.num_agents));
      for (StateId q : succ) {
        Node child{node.hist, step_kvec(m, node.kv, q)};
        child.hist.states.push_back(q);
        next_level.push_back(std::move(child));
      }
    }
    level = std::move(next_level);
  }
  std::vector<History> out;
  out.reserve(level.size());
  for (Node& n : level) out.push_back(std::move(n.hist));
  std::sort(out.begin(), out.end());
  return out;
}

bool play_equivalent(const Model& m, const History& h, const AnyStrategy& s1, const AnyStrategy& s2) {
  // Beyond the deepest tree window both strategies are key-determined, so the
  // search space collapses to (state, knowledge vector) keys.
  int tree_horizon = 0;
  for (const AnyStrategy* s : {&s1, &s2})
    if (const auto* t = std::get_if<TreeStrategy>(s))
      tree_horizon = std::max(tree_horizon, t->depth + 2);

  struct Node {
    History hist;
    KVec kv;
  };
  std::deque<Node> queue{{h, history_kvec(m, h)}};
  std::set<EpKey> visited;  // keys entered past the tree window

  auto key_of = [&](const Node& n) {
    EpKey k;
    k.q = n.hist.last();
    for (const StateSet& ks : n.kv) k.kbits.push_back(ks.bits());
    return k;
  };

  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(node.hist.states.size()) > tree_horizon) {
      auto [it, fresh] = visited.emplace(key_of(node));
      if (!fresh) continue;
    }
    std::optional<CoalitionAction> c1 = step_constraint(m, s1, node.hist, node.kv);
    std::optional<CoalitionAction> c2 = step_constraint(m, s2, node.hist, node.kv);
    StateSet succ1 = out_set(m, node.hist.last(), c1 ? *c1 : CoalitionAction::empty(m.num_agents));
    StateSet succ2 = out_set(m, node.hist.last(), c2 ? *c2 : CoalitionAction::empty(m.num_agents));
    if (succ1 != succ2) return false;
    for (StateId q : succ1) {
      Node child{node.hist, step_kvec(m, node.kv, q)};
      child.hist.states.push_back(q);
      queue.push_back(std::move(child));
    }
  }
  return true;
}

bool is_uniform(const Model& m, const PositionalStrategy& s, AgentId i) {
  check_dims(m, s);
  if (!s.coalition.contains(i)) throw ModelError("agent not in the strategy's coalition");
  for (const StateSet& block : m.indist[i]) {
    ActionId a = s.table[i][block.first()];
    for (StateId q : block)
      if (s.table[i][q] != a) return false;
  }
  return true;
}

bool is_uniform(const Model& m, const TreeStrategy& s, AgentId i, int depth) {
  if (!s.coalition.contains(i)) throw ModelError("agent not in the strategy's coalition");
  // compare every pair of indistinguishable valid histories up to the bound
  std::vector<History> frontier;
  for (StateId q = 0; q < m.num_states(); ++q) frontier.push_back(History{{q}});
  for (int len = 1; len <= depth + 1; ++len) {
    for (const History& h : frontier) {
      CoalitionAction mine = s.action(h);
      for (const History& other : indistinguishable_histories(m, h, i))
        if (s.action(other).acts[i] != mine.acts[i]) return false;
    }
    std::vector<History> next;
    for (const History& h : frontier)
      for (StateId q : m.successors(h.last())) {
        History h2 = h;
        h2.states.push_back(q);
        next.push_back(std::move(h2));
      }
    frontier = std::move(next);
  }
  return is_uniform(m, s.fallback, i);
}

PositionalStrategy parse_positional(const Model& m, std::string_view text) {
  size_t brace_open = text.find('{');
  size_t brace_close = text.find('}', brace_open);
  size_t colon = text.find(':', brace_close);
  std::string head(text.substr(0, brace_open == std::string_view::npos ? 0 : brace_open));
  if (head.find("positional") == std::string::npos || head.find("for") == std::string::npos ||
      brace_close == std::string_view::npos || colon == std::string_view::npos)
    throw ParseError(1, 1, "expected 'positional for {agents}:' header");

  AgentSet coalition;
  {
    std::string inner(text.substr(brace_open + 1, brace_close - brace_open - 1));
    std::istringstream in(inner);
    std::string tok;
    while (in >> tok) {
      for (char& c : tok)
        if (c == ',') c = ' ';
      std::istringstream nums(tok);
      int n;
      while (nums >> n) {
        if (n < 1 || n > m.num_agents) throw ParseError(1, 1, "agent " + std::to_string(n) + " out of range");
        coalition.add(n - 1);
      }
    }
  }
  if (coalition.empty()) throw ParseError(1, 1, "empty coalition in positional strategy");

  PositionalStrategy s = PositionalStrategy::make(m, coalition);
  std::string body(text.substr(colon + 1));
  std::string chunk;
  std::vector<std::string> chunks;
  for (char c : body) {
    if (c == ';' || c == '\n') {
      chunks.push_back(chunk);
      chunk.clear();
    } else {
      chunk += c;
    }
  }
  chunks.push_back(chunk);

  for (std::string& line : chunks) {
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream in(line);
    std::string state_name, arrow;
    if (!(in >> state_name)) continue;
    auto q = m.find_state(state_name);
    if (!q) throw ParseError(1, 1, "unknown state " + state_name);
    if (!(in >> arrow) || arrow != "->") throw ParseError(1, 1, "expected '->' after state " + state_name);
    for (AgentId i : coalition) {
      std::string action_name;
      if (!(in >> action_name)) throw ParseError(1, 1, "missing action for agent " + std::to_string(i + 1));
      auto a = m.find_action(action_name);
      if (!a) throw ParseError(1, 1, "unknown action " + action_name);
      if (!m.avail[i][*q].contains(*a))
        throw ParseError(1, 1, "action " + action_name + " not available to agent " + std::to_string(i + 1) +
                                   " at " + state_name);
      if (s.table[i][*q] != -1) throw ParseError(1, 1, "duplicate assignment for " + state_name);
      s.table[i][*q] = *a;
    }
    std::string extra;
    if (in >> extra) throw ParseError(1, 1, "trailing input: " + extra);
  }
  for (AgentId i : coalition)
    for (StateId q = 0; q < m.num_states(); ++q)
      if (s.table[i][q] == -1)
        throw ParseError(1, 1, "no action assigned at " + m.state_names[q] + " for agent " + std::to_string(i + 1));
  return s;
}

std::string print_positional(const Model& m, const PositionalStrategy& s) {
  std::string out = "positional for {";
  bool first = true;
  for (AgentId i : s.coalition) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(i + 1);
  }
  out += "}:";
  for (StateId q = 0; q < m.num_states(); ++q) {
    out += q == 0 ? " " : "; ";
    out += m.state_names[q] + " ->";
    for (AgentId i : s.coalition) out += " " + m.action_names[s.table[i][q]];
  }
  return out;
}

}  // namespace sstit
