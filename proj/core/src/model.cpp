#include "sstit/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sstit {

namespace {

// Cursor over a single line, 1-based column reporting.
struct LineCursor {
  std::string_view text;
  int line;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size() || text[pos] == '#';
  }
  int col() const { return static_cast<int>(pos) + 1; }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(line, col(), what); }

  bool peek_is(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  bool accept(char c) {
    if (peek_is(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  std::string ident(const char* what) {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (pos == start) fail(std::string("expected ") + what);
    return std::string(text.substr(start, pos - start));
  }
  int number(const char* what) {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail(std::string("expected ") + what);
    return std::stoi(std::string(text.substr(start, pos - start)));
  }
};

struct SymbolTable {
  std::vector<std::string>* names;
  std::map<std::string, int> index;

  int intern(const std::string& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(names->size());
    if (id >= kMaxIds) throw ModelError("too many identifiers (limit 64): " + s);
    names->push_back(s);
    index.emplace(s, id);
    return id;
  }
  std::optional<int> find(const std::string& s) const {
    auto it = index.find(s);
    return it == index.end() ? std::nullopt : std::optional<int>(it->second);
  }
};

}  // namespace

std::optional<StateId> Model::find_state(const std::string& name) const {
  for (int i = 0; i < num_states(); ++i)
    if (state_names[i] == name) return i;
  return std::nullopt;
}

std::optional<ActionId> Model::find_action(const std::string& name) const {
  for (int i = 0; i < num_actions(); ++i)
    if (action_names[i] == name) return i;
  return std::nullopt;
}

std::optional<PropId> Model::find_prop(const std::string& name) const {
  for (int i = 0; i < num_props(); ++i)
    if (prop_names[i] == name) return i;
  return std::nullopt;
}

std::optional<StateId> Model::step(StateId q, const ActionProfile& alpha) const {
  auto it = trans[q].find(alpha);
  return it == trans[q].end() ? std::nullopt : std::optional<StateId>(it->second);
}

StateSet Model::successors(StateId q) const {
  StateSet out;
  for (const auto& [alpha, target] : trans[q]) {
    bool executable = true;
    for (int i = 0; i < num_agents; ++i)
      if (!avail[i][q].contains(alpha.acts[i])) executable = false;
    if (executable) out.add(target);
  }
  return out;
}

const StateSet& Model::block_of(AgentId i, StateId q) const {
  for (const StateSet& b : indist[i])
    if (b.contains(q)) return b;
  throw ModelError("state " + state_names[q] + " missing from ~_" + std::to_string(i + 1) + " partition");
}

bool Model::valid_history(const History& h) const {
  if (h.states.empty()) return false;
  for (StateId q : h.states)
    if (q < 0 || q >= num_states()) return false;
  for (size_t l = 0; l + 1 < h.states.size(); ++l)
    if (!successors(h.states[l]).contains(h.states[l + 1])) return false;
  return true;
}

Model parse_model(std::string_view text) {
  Model m;
  SymbolTable states{&m.state_names, {}};
  SymbolTable actions{&m.action_names, {}};
  SymbolTable props{&m.prop_names, {}};

  bool saw_agents = false, saw_states = false, saw_actions = false;
  std::vector<bool> saw_label;
  std::vector<std::vector<bool>> saw_avail;   // [agent][state]
  std::vector<bool> saw_indist;               // [agent]
  std::vector<std::vector<StateSet>> listed;  // indist blocks as listed

  auto require_agent = [&](LineCursor& c, int n) -> AgentId {
    if (!saw_agents) c.fail("'agents:' must come first");
    if (n < 1 || n > m.num_agents) c.fail("agent " + std::to_string(n) + " out of range");
    return n - 1;
  };
  auto require_state = [&](LineCursor& c, const std::string& name) -> StateId {
    auto id = states.find(name);
    if (!id) c.fail("unknown state " + name);
    return *id;
  };
  auto require_action = [&](LineCursor& c, const std::string& name) -> ActionId {
    auto id = actions.find(name);
    if (!id) c.fail("unknown action " + name);
    return *id;
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    LineCursor c{raw, lineno};
    if (c.at_end()) continue;
    std::string head = c.ident("directive");

    if (head == "agents") {
      c.expect(':');
      if (saw_agents) c.fail("duplicate agents declaration");
      m.num_agents = c.number("agent count");
      if (m.num_agents < 1 || m.num_agents > kMaxIds) c.fail("agent count out of range");
      saw_agents = true;
      saw_avail.assign(m.num_agents, {});
      saw_indist.assign(m.num_agents, false);
      listed.assign(m.num_agents, {});
    } else if (head == "states") {
      c.expect(':');
      if (saw_states) c.fail("duplicate states declaration");
      while (!c.at_end()) {
        std::string name = c.ident("state name");
        if (states.find(name)) c.fail("duplicate state " + name);
        states.intern(name);
      }
      if (m.state_names.empty()) c.fail("empty state list");
      saw_states = true;
      saw_label.assign(m.num_states(), false);
      for (auto& v : saw_avail) v.assign(m.num_states(), false);
    } else if (head == "actions") {
      c.expect(':');
      if (saw_actions) c.fail("duplicate actions declaration");
      while (!c.at_end()) {
        std::string name = c.ident("action name");
        if (actions.find(name)) c.fail("duplicate action " + name);
        actions.intern(name);
      }
      if (m.action_names.empty()) c.fail("empty action list");
      saw_actions = true;
    } else if (head == "label") {
      StateId q = require_state(c, c.ident("state name"));
      c.expect(':');
      if (saw_label.size() != static_cast<size_t>(m.num_states())) saw_label.assign(m.num_states(), false);
      if (saw_label[q]) c.fail("duplicate label declaration for " + m.state_names[q]);
      saw_label[q] = true;
      m.labels.resize(m.num_states());
      while (!c.at_end()) m.labels[q].add(props.intern(c.ident("proposition")));
    } else if (head == "avail") {
      AgentId i = require_agent(c, c.number("agent id"));
      StateId q = require_state(c, c.ident("state name"));
      c.expect(':');
      if (saw_avail[i].size() != static_cast<size_t>(m.num_states())) saw_avail[i].assign(m.num_states(), false);
      if (saw_avail[i][q]) c.fail("duplicate avail declaration");
      saw_avail[i][q] = true;
      m.avail.resize(m.num_agents);
      m.avail[i].resize(m.num_states());
      while (!c.at_end()) m.avail[i][q].add(require_action(c, c.ident("action name")));
    } else if (head == "trans") {
      StateId q = require_state(c, c.ident("state name"));
      c.expect('(');
      ActionProfile alpha;
      for (int i = 0; i < std::max(m.num_agents, 1); ++i) {
        if (i > 0) c.expect(',');
        alpha.acts.push_back(require_action(c, c.ident("action name")));
      }
      c.expect(')');
      c.expect('-');
      c.expect('>');
      StateId target = require_state(c, c.ident("state name"));
      m.trans.resize(m.num_states());
      if (m.trans[q].count(alpha)) c.fail("duplicate transition declaration");
      m.trans[q][alpha] = target;
    } else if (head == "indist") {
      AgentId i = require_agent(c, c.number("agent id"));
      c.expect(':');
      if (saw_indist[i]) c.fail("duplicate indist declaration for agent " + std::to_string(i + 1));
      saw_indist[i] = true;
      while (!c.at_end()) {
        c.expect('{');
        StateSet block;
        while (!c.peek_is('}')) block.add(require_state(c, c.ident("state name")));
        c.expect('}');
        if (block.empty()) c.fail("empty indist block");
        listed[i].push_back(block);
      }
    } else {
      c.fail("unknown directive '" + head + "'");
    }
    if (!c.at_end()) c.fail("trailing input");
  }

  if (!saw_agents) throw ParseError(lineno, 1, "missing agents declaration");
  if (!saw_states) throw ParseError(lineno, 1, "missing states declaration");
  if (!saw_actions) throw ParseError(lineno, 1, "missing actions declaration");

  m.labels.resize(m.num_states());
  m.trans.resize(m.num_states());
  m.avail.resize(m.num_agents);
  for (auto& per_state : m.avail) per_state.resize(m.num_states());

  // Every state not covered by a listed block forms its own singleton block.
  m.indist.assign(m.num_agents, {});
  for (AgentId i = 0; i < m.num_agents; ++i) {
    StateSet covered;
    for (const StateSet& b : listed[i]) {
      m.indist[i].push_back(b);
      covered = covered | b;
    }
    for (StateId q = 0; q < m.num_states(); ++q)
      if (!covered.contains(q)) m.indist[i].push_back(StateSet::single(q));
  }
  return m;
}

std::vector<ActionProfile> action_profiles(const Model& m, StateId q) {
  std::vector<ActionProfile> out;
  for (AgentId i = 0; i < m.num_agents; ++i)
    if (m.avail[i][q].empty()) return out;
  ActionProfile cur;
  cur.acts.assign(m.num_agents, -1);
  // mixed-radix walk, agent 0 slowest, ascending action ids
  std::vector<std::vector<ActionId>> choices(m.num_agents);
  for (AgentId i = 0; i < m.num_agents; ++i)
    for (ActionId a : m.avail[i][q]) choices[i].push_back(a);
  std::vector<size_t> idx(m.num_agents, 0);
  while (true) {
    for (AgentId i = 0; i < m.num_agents; ++i) cur.acts[i] = choices[i][idx[i]];
    out.push_back(cur);
    int i = m.num_agents - 1;
    while (i >= 0) {
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

StateSet out_set(const Model& m, StateId q, const CoalitionAction& ca) {
  for (AgentId i : ca.members)
    if (!m.avail[i][q].contains(ca.acts[i]))
      throw ModelError("action " + m.action_names[ca.acts[i]] + " not available to agent " +
                       std::to_string(i + 1) + " at " + m.state_names[q]);
  StateSet out;
  for (const ActionProfile& alpha : action_profiles(m, q)) {
    if (!ca.extended_by(alpha)) continue;
    if (auto target = m.step(q, alpha)) out.add(*target);
  }
  return out;
}

std::vector<Diagnostic> validate_model(const Model& m) {
  std::vector<Diagnostic> diags;
  auto emit = [&](std::string code, std::string msg) { diags.push_back({std::move(code), std::move(msg)}); };

  // avail(i,q) non-empty
  for (AgentId i = 0; i < m.num_agents; ++i)
    for (StateId q = 0; q < m.num_states(); ++q)
      if (m.avail[i][q].empty())
        emit("empty-avail",
             "no action available to agent " + std::to_string(i + 1) + " at " + m.state_names[q]);

  // partitions well-formed
  std::vector<bool> partition_ok(m.num_agents, true);
  for (AgentId i = 0; i < m.num_agents; ++i) {
    std::vector<int> hits(m.num_states(), 0);
    for (const StateSet& b : m.indist[i])
      for (StateId q : b) ++hits[q];
    for (StateId q = 0; q < m.num_states(); ++q) {
      if (hits[q] != 1) {
        partition_ok[i] = false;
        emit("ill-formed-partition", "state " + m.state_names[q] + " occurs in " + std::to_string(hits[q]) +
                                         " blocks of ~_" + std::to_string(i + 1));
      }
    }
  }

  // q ~_i q' implies avail(i,q) = avail(i,q')
  for (AgentId i = 0; i < m.num_agents; ++i) {
    for (const StateSet& b : m.indist[i]) {
      StateId rep = b.first();
      for (StateId q : b) {
        if (m.avail[i][q] != m.avail[i][rep]) {
          emit("availability-mismatch", "availability differs across ~_" + std::to_string(i + 1) + ": " +
                                            m.state_names[rep] + " vs " + m.state_names[q]);
          break;
        }
      }
    }
  }

  // trans defined exactly on executable profiles
  for (StateId q = 0; q < m.num_states(); ++q) {
    auto executable = action_profiles(m, q);
    for (const ActionProfile& alpha : executable)
      if (!m.trans[q].count(alpha))
        emit("missing-transition", "no transition from " + m.state_names[q] + " under " + format_profile(m, alpha));
    for (const auto& [alpha, target] : m.trans[q]) {
      bool ok = std::find(executable.begin(), executable.end(), alpha) != executable.end();
      if (!ok)
        emit("dangling-transition",
             "transition from " + m.state_names[q] + " under non-executable " + format_profile(m, alpha));
    }
  }

  // 5(b): labelled transitions have unique labels
  for (StateId q = 0; q < m.num_states(); ++q) {
    std::map<StateId, ActionProfile> seen;
    for (const ActionProfile& alpha : action_profiles(m, q)) {
      auto it = m.trans[q].find(alpha);
      if (it == m.trans[q].end()) continue;
      auto [prev, fresh] = seen.emplace(it->second, alpha);
      if (!fresh)
        emit("non-unique-label", "non-unique transition label between " + m.state_names[q] + " and " +
                                     m.state_names[it->second] + ": " + format_profile(m, prev->second) + " and " +
                                     format_profile(m, alpha));
    }
  }

  return diags;
}

std::string format_profile(const Model& m, const ActionProfile& p) {
  std::string out = "(";
  for (size_t i = 0; i < p.acts.size(); ++i) {
    if (i) out += ",";
    out += p.acts[i] >= 0 ? m.action_names[p.acts[i]] : "?";
  }
  return out + ")";
}

std::string format_coalition_action(const Model& m, const CoalitionAction& ca) {
  std::string out = "{";
  bool first = true;
  for (AgentId i : ca.members) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(i + 1) + ":" + m.action_names[ca.acts[i]];
  }
  return out + "}";
}

std::string format_history(const Model& m, const History& h) {
  std::string out;
  for (size_t i = 0; i < h.states.size(); ++i) {
    if (i) out += ",";
    out += m.state_names[h.states[i]];
  }
  return out;
}

}  // namespace sstit
