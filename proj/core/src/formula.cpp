#include "sstit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sstit {

namespace {

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

bool is_keyword(const std::string& s) {
  return s == "X" || s == "G" || s == "F" || s == "box" || s == "dia" || s == "K" || s == "act" ||
         s == "sstit";
}

}  // namespace

FormulaPtr f_prop(std::string name) {
  Formula f;
  f.kind = FKind::Prop;
  f.prop = std::move(name);
  return node(std::move(f));
}

FormulaPtr f_act(std::vector<std::pair<AgentId, std::string>> bindings) {
  std::sort(bindings.begin(), bindings.end());
  Formula f;
  f.kind = FKind::Act;
  for (auto& [i, a] : bindings) {
    if (f.coalition.contains(i)) throw ModelError("act atom assigns agent " + std::to_string(i + 1) + " twice");
    f.coalition.add(i);
  }
  f.bindings = std::move(bindings);
  return node(std::move(f));
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FKind::And;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return node(std::move(f));
}

FormulaPtr f_not(FormulaPtr a) {
  Formula f;
  f.kind = FKind::Not;
  f.lhs = std::move(a);
  return node(std::move(f));
}

FormulaPtr f_next(FormulaPtr a) {
  Formula f;
  f.kind = FKind::Next;
  f.lhs = std::move(a);
  return node(std::move(f));
}

FormulaPtr f_globally(FormulaPtr a) {
  Formula f;
  f.kind = FKind::Globally;
  f.lhs = std::move(a);
  return node(std::move(f));
}

FormulaPtr f_nec(FormulaPtr a) {
  Formula f;
  f.kind = FKind::Nec;
  f.lhs = std::move(a);
  return node(std::move(f));
}

FormulaPtr f_sstit(AgentSet coalition, FormulaPtr a) {
  Formula f;
  f.kind = FKind::Sstit;
  f.coalition = coalition;
  f.lhs = std::move(a);
  return node(std::move(f));
}

FormulaPtr f_knows(AgentId agent, FormulaPtr a) {
  Formula f;
  f.kind = FKind::Knows;
  f.agent = agent;
  f.lhs = std::move(a);
  return node(std::move(f));
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return f_not(f_and(f_not(std::move(a)), f_not(std::move(b)))); }
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) { return f_not(f_and(std::move(a), f_not(std::move(b)))); }
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) { return f_and(f_implies(a, b), f_implies(b, a)); }
FormulaPtr f_eventually(FormulaPtr a) { return f_not(f_globally(f_not(std::move(a)))); }
FormulaPtr f_dia(FormulaPtr a) { return f_not(f_nec(f_not(std::move(a)))); }

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->prop != b->prop || a->bindings != b->bindings ||
      a->coalition != b->coalition || a->agent != b->agent)
    return false;
  return formulas_equal(a->lhs, b->lhs) && formulas_equal(a->rhs, b->rhs);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Colon,
  Comma,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  IffOp,
  End
};

struct Lexer {
  std::string_view text;
  size_t pos = 0;
  int line = 1, col = 1;

  Tok kind = Tok::End;
  std::string value;
  int tok_line = 1, tok_col = 1;

  Lexer(std::string_view t) : text(t) { advance(); }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(tok_line, tok_col, what); }

  void bump() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void advance() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
    tok_line = line;
    tok_col = col;
    value.clear();
    if (pos >= text.size()) {
      kind = Tok::End;
      return;
    }
    char c = text[pos];
    auto simple = [&](Tok t) {
      kind = t;
      bump();
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      kind = Tok::Ident;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '\'')) {
        value += text[pos];
        bump();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      kind = Tok::Number;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value += text[pos];
        bump();
      }
    } else if (c == '-') {
      bump();
      if (pos < text.size() && text[pos] == '>') {
        kind = Tok::Arrow;
        bump();
      } else {
        throw ParseError(tok_line, tok_col, "stray '-'");
      }
    } else if (c == '<') {
      bump();
      if (pos + 1 < text.size() + 1 && pos < text.size() && text[pos] == '-') {
        bump();
        if (pos < text.size() && text[pos] == '>') {
          kind = Tok::IffOp;
          bump();
        } else {
          throw ParseError(tok_line, tok_col, "stray '<-'");
        }
      } else {
        throw ParseError(tok_line, tok_col, "stray '<'");
      }
    } else {
      switch (c) {
        case '(': simple(Tok::LParen); break;
        case ')': simple(Tok::RParen); break;
        case '{': simple(Tok::LBrace); break;
        case '}': simple(Tok::RBrace); break;
        case '[': simple(Tok::LBracket); break;
        case ']': simple(Tok::RBracket); break;
        case ':': simple(Tok::Colon); break;
        case ',': simple(Tok::Comma); break;
        case '~': simple(Tok::Tilde); break;
        case '&': simple(Tok::Amp); break;
        case '|': simple(Tok::Pipe); break;
        default: throw ParseError(tok_line, tok_col, std::string("unexpected character '") + c + "'");
      }
    }
  }

  bool accept(Tok t) {
    if (kind != t) return false;
    advance();
    return true;
  }
  void expect(Tok t, const char* what) {
    if (kind != t) fail(std::string("expected ") + what);
    advance();
  }
  int expect_agent() {
    if (kind != Tok::Number) fail("expected agent id");
    int n = std::stoi(value);
    advance();
    if (n < 1) throw ParseError(tok_line, tok_col, "agent ids are 1-based");
    return n - 1;
  }
};

struct FormulaParser {
  Lexer& lx;

  FormulaPtr parse() {
    FormulaPtr f = implies();
    return f;
  }

  FormulaPtr implies() {
    FormulaPtr a = disj();
    if (lx.accept(Tok::Arrow)) return f_implies(std::move(a), implies());
    if (lx.accept(Tok::IffOp)) return f_iff(std::move(a), implies());
    return a;
  }

  FormulaPtr disj() {
    FormulaPtr a = conj();
    while (lx.accept(Tok::Pipe)) a = f_or(std::move(a), conj());
    return a;
  }

  FormulaPtr conj() {
    FormulaPtr a = unary();
    while (lx.accept(Tok::Amp)) a = f_and(std::move(a), unary());
    return a;
  }

  AgentSet coalition_in_braces() {
    lx.expect(Tok::LBrace, "'{'");
    AgentSet coal;
    while (lx.kind != Tok::RBrace) {
      coal.add(lx.expect_agent());
      lx.accept(Tok::Comma);
    }
    lx.expect(Tok::RBrace, "'}'");
    return coal;
  }

  FormulaPtr unary() {
    if (lx.accept(Tok::Tilde)) return f_not(unary());
    if (lx.kind == Tok::Ident) {
      if (lx.value == "X") {
        lx.advance();
        return f_next(unary());
      }
      if (lx.value == "G") {
        lx.advance();
        return f_globally(unary());
      }
      if (lx.value == "F") {
        lx.advance();
        return f_eventually(unary());
      }
      if (lx.value == "box") {
        lx.advance();
        return f_nec(unary());
      }
      if (lx.value == "dia") {
        lx.advance();
        return f_dia(unary());
      }
      if (lx.value == "K") {
        lx.advance();
        lx.expect(Tok::LBrace, "'{'");
        AgentId i = lx.expect_agent();
        lx.expect(Tok::RBrace, "'}'");
        return f_knows(i, unary());
      }
    }
    if (lx.kind == Tok::LBracket) {
      lx.advance();
      if (lx.kind != Tok::Ident || lx.value != "sstit") lx.fail("expected 'sstit'");
      lx.advance();
      AgentSet coal = coalition_in_braces();
      lx.expect(Tok::RBracket, "']'");
      return f_sstit(coal, unary());
    }
    return atom();
  }

  FormulaPtr atom() {
    if (lx.accept(Tok::LParen)) {
      FormulaPtr f = implies();
      lx.expect(Tok::RParen, "')'");
      return f;
    }
    if (lx.kind == Tok::Ident && lx.value == "act") {
      lx.advance();
      lx.expect(Tok::LBrace, "'{'");
      std::vector<std::pair<AgentId, std::string>> bindings;
      while (lx.kind != Tok::RBrace) {
        AgentId i = lx.expect_agent();
        lx.expect(Tok::Colon, "':'");
        if (lx.kind != Tok::Ident) lx.fail("expected action name");
        bindings.emplace_back(i, lx.value);
        lx.advance();
        lx.accept(Tok::Comma);
      }
      lx.expect(Tok::RBrace, "'}'");
      return f_act(std::move(bindings));
    }
    if (lx.kind == Tok::Ident) {
      if (is_keyword(lx.value)) lx.fail("keyword '" + lx.value + "' is not a proposition");
      FormulaPtr f = f_prop(lx.value);
      lx.advance();
      return f;
    }
    lx.fail("expected formula");
  }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Lexer lx(text);
  FormulaParser p{lx};
  FormulaPtr f = p.parse();
  if (lx.kind != Tok::End) lx.fail("trailing input after formula");
  return f;
}

// ---------------------------------------------------------------------------
// printing

namespace {

// precedence levels: 0 implies, 1 or, 2 and, 3 unary, 4 atom
void print_rec(const FormulaPtr& f, int min_level, std::string& out) {
  auto wrap = [&](int level, auto&& body) {
    if (level < min_level) {
      out += "(";
      body();
      out += ")";
    } else {
      body();
    }
  };
  switch (f->kind) {
    case FKind::Prop:
      out += f->prop;
      return;
    case FKind::Act: {
      out += "act{";
      bool first = true;
      for (const auto& [i, a] : f->bindings) {
        if (!first) out += ",";
        first = false;
        out += std::to_string(i + 1) + ":" + a;
      }
      out += "}";
      return;
    }
    case FKind::And:
      wrap(2, [&] {
        print_rec(f->lhs, 2, out);
        out += " & ";
        print_rec(f->rhs, 3, out);
      });
      return;
    case FKind::Not: {
      const Formula& a = *f->lhs;
      // sugar recovery: F, dia, |, ->
      if (a.kind == FKind::Globally && a.lhs->kind == FKind::Not) {
        wrap(3, [&] {
          out += "F ";
          print_rec(a.lhs->lhs, 3, out);
        });
        return;
      }
      if (a.kind == FKind::Nec && a.lhs->kind == FKind::Not) {
        wrap(3, [&] {
          out += "dia ";
          print_rec(a.lhs->lhs, 3, out);
        });
        return;
      }
      if (a.kind == FKind::And && a.lhs->kind == FKind::Not && a.rhs->kind == FKind::Not) {
        wrap(1, [&] {
          print_rec(a.lhs->lhs, 1, out);
          out += " | ";
          print_rec(a.rhs->lhs, 2, out);
        });
        return;
      }
      if (a.kind == FKind::And && a.rhs->kind == FKind::Not) {
        wrap(0, [&] {
          print_rec(a.lhs, 1, out);
          out += " -> ";
          print_rec(a.rhs->lhs, 0, out);
        });
        return;
      }
      wrap(3, [&] {
        out += "~";
        print_rec(f->lhs, 3, out);
      });
      return;
    }
    case FKind::Next:
      wrap(3, [&] {
        out += "X ";
        print_rec(f->lhs, 3, out);
      });
      return;
    case FKind::Globally:
      wrap(3, [&] {
        out += "G ";
        print_rec(f->lhs, 3, out);
      });
      return;
    case FKind::Nec:
      wrap(3, [&] {
        out += "box ";
        print_rec(f->lhs, 3, out);
      });
      return;
    case FKind::Sstit:
      wrap(3, [&] {
        out += "[sstit {";
        bool first = true;
        for (AgentId i : f->coalition) {
          if (!first) out += ",";
          first = false;
          out += std::to_string(i + 1);
        }
        out += "}] ";
        print_rec(f->lhs, 3, out);
      });
      return;
    case FKind::Knows:
      wrap(3, [&] {
        out += "K{" + std::to_string(f->agent + 1) + "} ";
        print_rec(f->lhs, 3, out);
      });
      return;
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

void bind_check(const Model& m, const FormulaPtr& f) {
  if (!f) return;
  switch (f->kind) {
    case FKind::Prop:
      if (!m.find_prop(f->prop)) throw ModelError("unknown proposition " + f->prop);
      break;
    case FKind::Act:
      for (const auto& [i, a] : f->bindings) {
        if (i >= m.num_agents) throw ModelError("agent " + std::to_string(i + 1) + " out of range");
        if (!m.find_action(a)) throw ModelError("unknown action " + a);
      }
      break;
    case FKind::Knows:
      if (f->agent >= m.num_agents)
        throw ModelError("agent " + std::to_string(f->agent + 1) + " out of range");
      break;
    case FKind::Sstit:
      if (!f->coalition.subset_of(AgentSet::range(m.num_agents)))
        throw ModelError("coalition mentions an agent out of range");
      break;
    default:
      break;
  }
  bind_check(m, f->lhs);
  bind_check(m, f->rhs);
}

FragmentTag classify_condition_fragment(const FormulaPtr& f) {
  struct Walk {
    static bool propositional(const FormulaPtr& f) {
      switch (f->kind) {
        case FKind::Prop: return true;
        case FKind::Not: return propositional(f->lhs);
        case FKind::And: return propositional(f->lhs) && propositional(f->rhs);
        default: return false;
      }
    }
    static bool flat(const FormulaPtr& f) {
      switch (f->kind) {
        case FKind::Prop: return true;
        case FKind::Not: return flat(f->lhs);
        case FKind::And: return flat(f->lhs) && flat(f->rhs);
        case FKind::Knows: return propositional(f->lhs);
        default: return false;
      }
    }
  };
  if (Walk::propositional(f)) return FragmentTag::Propositional;
  if (Walk::flat(f)) return FragmentTag::FlatKnowledge;
  return FragmentTag::General;
}

bool is_moment_determinate_syntactic(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Prop:
    case FKind::Knows:
    case FKind::Nec:
      return true;
    case FKind::Not:
      return is_moment_determinate_syntactic(f->lhs);
    case FKind::And:
      return is_moment_determinate_syntactic(f->lhs) && is_moment_determinate_syntactic(f->rhs);
    default:
      return false;
  }
}

int temporal_depth(const FormulaPtr& f) {
  if (!f) return 0;
  switch (f->kind) {
    case FKind::Prop:
    case FKind::Act:
      return 0;
    case FKind::And:
      return std::max(temporal_depth(f->lhs), temporal_depth(f->rhs));
    case FKind::Next:
    case FKind::Globally:
      return 1 + temporal_depth(f->lhs);
    default:
      return temporal_depth(f->lhs);
  }
}

RuleStrategy parse_rules(std::string_view text) {
  // header: strategy for {nats}:
  size_t colon = std::string_view::npos;
  {
    Lexer lx(text);
    if (lx.kind != Tok::Ident || lx.value != "strategy") lx.fail("expected 'strategy'");
    lx.advance();
    if (lx.kind != Tok::Ident || lx.value != "for") lx.fail("expected 'for'");
    lx.advance();
  }
  RuleStrategy rs;
  size_t brace_open = text.find('{');
  size_t brace_close = text.find('}', brace_open);
  if (brace_open == std::string_view::npos || brace_close == std::string_view::npos)
    throw ParseError(1, 1, "expected coalition braces in strategy header");
  {
    Lexer lx(text.substr(brace_open, brace_close - brace_open + 1));
    FormulaParser p{lx};
    rs.coalition = p.coalition_in_braces();
  }
  colon = text.find(':', brace_close);
  if (colon == std::string_view::npos) throw ParseError(1, 1, "expected ':' after strategy header");

  std::string body(text.substr(colon + 1));
  // rules separated by ';' or newlines
  std::vector<std::string> chunks;
  std::string cur;
  for (char c : body) {
    if (c == ';' || c == '\n') {
      chunks.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  chunks.push_back(cur);

  for (const std::string& chunk : chunks) {
    std::string stripped = chunk;
    if (size_t h = stripped.find('#'); h != std::string::npos) stripped.resize(h);
    bool blank = std::all_of(stripped.begin(), stripped.end(),
                             [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (blank) continue;
    size_t arrow = stripped.find("=>");
    if (arrow == std::string::npos) throw ParseError(1, 1, "rule is missing '=>': " + stripped);
    Rule r;
    r.condition = parse_formula(std::string_view(stripped).substr(0, arrow));
    r.effect = parse_formula(std::string_view(stripped).substr(arrow + 2));
    rs.rules.push_back(std::move(r));
  }
  if (rs.rules.empty()) throw ParseError(1, 1, "empty rule list");
  return rs;
}

std::string print_rules(const RuleStrategy& rs) {
  std::string out = "strategy for {";
  bool first = true;
  for (AgentId i : rs.coalition) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(i + 1);
  }
  out += "}:";
  for (size_t n = 0; n < rs.rules.size(); ++n) {
    out += n == 0 ? " " : "; ";
    out += print_formula(rs.rules[n].condition) + " => " + print_formula(rs.rules[n].effect);
  }
  return out;
}

CoalitionAction bind_action_atom(const Model& m, const Formula& act) {
  if (act.kind != FKind::Act) throw ModelError("not an action atom");
  CoalitionAction ca = CoalitionAction::empty(m.num_agents);
  for (const auto& [i, name] : act.bindings) {
    if (i >= m.num_agents) throw ModelError("agent " + std::to_string(i + 1) + " out of range");
    auto a = m.find_action(name);
    if (!a) throw ModelError("unknown action " + name);
    ca.assign(i, *a);
  }
  return ca;
}

}  // namespace sstit
