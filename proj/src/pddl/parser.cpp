#include "sage/pddl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <variant>

namespace sage::pddl {

namespace {

// --------------------------------------------------------------------------
// S-expression layer
// --------------------------------------------------------------------------

struct Sexp {
  // Leaf when list is empty and token non-empty.
  std::string token;
  std::vector<Sexp> list;
  bool is_leaf = false;
  int line = 0;
  int col = 0;

  bool leaf_is(const std::string& s) const { return is_leaf && token == s; }
};

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& t) : text(t) {}

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
};

Sexp parse_sexp(Lexer& lx) {
  lx.skip_ws();
  if (lx.pos >= lx.text.size()) throw ParseError(lx.line, lx.col, "unexpected end of input");
  Sexp s;
  s.line = lx.line;
  s.col = lx.col;
  const char c = lx.text[lx.pos];
  if (c == '(') {
    lx.advance();
    while (true) {
      lx.skip_ws();
      if (lx.pos >= lx.text.size()) {
        throw ParseError(s.line, s.col, "unclosed '('");
      }
      if (lx.text[lx.pos] == ')') {
        lx.advance();
        return s;
      }
      s.list.push_back(parse_sexp(lx));
    }
  }
  if (c == ')') throw ParseError(lx.line, lx.col, "unexpected ')'");
  s.is_leaf = true;
  while (lx.pos < lx.text.size()) {
    const char d = lx.text[lx.pos];
    if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
    s.token.push_back(d);
    lx.advance();
  }
  return s;
}

[[noreturn]] void fail(const Sexp& at, const std::string& msg) {
  throw ParseError(at.line, at.col, msg);
}

const std::string& expect_leaf(const Sexp& s, const std::string& what) {
  if (!s.is_leaf) fail(s, "expected " + what + ", found a list");
  return s.token;
}

bool is_number_token(const std::string& t) {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i >= t.size()) return false;
  bool digit = false;
  for (; i < t.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(t[i]))) {
      digit = true;
    } else if (t[i] != '.') {
      return false;
    }
  }
  return digit;
}

// --------------------------------------------------------------------------
// Typed name lists:  a b - t1 c - t2 d   (trailing names default to object)
// --------------------------------------------------------------------------

std::vector<TypedName> parse_typed_names(const std::vector<Sexp>& items, std::size_t begin,
                                         bool variables) {
  std::vector<TypedName> out;
  std::vector<std::string> pending;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const std::string& tok = expect_leaf(items[i], variables ? "variable" : "name");
    if (tok == "-") {
      if (i + 1 >= items.size()) fail(items[i], "missing type after '-'");
      const std::string& ty = expect_leaf(items[i + 1], "type name");
      for (auto& n : pending) out.push_back({n, ty});
      pending.clear();
      ++i;
      continue;
    }
    std::string name = tok;
    if (variables) {
      if (name.empty() || name[0] != '?') fail(items[i], "expected variable starting with '?'");
      name = name.substr(1);
    } else if (!name.empty() && name[0] == '?') {
      fail(items[i], "unexpected variable in object position");
    }
    pending.push_back(name);
  }
  for (auto& n : pending) out.push_back({n, "object"});
  return out;
}

std::vector<TypeDecl> parse_type_decls(const std::vector<Sexp>& items, std::size_t begin) {
  std::vector<TypeDecl> out;
  std::vector<std::string> pending;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const std::string& tok = expect_leaf(items[i], "type name");
    if (tok == "-") {
      if (i + 1 >= items.size()) fail(items[i], "missing parent type after '-'");
      const std::string& parent = expect_leaf(items[i + 1], "type name");
      for (auto& n : pending) out.push_back({n, parent});
      pending.clear();
      ++i;
      continue;
    }
    pending.push_back(tok);
  }
  for (auto& n : pending) out.push_back({n, "object"});
  return out;
}

Term parse_term(const Sexp& s) {
  const std::string& tok = expect_leaf(s, "term");
  if (!tok.empty() && tok[0] == '?') return Term{true, tok.substr(1)};
  return Term{false, tok};
}

Atom parse_atom(const Sexp& s) {
  if (s.is_leaf || s.list.empty()) fail(s, "expected atom '(pred args...)'");
  Atom a;
  a.pred = expect_leaf(s.list[0], "predicate name");
  for (std::size_t i = 1; i < s.list.size(); ++i) a.args.push_back(parse_term(s.list[i]));
  return a;
}

FluentRef parse_fluent_ref(const Sexp& s) {
  if (s.is_leaf || s.list.empty()) fail(s, "expected fluent '(fn args...)'");
  FluentRef f;
  f.fn = expect_leaf(s.list[0], "function name");
  for (std::size_t i = 1; i < s.list.size(); ++i) f.args.push_back(parse_term(s.list[i]));
  return f;
}

// Numeric expressions are normalized to linear form while parsing; anything
// non-linear (a product of two fluents, division by a fluent) is rejected.
LinearExpr parse_expr(const Sexp& s) {
  if (s.is_leaf) {
    if (!is_number_token(s.token)) fail(s, "expected numeric constant, found '" + s.token + "'");
    return LinearExpr::of(rat_from_decimal(s.token));
  }
  if (s.list.empty()) fail(s, "empty numeric expression");
  const std::string& head = expect_leaf(s.list[0], "operator or function name");
  if (head == "+" || head == "-") {
    if (s.list.size() < 2) fail(s, "'" + head + "' needs at least one operand");
    LinearExpr acc = parse_expr(s.list[1]);
    if (head == "-" && s.list.size() == 2) {
      acc.scale(Rat(-1));
      return acc;
    }
    for (std::size_t i = 2; i < s.list.size(); ++i) {
      LinearExpr rhs = parse_expr(s.list[i]);
      if (head == "+") {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }
  if (head == "*") {
    if (s.list.size() != 3) fail(s, "'*' needs exactly two operands");
    LinearExpr a = parse_expr(s.list[1]);
    LinearExpr b = parse_expr(s.list[2]);
    if (a.terms.empty()) {
      b.scale(a.constant);
      return b;
    }
    if (b.terms.empty()) {
      a.scale(b.constant);
      return a;
    }
    fail(s, "non-linear product of fluents");
  }
  if (head == "/") {
    if (s.list.size() != 3) fail(s, "'/' needs exactly two operands");
    LinearExpr a = parse_expr(s.list[1]);
    LinearExpr b = parse_expr(s.list[2]);
    if (!b.terms.empty()) fail(s, "division by a fluent is not linear");
    if (b.constant == Rat(0)) fail(s, "division by zero");
    a.scale(Rat(1) / b.constant);
    return a;
  }
  // Plain fluent reference.
  return LinearExpr::fluent(parse_fluent_ref(s));
}

std::optional<CmpOp> cmp_from_token(const std::string& t) {
  if (t == "<") return CmpOp::LT;
  if (t == "<=") return CmpOp::LE;
  if (t == "=") return CmpOp::EQ;
  if (t == ">=") return CmpOp::GE;
  if (t == ">") return CmpOp::GT;
  return std::nullopt;
}

void parse_condition_into(const Sexp& s, Condition& out) {
  if (s.is_leaf || s.list.empty()) fail(s, "expected condition");
  const std::string& head = expect_leaf(s.list[0], "condition head");
  if (head == "and") {
    for (std::size_t i = 1; i < s.list.size(); ++i) parse_condition_into(s.list[i], out);
    return;
  }
  if (head == "not") {
    if (s.list.size() != 2) fail(s, "'not' takes exactly one atom");
    out.literals.push_back({parse_atom(s.list[1]), false});
    return;
  }
  if (auto op = cmp_from_token(head)) {
    if (s.list.size() != 3) fail(s, "comparison needs exactly two operands");
    out.numeric.push_back({parse_expr(s.list[1]), *op, parse_expr(s.list[2])});
    return;
  }
  out.literals.push_back({parse_atom(s), true});
}

void parse_effect_into(const Sexp& s, Effects& out) {
  if (s.is_leaf || s.list.empty()) fail(s, "expected effect");
  const std::string& head = expect_leaf(s.list[0], "effect head");
  if (head == "and") {
    for (std::size_t i = 1; i < s.list.size(); ++i) parse_effect_into(s.list[i], out);
    return;
  }
  if (head == "not") {
    if (s.list.size() != 2) fail(s, "'not' takes exactly one atom");
    out.atoms.push_back({parse_atom(s.list[1]), false});
    return;
  }
  if (head == "assign" || head == "increase" || head == "decrease") {
    if (s.list.size() != 3) fail(s, "'" + head + "' needs a fluent and an expression");
    NumericEffect eff;
    eff.op = head == "assign"     ? NumOpKind::Assign
             : head == "increase" ? NumOpKind::Increase
                                  : NumOpKind::Decrease;
    eff.fluent = parse_fluent_ref(s.list[1]);
    eff.value = parse_expr(s.list[2]);
    out.numerics.push_back(std::move(eff));
    return;
  }
  out.atoms.push_back({parse_atom(s), true});
}

OperatorSchema parse_action(const Sexp& s) {
  OperatorSchema op;
  op.name = expect_leaf(s.list[1], "action name");
  std::size_t i = 2;
  while (i < s.list.size()) {
    const std::string& key = expect_leaf(s.list[i], "action section keyword");
    if (key == ":parameters") {
      if (i + 1 >= s.list.size() || s.list[i + 1].is_leaf) fail(s.list[i], "missing parameter list");
      op.params = parse_typed_names(s.list[i + 1].list, 0, /*variables=*/true);
      i += 2;
    } else if (key == ":precondition") {
      if (i + 1 >= s.list.size()) fail(s.list[i], "missing precondition");
      if (!(s.list[i + 1].list.empty() && !s.list[i + 1].is_leaf)) {
        parse_condition_into(s.list[i + 1], op.precondition);
      }
      i += 2;
    } else if (key == ":effect") {
      if (i + 1 >= s.list.size()) fail(s.list[i], "missing effect");
      parse_effect_into(s.list[i + 1], op.effects);
      i += 2;
    } else {
      fail(s.list[i], "unsupported action section '" + key + "'");
    }
  }
  return op;
}

Sexp parse_top(const std::string& text) {
  Lexer lx(text);
  Sexp top = parse_sexp(lx);
  if (!lx.eof()) throw ParseError(lx.line, lx.col, "trailing input after top-level form");
  if (top.is_leaf || top.list.empty() || !top.list[0].leaf_is("define")) {
    fail(top, "expected '(define ...)'");
  }
  return top;
}

GroundAtom require_ground_atom(const Atom& a, const Sexp& at) {
  GroundAtom g;
  g.pred = a.pred;
  for (const Term& t : a.args) {
    if (t.is_var) fail(at, "variable not allowed here");
    g.args.push_back(t.name);
  }
  return g;
}

GroundFluent require_ground_fluent(const FluentRef& f, const Sexp& at) {
  GroundFluent g;
  g.fn = f.fn;
  for (const Term& t : f.args) {
    if (t.is_var) fail(at, "variable not allowed here");
    g.args.push_back(t.name);
  }
  return g;
}

GroundLinearExpr require_ground_expr(const LinearExpr& e, const Sexp& at) {
  GroundLinearExpr g;
  g.constant = e.constant;
  for (const auto& [c, f] : e.terms) g.terms.emplace_back(c, require_ground_fluent(f, at));
  return g;
}

Goal ground_condition_from(const Sexp& s) {
  Condition cond;
  parse_condition_into(s, cond);
  Goal goal;
  for (const auto& lit : cond.literals) {
    goal.literals.push_back({require_ground_atom(lit.atom, s), lit.positive});
  }
  for (const auto& nc : cond.numeric) {
    goal.numeric.push_back(
        {require_ground_expr(nc.lhs, s), nc.op, require_ground_expr(nc.rhs, s)});
  }
  return goal;
}

}  // namespace

Domain parse_domain(const std::string& text) {
  const Sexp top = parse_top(text);
  Domain d;
  bool named = false;
  for (std::size_t i = 1; i < top.list.size(); ++i) {
    const Sexp& sec = top.list[i];
    if (sec.is_leaf || sec.list.empty()) fail(sec, "expected domain section");
    const std::string& head = expect_leaf(sec.list[0], "section head");
    if (head == "domain") {
      d.name = expect_leaf(sec.list[1], "domain name");
      named = true;
    } else if (head == ":requirements") {
      // Accepted and ignored; the engine supports one fixed subset.
    } else if (head == ":types") {
      d.types = parse_type_decls(sec.list, 1);
    } else if (head == ":constants") {
      d.constants = parse_typed_names(sec.list, 1, /*variables=*/false);
    } else if (head == ":predicates") {
      for (std::size_t j = 1; j < sec.list.size(); ++j) {
        const Sexp& p = sec.list[j];
        if (p.is_leaf || p.list.empty()) fail(p, "expected predicate declaration");
        PredicateSchema ps;
        ps.name = expect_leaf(p.list[0], "predicate name");
        ps.params = parse_typed_names(p.list, 1, /*variables=*/true);
        d.predicates.push_back(std::move(ps));
      }
    } else if (head == ":functions") {
      for (std::size_t j = 1; j < sec.list.size(); ++j) {
        const Sexp& f = sec.list[j];
        if (f.is_leaf || f.list.empty()) fail(f, "expected function declaration");
        FunctionSchema fs;
        fs.name = expect_leaf(f.list[0], "function name");
        fs.params = parse_typed_names(f.list, 1, /*variables=*/true);
        d.functions.push_back(std::move(fs));
      }
    } else if (head == ":action") {
      d.operators.push_back(parse_action(sec));
    } else {
      fail(sec, "unsupported domain section '" + head + "'");
    }
  }
  if (!named) fail(top, "missing '(domain name)' declaration");
  d.validate();
  return d;
}

Instance parse_instance(const std::string& text, const Domain& domain) {
  const Sexp top = parse_top(text);
  Instance inst;
  for (std::size_t i = 1; i < top.list.size(); ++i) {
    const Sexp& sec = top.list[i];
    if (sec.is_leaf || sec.list.empty()) fail(sec, "expected problem section");
    const std::string& head = expect_leaf(sec.list[0], "section head");
    if (head == "problem") {
      inst.name = expect_leaf(sec.list[1], "problem name");
    } else if (head == ":domain") {
      inst.domain_name = expect_leaf(sec.list[1], "domain name");
    } else if (head == ":objects") {
      inst.objects = parse_typed_names(sec.list, 1, /*variables=*/false);
    } else if (head == ":init") {
      for (std::size_t j = 1; j < sec.list.size(); ++j) {
        const Sexp& item = sec.list[j];
        if (item.is_leaf || item.list.empty()) fail(item, "expected init entry");
        const std::string& h = expect_leaf(item.list[0], "init entry head");
        if (h == "=") {
          if (item.list.size() != 3) fail(item, "'=' init entry needs fluent and value");
          GroundFluent f = require_ground_fluent(parse_fluent_ref(item.list[1]), item);
          const std::string& num = expect_leaf(item.list[2], "numeric value");
          if (!is_number_token(num)) fail(item.list[2], "expected numeric constant");
          inst.init.fluents[f] = rat_from_decimal(num);
        } else {
          inst.init.atoms.insert(require_ground_atom(parse_atom(item), item));
        }
      }
    } else if (head == ":goal") {
      if (sec.list.size() != 2) fail(sec, "':goal' takes one condition");
      inst.goal = ground_condition_from(sec.list[1]);
    } else {
      fail(sec, "unsupported problem section '" + head + "'");
    }
  }
  validate_instance(domain, inst);
  return inst;
}

Goal parse_goal(const std::string& text) {
  Lexer lx(text);
  const Sexp s = parse_sexp(lx);
  if (!lx.eof()) throw ParseError(lx.line, lx.col, "trailing input after goal");
  return ground_condition_from(s);
}

Domain parse_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open domain file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_domain(ss.str());
}

Instance parse_instance_file(const std::string& path, const Domain& domain) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), domain);
}

}  // namespace sage::pddl
