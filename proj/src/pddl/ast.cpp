#include "sage/pddl/ast.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace sage::pddl {

LinearExpr& LinearExpr::operator+=(const LinearExpr& o) {
  constant += o.constant;
  for (const auto& [c, f] : o.terms) {
    auto it = std::find_if(terms.begin(), terms.end(),
                           [&](const auto& t) { return t.second == f; });
    if (it == terms.end()) {
      terms.emplace_back(c, f);
    } else {
      it->first += c;
      if (it->first == Rat(0)) terms.erase(it);
    }
  }
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& o) {
  LinearExpr neg = o;
  neg.scale(Rat(-1));
  return *this += neg;
}

void LinearExpr::scale(const Rat& k) {
  constant *= k;
  if (k == Rat(0)) {
    terms.clear();
    return;
  }
  for (auto& [c, f] : terms) c *= k;
}

const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::LT: return "<";
    case CmpOp::LE: return "<=";
    case CmpOp::EQ: return "=";
    case CmpOp::GE: return ">=";
    case CmpOp::GT: return ">";
  }
  return "?";
}

bool Domain::has_type(const std::string& t) const {
  if (t == "object") return true;
  return std::any_of(types.begin(), types.end(),
                     [&](const TypeDecl& d) { return d.name == t; });
}

bool Domain::is_subtype(const std::string& t, const std::string& ancestor) const {
  if (ancestor == "object") return true;
  std::string cur = t;
  for (std::size_t guard = 0; guard <= types.size(); ++guard) {
    if (cur == ancestor) return true;
    if (cur == "object") return false;
    auto it = std::find_if(types.begin(), types.end(),
                           [&](const TypeDecl& d) { return d.name == cur; });
    if (it == types.end()) return false;
    cur = it->parent;
  }
  return false;  // cycle guard tripped
}

const PredicateSchema* Domain::find_predicate(const std::string& n) const {
  for (const auto& p : predicates)
    if (p.name == n) return &p;
  return nullptr;
}

const FunctionSchema* Domain::find_function(const std::string& n) const {
  for (const auto& f : functions)
    if (f.name == n) return &f;
  return nullptr;
}

const OperatorSchema* Domain::find_operator(const std::string& n) const {
  for (const auto& o : operators)
    if (o.name == n) return &o;
  return nullptr;
}

namespace {

void check_type_exists(const Domain& d, const std::string& t, const std::string& where) {
  if (!d.has_type(t)) {
    throw ValidationError("undeclared type '" + t + "' referenced in " + where);
  }
}

void check_atom(const Domain& d, const Atom& a,
                const std::map<std::string, std::string>& param_types,
                const std::string& where) {
  const PredicateSchema* ps = d.find_predicate(a.pred);
  if (ps == nullptr) {
    throw ValidationError("undeclared predicate '" + a.pred + "' in " + where);
  }
  if (ps->params.size() != a.args.size()) {
    throw ValidationError("arity mismatch for predicate '" + a.pred + "' in " + where +
                          ": expected " + std::to_string(ps->params.size()) + ", got " +
                          std::to_string(a.args.size()));
  }
  for (const Term& t : a.args) {
    if (t.is_var && param_types.count(t.name) == 0) {
      throw ValidationError("unbound variable '?" + t.name + "' in " + where);
    }
  }
}

void check_fluent(const Domain& d, const FluentRef& f,
                  const std::map<std::string, std::string>& param_types,
                  const std::string& where) {
  const FunctionSchema* fs = d.find_function(f.fn);
  if (fs == nullptr) {
    throw ValidationError("undeclared function '" + f.fn + "' in " + where);
  }
  if (fs->params.size() != f.args.size()) {
    throw ValidationError("arity mismatch for function '" + f.fn + "' in " + where);
  }
  for (const Term& t : f.args) {
    if (t.is_var && param_types.count(t.name) == 0) {
      throw ValidationError("unbound variable '?" + t.name + "' in " + where);
    }
  }
}

void check_expr(const Domain& d, const LinearExpr& e,
                const std::map<std::string, std::string>& param_types,
                const std::string& where) {
  for (const auto& [c, f] : e.terms) check_fluent(d, f, param_types, where);
}

}  // namespace

void Domain::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& t : types) {
    if (!seen.insert(t.name).second) {
      throw ValidationError("duplicate type '" + t.name + "'");
    }
    if (t.parent != "object") check_type_exists(*this, t.parent, "type declaration");
  }
  seen.clear();
  for (const auto& p : predicates) {
    if (!seen.insert(p.name).second) {
      throw ValidationError("duplicate predicate '" + p.name + "'");
    }
    for (const auto& arg : p.params) check_type_exists(*this, arg.type, "predicate " + p.name);
  }
  for (const auto& f : functions) {
    if (!seen.insert(f.name).second) {
      throw ValidationError("duplicate function '" + f.name + "'");
    }
    for (const auto& arg : f.params) check_type_exists(*this, arg.type, "function " + f.name);
  }
  for (const auto& c : constants) check_type_exists(*this, c.type, "constant " + c.name);

  std::unordered_set<std::string> op_names;
  for (const auto& op : operators) {
    const std::string where = "operator " + op.name;
    if (!op_names.insert(op.name).second) {
      throw ValidationError("duplicate operator '" + op.name + "'");
    }
    std::map<std::string, std::string> param_types;
    for (const auto& p : op.params) {
      check_type_exists(*this, p.type, where);
      if (!param_types.emplace(p.name, p.type).second) {
        throw ValidationError("duplicate parameter '?" + p.name + "' in " + where);
      }
    }
    for (const auto& lit : op.precondition.literals) {
      check_atom(*this, lit.atom, param_types, where + " precondition");
    }
    for (const auto& nc : op.precondition.numeric) {
      check_expr(*this, nc.lhs, param_types, where + " precondition");
      check_expr(*this, nc.rhs, param_types, where + " precondition");
    }
    std::set<Atom> added, deleted;
    for (const auto& eff : op.effects.atoms) {
      check_atom(*this, eff.atom, param_types, where + " effect");
      (eff.add ? added : deleted).insert(eff.atom);
    }
    for (const auto& a : added) {
      if (deleted.count(a) > 0) {
        throw ValidationError("operator '" + op.name + "' both adds and deletes atom '" +
                              a.pred + "'");
      }
    }
    for (const auto& eff : op.effects.numerics) {
      check_fluent(*this, eff.fluent, param_types, where + " effect");
      check_expr(*this, eff.value, param_types, where + " effect");
    }
  }
}

namespace {

using ObjectTypes = std::map<std::string, std::string>;

ObjectTypes object_scope(const Domain& domain, const std::vector<TypedName>& objects) {
  ObjectTypes scope;
  for (const auto& c : domain.constants) scope[c.name] = c.type;
  for (const auto& o : objects) scope[o.name] = o.type;
  return scope;
}

std::optional<std::string> check_ground_atom(const Domain& d, const ObjectTypes& scope,
                                             const GroundAtom& a) {
  const PredicateSchema* ps = d.find_predicate(a.pred);
  if (ps == nullptr) return "undeclared predicate '" + a.pred + "'";
  if (ps->params.size() != a.args.size()) {
    return "arity mismatch for '" + a.pred + "': expected " +
           std::to_string(ps->params.size()) + " args, got " + std::to_string(a.args.size());
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    auto it = scope.find(a.args[i]);
    if (it == scope.end()) return "unknown object '" + a.args[i] + "' in '" + a.pred + "'";
    if (!d.is_subtype(it->second, ps->params[i].type)) {
      return "object '" + a.args[i] + "' of type '" + it->second + "' not compatible with '" +
             ps->params[i].type + "' in '" + a.pred + "'";
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_ground_fluent(const Domain& d, const ObjectTypes& scope,
                                               const GroundFluent& f) {
  const FunctionSchema* fs = d.find_function(f.fn);
  if (fs == nullptr) return "undeclared function '" + f.fn + "'";
  if (fs->params.size() != f.args.size()) {
    return "arity mismatch for function '" + f.fn + "'";
  }
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    auto it = scope.find(f.args[i]);
    if (it == scope.end()) return "unknown object '" + f.args[i] + "' in '(" + f.fn + ")'";
    if (!d.is_subtype(it->second, fs->params[i].type)) {
      return "object '" + f.args[i] + "' incompatible with function '" + f.fn + "'";
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_ground_expr(const Domain& d, const ObjectTypes& scope,
                                             const GroundLinearExpr& e) {
  for (const auto& [c, f] : e.terms) {
    if (auto err = check_ground_fluent(d, scope, f)) return err;
  }
  return std::nullopt;
}

}  // namespace

void validate_instance(const Domain& domain, const Instance& inst) {
  const ObjectTypes scope = object_scope(domain, inst.objects);
  for (const auto& o : inst.objects) {
    if (!domain.has_type(o.type)) {
      throw ValidationError("object '" + o.name + "' has undeclared type '" + o.type + "'");
    }
  }
  for (const auto& a : inst.init.atoms) {
    if (auto err = check_ground_atom(domain, scope, a)) throw ValidationError("init: " + *err);
  }
  for (const auto& [f, v] : inst.init.fluents) {
    if (auto err = check_ground_fluent(domain, scope, f)) throw ValidationError("init: " + *err);
  }
  if (!inst.goal.empty()) {
    if (auto err = goal_type_error(domain, inst.objects, inst.goal)) {
      throw ValidationError("goal: " + *err);
    }
  }
}

std::optional<std::string> goal_type_error(const Domain& domain,
                                           const std::vector<TypedName>& objects,
                                           const Goal& goal) {
  if (goal.empty()) return "empty goal";
  const ObjectTypes scope = object_scope(domain, objects);
  for (const auto& lit : goal.literals) {
    if (auto err = check_ground_atom(domain, scope, lit.atom)) return err;
  }
  for (const auto& nc : goal.numeric) {
    if (auto err = check_ground_expr(domain, scope, nc.lhs)) return err;
    if (auto err = check_ground_expr(domain, scope, nc.rhs)) return err;
  }
  return std::nullopt;
}

std::string GroundStep::signature() const {
  std::ostringstream os;
  os << op_name << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) os << ' ';
    os << args[i];
  }
  os << ')';
  return os.str();
}

}  // namespace sage::pddl
