#include <algorithm>
#include <map>
#include <sstream>

#include "sage/pddl/parser.hpp"

namespace sage::pddl {

namespace {

void print_term(std::ostream& os, const Term& t) {
  if (t.is_var) os << '?';
  os << t.name;
}

void print_atom(std::ostream& os, const Atom& a) {
  os << '(' << a.pred;
  for (const auto& t : a.args) {
    os << ' ';
    print_term(os, t);
  }
  os << ')';
}

void print_fluent(std::ostream& os, const FluentRef& f) {
  os << '(' << f.fn;
  for (const auto& t : f.args) {
    os << ' ';
    print_term(os, t);
  }
  os << ')';
}

void print_expr(std::ostream& os, const LinearExpr& e) {
  // constant + sum of scaled fluents, emitted as nested (+ ...) forms.
  std::vector<std::string> parts;
  for (const auto& [c, f] : e.terms) {
    std::ostringstream t;
    if (c == Rat(1)) {
      print_fluent(t, f);
    } else {
      t << "(* " << rat_to_pddl(c) << ' ';
      print_fluent(t, f);
      t << ')';
    }
    parts.push_back(t.str());
  }
  if (e.constant != Rat(0) || parts.empty()) parts.push_back(rat_to_pddl(e.constant));
  if (parts.size() == 1) {
    os << parts[0];
    return;
  }
  os << "(+";
  for (const auto& p : parts) os << ' ' << p;
  os << ')';
}

void print_typed_names(std::ostream& os, const std::vector<TypedName>& names, bool variables) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) os << ' ';
    if (variables) os << '?';
    os << names[i].name << " - " << names[i].type;
  }
}

void print_condition(std::ostream& os, const Condition& c) {
  std::vector<std::string> parts;
  for (const auto& lit : c.literals) {
    std::ostringstream t;
    if (!lit.positive) t << "(not ";
    print_atom(t, lit.atom);
    if (!lit.positive) t << ')';
    parts.push_back(t.str());
  }
  for (const auto& nc : c.numeric) {
    std::ostringstream t;
    t << '(' << cmp_op_text(nc.op) << ' ';
    print_expr(t, nc.lhs);
    t << ' ';
    print_expr(t, nc.rhs);
    t << ')';
    parts.push_back(t.str());
  }
  if (parts.empty()) {
    os << "(and)";
    return;
  }
  if (parts.size() == 1) {
    os << parts[0];
    return;
  }
  os << "(and";
  for (const auto& p : parts) os << ' ' << p;
  os << ')';
}

void print_effects(std::ostream& os, const Effects& e) {
  std::vector<std::string> parts;
  for (const auto& ae : e.atoms) {
    std::ostringstream t;
    if (!ae.add) t << "(not ";
    print_atom(t, ae.atom);
    if (!ae.add) t << ')';
    parts.push_back(t.str());
  }
  for (const auto& ne : e.numerics) {
    std::ostringstream t;
    t << '('
      << (ne.op == NumOpKind::Assign     ? "assign"
          : ne.op == NumOpKind::Increase ? "increase"
                                         : "decrease")
      << ' ';
    print_fluent(t, ne.fluent);
    t << ' ';
    print_expr(t, ne.value);
    t << ')';
    parts.push_back(t.str());
  }
  if (parts.size() == 1) {
    os << parts[0];
    return;
  }
  os << "(and";
  for (const auto& p : parts) os << ' ' << p;
  os << ')';
}

template <class GroundThing>
void print_ground(std::ostream& os, const std::string& head,
                  const std::vector<std::string>& args) {
  os << '(' << head;
  for (const auto& a : args) os << ' ' << a;
  os << ')';
}

void print_ground_atom(std::ostream& os, const GroundAtom& a) {
  print_ground<GroundAtom>(os, a.pred, a.args);
}

void print_ground_fluent(std::ostream& os, const GroundFluent& f) {
  print_ground<GroundFluent>(os, f.fn, f.args);
}

void print_ground_expr(std::ostream& os, const GroundLinearExpr& e) {
  std::vector<std::string> parts;
  for (const auto& [c, f] : e.terms) {
    std::ostringstream t;
    if (c == Rat(1)) {
      print_ground_fluent(t, f);
    } else {
      t << "(* " << rat_to_pddl(c) << ' ';
      print_ground_fluent(t, f);
      t << ')';
    }
    parts.push_back(t.str());
  }
  if (e.constant != Rat(0) || parts.empty()) parts.push_back(rat_to_pddl(e.constant));
  if (parts.size() == 1) {
    os << parts[0];
    return;
  }
  os << "(+";
  for (const auto& p : parts) os << ' ' << p;
  os << ')';
}

}  // namespace

std::string print_goal(const Goal& g) {
  std::ostringstream os;
  std::vector<std::string> parts;
  for (const auto& lit : g.literals) {
    std::ostringstream t;
    if (!lit.positive) t << "(not ";
    print_ground_atom(t, lit.atom);
    if (!lit.positive) t << ')';
    parts.push_back(t.str());
  }
  for (const auto& nc : g.numeric) {
    std::ostringstream t;
    t << '(' << cmp_op_text(nc.op) << ' ';
    print_ground_expr(t, nc.lhs);
    t << ' ';
    print_ground_expr(t, nc.rhs);
    t << ')';
    parts.push_back(t.str());
  }
  if (parts.size() == 1) {
    os << parts[0];
    return os.str();
  }
  os << "(and";
  for (const auto& p : parts) os << ' ' << p;
  os << ')';
  return os.str();
}

std::string print_state(const SymbolicState& s) {
  std::ostringstream os;
  for (const auto& a : s.atoms) {
    os << "    ";
    print_ground_atom(os, a);
    os << '\n';
  }
  for (const auto& [f, v] : s.fluents) {
    os << "    (= ";
    print_ground_fluent(os, f);
    os << ' ' << rat_to_pddl(v) << ")\n";
  }
  return os.str();
}

std::string print_domain(const Domain& d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  if (!d.types.empty()) {
    os << "  (:types";
    for (const auto& t : d.types) os << ' ' << t.name << " - " << t.parent;
    os << ")\n";
  }
  if (!d.constants.empty()) {
    os << "  (:constants ";
    print_typed_names(os, d.constants, false);
    os << ")\n";
  }
  if (!d.predicates.empty()) {
    os << "  (:predicates\n";
    for (const auto& p : d.predicates) {
      os << "    (" << p.name;
      if (!p.params.empty()) {
        os << ' ';
        print_typed_names(os, p.params, true);
      }
      os << ")\n";
    }
    os << "  )\n";
  }
  if (!d.functions.empty()) {
    os << "  (:functions\n";
    for (const auto& f : d.functions) {
      os << "    (" << f.name;
      if (!f.params.empty()) {
        os << ' ';
        print_typed_names(os, f.params, true);
      }
      os << ")\n";
    }
    os << "  )\n";
  }
  for (const auto& op : d.operators) {
    os << "  (:action " << op.name << "\n    :parameters (";
    print_typed_names(os, op.params, true);
    os << ")\n    :precondition ";
    print_condition(os, op.precondition);
    os << "\n    :effect ";
    print_effects(os, op.effects);
    os << "\n  )\n";
  }
  os << ")\n";
  return os.str();
}

std::string print_instance(const Instance& inst) {
  std::ostringstream os;
  os << "(define (problem " << inst.name << ")\n  (:domain " << inst.domain_name << ")\n";
  os << "  (:objects ";
  print_typed_names(os, inst.objects, false);
  os << ")\n  (:init\n" << print_state(inst.init) << "  )\n";
  if (!inst.goal.empty()) {
    os << "  (:goal " << print_goal(inst.goal) << ")\n";
  }
  os << ")\n";
  return os.str();
}

}  // namespace sage::pddl
