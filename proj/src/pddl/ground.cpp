#include "sage/pddl/ground.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace sage::pddl {

namespace {

std::string bind_term(const Term& t, const Binding& b) {
  if (!t.is_var) return t.name;
  auto it = b.find(t.name);
  if (it == b.end()) throw ValidationError("unbound parameter '?" + t.name + "'");
  return it->second;
}

GroundAtom bind_atom(const Atom& a, const Binding& b) {
  GroundAtom g;
  g.pred = a.pred;
  g.args.reserve(a.args.size());
  for (const auto& t : a.args) g.args.push_back(bind_term(t, b));
  return g;
}

GroundFluent bind_fluent(const FluentRef& f, const Binding& b) {
  GroundFluent g;
  g.fn = f.fn;
  g.args.reserve(f.args.size());
  for (const auto& t : f.args) g.args.push_back(bind_term(t, b));
  return g;
}

GroundLinearExpr bind_expr(const LinearExpr& e, const Binding& b) {
  GroundLinearExpr g;
  g.constant = e.constant;
  g.terms.reserve(e.terms.size());
  for (const auto& [c, f] : e.terms) g.terms.emplace_back(c, bind_fluent(f, b));
  return g;
}

struct Enumerator {
  const Domain& domain;
  std::vector<TypedName> universe;  // objects + domain constants
  const SymbolicState* init = nullptr;
  std::unordered_set<std::string> static_preds;

  std::vector<GroundStep> out;

  std::vector<std::string> candidates(const std::string& type) const {
    std::vector<std::string> names;
    for (const auto& o : universe) {
      if (domain.is_subtype(o.type, type)) names.push_back(o.name);
    }
    return names;
  }

  // True when every static literal whose arguments are already bound agrees
  // with init; unbound literals are deferred.
  bool static_ok(const OperatorSchema& op, const Binding& binding) const {
    if (init == nullptr) return true;
    for (const auto& lit : op.precondition.literals) {
      if (static_preds.count(lit.atom.pred) == 0) continue;
      bool all_bound = true;
      for (const auto& t : lit.atom.args) {
        if (t.is_var && binding.count(t.name) == 0) {
          all_bound = false;
          break;
        }
      }
      if (!all_bound) continue;
      const bool present = init->has(bind_atom(lit.atom, binding));
      if (present != lit.positive) return false;
    }
    return true;
  }

  void enumerate(const OperatorSchema& op, std::size_t param_idx, Binding& binding) {
    if (!static_ok(op, binding)) return;
    if (param_idx == op.params.size()) {
      out.push_back(instantiate(op, binding));
      return;
    }
    const auto& param = op.params[param_idx];
    for (const auto& obj : candidates(param.type)) {
      binding[param.name] = obj;
      enumerate(op, param_idx + 1, binding);
    }
    binding.erase(param.name);
  }
};

std::vector<GroundStep> ground_impl(const Domain& domain,
                                    const std::vector<TypedName>& objects,
                                    const SymbolicState* init) {
  Enumerator en{domain, {}, init, {}};
  en.universe = objects;
  for (const auto& c : domain.constants) en.universe.push_back(c);
  // Stable candidate order: sort the universe by name.
  std::sort(en.universe.begin(), en.universe.end());
  if (init != nullptr) {
    for (const auto& p : static_predicates(domain)) en.static_preds.insert(p);
  }

  std::vector<const OperatorSchema*> ops;
  for (const auto& op : domain.operators) ops.push_back(&op);
  std::sort(ops.begin(), ops.end(),
            [](const OperatorSchema* a, const OperatorSchema* b) { return a->name < b->name; });

  for (const OperatorSchema* op : ops) {
    Binding binding;
    en.enumerate(*op, 0, binding);
  }
  // Candidates are enumerated in sorted order per parameter, so steps are
  // already lexicographic within an operator; operators were sorted above.
  return std::move(en.out);
}

}  // namespace

GroundStep instantiate(const OperatorSchema& op, const Binding& binding) {
  GroundStep step;
  step.op_name = op.name;
  step.args.reserve(op.params.size());
  for (const auto& p : op.params) {
    auto it = binding.find(p.name);
    if (it == binding.end()) throw ValidationError("missing binding for '?" + p.name + "'");
    step.args.push_back(it->second);
  }
  for (const auto& lit : op.precondition.literals) {
    step.precondition.literals.push_back({bind_atom(lit.atom, binding), lit.positive});
  }
  for (const auto& nc : op.precondition.numeric) {
    step.precondition.numeric.push_back(
        {bind_expr(nc.lhs, binding), nc.op, bind_expr(nc.rhs, binding)});
  }
  for (const auto& ae : op.effects.atoms) {
    step.effects.atoms.push_back({bind_atom(ae.atom, binding), ae.add});
  }
  for (const auto& ne : op.effects.numerics) {
    step.effects.numerics.push_back(
        {ne.op, bind_fluent(ne.fluent, binding), bind_expr(ne.value, binding)});
  }
  return step;
}

std::vector<std::string> static_predicates(const Domain& domain) {
  std::set<std::string> dynamic;
  for (const auto& op : domain.operators) {
    for (const auto& eff : op.effects.atoms) dynamic.insert(eff.atom.pred);
  }
  std::vector<std::string> out;
  for (const auto& p : domain.predicates) {
    if (dynamic.count(p.name) == 0) out.push_back(p.name);
  }
  return out;
}

std::vector<GroundStep> ground(const Domain& domain, const std::vector<TypedName>& objects) {
  return ground_impl(domain, objects, nullptr);
}

std::vector<GroundStep> ground_reachable(const Domain& domain,
                                         const std::vector<TypedName>& objects,
                                         const SymbolicState& init) {
  return ground_impl(domain, objects, &init);
}

}  // namespace sage::pddl
