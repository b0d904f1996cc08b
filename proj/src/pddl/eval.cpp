#include "sage/pddl/eval.hpp"

namespace sage::pddl {

Rat eval_expr(const SymbolicState& state, const GroundLinearExpr& expr) {
  Rat acc = expr.constant;
  for (const auto& [coeff, fluent] : expr.terms) {
    auto it = state.fluents.find(fluent);
    if (it == state.fluents.end()) {
      std::string name = "(" + fluent.fn;
      for (const auto& a : fluent.args) name += " " + a;
      throw EvaluationError("fluent " + name + ") not present in state");
    }
    acc += coeff * it->second;
  }
  return acc;
}

bool holds_numeric(const SymbolicState& state, const GroundNumericCondition& cond) {
  const Rat l = eval_expr(state, cond.lhs);
  const Rat r = eval_expr(state, cond.rhs);
  switch (cond.op) {
    case CmpOp::LT: return l < r;
    case CmpOp::LE: return l <= r;
    case CmpOp::EQ: return l == r;
    case CmpOp::GE: return l >= r;
    case CmpOp::GT: return l > r;
  }
  return false;
}

bool holds(const SymbolicState& state, const GroundCondition& cond) {
  for (const auto& lit : cond.literals) {
    if (state.has(lit.atom) != lit.positive) return false;
  }
  for (const auto& nc : cond.numeric) {
    if (!holds_numeric(state, nc)) return false;
  }
  return true;
}

bool applicable(const SymbolicState& state, const GroundStep& step) {
  return holds(state, step.precondition);
}

SymbolicState apply(const SymbolicState& state, const GroundStep& step) {
  if (!applicable(state, step)) {
    throw InapplicableStepError("step " + step.signature() + " not applicable");
  }
  SymbolicState next = state;
  for (const auto& eff : step.effects.atoms) {
    if (!eff.add) next.atoms.erase(eff.atom);
  }
  for (const auto& eff : step.effects.atoms) {
    if (eff.add) next.atoms.insert(eff.atom);
  }
  // All right-hand sides read the pre-state so multi-fluent updates commute.
  std::vector<std::pair<GroundFluent, Rat>> writes;
  writes.reserve(step.effects.numerics.size());
  for (const auto& eff : step.effects.numerics) {
    const Rat v = eval_expr(state, eff.value);
    switch (eff.op) {
      case NumOpKind::Assign:
        writes.emplace_back(eff.fluent, v);
        break;
      case NumOpKind::Increase: {
        auto it = state.fluents.find(eff.fluent);
        if (it == state.fluents.end()) {
          throw EvaluationError("increase of missing fluent (" + eff.fluent.fn + ")");
        }
        writes.emplace_back(eff.fluent, it->second + v);
        break;
      }
      case NumOpKind::Decrease: {
        auto it = state.fluents.find(eff.fluent);
        if (it == state.fluents.end()) {
          throw EvaluationError("decrease of missing fluent (" + eff.fluent.fn + ")");
        }
        writes.emplace_back(eff.fluent, it->second - v);
        break;
      }
    }
  }
  for (auto& [f, v] : writes) next.fluents[f] = v;
  return next;
}

SimulationResult simulate_plan(const SymbolicState& init, const std::vector<GroundStep>& plan,
                               const Goal& goal) {
  SimulationResult res;
  res.final = init;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (!applicable(res.final, plan[i])) {
      res.valid = false;
      res.failed_step = static_cast<int>(i);
      return res;
    }
    res.final = apply(res.final, plan[i]);
  }
  res.valid = holds(res.final, goal);
  return res;
}

}  // namespace sage::pddl
