#pragma once

#include <vector>

#include "sage/pddl/ast.hpp"

namespace sage::pddl {

// Evaluates a ground linear expression; throws EvaluationError when a
// referenced fluent is absent from the state.
Rat eval_expr(const SymbolicState& state, const GroundLinearExpr& expr);

bool holds_numeric(const SymbolicState& state, const GroundNumericCondition& cond);

// Closed-world truth of a ground conjunction.
bool holds(const SymbolicState& state, const GroundCondition& cond);

// True when the step's precondition holds.
bool applicable(const SymbolicState& state, const GroundStep& step);

// Applies a ground step by value: deletes before adds, then all numeric
// effects evaluated against the pre-state and written atomically. Throws
// InapplicableStepError if the precondition does not hold.
SymbolicState apply(const SymbolicState& state, const GroundStep& step);

struct SimulationResult {
  bool valid = false;
  SymbolicState final;
  // Index of the first inapplicable step, or -1 when all steps applied
  // (valid may still be false if the goal fails in the final state).
  int failed_step = -1;
};

SimulationResult simulate_plan(const SymbolicState& init, const std::vector<GroundStep>& plan,
                               const Goal& goal);

}  // namespace sage::pddl
