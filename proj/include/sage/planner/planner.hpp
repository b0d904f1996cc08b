#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sage/pddl/ast.hpp"

namespace sage::planner {

using pddl::Domain;
using pddl::Goal;
using pddl::GroundStep;
using pddl::SymbolicState;
using pddl::TypedName;

struct PlanLimits {
  std::int64_t max_expanded_nodes = 1'000'000;
  std::int64_t wall_clock_budget_ms = 5000;
};

enum class PlanMode { Optimal, Greedy };

struct PlanRequest {
  const Domain* domain = nullptr;
  std::vector<TypedName> objects;
  SymbolicState init;
  Goal goal;
  PlanLimits limits;
  PlanMode mode = PlanMode::Greedy;
};

enum class PlanOutcome { Found, Unsolvable, LimitReached };

struct PlanStats {
  std::int64_t nodes_expanded = 0;
  double duration_ms = 0.0;
};

struct PlanResult {
  PlanOutcome outcome = PlanOutcome::Unsolvable;
  std::vector<GroundStep> steps;  // empty plans are legal (goal already holds)
  int cost = 0;                   // unit step count
  PlanStats stats;

  bool found() const { return outcome == PlanOutcome::Found; }
};

// Forward state-space search over the grounded task.
//   Optimal: breadth-first (uniform cost with unit steps); minimal length.
//   Greedy:  best-first on the goal-count heuristic, FIFO tie-break.
// Deterministic for a fixed request. Throws pddl::ValidationError for a
// goal that fails typing; use check_goal_valid to pre-screen.
PlanResult plan(const PlanRequest& req);

// Unsatisfied goal literals plus unsatisfied numeric conditions; 0 iff the
// goal holds.
int heuristic(const SymbolicState& state, const Goal& goal);

struct GoalValidity {
  bool valid = false;
  std::string reason;  // set when invalid
};

// Syntactic/typing validation only. Unsolvability is a search outcome, not
// a validity failure. Empty goals are invalid by design: a goal with no
// conjuncts would always yield an empty plan.
GoalValidity check_goal_valid(const Domain& domain, const std::vector<TypedName>& objects,
                              const Goal& goal);

}  // namespace sage::planner
