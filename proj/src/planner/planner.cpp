#include "sage/planner/planner.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <queue>
#include <unordered_map>

#include "sage/pddl/eval.hpp"
#include "sage/pddl/ground.hpp"

namespace sage::planner {

namespace {

using pddl::CmpOp;
using pddl::EvaluationError;
using pddl::GroundAtom;
using pddl::GroundFluent;
using pddl::GroundLinearExpr;
using pddl::NumOpKind;
using pddl::Rat;

using AtomId = std::uint32_t;
using FluentId = std::uint32_t;

struct IndexedExpr {
  Rat constant{0};
  std::vector<std::pair<Rat, FluentId>> terms;

  Rat eval(const std::vector<Rat>& fluents) const {
    Rat acc = constant;
    for (const auto& [c, f] : terms) acc += c * fluents[f];
    return acc;
  }
};

// Normalized as (lhs - rhs) op 0.
struct IndexedNumCond {
  IndexedExpr diff;
  CmpOp op = CmpOp::EQ;

  bool holds(const std::vector<Rat>& fluents) const {
    const Rat v = diff.eval(fluents);
    switch (op) {
      case CmpOp::LT: return v < Rat(0);
      case CmpOp::LE: return v <= Rat(0);
      case CmpOp::EQ: return v == Rat(0);
      case CmpOp::GE: return v >= Rat(0);
      case CmpOp::GT: return v > Rat(0);
    }
    return false;
  }
};

struct IndexedNumEff {
  NumOpKind op = NumOpKind::Assign;
  FluentId fluent = 0;
  IndexedExpr value;
};

struct IndexedStep {
  std::uint32_t source = 0;  // index into the grounded step list
  std::vector<AtomId> pre_pos, pre_neg;
  std::vector<IndexedNumCond> pre_num;
  std::vector<AtomId> adds, dels;
  std::vector<IndexedNumEff> num_effs;
};

struct SearchState {
  std::vector<AtomId> atoms;  // sorted
  std::vector<Rat> fluents;   // dense

  bool operator==(const SearchState&) const = default;
};

struct SearchStateHash {
  std::size_t operator()(const SearchState& s) const noexcept {
    std::size_t h = 0x811c9dc5u;
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (AtomId a : s.atoms) mix(a);
    for (const Rat& r : s.fluents) mix(std::hash<Rat>{}(r));
    return h;
  }
};

struct Task {
  std::map<GroundAtom, AtomId> atom_ids;
  std::map<GroundFluent, FluentId> fluent_ids;
  std::vector<IndexedStep> steps;
  std::vector<IndexedNumCond> goal_num;
  std::vector<AtomId> goal_pos, goal_neg;
  bool goal_has_unknown_atom = false;  // positive goal atom outside the universe

  AtomId intern_atom(const GroundAtom& a) {
    auto [it, inserted] = atom_ids.emplace(a, static_cast<AtomId>(atom_ids.size()));
    return it->second;
  }

  FluentId fluent_id(const GroundFluent& f) const {
    auto it = fluent_ids.find(f);
    if (it == fluent_ids.end()) {
      throw EvaluationError("fluent (" + f.fn + ") referenced by task but absent from state");
    }
    return it->second;
  }

  IndexedExpr index_expr(const GroundLinearExpr& e) const {
    IndexedExpr out;
    out.constant = e.constant;
    for (const auto& [c, f] : e.terms) out.terms.emplace_back(c, fluent_id(f));
    return out;
  }
};

bool step_applicable(const IndexedStep& step, const SearchState& s) {
  for (AtomId a : step.pre_pos) {
    if (!std::binary_search(s.atoms.begin(), s.atoms.end(), a)) return false;
  }
  for (AtomId a : step.pre_neg) {
    if (std::binary_search(s.atoms.begin(), s.atoms.end(), a)) return false;
  }
  for (const auto& nc : step.pre_num) {
    if (!nc.holds(s.fluents)) return false;
  }
  return true;
}

SearchState successor(const IndexedStep& step, const SearchState& s) {
  SearchState next;
  next.atoms.reserve(s.atoms.size() + step.adds.size());
  // Deletes first, then adds (sorted merge keeps the vector ordered).
  for (AtomId a : s.atoms) {
    if (!std::binary_search(step.dels.begin(), step.dels.end(), a)) next.atoms.push_back(a);
  }
  for (AtomId a : step.adds) {
    auto it = std::lower_bound(next.atoms.begin(), next.atoms.end(), a);
    if (it == next.atoms.end() || *it != a) next.atoms.insert(it, a);
  }
  next.fluents = s.fluents;
  for (const auto& ne : step.num_effs) {
    const Rat v = ne.value.eval(s.fluents);  // pre-state values
    switch (ne.op) {
      case NumOpKind::Assign: next.fluents[ne.fluent] = v; break;
      case NumOpKind::Increase: next.fluents[ne.fluent] = s.fluents[ne.fluent] + v; break;
      case NumOpKind::Decrease: next.fluents[ne.fluent] = s.fluents[ne.fluent] - v; break;
    }
  }
  return next;
}

bool goal_holds(const Task& task, const SearchState& s) {
  if (task.goal_has_unknown_atom) return false;
  for (AtomId a : task.goal_pos) {
    if (!std::binary_search(s.atoms.begin(), s.atoms.end(), a)) return false;
  }
  for (AtomId a : task.goal_neg) {
    if (std::binary_search(s.atoms.begin(), s.atoms.end(), a)) return false;
  }
  for (const auto& nc : task.goal_num) {
    if (!nc.holds(s.fluents)) return false;
  }
  return true;
}

int goal_count(const Task& task, const SearchState& s) {
  int h = task.goal_has_unknown_atom ? 1 : 0;
  for (AtomId a : task.goal_pos) {
    if (!std::binary_search(s.atoms.begin(), s.atoms.end(), a)) ++h;
  }
  for (AtomId a : task.goal_neg) {
    if (std::binary_search(s.atoms.begin(), s.atoms.end(), a)) ++h;
  }
  for (const auto& nc : task.goal_num) {
    if (!nc.holds(s.fluents)) ++h;
  }
  return h;
}

struct Node {
  SearchState state;
  std::int32_t parent = -1;
  std::int32_t via_step = -1;
};

}  // namespace

int heuristic(const SymbolicState& state, const Goal& goal) {
  int h = 0;
  for (const auto& lit : goal.literals) {
    if (state.has(lit.atom) != lit.positive) ++h;
  }
  for (const auto& nc : goal.numeric) {
    if (!pddl::holds_numeric(state, nc)) ++h;
  }
  return h;
}

GoalValidity check_goal_valid(const Domain& domain, const std::vector<TypedName>& objects,
                              const Goal& goal) {
  if (auto err = pddl::goal_type_error(domain, objects, goal)) {
    return {false, *err};
  }
  return {true, ""};
}

PlanResult plan(const PlanRequest& req) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();

  if (req.domain == nullptr) throw pddl::ValidationError("plan request without domain");
  if (req.limits.max_expanded_nodes <= 0 || req.limits.wall_clock_budget_ms <= 0) {
    throw pddl::ValidationError("plan limits must be strictly positive");
  }
  if (auto err = pddl::goal_type_error(*req.domain, req.objects, req.goal)) {
    throw pddl::ValidationError("malformed goal: " + *err);
  }

  const std::vector<GroundStep> grounded =
      pddl::ground_reachable(*req.domain, req.objects, req.init);

  Task task;
  // Universe: init atoms first, then anything the steps mention.
  for (const auto& a : req.init.atoms) task.intern_atom(a);
  for (const auto& step : grounded) {
    for (const auto& lit : step.precondition.literals) task.intern_atom(lit.atom);
    for (const auto& eff : step.effects.atoms) task.intern_atom(eff.atom);
  }
  for (const auto& [f, v] : req.init.fluents) {
    task.fluent_ids.emplace(f, static_cast<FluentId>(task.fluent_ids.size()));
  }

  task.steps.reserve(grounded.size());
  for (std::uint32_t i = 0; i < grounded.size(); ++i) {
    const GroundStep& g = grounded[i];
    IndexedStep is;
    is.source = i;
    for (const auto& lit : g.precondition.literals) {
      (lit.positive ? is.pre_pos : is.pre_neg).push_back(task.atom_ids.at(lit.atom));
    }
    for (const auto& nc : g.precondition.numeric) {
      IndexedExpr diff = task.index_expr(nc.lhs);
      const IndexedExpr rhs = task.index_expr(nc.rhs);
      diff.constant -= rhs.constant;
      for (const auto& [c, f] : rhs.terms) {
        auto it = std::find_if(diff.terms.begin(), diff.terms.end(),
                               [&](const auto& t) { return t.second == f; });
        if (it == diff.terms.end()) {
          diff.terms.emplace_back(-c, f);
        } else {
          it->first -= c;
        }
      }
      is.pre_num.push_back({std::move(diff), nc.op});
    }
    for (const auto& eff : g.effects.atoms) {
      (eff.add ? is.adds : is.dels).push_back(task.atom_ids.at(eff.atom));
    }
    for (const auto& ne : g.effects.numerics) {
      is.num_effs.push_back({ne.op, task.fluent_id(ne.fluent), task.index_expr(ne.value)});
    }
    std::sort(is.adds.begin(), is.adds.end());
    std::sort(is.dels.begin(), is.dels.end());
    task.steps.push_back(std::move(is));
  }

  for (const auto& lit : req.goal.literals) {
    auto it = task.atom_ids.find(lit.atom);
    if (it == task.atom_ids.end()) {
      // Never mentioned anywhere: a positive literal is unreachable, a
      // negative one trivially true.
      if (lit.positive) task.goal_has_unknown_atom = true;
      continue;
    }
    (lit.positive ? task.goal_pos : task.goal_neg).push_back(it->second);
  }
  for (const auto& nc : req.goal.numeric) {
    IndexedExpr diff = task.index_expr(nc.lhs);
    const IndexedExpr rhs = task.index_expr(nc.rhs);
    diff.constant -= rhs.constant;
    for (const auto& [c, f] : rhs.terms) {
      auto it = std::find_if(diff.terms.begin(), diff.terms.end(),
                             [&](const auto& t) { return t.second == f; });
      if (it == diff.terms.end()) {
        diff.terms.emplace_back(-c, f);
      } else {
        it->first -= c;
      }
    }
    task.goal_num.push_back({std::move(diff), nc.op});
  }

  SearchState init;
  init.atoms.reserve(req.init.atoms.size());
  for (const auto& a : req.init.atoms) init.atoms.push_back(task.atom_ids.at(a));
  std::sort(init.atoms.begin(), init.atoms.end());
  init.fluents.resize(task.fluent_ids.size());
  for (const auto& [f, v] : req.init.fluents) init.fluents[task.fluent_ids.at(f)] = v;

  PlanResult res;
  auto finish = [&](PlanOutcome outcome, std::vector<GroundStep> steps) {
    res.outcome = outcome;
    res.steps = std::move(steps);
    res.cost = static_cast<int>(res.steps.size());
    res.stats.duration_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return res;
  };

  if (goal_holds(task, init)) return finish(PlanOutcome::Found, {});

  std::vector<Node> nodes;
  nodes.push_back({std::move(init), -1, -1});
  std::unordered_map<SearchState, std::uint32_t, SearchStateHash> seen;
  seen.emplace(nodes[0].state, 0u);

  auto reconstruct = [&](std::int32_t leaf) {
    std::vector<GroundStep> steps;
    for (std::int32_t i = leaf; nodes[i].parent >= 0; i = nodes[i].parent) {
      steps.push_back(grounded[task.steps[nodes[i].via_step].source]);
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  };

  const bool optimal = req.mode == PlanMode::Optimal;

  // Frontier: BFS deque for optimal mode, (h, seq) min-heap for greedy.
  std::deque<std::uint32_t> fifo;
  using HeapEntry = std::pair<std::pair<int, std::uint64_t>, std::uint32_t>;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  std::uint64_t seq = 0;
  if (optimal) {
    fifo.push_back(0);
  } else {
    heap.push({{goal_count(task, nodes[0].state), seq++}, 0});
  }

  while (optimal ? !fifo.empty() : !heap.empty()) {
    std::uint32_t cur;
    if (optimal) {
      cur = fifo.front();
      fifo.pop_front();
    } else {
      cur = heap.top().second;
      heap.pop();
    }

    ++res.stats.nodes_expanded;
    if (res.stats.nodes_expanded > req.limits.max_expanded_nodes) {
      return finish(PlanOutcome::LimitReached, {});
    }
    if ((res.stats.nodes_expanded & 0xff) == 0) {
      const auto ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      if (ms > static_cast<double>(req.limits.wall_clock_budget_ms)) {
        return finish(PlanOutcome::LimitReached, {});
      }
    }

    // Copy: nodes may reallocate while we push successors.
    const SearchState state = nodes[cur].state;
    for (std::uint32_t si = 0; si < task.steps.size(); ++si) {
      const IndexedStep& step = task.steps[si];
      if (!step_applicable(step, state)) continue;
      SearchState next = successor(step, state);
      auto [it, inserted] = seen.emplace(next, static_cast<std::uint32_t>(nodes.size()));
      if (!inserted) continue;
      nodes.push_back({std::move(next), static_cast<std::int32_t>(cur),
                       static_cast<std::int32_t>(si)});
      const std::uint32_t id = static_cast<std::uint32_t>(nodes.size() - 1);
      if (goal_holds(task, nodes.back().state)) {
        return finish(PlanOutcome::Found, reconstruct(static_cast<std::int32_t>(id)));
      }
      if (optimal) {
        fifo.push_back(id);
      } else {
        heap.push({{goal_count(task, nodes.back().state), seq++}, id});
      }
    }
  }

  return finish(PlanOutcome::Unsolvable, {});
}

}  // namespace sage::planner
