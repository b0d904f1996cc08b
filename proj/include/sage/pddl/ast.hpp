#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sage/common/rational.hpp"

namespace sage::pddl {

// ---------------------------------------------------------------------------
// Schema-level AST (operator bodies may mention variables).
// ---------------------------------------------------------------------------

struct TypedName {
  std::string name;
  std::string type;
  auto operator<=>(const TypedName&) const = default;
};

struct TypeDecl {
  std::string name;
  std::string parent;  // "object" is the implicit root
  auto operator<=>(const TypeDecl&) const = default;
};

struct PredicateSchema {
  std::string name;
  std::vector<TypedName> params;
  auto operator<=>(const PredicateSchema&) const = default;
};

struct FunctionSchema {
  std::string name;
  std::vector<TypedName> params;
  auto operator<=>(const FunctionSchema&) const = default;
};

// A term is either a variable (?x) or an object constant.
struct Term {
  bool is_var = false;
  std::string name;
  auto operator<=>(const Term&) const = default;
};

struct Atom {
  std::string pred;
  std::vector<Term> args;
  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

// Linear expression over fluent terms, kept in canonical form:
//   constant + sum(coeff_i * fluent_i(args)).
struct FluentRef {
  std::string fn;
  std::vector<Term> args;
  auto operator<=>(const FluentRef&) const = default;
};

struct LinearExpr {
  Rat constant{0};
  std::vector<std::pair<Rat, FluentRef>> terms;

  bool operator==(const LinearExpr&) const = default;

  static LinearExpr of(Rat c) {
    LinearExpr e;
    e.constant = c;
    return e;
  }
  static LinearExpr fluent(FluentRef f) {
    LinearExpr e;
    e.terms.emplace_back(Rat(1), std::move(f));
    return e;
  }
  LinearExpr& operator+=(const LinearExpr& o);
  LinearExpr& operator-=(const LinearExpr& o);
  void scale(const Rat& k);
};

enum class CmpOp { LT, LE, EQ, GE, GT };

const char* cmp_op_text(CmpOp op);

struct NumericCondition {
  LinearExpr lhs;
  CmpOp op = CmpOp::EQ;
  LinearExpr rhs;
  bool operator==(const NumericCondition&) const = default;
};

// Flat conjunction: positive/negative literals plus numeric comparisons.
struct Condition {
  std::vector<Literal> literals;
  std::vector<NumericCondition> numeric;
  bool operator==(const Condition&) const = default;
};

struct AtomEffect {
  Atom atom;
  bool add = true;  // false: delete
  auto operator<=>(const AtomEffect&) const = default;
};

enum class NumOpKind { Assign, Increase, Decrease };

struct NumericEffect {
  NumOpKind op = NumOpKind::Assign;
  FluentRef fluent;
  LinearExpr value;
  bool operator==(const NumericEffect&) const = default;
};

struct Effects {
  std::vector<AtomEffect> atoms;
  std::vector<NumericEffect> numerics;
  bool operator==(const Effects&) const = default;
};

struct OperatorSchema {
  std::string name;
  std::vector<TypedName> params;
  Condition precondition;
  Effects effects;
  bool operator==(const OperatorSchema&) const = default;
};

struct Domain {
  std::string name;
  std::vector<TypeDecl> types;
  std::vector<TypedName> constants;
  std::vector<PredicateSchema> predicates;
  std::vector<FunctionSchema> functions;
  std::vector<OperatorSchema> operators;

  bool operator==(const Domain&) const = default;

  bool has_type(const std::string& t) const;
  // Walks the parent chain; every type is a subtype of "object".
  bool is_subtype(const std::string& t, const std::string& ancestor) const;
  const PredicateSchema* find_predicate(const std::string& name) const;
  const FunctionSchema* find_function(const std::string& name) const;
  const OperatorSchema* find_operator(const std::string& name) const;

  // Enforces the structural invariants; throws ValidationError.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Ground level (all arguments bound to objects).
// ---------------------------------------------------------------------------

struct GroundAtom {
  std::string pred;
  std::vector<std::string> args;
  auto operator<=>(const GroundAtom&) const = default;
};

struct GroundFluent {
  std::string fn;
  std::vector<std::string> args;
  auto operator<=>(const GroundFluent&) const = default;
};

struct GroundLiteral {
  GroundAtom atom;
  bool positive = true;
  auto operator<=>(const GroundLiteral&) const = default;
};

struct GroundLinearExpr {
  Rat constant{0};
  std::vector<std::pair<Rat, GroundFluent>> terms;
  bool operator==(const GroundLinearExpr&) const = default;
};

struct GroundNumericCondition {
  GroundLinearExpr lhs;
  CmpOp op = CmpOp::EQ;
  GroundLinearExpr rhs;
  bool operator==(const GroundNumericCondition&) const = default;
};

struct GroundCondition {
  std::vector<GroundLiteral> literals;
  std::vector<GroundNumericCondition> numeric;
  bool operator==(const GroundCondition&) const = default;
  bool empty() const { return literals.empty() && numeric.empty(); }
};

// A goal is a ground conjunction that may constrain only part of the state.
using Goal = GroundCondition;

struct GroundAtomEffect {
  GroundAtom atom;
  bool add = true;
  auto operator<=>(const GroundAtomEffect&) const = default;
};

struct GroundNumericEffect {
  NumOpKind op = NumOpKind::Assign;
  GroundFluent fluent;
  GroundLinearExpr value;
  bool operator==(const GroundNumericEffect&) const = default;
};

struct GroundEffects {
  std::vector<GroundAtomEffect> atoms;
  std::vector<GroundNumericEffect> numerics;
  bool operator==(const GroundEffects&) const = default;
};

// A grounded planning operator: the planner's unit of output and the
// low-level controller's unit of work.
struct GroundStep {
  std::string op_name;
  std::vector<std::string> args;
  GroundCondition precondition;
  GroundEffects effects;

  bool operator==(const GroundStep&) const = default;
  std::string signature() const;  // "pickup(p0 c2_2)"
};

// Closed-world symbolic state: absent atoms are false; fluents are exact.
struct SymbolicState {
  std::set<GroundAtom> atoms;
  std::map<GroundFluent, Rat> fluents;

  bool operator==(const SymbolicState&) const = default;
  bool has(const GroundAtom& a) const { return atoms.count(a) > 0; }
};

struct Instance {
  std::string name;
  std::string domain_name;
  std::vector<TypedName> objects;
  SymbolicState init;
  Goal goal;
  bool operator==(const Instance&) const = default;
};

// Checks typing of objects, init and goal against the domain; throws
// ValidationError. Domain constants are implicitly in scope.
void validate_instance(const Domain& domain, const Instance& inst);

// Typing check for a single ground condition given an object environment.
// Returns an error description, or nullopt when well-typed. An empty
// condition is reported as invalid ("empty goal").
std::optional<std::string> goal_type_error(const Domain& domain,
                                           const std::vector<TypedName>& objects,
                                           const Goal& goal);

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InapplicableStepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sage::pddl
