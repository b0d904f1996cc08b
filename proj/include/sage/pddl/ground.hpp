#pragma once

#include <map>
#include <string>
#include <vector>

#include "sage/pddl/ast.hpp"

namespace sage::pddl {

using Binding = std::map<std::string, std::string>;  // parameter name -> object

// Substitutes objects into one operator schema. Throws ValidationError if a
// parameter is missing from the binding.
GroundStep instantiate(const OperatorSchema& op, const Binding& binding);

// Every type-consistent binding of domain operators over the given objects
// (domain constants included). Ordered lexicographically by operator name
// then argument tuple.
std::vector<GroundStep> ground(const Domain& domain, const std::vector<TypedName>& objects);

// Same enumeration but drops steps whose *static* preconditions (predicates
// no operator ever adds or deletes) are false in `init`. Pruning happens
// while binding, so large static relations like grid adjacency never
// materialize dead steps.
std::vector<GroundStep> ground_reachable(const Domain& domain,
                                         const std::vector<TypedName>& objects,
                                         const SymbolicState& init);

// Predicates that never occur in any operator's atom effects.
std::vector<std::string> static_predicates(const Domain& domain);

}  // namespace sage::pddl
