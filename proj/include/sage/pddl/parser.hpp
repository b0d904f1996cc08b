#pragma once

#include <stdexcept>
#include <string>

#include "sage/pddl/ast.hpp"

namespace sage::pddl {

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        column(col_) {}
};

// Grammar subset: typed STRIPS plus numeric fluents with linear expressions.
// No conditional effects, quantifiers or durative actions.
Domain parse_domain(const std::string& text);
Domain parse_domain_file(const std::string& path);

// The domain is needed to validate typing of the instance.
Instance parse_instance(const std::string& text, const Domain& domain);
Instance parse_instance_file(const std::string& path, const Domain& domain);

// Parses a ground condition such as "(and (in c4_6) (>= (wood) 2))".
// Purely syntactic; use planner::check_goal_valid for typing.
Goal parse_goal(const std::string& text);

// Pretty-printers; output re-parses to a structurally equal value.
std::string print_domain(const Domain& d);
std::string print_instance(const Instance& inst);
std::string print_goal(const Goal& g);
std::string print_state(const SymbolicState& s);  // init-block body, one entry per line

}  // namespace sage::pddl
