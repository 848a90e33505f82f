#pragma once

#include <memory>
#include <string>

#include "heavytail/matroid.hpp"
#include "heavytail/mutation.hpp"
#include "heavytail/set_function.hpp"

namespace heavytail {

/// Fitness spec grammar shared by the CLI and the experiment harness:
///   onemax:<n>
///   jump:<m>:<n>
///   dicut:<path>[:undirected]
///   dicut+matroid:<path>:<constraint>[,undirected]
///   mi:<csvpath>:<k>[:literal]
/// Constraint specs: uniform:<k>, partition:<blockfile>.
/// Throws std::invalid_argument with a usable message on any parse or load
/// failure.
std::shared_ptr<SetFunction> make_fitness(const std::string& spec);

std::shared_ptr<Matroid> make_constraint(const std::string& spec, int ground_size);

/// Operator spec bound to a ground size; see MutationOperator::parse.
MutationOperator make_operator(const std::string& spec, int n);

}  // namespace heavytail
