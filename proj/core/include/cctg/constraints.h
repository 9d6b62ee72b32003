// Copyright 2026 The CCTG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CCTG_CONSTRAINTS_H_
#define CCTG_CONSTRAINTS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cctg/parameter.h"

namespace cctg {

// Boolean formula over parameter-value atoms. Atoms are `name = index`,
// `name != index` and `excluded(name)`; connectives are !, &&, || and ->
// (right-associative implication). A model's constraint set is the
// conjunction of its formulas. Formulas are immutable once built.
class ConstraintFormula {
 public:
  enum class Op { kEq, kNe, kExcluded, kNot, kAnd, kOr, kImplies };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Op op;
    std::string param;           // atoms only
    std::uint32_t value = 0;     // kEq / kNe
    int param_index = -1;        // resolved by BindConstraint()
    std::vector<NodePtr> children;
  };

  ConstraintFormula() = default;
  explicit ConstraintFormula(NodePtr root) : root_(std::move(root)) {}

  static ConstraintFormula Eq(std::string param, std::uint32_t value);
  static ConstraintFormula Ne(std::string param, std::uint32_t value);
  static ConstraintFormula Excluded(std::string param);
  static ConstraintFormula Not(ConstraintFormula f);
  static ConstraintFormula And(ConstraintFormula a, ConstraintFormula b);
  static ConstraintFormula Or(ConstraintFormula a, ConstraintFormula b);
  static ConstraintFormula Implies(ConstraintFormula a, ConstraintFormula b);

  const NodePtr& root() const { return root_; }
  bool empty() const { return root_ == nullptr; }

  // Structural equality on (op, param, value); binding state is ignored.
  bool SameTree(const ConstraintFormula& other) const;

 private:
  NodePtr root_;
};

// Parses a constraint expression. Grammar, loosest binding first:
//
//   expr    := or_expr ('->' expr)?
//   or_expr := and_expr ('||' and_expr)*
//   and_expr:= unary ('&&' unary)*
//   unary   := '!' unary | primary
//   primary := '(' expr ')' | 'excluded' '(' NAME ')'
//            | NAME '=' INT | NAME '!=' INT
//
// Parameter names are not resolved here; unknown-name and out-of-bounds
// errors surface when the formula is bound to a model.
// Throws ParseError with a 1-based column on malformed input.
ConstraintFormula ParseConstraint(std::string_view text);

// Renders a formula back to expression-string form.
std::string FormatConstraint(const ConstraintFormula& formula);

// Resolves atom names against `parameters` and bounds-checks value indices
// against each parameter's effective value list. Returns a bound copy.
// Throws ValidationError on unknown names or out-of-range indices.
ConstraintFormula BindConstraint(const ConstraintFormula& formula,
                                 const std::vector<Parameter>& parameters);

// Evaluates a bound formula under a complete assignment.
bool Evaluate(const ConstraintFormula& formula, const TestCase& tc);

// True iff every formula holds (vacuously true for an empty list).
bool EvaluateAll(const std::vector<ConstraintFormula>& formulas,
                 const TestCase& tc);

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000;

struct SatResult {
  bool satisfiable = false;
  TestCase witness;             // populated when satisfiable
  std::uint64_t nodes_visited = 0;
};

// Backtracking search for a constraint-satisfying assignment. Values are
// tried default-first, so an unconstrained model yields the default test
// case as witness. Throws ResourceLimitError when the search would exceed
// `node_budget` assignments.
SatResult IsSatisfiable(const std::vector<Parameter>& parameters,
                        const std::vector<ConstraintFormula>& formulas,
                        std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace cctg

#endif  // CCTG_CONSTRAINTS_H_
