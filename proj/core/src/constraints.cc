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

#include "cctg/constraints.h"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <utility>

#include "cctg/error.h"

namespace cctg {

namespace {

using Node = ConstraintFormula::Node;
using NodePtr = ConstraintFormula::NodePtr;
using Op = ConstraintFormula::Op;

NodePtr MakeAtom(Op op, std::string param, std::uint32_t value) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->param = std::move(param);
  node->value = value;
  return node;
}

NodePtr MakeInner(Op op, std::vector<NodePtr> children) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->children = std::move(children);
  return node;
}

}  // namespace

ConstraintFormula ConstraintFormula::Eq(std::string param, std::uint32_t value) {
  return ConstraintFormula(MakeAtom(Op::kEq, std::move(param), value));
}
ConstraintFormula ConstraintFormula::Ne(std::string param, std::uint32_t value) {
  return ConstraintFormula(MakeAtom(Op::kNe, std::move(param), value));
}
ConstraintFormula ConstraintFormula::Excluded(std::string param) {
  return ConstraintFormula(MakeAtom(Op::kExcluded, std::move(param), 0));
}
ConstraintFormula ConstraintFormula::Not(ConstraintFormula f) {
  return ConstraintFormula(MakeInner(Op::kNot, {f.root()}));
}
ConstraintFormula ConstraintFormula::And(ConstraintFormula a, ConstraintFormula b) {
  return ConstraintFormula(MakeInner(Op::kAnd, {a.root(), b.root()}));
}
ConstraintFormula ConstraintFormula::Or(ConstraintFormula a, ConstraintFormula b) {
  return ConstraintFormula(MakeInner(Op::kOr, {a.root(), b.root()}));
}
ConstraintFormula ConstraintFormula::Implies(ConstraintFormula a, ConstraintFormula b) {
  return ConstraintFormula(MakeInner(Op::kImplies, {a.root(), b.root()}));
}

namespace {

bool SameNode(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->param != b->param || a->value != b->value ||
      a->children.size() != b->children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!SameNode(a->children[i], b->children[i])) return false;
  }
  return true;
}

}  // namespace

bool ConstraintFormula::SameTree(const ConstraintFormula& other) const {
  return SameNode(root_, other.root_);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

// Token scanner over the expression string. Positions are 1-based columns.
class Lexer {
 public:
  enum class Kind {
    kEnd, kIdent, kInt, kLParen, kRParen,
    kNot, kNe, kEq, kAnd, kOr, kImplies,
  };

  struct Token {
    Kind kind;
    std::string text;
    std::uint32_t number = 0;
    int column = 0;
  };

  explicit Lexer(std::string_view text) : text_(text) { Advance(); }

  const Token& peek() const { return current_; }

  Token Take() {
    Token t = current_;
    Advance();
    return t;
  }

 private:
  void Advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    current_.column = static_cast<int>(pos_) + 1;
    if (pos_ >= text_.size()) {
      current_.kind = Kind::kEnd;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (c == '(') { Single(Kind::kLParen); return; }
    if (c == ')') { Single(Kind::kRParen); return; }
    if (c == '=') { Single(Kind::kEq); return; }
    if (c == '!') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        current_.kind = Kind::kNe;
        current_.text = "!=";
        pos_ += 2;
      } else {
        Single(Kind::kNot);
      }
      return;
    }
    if (c == '&' || c == '|') {
      if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != c) {
        throw ParseError(std::string("expected '") + c + c + "'", 0,
                         current_.column);
      }
      current_.kind = c == '&' ? Kind::kAnd : Kind::kOr;
      current_.text = std::string(2, c);
      pos_ += 2;
      return;
    }
    if (c == '-') {
      if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '>') {
        throw ParseError("expected '->'", 0, current_.column);
      }
      current_.kind = Kind::kImplies;
      current_.text = "->";
      pos_ += 2;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      std::uint64_t value = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        if (value > std::numeric_limits<std::uint32_t>::max()) {
          throw ParseError("value index too large", 0,
                           static_cast<int>(start) + 1);
        }
        ++pos_;
      }
      current_.kind = Kind::kInt;
      current_.text = std::string(text_.substr(start, pos_ - start));
      current_.number = static_cast<std::uint32_t>(value);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      current_.kind = Kind::kIdent;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", 0,
                     current_.column);
  }

  void Single(Kind kind) {
    current_.kind = kind;
    current_.text = text_.substr(pos_, 1);
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

// Recursive descent over: implies > or > and > not > primary.
class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) {}

  NodePtr Parse() {
    NodePtr expr = ParseImplies();
    const auto& t = lexer_.peek();
    if (t.kind != Lexer::Kind::kEnd) {
      throw ParseError("unexpected trailing input", 0, t.column);
    }
    return expr;
  }

 private:
  NodePtr ParseImplies() {
    NodePtr left = ParseOr();
    if (lexer_.peek().kind == Lexer::Kind::kImplies) {
      lexer_.Take();
      NodePtr right = ParseImplies();   // right-associative
      return MakeInner(Op::kImplies, {std::move(left), std::move(right)});
    }
    return left;
  }

  NodePtr ParseOr() {
    NodePtr left = ParseAnd();
    while (lexer_.peek().kind == Lexer::Kind::kOr) {
      lexer_.Take();
      left = MakeInner(Op::kOr, {std::move(left), ParseAnd()});
    }
    return left;
  }

  NodePtr ParseAnd() {
    NodePtr left = ParseUnary();
    while (lexer_.peek().kind == Lexer::Kind::kAnd) {
      lexer_.Take();
      left = MakeInner(Op::kAnd, {std::move(left), ParseUnary()});
    }
    return left;
  }

  NodePtr ParseUnary() {
    if (lexer_.peek().kind == Lexer::Kind::kNot) {
      lexer_.Take();
      return MakeInner(Op::kNot, {ParseUnary()});
    }
    return ParsePrimary();
  }

  NodePtr ParsePrimary() {
    Lexer::Token t = lexer_.Take();
    if (t.kind == Lexer::Kind::kLParen) {
      NodePtr inner = ParseImplies();
      Expect(Lexer::Kind::kRParen, "')'");
      return inner;
    }
    if (t.kind == Lexer::Kind::kIdent) {
      if (t.text == "excluded" &&
          lexer_.peek().kind == Lexer::Kind::kLParen) {
        lexer_.Take();
        Lexer::Token name = lexer_.Take();
        if (name.kind != Lexer::Kind::kIdent) {
          throw ParseError("expected parameter name in excluded(...)", 0,
                           name.column);
        }
        Expect(Lexer::Kind::kRParen, "')'");
        return MakeAtom(Op::kExcluded, name.text, 0);
      }
      Lexer::Token op = lexer_.Take();
      if (op.kind == Lexer::Kind::kEq || op.kind == Lexer::Kind::kNe) {
        Lexer::Token value = lexer_.Take();
        if (value.kind != Lexer::Kind::kInt) {
          throw ParseError("expected value index", 0, value.column);
        }
        return MakeAtom(op.kind == Lexer::Kind::kEq ? Op::kEq : Op::kNe,
                        t.text, value.number);
      }
      throw ParseError("expected '=' or '!=' after parameter name", 0,
                       op.column);
    }
    throw ParseError("expected atom or '('", 0, t.column);
  }

  void Expect(Lexer::Kind kind, const char* what) {
    Lexer::Token t = lexer_.Take();
    if (t.kind != kind) {
      throw ParseError(std::string("expected ") + what, 0, t.column);
    }
  }

  Lexer lexer_;
};

}  // namespace

ConstraintFormula ParseConstraint(std::string_view text) {
  Parser parser(text);
  return ConstraintFormula(parser.Parse());
}

namespace {

int Precedence(Op op) {
  switch (op) {
    case Op::kImplies: return 0;
    case Op::kOr: return 1;
    case Op::kAnd: return 2;
    case Op::kNot: return 3;
    default: return 4;
  }
}

void FormatNode(const NodePtr& node, int parent_prec, std::string& out) {
  int prec = Precedence(node->op);
  switch (node->op) {
    case Op::kEq:
      out += node->param + "=" + std::to_string(node->value);
      return;
    case Op::kNe:
      out += node->param + "!=" + std::to_string(node->value);
      return;
    case Op::kExcluded:
      out += "excluded(" + node->param + ")";
      return;
    case Op::kNot:
      out += "!";
      FormatNode(node->children[0], prec, out);
      return;
    default:
      break;
  }
  const char* sep = node->op == Op::kAnd   ? " && "
                    : node->op == Op::kOr  ? " || "
                                           : " -> ";
  bool parens = prec < parent_prec ||
                (node->op == Op::kImplies && parent_prec == 0);
  if (parens) out += "(";
  FormatNode(node->children[0], prec + 1, out);
  out += sep;
  // Right operand of -> keeps the same level: right-associative.
  FormatNode(node->children[1], node->op == Op::kImplies ? prec : prec + 1,
             out);
  if (parens) out += ")";
}

}  // namespace

std::string FormatConstraint(const ConstraintFormula& formula) {
  std::string out;
  if (!formula.empty()) FormatNode(formula.root(), 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Binding and evaluation

namespace {

NodePtr BindNode(const NodePtr& node,
                 const std::vector<Parameter>& parameters) {
  auto bound = std::make_shared<Node>(*node);
  if (node->op == Op::kEq || node->op == Op::kNe ||
      node->op == Op::kExcluded) {
    int index = -1;
    for (std::size_t i = 0; i < parameters.size(); ++i) {
      if (parameters[i].name == node->param) {
        index = static_cast<int>(i);
        break;
      }
    }
    if (index < 0) {
      throw ValidationError("constraint references unknown parameter '" +
                            node->param + "'");
    }
    if (node->op != Op::kExcluded &&
        node->value >= parameters[index].EffectiveSize()) {
      throw ValidationError(
          "constraint value index " + std::to_string(node->value) +
          " out of bounds for parameter '" + node->param + "' (size " +
          std::to_string(parameters[index].EffectiveSize()) + ")");
    }
    bound->param_index = index;
  } else {
    bound->children.clear();
    for (const NodePtr& child : node->children) {
      bound->children.push_back(BindNode(child, parameters));
    }
  }
  return bound;
}

bool EvalNode(const NodePtr& node, const TestCase& tc) {
  switch (node->op) {
    case Op::kEq:
      return tc.assignment[node->param_index] == node->value;
    case Op::kNe:
      return tc.assignment[node->param_index] != node->value;
    case Op::kExcluded:
      return tc.assignment[node->param_index] == 0;
    case Op::kNot:
      return !EvalNode(node->children[0], tc);
    case Op::kAnd:
      return EvalNode(node->children[0], tc) &&
             EvalNode(node->children[1], tc);
    case Op::kOr:
      return EvalNode(node->children[0], tc) ||
             EvalNode(node->children[1], tc);
    case Op::kImplies:
      return !EvalNode(node->children[0], tc) ||
             EvalNode(node->children[1], tc);
  }
  return false;
}

void CheckBound(const NodePtr& node) {
  if (node->op == Op::kEq || node->op == Op::kNe ||
      node->op == Op::kExcluded) {
    if (node->param_index < 0) {
      throw ValidationError("constraint evaluated before binding: '" +
                            node->param + "' unresolved");
    }
    return;
  }
  for (const NodePtr& child : node->children) CheckBound(child);
}

}  // namespace

ConstraintFormula BindConstraint(const ConstraintFormula& formula,
                                 const std::vector<Parameter>& parameters) {
  if (formula.empty()) return formula;
  return ConstraintFormula(BindNode(formula.root(), parameters));
}

bool Evaluate(const ConstraintFormula& formula, const TestCase& tc) {
  if (formula.empty()) return true;
  CheckBound(formula.root());
  return EvalNode(formula.root(), tc);
}

bool EvaluateAll(const std::vector<ConstraintFormula>& formulas,
                 const TestCase& tc) {
  for (const ConstraintFormula& f : formulas) {
    if (!Evaluate(f, tc)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Satisfiability

namespace {

enum class Tri { kFalse, kTrue, kUnknown };

Tri TriNot(Tri v) {
  if (v == Tri::kUnknown) return Tri::kUnknown;
  return v == Tri::kTrue ? Tri::kFalse : Tri::kTrue;
}

// Three-valued evaluation over a partial assignment (-1 = unassigned).
Tri EvalPartial(const NodePtr& node, const std::vector<std::int64_t>& assign) {
  switch (node->op) {
    case Op::kEq: {
      std::int64_t v = assign[node->param_index];
      if (v < 0) return Tri::kUnknown;
      return v == node->value ? Tri::kTrue : Tri::kFalse;
    }
    case Op::kNe: {
      std::int64_t v = assign[node->param_index];
      if (v < 0) return Tri::kUnknown;
      return v != node->value ? Tri::kTrue : Tri::kFalse;
    }
    case Op::kExcluded: {
      std::int64_t v = assign[node->param_index];
      if (v < 0) return Tri::kUnknown;
      return v == 0 ? Tri::kTrue : Tri::kFalse;
    }
    case Op::kNot:
      return TriNot(EvalPartial(node->children[0], assign));
    case Op::kAnd: {
      Tri a = EvalPartial(node->children[0], assign);
      if (a == Tri::kFalse) return Tri::kFalse;
      Tri b = EvalPartial(node->children[1], assign);
      if (b == Tri::kFalse) return Tri::kFalse;
      if (a == Tri::kTrue && b == Tri::kTrue) return Tri::kTrue;
      return Tri::kUnknown;
    }
    case Op::kOr: {
      Tri a = EvalPartial(node->children[0], assign);
      if (a == Tri::kTrue) return Tri::kTrue;
      Tri b = EvalPartial(node->children[1], assign);
      if (b == Tri::kTrue) return Tri::kTrue;
      if (a == Tri::kFalse && b == Tri::kFalse) return Tri::kFalse;
      return Tri::kUnknown;
    }
    case Op::kImplies: {
      Tri a = EvalPartial(node->children[0], assign);
      Tri b = EvalPartial(node->children[1], assign);
      if (a == Tri::kFalse || b == Tri::kTrue) return Tri::kTrue;
      if (a == Tri::kTrue && b == Tri::kFalse) return Tri::kFalse;
      return Tri::kUnknown;
    }
  }
  return Tri::kUnknown;
}

struct SatSearch {
  const std::vector<Parameter>& parameters;
  const std::vector<ConstraintFormula>& formulas;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<std::vector<std::uint32_t>> domains;
  std::vector<std::int64_t> assign;

  bool Dfs(std::size_t index) {
    if (index == parameters.size()) return true;
    for (std::uint32_t value : domains[index]) {
      if (++nodes > budget) {
        throw ResourceLimitError(
            "satisfiability search exceeded node budget of " +
            std::to_string(budget));
      }
      assign[index] = value;
      bool viable = true;
      for (const ConstraintFormula& f : formulas) {
        if (EvalPartial(f.root(), assign) == Tri::kFalse) {
          viable = false;
          break;
        }
      }
      if (viable && Dfs(index + 1)) return true;
      assign[index] = -1;
    }
    return false;
  }
};

}  // namespace

SatResult IsSatisfiable(const std::vector<Parameter>& parameters,
                        const std::vector<ConstraintFormula>& formulas,
                        std::uint64_t node_budget) {
  for (const ConstraintFormula& f : formulas) {
    if (!f.empty()) CheckBound(f.root());
  }

  // Per-parameter candidate values, default index first so that an
  // unconstrained model yields the default case as witness.
  std::vector<std::vector<std::uint32_t>> domains(parameters.size());
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    const Parameter& p = parameters[i];
    domains[i].push_back(p.default_index);
    for (std::uint32_t v = 0; v < p.EffectiveSize(); ++v) {
      if (v != p.default_index) domains[i].push_back(v);
    }
  }

  // Unit-style pruning: top-level atoms restrict domains up front.
  for (const ConstraintFormula& f : formulas) {
    if (f.empty()) continue;
    const Node& n = *f.root();
    if (n.op == Op::kEq) {
      auto& d = domains[n.param_index];
      bool present = std::find(d.begin(), d.end(), n.value) != d.end();
      d.clear();
      if (present) d.push_back(n.value);
    } else if (n.op == Op::kExcluded) {
      auto& d = domains[n.param_index];
      bool present = std::find(d.begin(), d.end(), 0u) != d.end();
      d.clear();
      if (present) d.push_back(0);
    } else if (n.op == Op::kNe) {
      auto& d = domains[n.param_index];
      d.erase(std::remove(d.begin(), d.end(), n.value), d.end());
    }
  }

  SatSearch search{parameters, formulas, node_budget};
  search.domains = std::move(domains);
  search.assign.assign(parameters.size(), -1);

  SatResult result;
  if (search.Dfs(0)) {
    result.satisfiable = true;
    result.witness.assignment.reserve(parameters.size());
    for (std::int64_t v : search.assign) {
      result.witness.assignment.push_back(static_cast<std::uint32_t>(v));
    }
  }
  result.nodes_visited = search.nodes;
  return result;
}

}  // namespace cctg
