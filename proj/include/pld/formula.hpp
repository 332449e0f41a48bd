#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pld/graph.hpp"

namespace pld::logic {

// First-order formulas over the graph vocabulary (binary E and equality).
// Concrete syntax: `exists x.` / `forall x.` / `E(x,y)` / `x = y` / `!` `&`
// `|` `->` and parentheses; precedence ! > & > | > ->; quantifier bodies
// extend as far right as possible; variables match [a-z][a-z0-9_]*.
enum class Kind { AtomE, AtomEq, Not, And, Or, Implies, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    Kind kind;
    std::string v1, v2;   // atoms: operand variables; quantifiers: v1 is bound
    FormulaPtr lhs, rhs;  // Not/quantifiers use lhs only
};

FormulaPtr f_edge(std::string x, std::string y);
FormulaPtr f_eq(std::string x, std::string y);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(std::string var, FormulaPtr body);
FormulaPtr f_forall(std::string var, FormulaPtr body);

struct ParseError : std::invalid_argument {
    ParseError(std::size_t position, const std::string& message)
        : std::invalid_argument("parse error at offset " + std::to_string(position) + ": " + message),
          pos(position) {}
    std::size_t pos;
};

FormulaPtr parse_formula(const std::string& text);
// like parse_formula but rejects free variables
FormulaPtr parse_sentence(const std::string& text);

std::string to_string(const Formula& f);
bool structurally_equal(const Formula& a, const Formula& b);

int quantifier_rank(const Formula& f);
std::set<std::string> free_variables(const Formula& f);

using Assignment = std::map<std::string, int>;

// The AST compiled to a flat slot-indexed program; evaluation is Tarskian
// truth under brute-force quantifier expansion, worst case
// O(n^rank * |formula|). Immutable and safe to share across threads.
class CompiledFormula {
public:
    explicit CompiledFormula(const Formula& f);
    bool evaluate(const Graph& g, const Assignment& a = {}) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// one-shot convenience over CompiledFormula
bool evaluate(const Graph& g, const Formula& f, const Assignment& a = {});

}  // namespace pld::logic
