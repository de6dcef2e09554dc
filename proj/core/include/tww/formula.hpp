#pragma once

#include <string>
#include <vector>

#include "tww/binary_structure.hpp"
#include "tww/caps.hpp"

namespace tww {

// Quantifier-free boolean body. Atoms reference variable slots: bound
// variables occupy slots 0..l-1 in prefix order, free variables follow in
// first-occurrence order. E(x,y) is sugar for the relation named "E".
struct BodyNode {
    enum class Kind { And, Or, Not, Eq, Rel, Unary };
    Kind kind = Kind::Eq;
    int a = -1, b = -1;
    std::string name;
    std::vector<BodyNode> kids;
};

struct PrenexFormula {
    std::vector<char> exists;        // one flag per bound variable, outermost first
    std::vector<std::string> names;  // bound slots then free slots
    BodyNode body;

    int depth() const { return static_cast<int>(exists.size()); }
    int free_count() const { return static_cast<int>(names.size()) - depth(); }
};

// Grammar: quantifier prefix of `E ident` / `A ident`, then a boolean body
// over atoms `x=y`, `E(x,y)`, `Rname(x,y)`, `Uname(x)` with `&`, `|`, `!`
// and parentheses. Free variables are collected, not rejected; callers that
// need a sentence check free_count(). Syntax errors carry the position.
PrenexFormula parse_formula(const std::string& text);

// Accepts quantifiers at any depth (scope extends to the end of the
// enclosing group), pushes negation through them, and hoists them in
// left-to-right order. Variable names must be globally distinct.
PrenexFormula to_prenex(const std::string& text);

std::string to_string(const PrenexFormula& f);

// Recursive quantifier expansion over the domain; `frees` pins the free
// slots. The total assignment count n^l must stay within caps.brute.
bool brute_force_check(const BinaryStructure& s, const PrenexFormula& f, const Caps& caps = {},
                       const std::vector<Vertex>& frees = {});

}  // namespace tww
