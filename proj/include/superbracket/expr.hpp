#pragma once

// Expression language.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' INT)?
//   atom    := INT ('/' INT)? | IDENT | '(' expr ')'
//            | 'd/d' IDENT '(' expr ')'            partial derivative (left)
//            | 'pb(' expr ',' expr ')'             even canonical bracket
//            | 'sb(' expr ',' expr ')'             Schouten bracket
//            | 'hb[' INT '](' expr ';' list ')'    higher derived bracket
//            | 'koszul(' expr ';' list ')'         higher Koszul bracket
//            | 'shift(' expr ';' expr (';' expr)? ')'
//            | 'alpha(' expr ')' | 'd(' expr ')'
//   list    := expr (',' expr)*
//
// Products keep the written order of their factors; signs from reordering odd
// factors appear only when the product is evaluated.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "superbracket/graded.hpp"

namespace superbracket::expr {

struct Location {
    int line = 1;
    int column = 1;
};

/// Parse or evaluation error pinned to a source position.
class ParseError : public Error {
public:
    ParseError(Location loc, const std::string& msg);
    Location location() const noexcept { return loc_; }
    const std::string& message() const noexcept { return msg_; }

private:
    Location loc_;
    std::string msg_;
};

enum class NodeKind { Number, Variable, Sum, Product, Negate, Power, Partial, Call };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::Number;
    Location loc;
    Rational number;                // Number (non-negative)
    std::string name;               // Variable, Partial (variable), Call (function)
    unsigned exponent = 0;          // Power; hb arity
    std::vector<NodePtr> children;  // operands; Call: head then arguments
    std::vector<int> signs;         // Sum: +1 / -1 per child
};

NodePtr parse(std::string_view text);
/// Comma-separated top-level list ("x1, d(x2)").
std::vector<NodePtr> parse_list(std::string_view text);

/// Canonical text. print(parse(print(e))) == print(e).
std::string print(const NodePtr& e);

/// Structural equality.
bool equal(const NodePtr& a, const NodePtr& b);

/// Evaluates expressions against a chart. Identifiers resolve first to named
/// values, then to chart variables. Operands on different charts are
/// re-expressed by variable name when possible.
class Evaluator {
public:
    explicit Evaluator(SpacePtr chart, std::map<std::string, Poly> names = {});

    const SpacePtr& chart() const noexcept { return chart_; }
    void define(const std::string& name, Poly value);
    const std::map<std::string, Poly>& names() const noexcept { return names_; }

    Poly eval(const NodePtr& e) const { return eval(e, chart_); }
    Poly eval(const NodePtr& e, const SpacePtr& context) const;
    Poly eval(std::string_view text) const { return eval(parse(text)); }

private:
    SpacePtr chart_;
    std::map<std::string, Poly> names_;
};

}  // namespace superbracket::expr
