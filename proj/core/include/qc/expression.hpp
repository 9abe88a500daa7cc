#pragma once

// Rational-function expressions over chart coordinates.
//
// Grammar (whitespace insignificant):
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := ("-")? base ("^" integer)?
//   base   := rational | identifier | "(" expr ")"
//   rational := integer ("/" positive-integer)?
//
// A leading rational is read greedily, so "3/2^2" is (3/2)^2.

#include "qc/field.hpp"
#include "qc/jet.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qc {

class Expression {
public:
    enum class Kind { Constant, Symbol, Negate, Add, Sub, Mul, Div, Pow };

    struct Node {
        Kind kind;
        Rational constant;           // Constant
        int symbol = -1;             // Symbol: index into the coordinate list
        int exponent = 0;            // Pow
        std::shared_ptr<const Node> lhs; // Negate, Pow: operand
        std::shared_ptr<const Node> rhs;
    };

    Expression() : Expression(constant(Rational(0))) {}

    static Expression constant(const Rational& value);
    static Expression symbol(int index);
    friend Expression operator-(const Expression& a);
    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);
    static Expression power(const Expression& base, int exponent);

    const Node& root() const { return *root_; }
    const std::shared_ptr<const Node>& node() const { return root_; }

    /// Structural equality.
    friend bool operator==(const Expression& a, const Expression& b);

private:
    explicit Expression(std::shared_ptr<const Node> n) : root_(std::move(n)) {}
    static Expression make(Kind k, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r);

    std::shared_ptr<const Node> root_;
};

/// Throws SyntaxError (with offset) or UnknownSymbol.
Expression parse_expression(std::string_view source, std::span<const std::string> coordinates);

/// Canonical text; parse_expression(print_expression(e)) == e.
std::string print_expression(const Expression& e, std::span<const std::string> coordinates);

/// Evaluates many expressions at one point, sharing structurally equal subexpressions.
template <class F>
class JetEvaluator {
public:
    /// `point` is given in the certifying field and mapped into F.
    JetEvaluator(std::span<const Rational> point, int order, std::span<const std::string> coordinates);
    ~JetEvaluator();
    JetEvaluator(const JetEvaluator&) = delete;
    JetEvaluator& operator=(const JetEvaluator&) = delete;

    /// Throws DivisionByZero naming the offending denominator.
    Jet<F> operator()(const Expression& e);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

extern template class JetEvaluator<Rational>;
extern template class JetEvaluator<ModP>;

/// One-shot evaluation. Throws DimensionMismatch when the point length is wrong.
template <class F>
Jet<F> evaluate_jet(const Expression& e, std::span<const Rational> point, int order,
                    std::span<const std::string> coordinates);

} // namespace qc
