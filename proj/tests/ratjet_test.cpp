#include "properties.hpp"

#include "qc/errors.hpp"
#include "qc/expression.hpp"
#include "qc/linalg.hpp"

#include <doctest.h>

using namespace qc;
using qctest::Random;

namespace {

const std::vector<std::string> kX = {"x"};
const std::vector<std::string> kXY = {"x", "y"};

Jet<Rational> jet_of(const std::string& src, const std::vector<std::string>& coords, std::vector<Rational> point,
                     int order) {
    return evaluate_jet<Rational>(parse_expression(src, coords), point, order, coords);
}

Rational coeff(const Jet<Rational>& j, std::vector<std::uint8_t> e) { return j.coefficient(e); }

} // namespace

TEST_SUITE("ratjet") {

TEST_CASE("rationals are canonical") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-10/5")) == "-2");
    CHECK(to_string(parse_rational("0/7")) == "0");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("geometric series jet") {
    // 1/(1-x) at a: c_k = (1-a)^-(k+1).
    const Rational a(1, 3);
    const auto j = jet_of("1/(1-x)", kX, {a}, 5);
    Rational expected = 1 / (1 - a);
    for (std::uint8_t k = 0; k <= 5; ++k) {
        CHECK(coeff(j, {k}) == expected);
        expected /= (1 - a);
    }
}

TEST_CASE("polynomial jet is its Taylor shift") {
    // x^3 y at (a, b): coefficients of (a+u)^3 (b+v).
    const Rational a(2), b(-1, 2);
    const auto j = jet_of("x^3*y", kXY, {a, b}, 4);
    CHECK(coeff(j, {0, 0}) == a * a * a * b);
    CHECK(coeff(j, {1, 0}) == 3 * a * a * b);
    CHECK(coeff(j, {2, 0}) == 3 * a * b);
    CHECK(coeff(j, {3, 0}) == b);
    CHECK(coeff(j, {0, 1}) == a * a * a);
    CHECK(coeff(j, {3, 1}) == 1);
    CHECK(coeff(j, {4, 0}) == 0);
    CHECK(coeff(j, {2, 2}) == 0);
}

TEST_CASE("leading rationals are read greedily") {
    CHECK(jet_of("3/2^2", kX, {Rational(0)}, 0).value() == Rational(9, 4));
    CHECK(jet_of("-x^2", kX, {Rational(3)}, 0).value() == Rational(-9));
    CHECK(jet_of("2*(x-1)/(x+1)", kX, {Rational(3)}, 0).value() == Rational(1));
}

TEST_CASE("parse errors carry locations") {
    try {
        parse_expression("x + * 2", kX);
        FAIL("no syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 4);
    }
    try {
        parse_expression("x + z", kX);
        FAIL("no unknown-symbol error");
    } catch (const UnknownSymbol& e) {
        CHECK(e.symbol() == "z");
    }
    CHECK_THROWS_AS(parse_expression("(x + 1", kX), SyntaxError);
    CHECK_THROWS_AS(parse_expression("", kX), SyntaxError);
}

TEST_CASE("print and parse round trip") {
    for (const char* src : {"x", "-x", "1/2*x^3 - y", "(x+y)/(1+x^2)", "3/2^2", "-(x-y)^2*y"}) {
        const auto e = parse_expression(src, kXY);
        CHECK(parse_expression(print_expression(e, kXY), kXY) == e);
    }
}

TEST_CASE("division by a vanishing denominator") {
    CHECK_THROWS_AS(jet_of("1/x", kX, {Rational(0)}, 2), DivisionByZero);
    CHECK_THROWS_AS(jet_of("1/(x-y)", kXY, {Rational(1), Rational(1)}, 1), DivisionByZero);
}

TEST_CASE("jets truncate to the smaller order") {
    Random r(11);
    const auto a = r.jet(2, 4);
    const auto b = r.jet(2, 2);
    CHECK((a * b).order() == 2);
    CHECK((a + b).order() == 2);
    CHECK((a * b) == a.truncated(2) * b);
}

TEST_CASE("prime-field evaluation is the reduction of the rational one") {
    const std::vector<Rational> pt = {Rational(2, 3), Rational(-5)};
    const auto e = parse_expression("(x^2 + 1)/(x - 3*y) + y^3/7", kXY);
    const auto q = evaluate_jet<Rational>(e, pt, 3, kXY);
    const auto p = evaluate_jet<ModP>(e, pt, 3, kXY);
    const auto count = q.table().count(3);
    for (std::size_t i = 0; i < count; ++i) {
        const auto idx = static_cast<MonomialTable::Index>(i);
        CHECK(p.coefficient(idx) == ModP::from_rational(q.coefficient(idx)));
    }
}

TEST_CASE("jet ring laws on random jets") {
    const auto res = qctest::jet_ring_laws(101, 150);
    CHECK(res.cases == 150);
    CHECK_MESSAGE(res.ok(), res.first);
}

TEST_CASE("inverse agrees with the adjugate formula") {
    Random r(7);
    int checked = 0;
    while (checked < 100) {
        const int n = r.integer(1, 4);
        std::vector<Rational> flat;
        std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                flat.push_back(r.rational());
                rows[static_cast<std::size_t>(i)].push_back(flat.back());
            }
        if (qctest::cofactor_det(rows) == 0) continue;
        const auto m = JetMatrix<Rational>::from_values(static_cast<std::size_t>(n), static_cast<std::size_t>(n), flat, 2, 1);
        const auto inv = inverse(m);
        const auto oracle = qctest::adjugate_inverse(rows);
        bool same = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto& e = inv(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                same = same && e.value() == oracle[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                for (std::size_t k = 1; k < e.table().count(1); ++k)
                    same = same && e.coefficient(static_cast<MonomialTable::Index>(k)) == 0;
            }
        CHECK(same);
        ++checked;
    }
}

TEST_CASE("linear solves reproduce the right-hand side") {
    const auto res = qctest::solve_consistency(202, 150);
    CHECK(res.cases == 150);
    CHECK_MESSAGE(res.ok(), res.first);
}

TEST_CASE("singular value part is refused") {
    // [[x, 1], [0, 1]] at x = 0 has a pivot-free first column.
    const std::vector<std::string> coords = {"x"};
    const std::vector<Rational> pt = {Rational(0)};
    auto m = JetMatrix<Rational>::zero(2, 2, 1, 2);
    m(0, 0) = evaluate_jet<Rational>(parse_expression("x", coords), pt, 2, coords);
    m(0, 1) = Jet<Rational>::constant(1, 2, Rational(1));
    m(1, 1) = Jet<Rational>::constant(1, 2, Rational(1));
    CHECK_THROWS_AS(solve_linear_jets(m, JetMatrix<Rational>::identity(2, 1, 2)), SingularSystem);
}

TEST_CASE("inertia by congruence") {
    const auto in = inertia({{Rational(1), 0, 0}, {0, Rational(-2), 0}, {0, 0, 0}});
    CHECK(in.positive == 1);
    CHECK(in.negative == 1);
    CHECK(in.zero == 1);
    // [[0, 1], [1, 0]] is a hyperbolic plane.
    const auto h = inertia({{0, Rational(1)}, {Rational(1), 0}});
    CHECK(h.positive == 1);
    CHECK(h.negative == 1);
    CHECK(leading_minors_positive({{Rational(2), Rational(1)}, {Rational(1), Rational(2)}}));
    CHECK_FALSE(leading_minors_positive({{Rational(1), Rational(2)}, {Rational(2), Rational(1)}}));
}

TEST_CASE("monomial table is graded") {
    const auto& t = MonomialTable::get(3, 3);
    CHECK(t.count(0) == 1);
    CHECK(t.count(1) == 4);
    CHECK(t.count(2) == 10);
    CHECK(t.count(3) == 20);
    for (std::size_t i = 1; i < t.count(3); ++i)
        CHECK(t.degree(static_cast<MonomialTable::Index>(i - 1)) <= t.degree(static_cast<MonomialTable::Index>(i)));
}

}
