#include "fixtures.hpp"

#include "qc/atlas.hpp"
#include "qc/biquard.hpp"
#include "qc/cone.hpp"
#include "qc/errors.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <functional>

using namespace qc;

namespace {

bool same_chart(const QcChart& a, const QcChart& b) {
    if (a.label != b.label || a.n != b.n || a.coordinates != b.coordinates || a.epsilon != b.epsilon) return false;
    for (int l = 0; l < 3; ++l)
        if (a.eta[l] != b.eta[l]) return false;
    return true;
}

std::string heisenberg_json_with(const std::function<void(nlohmann::json&)>& edit) {
    auto j = nlohmann::json::parse(chart_to_json(heisenberg(1)));
    edit(j);
    return j.dump();
}

} // namespace

TEST_SUITE("atlas") {

TEST_CASE("Heisenberg chart layout") {
    const auto c = heisenberg(2);
    CHECK(c.label == "heisenberg-n2");
    CHECK(c.dimension() == 11);
    REQUIRE(c.coordinates.size() == 11);
    CHECK(c.coordinates.front() == "x1");
    CHECK(c.coordinates.back() == "t3");
    CHECK_FALSE(c.epsilon);
    CHECK_THROWS_AS(heisenberg(0), SchemaError);
}

TEST_CASE("Heisenberg d eta has constant coefficients and kills the Reeb fields") {
    const auto fr = qctest::frame_at(heisenberg(1), 71);
    for (int l = 0; l < 3; ++l) {
        for (const auto& [m, c] : fr.deta[l].components())
            for (std::size_t k = 1; k < c.table().count(c.order()); ++k)
                CHECK(c.coefficient(static_cast<MonomialTable::Index>(k)) == 0);
        for (int m = 0; m < 3; ++m) CHECK(interior_product(fr.xi[m], fr.deta[l]).is_zero());
    }
}

TEST_CASE("sphere charts validate themselves") {
    for (int n : {1, 2}) {
        const auto c = sphere_3sasakian(n);
        CHECK(c.epsilon == 1);
        CHECK(c.dimension() == 4 * n + 3);
    }
}

TEST_CASE("emit then load is the identity") {
    for (const auto& name : example_names())
        for (int n : {1, 2}) {
            const auto c = make_example(name, n);
            const auto text = chart_to_json(c);
            CHECK(text == chart_to_json(make_example(name, n)));
            const auto back = chart_from_json(text);
            CHECK(same_chart(c, back));
            CHECK(chart_to_json(back) == text);
        }
}

TEST_CASE("loaded sphere still satisfies its equation") {
    const auto c = chart_from_json(chart_to_json(sphere_3sasakian(2)));
    const auto res = sasakian_check(qctest::frame_at(c, 72, 1));
    REQUIRE(res.epsilon);
    CHECK(*res.epsilon == 1);
}

TEST_CASE("schema errors") {
    CHECK_THROWS_AS(chart_from_json("{"), SchemaError);
    CHECK_THROWS_AS(chart_from_json("[]"), SchemaError);
    CHECK_THROWS_AS(chart_from_json(heisenberg_json_with([](auto& j) { j["eta"].erase(2); })), SchemaError);
    CHECK_THROWS_AS(chart_from_json(heisenberg_json_with([](auto& j) { j.erase("n"); })), SchemaError);
    CHECK_THROWS_AS(chart_from_json(heisenberg_json_with([](auto& j) { j["n"] = "one"; })), SchemaError);
    CHECK_THROWS_AS(chart_from_json(heisenberg_json_with([](auto& j) { j["n"] = 2; })), SchemaError);
    CHECK_THROWS_AS(load_chart("/nonexistent/chart.json"), SchemaError);
}

TEST_CASE("expression errors name the symbol") {
    const auto text = heisenberg_json_with([](auto& j) { j["eta"][0][0] = "x1 + w7"; });
    try {
        chart_from_json(text);
        FAIL("unknown symbol accepted");
    } catch (const UnknownSymbol& e) {
        CHECK(e.symbol() == "w7");
    }
    CHECK_THROWS_AS(chart_from_json(heisenberg_json_with([](auto& j) { j["eta"][0][0] = "x1 +"; })), SyntaxError);
}

TEST_CASE("unknown example name") {
    CHECK_THROWS_AS(make_example("torus", 1), SchemaError);
}

TEST_CASE("trivial deformation changes nothing downstream") {
    const auto base = qctest::frame_at(heisenberg(1), 73);
    const auto same = qctest::frame_at(conformal_deform(heisenberg(1), "1"), 73);
    CHECK(base.G == same.G);
    for (int l = 0; l < 3; ++l) CHECK(base.J[l] == same.J[l]);
    const auto a = identity_suite(base, {});
    const auto b = identity_suite(same, {});
    CHECK(a.s == b.s);
    REQUIRE(a.checks.checks().size() == b.checks.checks().size());
    for (std::size_t i = 0; i < a.checks.checks().size(); ++i)
        CHECK(a.checks.checks()[i].status == b.checks.checks()[i].status);
}

TEST_CASE("constant deformation keeps the flags") {
    const auto a = identity_suite(qctest::frame_at(sphere_3sasakian(1), 74), {});
    const auto b = identity_suite(qctest::frame_at(conformal_deform(sphere_3sasakian(1), "5/2"), 74), {});
    REQUIRE(a.classification);
    REQUIRE(b.classification);
    CHECK(a.classification->dOmega_zero == b.classification->dOmega_zero);
    CHECK(a.classification->torsion_zero == b.classification->torsion_zero);
    CHECK(a.classification->reeb_invariant == b.classification->reeb_invariant);
    CHECK(b.classification->verdict == kVerdictSasakian);
}

TEST_CASE("deformed Heisenberg carries torsion") {
    const auto pa = identity_suite(qctest::frame_at(qctest::deformed_heisenberg(2), 75), {});
    REQUIRE(pa.classification);
    CHECK_FALSE(pa.classification->dOmega_zero);
    CHECK_FALSE(pa.classification->torsion_zero);
}

TEST_CASE("vanishing conformal factor is rejected at the point") {
    const auto c = conformal_deform(heisenberg(1), "x1");
    std::vector<Rational> pt(7, Rational(1, 2));
    pt[0] = 0;
    CHECK_THROWS_AS(build_frame<Rational>(c, pt, 2), Error);
}

}
