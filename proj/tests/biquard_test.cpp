#include "fixtures.hpp"

#include "qc/biquard.hpp"
#include "qc/errors.hpp"

#include <doctest.h>

using namespace qc;

namespace {

struct Pipeline {
    QcPointFrame<Rational> frame;
    ConnectionData<Rational> conn;
};

Pipeline run(const QcChart& chart, std::uint64_t seed) {
    Pipeline p{qctest::frame_at(chart, seed), {}};
    p.conn = connection_forms(p.frame);
    solve_scalar(p.frame, p.conn);
    ricci_forms(p.conn);
    return p;
}

std::vector<std::string> failing(const PointAnalysis<Rational>& pa) {
    std::vector<std::string> out;
    for (const auto& c : pa.checks.checks())
        if (c.status == Status::Error || (c.expect_zero && c.status != Status::Zero))
            out.push_back(c.name + " " + c.witness);
    return out;
}

} // namespace

TEST_SUITE("biquard") {

TEST_CASE("sphere: s = 2, Scal = 16n(n+2), alpha = -2 eta, rho|H = -2 omega") {
    for (std::uint64_t seed : {1u, 2u}) {
        const auto p = run(sphere_3sasakian(1), seed);
        CHECK(p.conn.s.value() == 2);
        CHECK(p.conn.scal.value() == 48);
        CHECK(differential(p.conn.s).truncated(0).is_zero());
        for (int l = 0; l < 3; ++l) {
            const auto& a = p.conn.alpha[l];
            CHECK((a + Rational(2) * p.frame.eta[l].truncated(a.order())).is_zero());
            const auto rho = frame_matrix(p.conn.rho[l], p.frame.hframe);
            const auto om = frame_matrix(p.frame.omega[l], p.frame.hframe);
            const int o = std::min(rho.order(), om.order());
            CHECK((rho.truncated(o) + om.truncated(o).scaled(Rational(2))).is_zero());
        }
    }
}

TEST_CASE("Heisenberg: s = Scal = 0 and no torsion") {
    for (int n : {1, 2}) {
        const auto p = run(heisenberg(n), 9);
        CHECK(p.conn.s.is_zero());
        CHECK(p.conn.scal.is_zero());
        const auto t = torsion_from_ricci(p.frame, p.conn);
        CHECK(t.T0.is_zero());
        CHECK(t.U.is_zero());
    }
}

TEST_CASE("dimension seven: U vanishes and the four-form route refuses") {
    const auto p = run(qctest::deformed_heisenberg(1), 12);
    const auto t = torsion_from_ricci(p.frame, p.conn);
    CHECK(t.U.is_zero());
    CHECK_FALSE(t.T0.truncated(0).is_zero());
    CHECK_THROWS_AS(torsion_from_four_form(p.frame, exterior_derivative(p.frame.Omega)), DimensionSevenUnsupported);
}

TEST_CASE("torsion routes agree on a torsion-carrying chart") {
    const auto p = run(qctest::deformed_heisenberg(2), 13);
    const auto r = torsion_from_ricci(p.frame, p.conn);
    const auto f = torsion_from_four_form(p.frame, exterior_derivative(p.frame.Omega));
    CHECK_FALSE(r.T0.truncated(0).is_zero());
    CHECK_FALSE(r.U.truncated(0).is_zero());
    const int o = std::min(r.T0.order(), f.T0.order());
    CHECK((r.T0.truncated(o) - f.T0.truncated(o)).is_zero());
    CHECK((r.U.truncated(o) - f.U.truncated(o)).is_zero());
    CHECK(r.T0_norm == f.T0_norm);

    // T0 is in the -1 eigenspace of Upsilon and U in the +3 eigenspace.
    const auto& fr = p.frame;
    CHECK((upsilon(fr, r.T0) + r.T0).is_zero());
    CHECK((upsilon(fr, r.U) - r.U.scaled(Rational(3))).is_zero());
    CHECK((fr.Ginv * r.T0).trace().is_zero());
    CHECK((fr.Ginv * r.U).trace().is_zero());
}

TEST_CASE("per-Reeb torsion is symmetric, trace-free and reconstructs T0") {
    const auto p = run(qctest::deformed_heisenberg(1), 14);
    const auto t = torsion_from_ricci(p.frame, p.conn);
    auto sum = JetMatrix<Rational>::zero(4, 4, p.frame.dim(), t.T0.order());
    for (int l = 0; l < 3; ++l) {
        const auto& q = t.per_reeb[l];
        CHECK((q - q.transpose()).is_zero());
        CHECK((p.frame.Ginv * q).trace().is_zero());
        sum = sum + p.frame.J[l].transpose() * q;
    }
    CHECK((sum - t.T0).is_zero());
}

TEST_CASE("qc homothety rescales s") {
    const auto base = run(sphere_3sasakian(1), 21);
    const auto scaled = run(conformal_deform(sphere_3sasakian(1), "3"), 21);
    CHECK(scaled.conn.s.value() == base.conn.s.value() / 3);
}

TEST_CASE("identity suite on the examples") {
    SUBCASE("sphere, n = 1") {
        const auto pa = identity_suite(qctest::frame_at(sphere_3sasakian(1), 31), {});
        CHECK(failing(pa).empty());
        REQUIRE(pa.classification);
        CHECK(pa.classification->verdict == kVerdictSasakian);
        CHECK(pa.classification->caveat == kDimensionSevenCaveat);
    }
    SUBCASE("Heisenberg, n = 2") {
        const auto pa = identity_suite(qctest::frame_at(heisenberg(2), 32), {});
        CHECK(failing(pa).empty());
        REQUIRE(pa.classification);
        CHECK(pa.classification->verdict == kVerdictFlat);
        CHECK(pa.classification->caveat.empty());
    }
    SUBCASE("deformed Heisenberg, n = 2") {
        const auto pa = identity_suite(qctest::frame_at(qctest::deformed_heisenberg(2), 33), {});
        const auto bad = failing(pa);
        CHECK_MESSAGE(bad.empty(), (bad.empty() ? std::string() : bad.front()));
        REQUIRE(pa.classification);
        const auto& c = *pa.classification;
        CHECK(c.verdict == kVerdictGeneric);
        CHECK_FALSE(c.dOmega_zero);
        CHECK_FALSE(c.torsion_zero);
        CHECK_FALSE(c.reeb_invariant);
        bool found = false;
        for (const auto& ch : pa.checks.checks())
            if (ch.name == "theorem.dOmega") {
                found = true;
                CHECK(ch.status == Status::Nonzero);
                CHECK_FALSE(ch.expect_zero);
                CHECK_FALSE(ch.witness.empty());
            }
        CHECK(found);
    }
}

TEST_CASE("suite selection limits the checks") {
    const auto pa = identity_suite(qctest::frame_at(heisenberg(1), 34), SuiteSelection{true, false, false});
    for (const auto& c : pa.checks.checks()) {
        CHECK(c.name.rfind("torsion.", 0) != 0);
        CHECK(c.name.rfind("theorem.", 0) != 0);
    }
    CHECK(pa.classification);
}

}
