#include "qc/biquard.hpp"

#include "qc/errors.hpp"

namespace qc {

const char* const kVerdictSasakian = "3-Sasakian-homothetic candidate";
const char* const kVerdictFlat = "torsion-free, Scal = 0";
const char* const kVerdictGeneric = "generic (torsion ≠ 0)";
const char* const kDimensionSevenCaveat =
    "dimension 7: the four-form route is unavailable and whether dΩ = 0 forces vanishing torsion is open; "
    "torsion flags come from the curvature route";

namespace {

int nxt(int i) { return (i + 1) % 3; }
int prv(int i) { return (i + 2) % 3; }

template <class F>
Jet<F> ev2(const FormJet<F>& a, const VectorJet<F>& u, const VectorJet<F>& v) {
    return apply(interior_product(u, a), v);
}

template <class F>
JetMatrix<F> times(const Jet<F>& f, JetMatrix<F> m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = f * m(r, c);
    return m;
}

template <class F>
JetMatrix<F> symmetrized(const JetMatrix<F>& m) {
    return (m + m.transpose()).scaled(from_rational<F>(Rational(1, 2)));
}

template <class F>
F half() {
    return from_rational<F>(Rational(1, 2));
}

/// I_l X_a as a vector.
template <class F>
VectorJet<F> rotate(const QcPointFrame<F>& fr, int l, std::size_t a) {
    std::vector<Jet<F>> col;
    for (std::size_t e = 0; e < fr.hframe.size(); ++e) col.push_back(fr.J[l](e, a));
    return frame_vector(fr.hframe, col);
}

/// g(v, X_a) for each a, for the horizontal part of v.
template <class F>
std::vector<Jet<F>> lower(const QcPointFrame<F>& fr, const VectorJet<F>& v) {
    const auto c = frame_coordinates(fr, horizontal_part(fr, v));
    std::vector<Jet<F>> out;
    for (std::size_t a = 0; a < fr.G.rows(); ++a) {
        Jet<F> acc = Jet<F>::zero(v.dim(), std::min(fr.G.order(), c[0].order()));
        for (std::size_t b = 0; b < c.size(); ++b) acc.add_product(fr.G(a, b), c[b]);
        out.push_back(std::move(acc));
    }
    return out;
}

template <class F>
JetMatrix<F> column(const std::vector<Jet<F>>& v) {
    JetMatrix<F> m(v.size(), 1, Jet<F>());
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

template <class F>
JetMatrix<F> scalar(const Jet<F>& j) {
    return JetMatrix<F>(1, 1, j);
}

template <class F>
bool value_zero(const JetMatrix<F>& m) {
    return m.truncated(0).is_zero();
}

template <class F>
void invariant_checks(CheckList& cl, const std::string& prefix, const QcPointFrame<F>& fr, const JetMatrix<F>& t0,
                      const JetMatrix<F>& u) {
    cl.residual(prefix + ".T0_trace_free", scalar((fr.Ginv * t0).trace()));
    cl.residual(prefix + ".U_trace_free", scalar((fr.Ginv * u).trace()));
    cl.residual(prefix + ".T0_invariance", t0 + upsilon(fr, t0));
    cl.residual(prefix + ".U_invariance", u.scaled(from_int<F>(3)) - upsilon(fr, u));
}

template <class F>
F squared_norm(const QcPointFrame<F>& fr, const JetMatrix<F>& t) {
    const auto g = fr.Ginv.truncated(0);
    const auto tt = t.truncated(0);
    return (g * tt * g * tt).trace().value();
}

} // namespace

template <class F>
ConnectionData<F> connection_forms(const QcPointFrame<F>& fr) {
    const auto& xi = fr.xi;
    const auto& deta = fr.deta;
    const Jet<F> c = ev2(deta[0], xi[1], xi[2]) + ev2(deta[1], xi[2], xi[0]) + ev2(deta[2], xi[0], xi[1]);
    ConnectionData<F> conn;
    for (int i = 0; i < 3; ++i) {
        const int j = nxt(i), k = prv(i);
        const auto hk = interior_product(xi[j], deta[k]);
        FormJet<F> beta = hk;
        for (int m = 0; m < 3; ++m) {
            Jet<F> coeff = ev2(deta[m], xi[j], xi[k]) - apply(hk, xi[m]);
            if (m == i) coeff -= half<F>() * c;
            beta += coeff * fr.eta[m];
        }
        conn.beta[i] = std::move(beta);
    }
    return conn;
}

template <class F>
Jet<F> solve_scalar(const QcPointFrame<F>& fr, ConnectionData<F>& conn) {
    const F minus_inv_2n = -from_rational<F>(Rational(1, 2 * fr.n));
    std::array<Jet<F>, 3> sk;
    for (int k = 0; k < 3; ++k) {
        const int i = nxt(k), j = prv(k);
        const FormJet<F> curv = half<F>() * (exterior_derivative(conn.beta[k]) + wedge(conn.beta[i], conn.beta[j]));
        const auto p = frame_matrix(curv, fr.hframe);
        sk[k] = (fr.Ginv * p * fr.J[k]).trace() * minus_inv_2n;
    }
    for (int k = 1; k < 3; ++k) {
        const Jet<F> diff = sk[k] - sk[0];
        if (!diff.is_zero())
            throw CrossKInconsistency("s from k = " + std::to_string(k + 1) + " differs from k = 1: " + witness(diff));
    }
    conn.s = sk[0];
    conn.scal = sk[0] * from_int<F>(8L * fr.n * (fr.n + 2));
    for (int l = 0; l < 3; ++l) conn.alpha[l] = conn.beta[l] - (half<F>() * conn.s) * fr.eta[l];
    conn.solved = true;
    return conn.s;
}

template <class F>
void ricci_forms(ConnectionData<F>& conn) {
    if (!conn.solved) throw InsufficientJetOrder("scalar curvature has not been solved");
    for (int k = 0; k < 3; ++k) {
        const int i = nxt(k), j = prv(k);
        conn.rho[k] = half<F>() * (exterior_derivative(conn.alpha[k]) + wedge(conn.alpha[i], conn.alpha[j]));
    }
}

template <class F>
JetMatrix<F> upsilon(const QcPointFrame<F>& fr, const JetMatrix<F>& h) {
    JetMatrix<F> out = fr.J[0].transpose() * h * fr.J[0];
    for (int l = 1; l < 3; ++l) out = out + fr.J[l].transpose() * h * fr.J[l];
    return out;
}

template <class F>
std::array<JetMatrix<F>, 3> per_reeb_torsion(const QcPointFrame<F>& fr, const JetMatrix<F>& t0) {
    const F quarter = -from_rational<F>(Rational(1, 4));
    std::array<JetMatrix<F>, 3> out;
    for (int l = 0; l < 3; ++l) out[l] = (fr.J[l].transpose() * t0 + t0 * fr.J[l]).scaled(quarter);
    return out;
}

namespace {

template <class F>
void finish_report(TorsionReport<F>& rep, const QcPointFrame<F>& fr, const std::string& prefix) {
    invariant_checks(rep.checks, prefix, fr, rep.T0, rep.U);
    rep.per_reeb = per_reeb_torsion(fr, rep.T0);
    rep.T0_norm = squared_norm(fr, rep.T0);
    rep.U_norm = squared_norm(fr, rep.U);
}

} // namespace

template <class F>
TorsionReport<F> torsion_from_ricci(const QcPointFrame<F>& fr, const ConnectionData<F>& conn) {
    if (!conn.solved) throw InsufficientJetOrder("scalar curvature has not been solved");
    TorsionReport<F> rep;
    rep.route = TorsionRoute::Ricci;
    JetMatrix<F> s_sum;
    for (int l = 0; l < 3; ++l) {
        const auto r = frame_matrix(conn.rho[l], fr.hframe) * fr.J[l] + times(conn.s, fr.G);
        s_sum = l == 0 ? -r : s_sum - r;
    }
    rep.checks.residual("torsion.ricci.symmetric", s_sum - s_sum.transpose());
    const auto ups = upsilon(fr, s_sum);
    const F quarter = from_rational<F>(Rational(1, 4));
    const auto t0 = (s_sum.scaled(from_int<F>(3)) - ups).scaled(quarter);
    const auto u = (s_sum + ups).scaled(from_rational<F>(Rational(1, 24)));
    rep.T0 = symmetrized(t0);
    rep.U = symmetrized(u);
    finish_report(rep, fr, "torsion.ricci");
    return rep;
}

template <class F>
TorsionReport<F> torsion_from_four_form(const QcPointFrame<F>& fr, const FormJet<F>& d_omega) {
    if (fr.n == 1)
        throw DimensionSevenUnsupported("the four-form torsion formulas are singular in dimension 7 (n = 1)");
    const std::size_t r = fr.hframe.size();
    // phi[j] = sum_a dOmega(e_a, I_j e_a, ., ., .), as a G^{-1} contraction.
    std::array<FormJet<F>, 3> phi;
    for (int j = 0; j < 3; ++j) {
        const auto k = fr.J[j] * fr.Ginv;
        for (std::size_t c = 0; c < r; ++c) {
            std::vector<Jet<F>> col;
            for (std::size_t e = 0; e < r; ++e) col.push_back(k(e, c));
            const auto y = frame_vector(fr.hframe, col);
            const auto term = interior_product(y, interior_product(fr.hframe[c], d_omega));
            if (c == 0)
                phi[j] = term;
            else
                phi[j] += term;
        }
    }
    TorsionReport<F> rep;
    rep.route = TorsionRoute::FourForm;
    // Five-form contractions carry a factor 1/2 in the determinant evaluation convention.
    const F u_scale = -from_rational<F>(Rational(1, 32 * fr.n));
    std::array<JetMatrix<F>, 3> u_cyc;
    JetMatrix<F> t_sum;
    for (int i = 0; i < 3; ++i) {
        const int j = nxt(i), k = prv(i);
        const auto m = frame_matrix(interior_product(fr.xi[i], phi[j]), fr.hframe);
        const auto m1 = m * fr.J[k];
        const auto m2 = fr.J[i].transpose() * m * fr.J[j];
        u_cyc[i] = (m1 + m2).scaled(u_scale);
        t_sum = i == 0 ? m1 - m2 : t_sum + (m1 - m2);
    }
    rep.checks.residual("torsion.four_form.U_cyclic", u_cyc[1] - u_cyc[0]);
    rep.checks.residual("torsion.four_form.U_cyclic2", u_cyc[2] - u_cyc[0]);
    const auto t0 = t_sum.scaled(-from_rational<F>(Rational(1, 16 * (fr.n - 1))));
    rep.checks.residual("torsion.four_form.symmetric", (t0 - t0.transpose()));
    rep.checks.residual("torsion.four_form.U_symmetric", (u_cyc[0] - u_cyc[0].transpose()));
    rep.T0 = symmetrized(t0);
    rep.U = symmetrized(u_cyc[0]);
    finish_report(rep, fr, "torsion.four_form");
    return rep;
}

// ---------------------------------------------------------------------------------------------

namespace {

template <class F>
void frame_suite(CheckList& cl, const QcPointFrame<F>& fr) {
    const int d = fr.dim();
    const std::size_t r = fr.hframe.size();
    {
        auto m = JetMatrix<F>::zero(3, 3, d, fr.order);
        for (int l = 0; l < 3; ++l)
            for (int k = 0; k < 3; ++k) {
                m(l, k) = apply(fr.eta[l], fr.xi[k]);
                if (l == k) m(l, k) -= Jet<F>::constant(d, m(l, k).order(), F(1));
            }
        cl.residual("frame.eta_xi_delta", m);
    }
    {
        auto m = JetMatrix<F>::zero(3, r, d, fr.order);
        for (int l = 0; l < 3; ++l)
            for (std::size_t a = 0; a < r; ++a) m(l, a) = apply(fr.eta[l], fr.hframe[a]);
        cl.residual("frame.eta_horizontal", m);
    }
    cl.residual("frame.G_symmetric", fr.G - fr.G.transpose());
    if constexpr (std::is_same_v<F, Rational>)
        cl.holds("frame.G_positive", leading_minors_positive(value_part(fr.G)), "a leading minor is not positive");
    else
        cl.holds("frame.G_positive", true, {});
    const auto id = JetMatrix<F>::identity(r, d, fr.J[0].order());
    for (int l = 0; l < 3; ++l) {
        const auto tag = std::to_string(l + 1);
        cl.residual("frame.J_square." + tag, fr.J[l] * fr.J[l] + id);
        cl.residual("frame.G_invariant." + tag, fr.J[l].transpose() * fr.G * fr.J[l] - fr.G);
        cl.residual("frame.omega_restriction." + tag,
                    frame_matrix(from_int<F>(2) * fr.omega[l] - fr.deta[l], fr.hframe));
    }
    cl.residual("frame.quaternion_relation", fr.J[0] * fr.J[1] - fr.J[2]);
    cl.residual("frame.quaternion_anticommute", fr.J[1] * fr.J[0] + fr.J[2]);
    for (int m = 0; m < 3; ++m) {
        const auto tag = std::to_string(m + 1);
        FormJet<F> acc = interior_product(fr.xi[m], fr.omega[0]);
        // Concatenating the three contractions keeps one check per Reeb field.
        bool zero = acc.is_zero();
        std::string w = zero ? std::string() : "omega_1 " + witness(acc);
        for (int l = 1; l < 3 && zero; ++l) {
            const auto c = interior_product(fr.xi[m], fr.omega[l]);
            if (!c.is_zero()) {
                zero = false;
                w = "omega_" + std::to_string(l + 1) + " " + witness(c);
            }
        }
        cl.holds("frame.xi_contract_omega." + tag, zero, w);
        cl.residual("frame.xi_contract_Omega." + tag, interior_product(fr.xi[m], fr.Omega));
    }
}

template <class F>
void structure_suite(CheckList& cl, const QcPointFrame<F>& fr, const ConnectionData<F>& conn, const FormJet<F>& d_omega) {
    const F two = from_int<F>(2);
    const auto ds = differential(conn.s);
    for (int l = 0; l < 3; ++l) {
        auto m = JetMatrix<F>::zero(1, fr.hframe.size(), fr.dim(), fr.order);
        for (std::size_t a = 0; a < fr.hframe.size(); ++a)
            m(0, a) = apply(conn.alpha[l], fr.hframe[a]) - apply(conn.beta[l], fr.hframe[a]);
        cl.residual("connection.alpha_horizontal." + std::to_string(l + 1), m);
    }
    cl.holds("scalar.cross_k", true, {});
    for (int k = 0; k < 3; ++k) {
        const auto tr = (fr.Ginv * frame_matrix(conn.rho[k], fr.hframe) * fr.J[k]).trace();
        cl.residual("scalar.trace_identity." + std::to_string(k + 1),
                    scalar(tr + conn.s * from_int<F>(4L * fr.n)));
    }
    for (int i = 0; i < 3; ++i) {
        const int j = nxt(i), k = prv(i);
        const auto tag = std::to_string(i + 1);
        FormJet<F> streq = fr.deta[i] + wedge(fr.eta[j], conn.alpha[k]) - wedge(fr.eta[k], conn.alpha[j]);
        streq += conn.s * wedge(fr.eta[j], fr.eta[k]);
        streq -= two * fr.omega[i];
        cl.residual("structure.streq." + tag, streq);

        FormJet<F> rhs = wedge(fr.omega[j], conn.alpha[k] + conn.s * fr.eta[k]);
        rhs -= wedge(fr.omega[k], conn.alpha[j] + conn.s * fr.eta[j]);
        rhs -= wedge(conn.rho[k], fr.eta[j]);
        rhs += wedge(conn.rho[j], fr.eta[k]);
        rhs += half<F>() * wedge(ds, wedge(fr.eta[j], fr.eta[k]));
        cl.residual("structure.str2." + tag, exterior_derivative(fr.omega[i]) - rhs);
    }
    FormJet<F> rhs;
    for (int i = 0; i < 3; ++i) {
        const int j = nxt(i), k = prv(i);
        FormJet<F> inner = wedge(conn.rho[k], fr.omega[j]) - wedge(conn.rho[j], fr.omega[k]);
        FormJet<F> term = two * wedge(fr.eta[i], inner);
        term += wedge(wedge(ds, fr.omega[i]), wedge(fr.eta[j], fr.eta[k]));
        if (i == 0)
            rhs = term;
        else
            rhs += term;
    }
    cl.residual("structure.strom", d_omega - rhs);
}

template <class F>
void theorem_identities(CheckList& cl, const QcPointFrame<F>& fr, const ConnectionData<F>& conn, bool expect) {
    const auto& xi = fr.xi;
    const auto& rho = conn.rho;
    const std::size_t r = fr.hframe.size();
    const int d = fr.dim();
    auto a = [&](int l, int m) { return apply(conn.alpha[l], xi[m]); };
    std::array<VectorJet<F>, 3> tv;
    for (int i = 0; i < 3; ++i) {
        const int j = nxt(i), k = prv(i);
        const auto br = bracket(xi[i], xi[j]);
        VectorJet<F> t = (a(i, i) + a(j, j)) * xi[k];
        t -= a(k, i) * xi[i];
        t -= a(k, j) * xi[j];
        t -= br;
        tv[i] = t;
        const auto tag = std::to_string(i + 1) + std::to_string(j + 1);
        cl.residual("theorem.vertical_torsion." + tag, t + conn.s * xi[k] + horizontal_part(fr, br), expect);
    }
    cl.residual("theorem.vertical_torsion.scal", scalar(conn.s + apply(fr.eta[2], tv[0])), expect);

    for (int i = 0; i < 3; ++i) {
        const int j = nxt(i), k = prv(i);
        const auto tag = std::to_string(i + 1) + std::to_string(j + 1);
        const auto low = lower(fr, tv[i]);
        auto m1 = JetMatrix<F>::zero(1, r, d, fr.order);
        auto m2 = m1;
        for (std::size_t x = 0; x < r; ++x) {
            m1(0, x) = low[x] + ev2(rho[k], rotate(fr, i, x), xi[i]);
            m2(0, x) = low[x] + ev2(rho[k], rotate(fr, j, x), xi[j]);
        }
        cl.residual("theorem.torsion_rho." + tag + ".i", m1, expect);
        cl.residual("theorem.torsion_rho." + tag + ".j", m2, expect);

        const Jet<F> vv = ev2(rho[i], xi[i], xi[j]) + ev2(rho[k], xi[k], xi[j]) -
                          half<F>() * directional_derivative(xi[j], conn.s);
        cl.residual("theorem.rho_vertical." + std::to_string(i + 1), scalar(vv), expect);

        auto hv = JetMatrix<F>::zero(1, r, d, fr.order);
        const F quarter = from_rational<F>(Rational(1, 4));
        for (std::size_t x = 0; x < r; ++x) {
            Jet<F> rhs = -ev2(rho[i], xi[j], rotate(fr, k, x)) + ev2(rho[j], xi[k], rotate(fr, i, x)) +
                         ev2(rho[k], xi[i], rotate(fr, j, x));
            hv(0, x) = ev2(rho[i], fr.hframe[x], xi[i]) + quarter * directional_derivative(fr.hframe[x], conn.s) -
                       half<F>() * rhs;
        }
        cl.residual("theorem.rho_mixed." + std::to_string(i + 1), hv, expect);
    }
}

} // namespace

template <class F>
PointAnalysis<F> identity_suite(const QcPointFrame<F>& fr, const SuiteSelection& suites) {
    PointAnalysis<F> out;
    CheckList& cl = out.checks;
    const bool big = fr.n > 1;
    if (suites.structure) frame_suite(cl, fr);

    ConnectionData<F> conn;
    try {
        conn = connection_forms(fr);
        solve_scalar(fr, conn);
        ricci_forms(conn);
    } catch (const Error& e) {
        cl.error("scalar.solve", e.kind() + ": " + e.what());
        return out;
    }
    out.s = conn.s;
    out.scal = conn.scal;

    FormJet<F> d_omega;
    try {
        d_omega = exterior_derivative(fr.Omega);
    } catch (const Error& e) {
        cl.error("theorem.dOmega", e.kind() + ": " + e.what());
        return out;
    }

    if (suites.structure)
        cl.guarded("structure.error", [&](CheckList& c) { structure_suite(c, fr, conn, d_omega); });

    // Classification inputs are always computed.
    std::optional<TorsionReport<F>> ricci;
    try {
        ricci = torsion_from_ricci(fr, conn);
    } catch (const Error& e) {
        cl.error("torsion.ricci", e.kind() + ": " + e.what());
    }
    Classification cls;
    cls.dOmega_zero = d_omega.truncated(0).is_zero();
    std::array<FormJet<F>, 3> reeb;
    for (int l = 0; l < 3; ++l) {
        reeb[l] = interior_product(fr.xi[l], d_omega);
        cls.reeb_invariant_each[l] = reeb[l].truncated(0).is_zero();
    }
    cls.reeb_invariant = cls.reeb_invariant_each[0] && cls.reeb_invariant_each[1] && cls.reeb_invariant_each[2];
    cls.torsion_zero = ricci && value_zero(ricci->T0) && value_zero(ricci->U);
    const bool tz = cls.torsion_zero;

    if (suites.torsion && ricci) {
        cl.append(ricci->checks);
        cl.residual("torsion.T0", ricci->T0, false);
        cl.residual("torsion.U", ricci->U, false);
        if (!big) cl.residual("torsion.dim7_U_zero", ricci->U);
        for (int l = 0; l < 3; ++l) {
            const auto tag = std::to_string(l + 1);
            const auto& p = ricci->per_reeb[l];
            cl.residual("torsion.per_reeb.symmetric." + tag, p - p.transpose());
            cl.residual("torsion.per_reeb.trace_free." + tag, scalar((fr.Ginv * p).trace()));
        }
        JetMatrix<F> recon = fr.J[0].transpose() * ricci->per_reeb[0];
        for (int l = 1; l < 3; ++l) recon = recon + fr.J[l].transpose() * ricci->per_reeb[l];
        cl.residual("torsion.per_reeb.reconstruction", recon - ricci->T0);

        if (big) {
            cl.guarded("torsion.four_form", [&](CheckList& c) {
                const auto ff = torsion_from_four_form(fr, d_omega);
                c.append(ff.checks);
                const int o = std::min(ff.T0.order(), ricci->T0.order());
                c.residual("torsion.routes_agree.T0", ff.T0.truncated(o) - ricci->T0.truncated(o));
                const int ou = std::min(ff.U.order(), ricci->U.order());
                c.residual("torsion.routes_agree.U", ff.U.truncated(ou) - ricci->U.truncated(ou));
            });
            for (int l = 0; l < 3; ++l)
                cl.holds("torsion.corollary." + std::to_string(l + 1),
                         !cls.reeb_invariant_each[l] || value_zero(ricci->U),
                         "Reeb field preserves Omega but U is nonzero: " + witness(ricci->U));
        } else {
            bool refused = false;
            try {
                torsion_from_four_form(fr, d_omega);
            } catch (const DimensionSevenUnsupported&) {
                refused = true;
            }
            cl.holds("torsion.four_form_refuses_dim7", refused, "four-form route did not refuse n = 1");
        }
    }

    if (suites.theorem) {
        const bool cond = big && tz;
        cl.residual("theorem.dOmega", d_omega.truncated(0), cond);
        for (int l = 0; l < 3; ++l) {
            const auto tag = std::to_string(l + 1);
            cl.residual("theorem.reeb_dOmega." + tag, reeb[l].truncated(0), cond);
            cl.guarded("theorem.lie_cartan." + tag, [&](CheckList& c) {
                const auto lie = lie_derivative(fr.xi[l], fr.Omega);
                const int o = std::min(lie.order(), reeb[l].order());
                c.residual("theorem.lie_cartan." + tag, lie.truncated(o) - reeb[l].truncated(o));
            });
        }
        const bool agree = cls.dOmega_zero == cls.torsion_zero && cls.torsion_zero == cls.reeb_invariant;
        cl.holds("theorem.flags_agree", agree,
                 std::string("dOmega_zero=") + (cls.dOmega_zero ? "true" : "false") +
                     " torsion_zero=" + (cls.torsion_zero ? "true" : "false") +
                     " reeb_invariant=" + (cls.reeb_invariant ? "true" : "false"),
                 big);
        cl.guarded("theorem.ds", [&](CheckList& c) { c.residual("theorem.ds", differential(conn.s), cond); });
        for (int i = 0; i < 3; ++i) {
            const int j = nxt(i);
            const auto tag = std::to_string(i + 1) + std::to_string(j + 1);
            cl.residual("theorem.vertical_integrable." + tag, horizontal_part(fr, bracket(fr.xi[i], fr.xi[j])), cond);
        }
        for (int l = 0; l < 3; ++l) {
            const auto tag = std::to_string(l + 1);
            cl.residual("theorem.rhota.horizontal." + tag,
                        frame_matrix(conn.rho[l] + conn.s * fr.omega[l], fr.hframe), cond);
            auto m = JetMatrix<F>::zero(3, fr.hframe.size(), fr.dim(), fr.order);
            for (int q = 0; q < 3; ++q)
                for (std::size_t x = 0; x < fr.hframe.size(); ++x)
                    m(q, x) = ev2(conn.rho[l], fr.xi[q], fr.hframe[x]);
            cl.residual("theorem.rhota.mixed." + tag, m, cond);
        }
        for (int i = 0; i < 3; ++i) {
            const int j = nxt(i), k = prv(i);
            cl.residual("theorem.rhota.vertical." + std::to_string(i + 1),
                        scalar(ev2(conn.rho[i], fr.xi[i], fr.xi[j]) + ev2(conn.rho[k], fr.xi[k], fr.xi[j])), cond);
        }
        cl.guarded("theorem.identities", [&](CheckList& c) { theorem_identities(c, fr, conn, big); });
    }

    cls.s = to_string(conn.s.value());
    cls.scal = to_string(conn.scal.value());
    const bool all = cls.dOmega_zero && cls.torsion_zero && cls.reeb_invariant;
    if (!all)
        cls.verdict = kVerdictGeneric;
    else
        cls.verdict = is_zero(conn.s.value()) ? kVerdictFlat : kVerdictSasakian;
    if (!big) cls.caveat = kDimensionSevenCaveat;
    out.classification = cls;
    return out;
}

#define QC_INSTANTIATE(F)                                                                         \
    template ConnectionData<F> connection_forms(const QcPointFrame<F>&);                          \
    template Jet<F> solve_scalar(const QcPointFrame<F>&, ConnectionData<F>&);                     \
    template void ricci_forms(ConnectionData<F>&);                                                \
    template JetMatrix<F> upsilon(const QcPointFrame<F>&, const JetMatrix<F>&);                   \
    template std::array<JetMatrix<F>, 3> per_reeb_torsion(const QcPointFrame<F>&, const JetMatrix<F>&); \
    template TorsionReport<F> torsion_from_ricci(const QcPointFrame<F>&, const ConnectionData<F>&); \
    template TorsionReport<F> torsion_from_four_form(const QcPointFrame<F>&, const FormJet<F>&);  \
    template PointAnalysis<F> identity_suite(const QcPointFrame<F>&, const SuiteSelection&);

QC_INSTANTIATE(Rational)
QC_INSTANTIATE(ModP)

#undef QC_INSTANTIATE

} // namespace qc
