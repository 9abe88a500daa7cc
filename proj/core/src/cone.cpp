#include "qc/cone.hpp"

#include "qc/errors.hpp"

namespace qc {

template <class F>
SasakianResult<F> sasakian_check(const QcPointFrame<F>& frame) {
    SasakianResult<F> out;
    const F two = from_int<F>(2);
    bool plus_zero = true, minus_zero = true;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const FormJet<F> base = frame.deta[i] - two * frame.omega[i];
        const FormJet<F> ejk = two * wedge(frame.eta[j], frame.eta[k]);
        out.plus[i] = base - ejk;
        out.minus[i] = base + ejk;
        plus_zero = plus_zero && out.plus[i].is_zero();
        minus_zero = minus_zero && out.minus[i].is_zero();
    }
    if (plus_zero) out.epsilon = 1;
    else if (minus_zero) out.epsilon = -1;
    return out;
}

template <class F>
JetMatrix<F> horizontal_metric(const QcPointFrame<F>& frame) {
    const int order = frame.xi[0].order();
    const std::size_t r = frame.hframe.size();
    // C(a, mu) = frame coordinate a of the horizontal part of d/dx_mu.
    auto c = frame.hcoord.truncated(std::min(frame.hcoord.order(), order));
    for (int m = 0; m < 3; ++m) {
        const auto xc = frame_coordinates(frame, frame.xi[m]);
        for (const auto& [mask, e] : frame.eta[m].components()) {
            const int mu = std::countr_zero(mask);
            for (std::size_t a = 0; a < r; ++a) c(a, mu) -= xc[a] * e;
        }
    }
    return c.transpose() * frame.G * c;
}

template <class F>
ConeData<F> cone_structures(const QcPointFrame<F>& frame, const Rational& tvalue, int epsilon) {
    if (sgn(tvalue) <= 0) throw DimensionMismatch("cone parameter t must be positive");
    if (epsilon != 1 && epsilon != -1) throw DimensionMismatch("epsilon must be +1 or -1");
    const int d = frame.dim();
    const int dn = d + 1;
    const int order = std::min(frame.omega[0].order(), frame.eta[0].order());
    const F eps = from_int<F>(epsilon);

    const Jet<F> t = Jet<F>::variable(dn, order, d, from_rational<F>(tvalue));
    const Jet<F> t2 = t * t;
    const auto dt = FormJet<F>::monomial(Jet<F>::constant(dn, order, F(1)), IndexMask{1} << d);

    std::array<FormJet<F>, 3> eta, omega;
    for (int l = 0; l < 3; ++l) {
        eta[l] = frame.eta[l].embedded(dn);
        omega[l] = frame.omega[l].embedded(dn);
    }

    ConeData<F> cone;
    cone.epsilon = epsilon;
    cone.tvalue = tvalue;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        FormJet<F> fi = t2 * omega[i];
        fi += t2 * (eps * wedge(eta[j], eta[k]));
        fi -= t * wedge(eta[i], dt);
        cone.Fi[i] = std::move(fi);
    }
    cone.F4 = wedge(cone.Fi[0], cone.Fi[0]);
    cone.F4 += wedge(cone.Fi[1], cone.Fi[1]);
    cone.F4 += wedge(cone.Fi[2], cone.Fi[2]);

    const auto g = horizontal_metric(frame);
    cone.GN = JetMatrix<F>::zero(static_cast<std::size_t>(dn), static_cast<std::size_t>(dn), dn, order);
    for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu) {
            Jet<F> v = g(mu, nu).embedded(dn);
            for (int l = 0; l < 3; ++l)
                v += eps * (eta[l].component(IndexMask{1} << mu) * eta[l].component(IndexMask{1} << nu));
            cone.GN(mu, nu) = t2 * v;
        }
    cone.GN(d, d) = Jet<F>::constant(dn, order, eps);
    return cone;
}

template <class F>
HyperkahlerResult<F> hyperkahler_check(const ConeData<F>& cone) {
    HyperkahlerResult<F> out;
    const F two = from_int<F>(2);
    for (int i = 0; i < 3; ++i) out.dFi[i] = exterior_derivative(cone.Fi[i]);
    out.dF = exterior_derivative(cone.F4);
    out.leibniz = out.dF;
    for (int i = 0; i < 3; ++i) out.leibniz -= two * wedge(out.dFi[i], cone.Fi[i]);
    return out;
}

bool cone_signature_ok(const ConeData<Rational>& cone, int n) {
    const auto v = value_part(cone.GN);
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (v[a][b] != v[b][a]) return false;
    if (cone.epsilon == 1) return leading_minors_positive(v);
    const auto in = inertia(v);
    return in.positive == 4 * n && in.negative == 4 && in.zero == 0;
}

#define QC_INSTANTIATE(F)                                                              \
    template SasakianResult<F> sasakian_check(const QcPointFrame<F>&);                 \
    template JetMatrix<F> horizontal_metric(const QcPointFrame<F>&);                   \
    template ConeData<F> cone_structures(const QcPointFrame<F>&, const Rational&, int); \
    template HyperkahlerResult<F> hyperkahler_check(const ConeData<F>&);

QC_INSTANTIATE(Rational)
QC_INSTANTIATE(ModP)

#undef QC_INSTANTIATE

} // namespace qc
