#include "qc/qcframe.hpp"

#include "qc/errors.hpp"

#include <algorithm>
#include <set>

namespace qc {

void QcChart::validate() const {
    if (n < 1) throw SchemaError("n must be at least 1");
    const auto d = static_cast<std::size_t>(dimension());
    if (coordinates.size() != d)
        throw SchemaError("expected " + std::to_string(d) + " coordinates, got " + std::to_string(coordinates.size()));
    std::set<std::string> seen(coordinates.begin(), coordinates.end());
    if (seen.size() != coordinates.size()) throw SchemaError("duplicate coordinate symbol");
    for (std::size_t l = 0; l < 3; ++l)
        if (eta[l].size() != d)
            throw SchemaError("eta[" + std::to_string(l) + "] has " + std::to_string(eta[l].size()) +
                              " components, expected " + std::to_string(d));
    if (epsilon && *epsilon != 1 && *epsilon != -1) throw SchemaError("epsilon must be 1 or -1");
}

template struct QcPointFrame<Rational>;
template struct QcPointFrame<ModP>;

namespace {

template <class F>
Jet<F> one(int dim, int order) {
    return Jet<F>::constant(dim, order, F(1));
}

template <class F>
Jet<F> coef(const FormJet<F>& a, int mu) {
    return a.component(IndexMask{1} << mu);
}

template <class F>
std::string witness(const Jet<F>& j) {
    auto idx = j.first_nonzero();
    return to_string(j.coefficient(idx)) + " at monomial #" + std::to_string(idx);
}

} // namespace

template <class F>
Jet<F> apply(const FormJet<F>& one_form, const VectorJet<F>& v) {
    if (one_form.degree() != 1) throw DegreeMismatch("apply expects a 1-form");
    Jet<F> out = Jet<F>::zero(one_form.dim(), std::min(one_form.order(), v.order()));
    for (const auto& [mask, c] : one_form.components()) out.add_product(c, v[std::countr_zero(mask)]);
    return out;
}

template <class F>
std::array<FormJet<F>, 3> contact_forms(const QcChart& chart, std::span<const Rational> point, int order) {
    chart.validate();
    if (point.size() != chart.coordinates.size()) throw DimensionMismatch("sample point length");
    JetEvaluator<F> ev(point, order, chart.coordinates);
    std::array<FormJet<F>, 3> eta;
    for (int l = 0; l < 3; ++l) {
        std::vector<Jet<F>> comps;
        for (const auto& e : chart.eta[l]) comps.push_back(ev(e));
        eta[l] = FormJet<F>::one_form(comps);
    }
    return eta;
}

template <class F>
std::pair<std::vector<VectorJet<F>>, JetMatrix<F>> horizontal_frame(const std::array<FormJet<F>, 3>& eta) {
    const int d = eta[0].dim();
    const int order = std::min({eta[0].order(), eta[1].order(), eta[2].order()});

    // Pivot columns from the value parts.
    std::vector<std::vector<F>> v(3, std::vector<F>(d));
    for (int l = 0; l < 3; ++l)
        for (int mu = 0; mu < d; ++mu) v[l][mu] = coef(eta[l], mu).value();
    std::vector<int> pivots;
    std::vector<bool> is_pivot(d, false);
    for (int r = 0; r < 3; ++r) {
        int c = 0;
        while (c < d && (is_pivot[c] || is_zero(v[r][c]))) ++c;
        if (c == d) throw SingularSystem("contact forms are linearly dependent at the point");
        is_pivot[c] = true;
        pivots.push_back(c);
        for (int r2 = r + 1; r2 < 3; ++r2) {
            if (is_zero(v[r2][c])) continue;
            const F f = v[r2][c] / v[r][c];
            for (int mu = 0; mu < d; ++mu) v[r2][mu] -= f * v[r][mu];
        }
    }
    std::vector<int> free_cols;
    for (int mu = 0; mu < d; ++mu)
        if (!is_pivot[mu]) free_cols.push_back(mu);
    const auto rank = free_cols.size();

    auto a = JetMatrix<F>::zero(3, 3, d, order);
    auto b = JetMatrix<F>::zero(3, rank, d, order);
    for (std::size_t l = 0; l < 3; ++l) {
        for (std::size_t i = 0; i < 3; ++i) a(l, i) = coef(eta[l], pivots[i]);
        for (std::size_t f = 0; f < rank; ++f) b(l, f) = -coef(eta[l], free_cols[f]);
    }
    const auto x = solve_linear_jets(a, b);

    std::vector<VectorJet<F>> frame;
    auto hcoord = JetMatrix<F>::zero(rank, d, d, order);
    for (std::size_t f = 0; f < rank; ++f) {
        auto vec = VectorJet<F>::zero(d, order);
        vec[free_cols[f]] = one<F>(d, order);
        for (std::size_t i = 0; i < 3; ++i) vec[pivots[i]] = x(i, f);
        frame.push_back(std::move(vec));
        hcoord(f, free_cols[f]) = one<F>(d, order);
    }
    return {std::move(frame), std::move(hcoord)};
}

template <class F>
std::array<VectorJet<F>, 3> reeb_fields(const std::array<FormJet<F>, 3>& eta, const std::array<FormJet<F>, 3>& deta,
                                        const std::vector<VectorJet<F>>& hframe) {
    const int d = eta[0].dim();
    const std::size_t rank = hframe.size();
    if (rank + 3 != static_cast<std::size_t>(d)) throw DimensionMismatch("horizontal frame size");
    const int order = std::min(deta[0].order(), eta[0].order());

    // c[k][a] = X_a _| d eta_k, so d eta_k(v, X_a) = -c[k][a](v).
    std::array<std::vector<FormJet<F>>, 3> c;
    for (int k = 0; k < 3; ++k)
        for (const auto& x : hframe) c[k].push_back(interior_product(x, deta[k]));

    std::array<VectorJet<F>, 3> xi;
    for (int l = 0; l < 3; ++l) {
        auto a = JetMatrix<F>::zero(d, d, d, order);
        auto rhs = JetMatrix<F>::zero(d, 1, d, order);
        for (int m = 0; m < 3; ++m) {
            for (int mu = 0; mu < d; ++mu) a(m, mu) = coef(eta[m], mu).truncated(order);
            if (m == l) rhs(m, 0) = one<F>(d, order);
        }
        for (std::size_t x = 0; x < rank; ++x)
            for (int mu = 0; mu < d; ++mu) a(3 + x, mu) = -coef(c[l][x], mu);
        const auto sol = solve_linear_jets(a, rhs);
        std::vector<Jet<F>> comps;
        for (int mu = 0; mu < d; ++mu) comps.push_back(sol(mu, 0));
        xi[l] = VectorJet<F>(std::move(comps));
    }

    for (int l = 0; l < 3; ++l)
        for (int k = l + 1; k < 3; ++k)
            for (std::size_t x = 0; x < rank; ++x) {
                Jet<F> res = apply(c[k][x], xi[l]) + apply(c[l][x], xi[k]);
                if (!res.is_zero())
                    throw NotQuaternionicContact("Reeb cross condition (" + std::to_string(l + 1) + "," +
                                                 std::to_string(k + 1) + ") fails on frame vector " +
                                                 std::to_string(x) + ": " + witness(res));
            }
    return xi;
}

template <class F>
JetMatrix<F> frame_matrix(const FormJet<F>& beta, const std::vector<VectorJet<F>>& hframe) {
    if (beta.degree() != 2) throw DegreeMismatch("frame_matrix expects a 2-form");
    const std::size_t r = hframe.size();
    JetMatrix<F> m(r, r, Jet<F>());
    for (std::size_t a = 0; a < r; ++a) {
        const auto ia = interior_product(hframe[a], beta);
        for (std::size_t b = 0; b < r; ++b) m(a, b) = apply(ia, hframe[b]);
    }
    return m;
}

template <class F>
VectorJet<F> frame_vector(const std::vector<VectorJet<F>>& hframe, const std::vector<Jet<F>>& coords) {
    if (coords.size() != hframe.size()) throw DimensionMismatch("frame coordinate count");
    VectorJet<F> out = coords[0] * hframe[0];
    for (std::size_t b = 1; b < coords.size(); ++b) out += coords[b] * hframe[b];
    return out;
}

template <class F>
std::vector<Jet<F>> frame_coordinates(const QcPointFrame<F>& frame, const VectorJet<F>& v) {
    std::vector<Jet<F>> out;
    for (std::size_t a = 0; a < frame.hcoord.rows(); ++a) {
        Jet<F> acc = Jet<F>::zero(v.dim(), std::min(v.order(), frame.hcoord.order()));
        for (int mu = 0; mu < v.dim(); ++mu)
            if (!frame.hcoord(a, mu).is_zero()) acc.add_product(frame.hcoord(a, mu), v[mu]);
        out.push_back(std::move(acc));
    }
    return out;
}

template <class F>
VectorJet<F> horizontal_part(const QcPointFrame<F>& frame, const VectorJet<F>& v) {
    VectorJet<F> out = v;
    for (int m = 0; m < 3; ++m) out -= apply(frame.eta[m], v) * frame.xi[m];
    return out;
}

template <class F>
void quaternionic_data(const std::array<FormJet<F>, 3>& deta, const std::vector<VectorJet<F>>& hframe, JetMatrix<F>& G,
                       JetMatrix<F>& Ginv, std::array<JetMatrix<F>, 3>& J) {
    const F half = from_rational<F>(Rational(1, 2));
    std::array<JetMatrix<F>, 3> w, winv;
    for (int l = 0; l < 3; ++l) {
        w[l] = frame_matrix(deta[l], hframe).scaled(half);
        try {
            winv[l] = inverse(w[l]);
        } catch (const SingularSystem&) {
            throw DegenerateStructure("omega_" + std::to_string(l + 1) + " is degenerate on H");
        }
    }
    // -W_j^{-1} W_k represents +-I_i.
    std::array<JetMatrix<F>, 3> k;
    for (int i = 0; i < 3; ++i) k[i] = -(winv[(i + 1) % 3] * w[(i + 2) % 3]);

    const std::size_t r = hframe.size();
    const auto id = JetMatrix<F>::identity(r, hframe[0].dim(), k[0].order());
    for (int mask = 0; mask < 8; ++mask) {
        std::array<JetMatrix<F>, 3> cand;
        for (int l = 0; l < 3; ++l) cand[l] = (mask >> l & 1) ? -k[l] : k[l];
        if (!(cand[0] * cand[1] == cand[2])) continue;
        std::array<JetMatrix<F>, 3> g;
        for (int l = 0; l < 3; ++l) g[l] = -(cand[l].transpose() * w[l]);
        if (!(g[0] == g[1] && g[1] == g[2] && g[0] == g[0].transpose())) continue;
        if constexpr (std::is_same_v<F, Rational>) {
            if (!leading_minors_positive(value_part(g[0]))) continue;
        }
        for (int l = 0; l < 3; ++l)
            if (!(cand[l] * cand[l] == -id))
                throw NotQuaternionCompatible("J_" + std::to_string(l + 1) + " does not square to -1");
        G = g[0];
        Ginv = inverse(G);
        J = cand;
        return;
    }
    throw NotQuaternionCompatible("no sign assignment yields a common positive metric with J1 J2 = J3");
}

template <class F>
void fundamental_forms(const std::array<FormJet<F>, 3>& eta, const std::array<FormJet<F>, 3>& deta,
                       const std::array<VectorJet<F>, 3>& xi, std::array<FormJet<F>, 3>& omega, FormJet<F>& Omega) {
    const F half = from_rational<F>(Rational(1, 2));
    for (int m = 0; m < 3; ++m) {
        FormJet<F> two = deta[m];
        std::array<FormJet<F>, 3> c;
        for (int l = 0; l < 3; ++l) {
            c[l] = interior_product(xi[l], deta[m]);
            two -= wedge(eta[l], c[l]);
        }
        for (int l = 0; l < 3; ++l)
            for (int p = l + 1; p < 3; ++p) two += apply(c[l], xi[p]) * wedge(eta[l], eta[p]);
        omega[m] = half * two;
    }
    Omega = wedge(omega[0], omega[0]);
    Omega += wedge(omega[1], omega[1]);
    Omega += wedge(omega[2], omega[2]);
}

template <class F>
QcPointFrame<F> build_frame(const QcChart& chart, std::span<const Rational> point, int order) {
    if (order < 1) throw InsufficientJetOrder("frame construction needs jet order >= 1");
    QcPointFrame<F> fr;
    fr.point.assign(point.begin(), point.end());
    fr.n = chart.n;
    fr.order = order;
    fr.eta = contact_forms<F>(chart, point, order);
    for (int l = 0; l < 3; ++l) fr.deta[l] = exterior_derivative(fr.eta[l]);
    std::tie(fr.hframe, fr.hcoord) = horizontal_frame(fr.eta);
    fr.xi = reeb_fields(fr.eta, fr.deta, fr.hframe);
    quaternionic_data(fr.deta, fr.hframe, fr.G, fr.Ginv, fr.J);
    fundamental_forms(fr.eta, fr.deta, fr.xi, fr.omega, fr.Omega);
    return fr;
}

template <class F>
QcPointFrame<F> remix_frame(const QcPointFrame<F>& frame, const std::vector<Rational>& m) {
    const std::size_t r = frame.hframe.size();
    const int d = frame.dim();
    const auto mm = JetMatrix<F>::from_values(r, r, m, d, frame.order);
    const auto minv = inverse(mm);
    QcPointFrame<F> out = frame;
    for (std::size_t b = 0; b < r; ++b) {
        std::vector<Jet<F>> col;
        for (std::size_t a = 0; a < r; ++a) col.push_back(mm(a, b));
        out.hframe[b] = frame_vector(frame.hframe, col);
    }
    out.hcoord = minv * frame.hcoord;
    quaternionic_data(out.deta, out.hframe, out.G, out.Ginv, out.J);
    return out;
}

#define QC_INSTANTIATE(F)                                                                                          \
    template Jet<F> apply(const FormJet<F>&, const VectorJet<F>&);                                                 \
    template std::array<FormJet<F>, 3> contact_forms<F>(const QcChart&, std::span<const Rational>, int);           \
    template std::pair<std::vector<VectorJet<F>>, JetMatrix<F>> horizontal_frame(const std::array<FormJet<F>, 3>&); \
    template std::array<VectorJet<F>, 3> reeb_fields(const std::array<FormJet<F>, 3>&,                             \
                                                     const std::array<FormJet<F>, 3>&,                             \
                                                     const std::vector<VectorJet<F>>&);                            \
    template JetMatrix<F> frame_matrix(const FormJet<F>&, const std::vector<VectorJet<F>>&);                       \
    template VectorJet<F> frame_vector(const std::vector<VectorJet<F>>&, const std::vector<Jet<F>>&);              \
    template std::vector<Jet<F>> frame_coordinates(const QcPointFrame<F>&, const VectorJet<F>&);                   \
    template VectorJet<F> horizontal_part(const QcPointFrame<F>&, const VectorJet<F>&);                            \
    template void quaternionic_data(const std::array<FormJet<F>, 3>&, const std::vector<VectorJet<F>>&,            \
                                    JetMatrix<F>&, JetMatrix<F>&, std::array<JetMatrix<F>, 3>&);                   \
    template void fundamental_forms(const std::array<FormJet<F>, 3>&, const std::array<FormJet<F>, 3>&,            \
                                    const std::array<VectorJet<F>, 3>&, std::array<FormJet<F>, 3>&, FormJet<F>&);  \
    template QcPointFrame<F> build_frame<F>(const QcChart&, std::span<const Rational>, int);                       \
    template QcPointFrame<F> remix_frame(const QcPointFrame<F>&, const std::vector<Rational>&);

QC_INSTANTIATE(Rational)
QC_INSTANTIATE(ModP)

#undef QC_INSTANTIATE

} // namespace qc
