#include "qc/exterior.hpp"

#include "qc/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace qc {

std::vector<int> mask_indices(IndexMask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

IndexMask mask_of(std::initializer_list<int> indices) {
    IndexMask m = 0;
    for (int i : indices) m |= IndexMask{1} << i;
    return m;
}

namespace {

// Number of set bits of m strictly below position i.
int below(IndexMask m, int i) { return std::popcount(m & ((IndexMask{1} << i) - 1)); }

// Sign of sorting the concatenation (I, J) into increasing order.
bool merge_is_odd(IndexMask a, IndexMask b) {
    int inversions = 0;
    for (IndexMask bb = b; bb; bb &= bb - 1) {
        int j = std::countr_zero(bb);
        inversions += std::popcount(a >> (j + 1));
    }
    return inversions & 1;
}

} // namespace

// ---------------------------------------------------------------------------------------------
// VectorJet

template <class F>
VectorJet<F>::VectorJet(std::vector<Jet<F>> components) : comps_(std::move(components)) {
    for (const auto& c : comps_)
        if (c.dim() != dim()) throw DimensionMismatch("vector component jets must live in the vector's dimension");
}

template <class F>
VectorJet<F> VectorJet<F>::zero(int dim, int order) {
    return VectorJet(std::vector<Jet<F>>(static_cast<std::size_t>(dim), Jet<F>::zero(dim, order)));
}

template <class F>
VectorJet<F> VectorJet<F>::coordinate(int dim, int order, int var) {
    auto v = zero(dim, order);
    v.comps_[static_cast<std::size_t>(var)] = Jet<F>::constant(dim, order, F(1));
    return v;
}

template <class F>
int VectorJet<F>::order() const {
    int o = std::numeric_limits<int>::max();
    for (const auto& c : comps_) o = std::min(o, c.order());
    return o;
}

template <class F>
VectorJet<F>& VectorJet<F>::operator+=(const VectorJet& b) {
    if (b.dim() != dim()) throw DimensionMismatch("vector sum");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += b.comps_[i];
    return *this;
}

template <class F>
VectorJet<F>& VectorJet<F>::operator-=(const VectorJet& b) {
    if (b.dim() != dim()) throw DimensionMismatch("vector difference");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= b.comps_[i];
    return *this;
}

template <class F>
VectorJet<F> VectorJet<F>::times(const Jet<F>& f) const {
    auto out = *this;
    for (auto& c : out.comps_) c = c * f;
    return out;
}

template <class F>
VectorJet<F> VectorJet<F>::truncated(int order) const {
    auto out = *this;
    for (auto& c : out.comps_) c = c.truncated(order);
    return out;
}

template <class F>
VectorJet<F> VectorJet<F>::embedded(int new_dim) const {
    std::vector<Jet<F>> c;
    for (const auto& x : comps_) c.push_back(x.embedded(new_dim));
    const int o = order();
    while (static_cast<int>(c.size()) < new_dim) c.push_back(Jet<F>::zero(new_dim, o));
    return VectorJet(std::move(c));
}

template <class F>
bool VectorJet<F>::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Jet<F>& j) { return j.is_zero(); });
}

// ---------------------------------------------------------------------------------------------
// FormJet

template <class F>
FormJet<F>::FormJet(int dim, int degree, int order) : dim_(dim), degree_(degree), order_(order) {
    if (dim <= 0 || dim > 63) throw DimensionMismatch("form dimension must be in [1, 63]");
    if (degree < 0) throw DegreeMismatch("negative form degree");
}

template <class F>
FormJet<F> FormJet<F>::function(const Jet<F>& f) {
    FormJet out(f.dim(), 0, f.order());
    out.comps_.emplace(0, f);
    out.prune();
    return out;
}

template <class F>
FormJet<F> FormJet<F>::one_form(const std::vector<Jet<F>>& coeffs) {
    if (coeffs.empty()) throw DimensionMismatch("empty 1-form");
    const int dim = coeffs.front().dim();
    if (static_cast<int>(coeffs.size()) != dim) throw DimensionMismatch("1-form needs one coefficient per coordinate");
    int order = std::numeric_limits<int>::max();
    for (const auto& c : coeffs) order = std::min(order, c.order());
    FormJet out(dim, 1, order);
    for (int i = 0; i < dim; ++i) out.accumulate(IndexMask{1} << i, coeffs[static_cast<std::size_t>(i)]);
    return out;
}

template <class F>
FormJet<F> FormJet<F>::monomial(const Jet<F>& f, IndexMask indices) {
    FormJet out(f.dim(), std::popcount(indices), f.order());
    out.accumulate(indices, f);
    return out;
}

template <class F>
Jet<F> FormJet<F>::component(IndexMask indices) const {
    auto it = comps_.find(indices);
    return it == comps_.end() ? Jet<F>::zero(dim_, order_) : it->second;
}

template <class F>
void FormJet<F>::accumulate(IndexMask indices, const Jet<F>& f) {
    if (std::popcount(indices) != degree_) throw DegreeMismatch("component index set has the wrong size");
    if (f.dim() != dim_) throw DimensionMismatch("component jet dimension");
    if (f.order() < order_) {
        order_ = f.order();
        for (auto& [k, v] : comps_) v = v.truncated(order_);
    }
    if (f.is_zero()) return;
    auto it = comps_.find(indices);
    if (it == comps_.end())
        comps_.emplace(indices, f.order() > order_ ? f.truncated(order_) : f);
    else
        it->second += f;
}

template <class F>
void FormJet<F>::accumulate_product(IndexMask indices, const Jet<F>& a, const Jet<F>& b, bool negate) {
    Jet<F> p = a * b;
    accumulate(indices, negate ? -p : p);
}

template <class F>
bool FormJet<F>::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

template <class F>
void FormJet<F>::prune() {
    for (auto it = comps_.begin(); it != comps_.end();) {
        if (it->second.is_zero())
            it = comps_.erase(it);
        else
            ++it;
    }
}

template <class F>
FormJet<F> FormJet<F>::truncated(int order) const {
    if (order > order_) throw InsufficientJetOrder("cannot raise form order by truncation");
    FormJet out(dim_, degree_, order);
    for (const auto& [k, v] : comps_) out.comps_.emplace(k, v.truncated(order));
    out.prune();
    return out;
}

template <class F>
FormJet<F> FormJet<F>::embedded(int new_dim) const {
    FormJet out(new_dim, degree_, order_);
    for (const auto& [k, v] : comps_) out.comps_.emplace(k, v.embedded(new_dim));
    return out;
}

template <class F>
void FormJet<F>::check_compatible(const FormJet& b) const {
    if (b.dim_ != dim_) throw DimensionMismatch("forms of different dimension");
    if (b.degree_ != degree_) throw DegreeMismatch("sum of forms of degree " + std::to_string(degree_) + " and " +
                                                   std::to_string(b.degree_));
}

template <class F>
FormJet<F>& FormJet<F>::operator+=(const FormJet& b) {
    check_compatible(b);
    if (b.order_ < order_) *this = truncated(b.order_);
    for (const auto& [k, v] : b.comps_) accumulate(k, v);
    order_ = std::min(order_, b.order_);
    prune();
    return *this;
}

template <class F>
FormJet<F>& FormJet<F>::operator-=(const FormJet& b) {
    check_compatible(b);
    if (b.order_ < order_) *this = truncated(b.order_);
    for (const auto& [k, v] : b.comps_) accumulate(k, -v);
    order_ = std::min(order_, b.order_);
    prune();
    return *this;
}

template <class F>
FormJet<F> FormJet<F>::times(const Jet<F>& f) const {
    if (f.dim() != dim_) throw DimensionMismatch("scalar jet dimension");
    FormJet out(dim_, degree_, std::min(order_, f.order()));
    for (const auto& [k, v] : comps_) out.accumulate(k, v * f);
    return out;
}

template class VectorJet<Rational>;
template class VectorJet<ModP>;
template class FormJet<Rational>;
template class FormJet<ModP>;

// ---------------------------------------------------------------------------------------------
// Operations

template <class F>
FormJet<F> wedge(const FormJet<F>& a, const FormJet<F>& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("wedge of forms of different dimension");
    FormJet<F> out(a.dim(), a.degree() + b.degree(), std::min(a.order(), b.order()));
    if (out.degree() > out.dim()) return out;
    for (const auto& [ka, va] : a.components())
        for (const auto& [kb, vb] : b.components()) {
            if (ka & kb) continue;
            out.accumulate_product(ka | kb, va, vb, merge_is_odd(ka, kb));
        }
    return out;
}

template <class F>
FormJet<F> exterior_derivative(const FormJet<F>& a) {
    if (a.order() < 1) throw InsufficientJetOrder("exterior derivative needs jet order >= 1");
    FormJet<F> out(a.dim(), a.degree() + 1, a.order() - 1);
    if (out.degree() > out.dim()) return out;
    for (const auto& [k, v] : a.components())
        for (int mu = 0; mu < a.dim(); ++mu) {
            if (k & (IndexMask{1} << mu)) continue;
            Jet<F> p = v.partial(mu);
            if (p.is_zero()) continue;
            out.accumulate(k | (IndexMask{1} << mu), below(k, mu) & 1 ? -p : p);
        }
    return out;
}

template <class F>
FormJet<F> interior_product(const VectorJet<F>& v, const FormJet<F>& a) {
    if (a.degree() == 0) throw DegreeMismatch("interior product with a 0-form");
    if (v.dim() != a.dim()) throw DimensionMismatch("interior product dimension");
    FormJet<F> out(a.dim(), a.degree() - 1, std::min(a.order(), v.order()));
    for (const auto& [k, f] : a.components())
        for (IndexMask rest = k; rest; rest &= rest - 1) {
            int mu = std::countr_zero(rest);
            const Jet<F>& vm = v[mu];
            if (vm.is_zero()) continue;
            out.accumulate_product(k & ~(IndexMask{1} << mu), vm, f, below(k, mu) & 1);
        }
    return out;
}

template <class F>
FormJet<F> lie_derivative(const VectorJet<F>& v, const FormJet<F>& a) {
    if (v.order() < 1 || a.order() < 1) throw InsufficientJetOrder("Lie derivative needs jet order >= 1");
    auto out = interior_product(v, exterior_derivative(a));
    if (a.degree() > 0) out += exterior_derivative(interior_product(v, a));
    return out;
}

template <class F>
Jet<F> evaluate_form(const FormJet<F>& a, const std::vector<VectorJet<F>>& vectors) {
    if (static_cast<int>(vectors.size()) != a.degree())
        throw DegreeMismatch("evaluating a " + std::to_string(a.degree()) + "-form on " +
                             std::to_string(vectors.size()) + " vectors");
    FormJet<F> cur = a;
    for (const auto& v : vectors) cur = interior_product(v, cur);
    return cur.component(0);
}

template <class F>
Jet<F> directional_derivative(const VectorJet<F>& v, const Jet<F>& f) {
    if (v.dim() != f.dim()) throw DimensionMismatch("directional derivative dimension");
    Jet<F> out = Jet<F>::zero(f.dim(), std::min(v.order(), f.order() - 1));
    for (int mu = 0; mu < f.dim(); ++mu) out.add_product(v[mu], f.partial(mu));
    return out;
}

template <class F>
VectorJet<F> bracket(const VectorJet<F>& v, const VectorJet<F>& w) {
    if (v.dim() != w.dim()) throw DimensionMismatch("bracket dimension");
    std::vector<Jet<F>> c;
    for (int mu = 0; mu < v.dim(); ++mu) c.push_back(directional_derivative(v, w[mu]) - directional_derivative(w, v[mu]));
    return VectorJet<F>(std::move(c));
}

template <class F>
FormJet<F> differential(const Jet<F>& f) {
    return exterior_derivative(FormJet<F>::function(f));
}

#define QC_INSTANTIATE(F)                                                                   \
    template FormJet<F> wedge(const FormJet<F>&, const FormJet<F>&);                        \
    template FormJet<F> exterior_derivative(const FormJet<F>&);                             \
    template FormJet<F> interior_product(const VectorJet<F>&, const FormJet<F>&);          \
    template FormJet<F> lie_derivative(const VectorJet<F>&, const FormJet<F>&);            \
    template Jet<F> evaluate_form(const FormJet<F>&, const std::vector<VectorJet<F>>&);    \
    template Jet<F> directional_derivative(const VectorJet<F>&, const Jet<F>&);            \
    template VectorJet<F> bracket(const VectorJet<F>&, const VectorJet<F>&);               \
    template FormJet<F> differential(const Jet<F>&);

QC_INSTANTIATE(Rational)
QC_INSTANTIATE(ModP)

#undef QC_INSTANTIATE

} // namespace qc
