#pragma once

// Differential forms and vector fields with jet coefficients at a point.
//
// Sign convention: (dx^1 ^ dx^2)(d_1, d_2) = 1, forms evaluate as
// determinants, and d(f dx_I) = df ^ dx_I, so that
//   d theta(X, Y) = X theta(Y) - Y theta(X) - theta([X, Y]).
// Interior product inserts into the first slot: (i_v a)(w, ...) = a(v, w, ...).

#include "qc/jet.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qc {

/// Increasing index tuple stored as a bit set.
using IndexMask = std::uint64_t;

std::vector<int> mask_indices(IndexMask m);
IndexMask mask_of(std::initializer_list<int> indices);

template <class F>
class VectorJet {
public:
    VectorJet() = default;
    explicit VectorJet(std::vector<Jet<F>> components);
    static VectorJet zero(int dim, int order);
    /// The coordinate field d/dx_var.
    static VectorJet coordinate(int dim, int order, int var);

    int dim() const { return static_cast<int>(comps_.size()); }
    int order() const;
    const Jet<F>& operator[](int i) const { return comps_[static_cast<std::size_t>(i)]; }
    Jet<F>& operator[](int i) { return comps_[static_cast<std::size_t>(i)]; }
    const std::vector<Jet<F>>& components() const { return comps_; }

    VectorJet& operator+=(const VectorJet& b);
    VectorJet& operator-=(const VectorJet& b);
    friend VectorJet operator+(VectorJet a, const VectorJet& b) { return a += b; }
    friend VectorJet operator-(VectorJet a, const VectorJet& b) { return a -= b; }
    friend VectorJet operator*(const Jet<F>& f, const VectorJet& v) { return v.times(f); }
    friend VectorJet operator*(const F& s, VectorJet v) {
        for (auto& c : v.comps_) c *= s;
        return v;
    }
    VectorJet truncated(int order) const;
    VectorJet embedded(int new_dim) const;
    bool is_zero() const;

private:
    VectorJet times(const Jet<F>& f) const;
    std::vector<Jet<F>> comps_;
};

template <class F>
class FormJet {
public:
    FormJet() = default;
    /// The zero form. Degrees above the dimension are allowed and always zero.
    FormJet(int dim, int degree, int order);
    static FormJet function(const Jet<F>& f);
    /// sum_mu coeffs[mu] dx^mu.
    static FormJet one_form(const std::vector<Jet<F>>& coeffs);
    /// f dx_I for the index set I.
    static FormJet monomial(const Jet<F>& f, IndexMask indices);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int order() const { return order_; }
    const std::map<IndexMask, Jet<F>>& components() const { return comps_; }
    /// Coefficient of dx_I (I strictly increasing); zero when absent.
    Jet<F> component(IndexMask indices) const;
    /// Adds f to the dx_I coefficient.
    void accumulate(IndexMask indices, const Jet<F>& f);
    void accumulate_product(IndexMask indices, const Jet<F>& a, const Jet<F>& b, bool negate);

    bool is_zero() const;
    FormJet truncated(int order) const;
    FormJet embedded(int new_dim) const;

    FormJet& operator+=(const FormJet& b);
    FormJet& operator-=(const FormJet& b);
    friend FormJet operator+(FormJet a, const FormJet& b) { return a += b; }
    friend FormJet operator-(FormJet a, const FormJet& b) { return a -= b; }
    friend FormJet operator-(FormJet a) {
        for (auto& [k, v] : a.comps_) v = -v;
        return a;
    }
    friend FormJet operator*(const Jet<F>& f, const FormJet& a) { return a.times(f); }
    friend FormJet operator*(const F& s, FormJet a) {
        for (auto& [k, v] : a.comps_) v *= s;
        return a;
    }
    /// Same shape and order, and every coefficient equal.
    friend bool operator==(const FormJet& a, const FormJet& b) {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.order_ == b.order_ && (a - b).is_zero();
    }

private:
    FormJet times(const Jet<F>& f) const;
    void check_compatible(const FormJet& b) const;
    void prune();

    int dim_ = 0;
    int degree_ = 0;
    int order_ = 0;
    std::map<IndexMask, Jet<F>> comps_;
};

extern template class VectorJet<Rational>;
extern template class VectorJet<ModP>;
extern template class FormJet<Rational>;
extern template class FormJet<ModP>;

/// Graded-commutative exterior product; order is the minimum of the inputs.
template <class F>
FormJet<F> wedge(const FormJet<F>& a, const FormJet<F>& b);

/// Raises the degree by one and lowers the order by one. Throws InsufficientJetOrder.
template <class F>
FormJet<F> exterior_derivative(const FormJet<F>& a);

/// Throws DegreeMismatch on a 0-form.
template <class F>
FormJet<F> interior_product(const VectorJet<F>& v, const FormJet<F>& a);

/// Cartan: i_v da + d(i_v a).
template <class F>
FormJet<F> lie_derivative(const VectorJet<F>& v, const FormJet<F>& a);

/// a(v_1, ..., v_k). Throws DegreeMismatch when the arity differs from the degree.
template <class F>
Jet<F> evaluate_form(const FormJet<F>& a, const std::vector<VectorJet<F>>& vectors);

/// v(f) = sum_mu v^mu d_mu f.
template <class F>
Jet<F> directional_derivative(const VectorJet<F>& v, const Jet<F>& f);

/// Lie bracket [v, w].
template <class F>
VectorJet<F> bracket(const VectorJet<F>& v, const VectorJet<F>& w);

/// d of a function as a 1-form.
template <class F>
FormJet<F> differential(const Jet<F>& f);

} // namespace qc
