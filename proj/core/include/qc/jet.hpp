#pragma once

// Truncated multivariate Taylor expansions ("jets") at a point.
//
// A jet of order r in D variables stores the Taylor coefficients
//   c_a = (d^|a| f / dx^a)(p) / a!
// for every multi-index a with |a| <= r. Coefficients are laid out in graded
// order, so the coefficients of a lower-order jet are a prefix of those of a
// higher-order one; truncation is a resize.

#include "qc/field.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qc {

/// Graded enumeration of multi-indices for one dimension, shared by all jets.
class MonomialTable {
public:
    using Index = std::uint32_t;
    static constexpr Index npos = ~Index{0};

    /// Registry lookup; returns a table covering at least `order`. Never freed.
    static const MonomialTable& get(int dim, int order);

    int dim() const { return dim_; }
    int max_order() const { return max_order_; }
    /// Number of monomials of total degree <= order.
    std::size_t count(int order) const { return offsets_[static_cast<std::size_t>(order) + 1]; }
    int degree(Index idx) const { return degree_[idx]; }
    std::span<const std::uint8_t> exponents(Index idx) const {
        return {exponents_.data() + static_cast<std::size_t>(idx) * dim_, static_cast<std::size_t>(dim_)};
    }
    Index index_of(std::span<const std::uint8_t> exps) const;
    /// Index of idx + e_var, or npos past max_order.
    Index raise(Index idx, int var) const { return raise_[static_cast<std::size_t>(idx) * dim_ + var]; }

    struct Split {
        Index left;
        Index right;
    };
    /// All ordered pairs (b, c) with b + c = idx.
    std::span<const Split> splits(Index idx) const {
        return {splits_.data() + split_offsets_[idx], splits_.data() + split_offsets_[idx + 1]};
    }
    /// a! for the multi-index at idx.
    std::uint64_t multi_factorial(Index idx) const;

private:
    MonomialTable(int dim, int order);

    int dim_;
    int max_order_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint8_t> exponents_;
    std::vector<int> degree_;
    std::vector<Index> raise_;
    std::vector<std::size_t> split_offsets_;
    std::vector<Split> splits_;
};

template <class F>
class Jet {
public:
    /// A null jet; only assignment and `valid()` are meaningful on it.
    Jet() = default;

    static Jet zero(int dim, int order);
    static Jet constant(int dim, int order, const F& value);
    /// The coordinate function x_var expanded at a point where it takes `value`.
    static Jet variable(int dim, int order, int var, const F& value);

    bool valid() const { return table_ != nullptr; }
    int dim() const { return table_ ? table_->dim() : 0; }
    int order() const { return order_; }
    const F& value() const { return coeffs_.front(); }
    std::span<const F> coefficients() const { return coeffs_; }
    const F& coefficient(MonomialTable::Index idx) const { return coeffs_[idx]; }
    F coefficient(std::span<const std::uint8_t> exps) const;
    void set_coefficient(MonomialTable::Index idx, const F& v) { coeffs_[idx] = v; }
    const MonomialTable& table() const { return *table_; }

    bool is_zero() const;
    /// First nonzero coefficient index, or npos.
    MonomialTable::Index first_nonzero() const;

    Jet truncated(int order) const;
    /// Re-expresses the jet in `new_dim` >= dim variables; the extra variables do not occur.
    Jet embedded(int new_dim) const;
    /// d/dx_var; order drops by one. Throws InsufficientJetOrder on an order-0 jet.
    Jet partial(int var) const;

    Jet& operator+=(const Jet& b);
    Jet& operator-=(const Jet& b);
    Jet& operator*=(const F& s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }
    friend Jet operator*(Jet a, const F& s) { return a *= s; }
    friend Jet operator*(const F& s, Jet a) { return a *= s; }
    friend Jet operator*(const Jet& a, const Jet& b) { return multiply(a, b); }
    /// Throws ValuePartZero when b has zero value part.
    friend Jet operator/(const Jet& a, const Jet& b) { return divide(a, b); }

    friend bool operator==(const Jet& a, const Jet& b) {
        return a.dim() == b.dim() && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

    /// Accumulates a*b into this jet (order = min of the three).
    void add_product(const Jet& a, const Jet& b);

private:
    Jet(const MonomialTable* table, int order, std::vector<F> coeffs)
        : table_(table), order_(order), coeffs_(std::move(coeffs)) {}
    static Jet multiply(const Jet& a, const Jet& b);
    static Jet divide(const Jet& a, const Jet& b);
    static const MonomialTable* wider(const Jet& a, const Jet& b);

    const MonomialTable* table_ = nullptr;
    int order_ = 0;
    std::vector<F> coeffs_;
};

extern template class Jet<Rational>;
extern template class Jet<ModP>;

} // namespace qc
