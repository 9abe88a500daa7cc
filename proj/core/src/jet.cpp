#include "qc/jet.hpp"

#include "qc/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

namespace qc {

namespace {

std::string key_of(std::span<const std::uint8_t> exps) { return {exps.begin(), exps.end()}; }

struct Registry {
    std::mutex mutex;
    std::map<int, std::vector<std::unique_ptr<MonomialTable>>> tables;
};

Registry& registry() {
    static Registry r;
    return r;
}

// Per-table lookup from exponent vector to index, kept out of the header.
std::unordered_map<const MonomialTable*, std::unordered_map<std::string, MonomialTable::Index>>& index_maps() {
    static std::unordered_map<const MonomialTable*, std::unordered_map<std::string, MonomialTable::Index>> maps;
    return maps;
}

} // namespace

MonomialTable::MonomialTable(int dim, int order) : dim_(dim), max_order_(order) {
    if (dim <= 0 || dim > 64) throw DimensionMismatch("jet dimension must be in [1, 64]");
    if (order < 0) throw InsufficientJetOrder("negative jet order");

    // Degree by degree; within a degree, lexicographically descending exponents.
    offsets_.push_back(0);
    std::vector<std::uint8_t> current(dim, 0);
    for (int deg = 0; deg <= order; ++deg) {
        std::vector<std::vector<std::uint8_t>> level;
        std::fill(current.begin(), current.end(), 0);
        // Enumerate compositions of deg into dim parts.
        auto rec = [&](auto&& self, int var, int remaining) -> void {
            if (var == dim - 1) {
                current[var] = static_cast<std::uint8_t>(remaining);
                level.push_back(current);
                return;
            }
            for (int e = remaining; e >= 0; --e) {
                current[var] = static_cast<std::uint8_t>(e);
                self(self, var + 1, remaining - e);
            }
        };
        rec(rec, 0, deg);
        for (auto& m : level) {
            exponents_.insert(exponents_.end(), m.begin(), m.end());
            degree_.push_back(deg);
        }
        offsets_.push_back(degree_.size());
    }

    const auto total = static_cast<Index>(degree_.size());
    std::unordered_map<std::string, Index> lookup;
    lookup.reserve(total);
    for (Index i = 0; i < total; ++i) lookup.emplace(key_of(exponents(i)), i);

    raise_.assign(static_cast<std::size_t>(total) * dim_, npos);
    std::vector<std::uint8_t> tmp(dim);
    for (Index i = 0; i < total; ++i) {
        if (degree_[i] == order) continue;
        auto e = exponents(i);
        for (int v = 0; v < dim; ++v) {
            std::copy(e.begin(), e.end(), tmp.begin());
            ++tmp[v];
            raise_[static_cast<std::size_t>(i) * dim_ + v] = lookup.at(key_of(tmp));
        }
    }

    std::vector<std::vector<Split>> per(total);
    for (Index a = 0; a < total; ++a) {
        auto ea = exponents(a);
        for (Index b = 0; b < total; ++b) {
            if (degree_[a] + degree_[b] > order) break; // graded: later b only grow
            auto eb = exponents(b);
            for (int v = 0; v < dim; ++v) tmp[v] = static_cast<std::uint8_t>(ea[v] + eb[v]);
            per[lookup.at(key_of(tmp))].push_back({a, b});
        }
    }
    split_offsets_.push_back(0);
    for (auto& p : per) {
        splits_.insert(splits_.end(), p.begin(), p.end());
        split_offsets_.push_back(splits_.size());
    }

    index_maps()[this] = std::move(lookup);
}

const MonomialTable& MonomialTable::get(int dim, int order) {
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mutex);
    auto& list = reg.tables[dim];
    for (auto& t : list)
        if (t->max_order() >= order) return *t;
    list.push_back(std::unique_ptr<MonomialTable>(new MonomialTable(dim, std::max(order, 3))));
    return *list.back();
}

MonomialTable::Index MonomialTable::index_of(std::span<const std::uint8_t> exps) const {
    if (static_cast<int>(exps.size()) != dim_) throw DimensionMismatch("multi-index length differs from dimension");
    std::lock_guard<std::mutex> lock(registry().mutex);
    const auto& map = index_maps().at(this);
    auto it = map.find(key_of(exps));
    return it == map.end() ? npos : it->second;
}

std::uint64_t MonomialTable::multi_factorial(Index idx) const {
    std::uint64_t f = 1;
    for (auto e : exponents(idx))
        for (std::uint64_t k = 2; k <= e; ++k) f *= k;
    return f;
}

// --------------------------------------------------------------------------------------------

template <class F>
Jet<F> Jet<F>::zero(int dim, int order) {
    const auto& t = MonomialTable::get(dim, order);
    return Jet(&t, order, std::vector<F>(t.count(order), F(0)));
}

template <class F>
Jet<F> Jet<F>::constant(int dim, int order, const F& value) {
    auto j = zero(dim, order);
    j.coeffs_[0] = value;
    return j;
}

template <class F>
Jet<F> Jet<F>::variable(int dim, int order, int var, const F& value) {
    if (var < 0 || var >= dim) throw DimensionMismatch("variable index out of range");
    auto j = constant(dim, order, value);
    if (order >= 1) j.coeffs_[j.table_->raise(0, var)] = F(1);
    return j;
}

template <class F>
F Jet<F>::coefficient(std::span<const std::uint8_t> exps) const {
    auto idx = table_->index_of(exps);
    if (idx == MonomialTable::npos || idx >= coeffs_.size()) return F(0);
    return coeffs_[idx];
}

template <class F>
bool Jet<F>::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const F& c) { return qc::is_zero(c); });
}

template <class F>
MonomialTable::Index Jet<F>::first_nonzero() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!qc::is_zero(coeffs_[i])) return static_cast<MonomialTable::Index>(i);
    return MonomialTable::npos;
}

template <class F>
Jet<F> Jet<F>::truncated(int order) const {
    if (order > order_) throw InsufficientJetOrder("cannot raise jet order by truncation");
    auto c = coeffs_;
    c.resize(table_->count(order));
    return Jet(table_, order, std::move(c));
}

template <class F>
Jet<F> Jet<F>::embedded(int new_dim) const {
    if (new_dim < dim()) throw DimensionMismatch("embedding into fewer variables");
    if (new_dim == dim()) return *this;
    auto out = zero(new_dim, order_);
    std::vector<std::uint8_t> e(new_dim, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (qc::is_zero(coeffs_[i])) continue;
        auto src = table_->exponents(static_cast<MonomialTable::Index>(i));
        std::copy(src.begin(), src.end(), e.begin());
        out.coeffs_[out.table_->index_of(e)] = coeffs_[i];
    }
    return out;
}

template <class F>
Jet<F> Jet<F>::partial(int var) const {
    if (order_ == 0) throw InsufficientJetOrder("partial derivative of an order-0 jet");
    if (var < 0 || var >= dim()) throw DimensionMismatch("variable index out of range");
    const int r = order_ - 1;
    std::vector<F> out(table_->count(r), F(0));
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto idx = static_cast<MonomialTable::Index>(i);
        const F& up = coeffs_[table_->raise(idx, var)];
        if (qc::is_zero(up)) continue;
        out[i] = up * from_int<F>(table_->exponents(idx)[var] + 1);
    }
    return Jet(table_, r, std::move(out));
}

template <class F>
const MonomialTable* Jet<F>::wider(const Jet& a, const Jet& b) {
    if (!a.table_ || !b.table_) throw DimensionMismatch("operation on a null jet");
    if (a.dim() != b.dim())
        throw DimensionMismatch("jets of dimension " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    return a.table_->max_order() >= b.table_->max_order() ? a.table_ : b.table_;
}

template <class F>
Jet<F>& Jet<F>::operator+=(const Jet& b) {
    table_ = wider(*this, b);
    if (b.order_ < order_) {
        order_ = b.order_;
        coeffs_.resize(table_->count(order_));
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
    return *this;
}

template <class F>
Jet<F>& Jet<F>::operator-=(const Jet& b) {
    table_ = wider(*this, b);
    if (b.order_ < order_) {
        order_ = b.order_;
        coeffs_.resize(table_->count(order_));
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
    return *this;
}

template <class F>
Jet<F>& Jet<F>::operator*=(const F& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

template <class F>
Jet<F> Jet<F>::multiply(const Jet& a, const Jet& b) {
    const auto* t = wider(a, b);
    const int r = std::min(a.order_, b.order_);
    Jet out(t, r, std::vector<F>(t->count(r), F(0)));
    out.add_product(a, b);
    return out;
}

template <class F>
void Jet<F>::add_product(const Jet& a, const Jet& b) {
    const MonomialTable* t = wider(a, b);
    if (const auto* u = wider(*this, a); u->max_order() > t->max_order()) t = u;
    const int r = std::min({order_, a.order_, b.order_});
    if (r < order_) {
        order_ = r;
        coeffs_.resize(t->count(r));
    }
    table_ = t;
    F tmp(0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (const auto& s : t->splits(static_cast<MonomialTable::Index>(i))) {
            const F& x = a.coeffs_[s.left];
            if (qc::is_zero(x)) continue;
            const F& y = b.coeffs_[s.right];
            if (qc::is_zero(y)) continue;
            tmp = x * y;
            coeffs_[i] += tmp;
        }
    }
}

template <class F>
Jet<F> Jet<F>::divide(const Jet& a, const Jet& b) {
    const auto* t = wider(a, b);
    if (qc::is_zero(b.value())) throw ValuePartZero("division by a jet with zero value part");
    const int r = std::min(a.order_, b.order_);
    const F inv = F(1) / b.coeffs_[0];
    std::vector<F> q(t->count(r), F(0));
    F acc(0);
    F tmp(0);
    // q_c = (a_c - sum_{b' + c' = c, b' != 0} b_{b'} q_{c'}) / b_0, in graded order.
    for (std::size_t i = 0; i < q.size(); ++i) {
        acc = a.coeffs_[i];
        for (const auto& s : t->splits(static_cast<MonomialTable::Index>(i))) {
            if (s.left == 0) continue;
            const F& x = b.coeffs_[s.left];
            if (qc::is_zero(x)) continue;
            const F& y = q[s.right];
            if (qc::is_zero(y)) continue;
            tmp = x * y;
            acc -= tmp;
        }
        q[i] = acc * inv;
    }
    return Jet(t, r, std::move(q));
}

template class Jet<Rational>;
template class Jet<ModP>;

} // namespace qc
