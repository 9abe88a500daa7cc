#include "qc/linalg.hpp"

#include "qc/errors.hpp"

#include <algorithm>
#include <limits>

namespace qc {

template <class F>
JetMatrix<F> JetMatrix<F>::zero(std::size_t rows, std::size_t cols, int dim, int order) {
    return JetMatrix(rows, cols, Jet<F>::zero(dim, order));
}

template <class F>
JetMatrix<F> JetMatrix<F>::identity(std::size_t n, int dim, int order) {
    auto m = zero(n, n, dim, order);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Jet<F>::constant(dim, order, F(1));
    return m;
}

template <class F>
JetMatrix<F> JetMatrix<F>::from_values(std::size_t rows, std::size_t cols, const std::vector<Rational>& values,
                                       int dim, int order) {
    if (values.size() != rows * cols) throw DimensionMismatch("matrix value count");
    auto m = zero(rows, cols, dim, order);
    for (std::size_t i = 0; i < values.size(); ++i)
        m.data_[i] = Jet<F>::constant(dim, order, from_rational<F>(values[i]));
    return m;
}

template <class F>
JetMatrix<F> JetMatrix<F>::transpose() const {
    JetMatrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.resize(data_.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
    return t;
}

template <class F>
JetMatrix<F> JetMatrix<F>::multiply(const JetMatrix& a, const JetMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape");
    if (a.data_.empty() || b.data_.empty()) throw DimensionMismatch("empty matrix product");
    const int order = std::min(a.order(), b.order());
    auto out = zero(a.rows_, b.cols_, a.data_.front().dim(), order);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) {
            auto& acc = out(i, j);
            for (std::size_t k = 0; k < a.cols_; ++k) acc.add_product(a(i, k), b(k, j));
        }
    return out;
}

template <class F>
JetMatrix<F> JetMatrix<F>::combine(const JetMatrix& a, const JetMatrix& b, bool subtract) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape");
    auto out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) {
        if (subtract)
            out.data_[i] -= b.data_[i];
        else
            out.data_[i] += b.data_[i];
    }
    return out;
}

template <class F>
JetMatrix<F> JetMatrix<F>::operator-() const {
    auto out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
}

template <class F>
JetMatrix<F> JetMatrix<F>::scaled(const F& s) const {
    auto out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
}

template <class F>
JetMatrix<F> JetMatrix<F>::truncated(int order) const {
    auto out = *this;
    for (auto& x : out.data_) x = x.truncated(order);
    return out;
}

template <class F>
Jet<F> JetMatrix<F>::trace() const {
    if (rows_ != cols_ || rows_ == 0) throw DimensionMismatch("trace of a non-square matrix");
    Jet<F> t = (*this)(0, 0);
    for (std::size_t i = 1; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

template <class F>
bool JetMatrix<F>::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Jet<F>& j) { return j.is_zero(); });
}

template <class F>
int JetMatrix<F>::order() const {
    int o = std::numeric_limits<int>::max();
    for (const auto& j : data_) o = std::min(o, j.order());
    return o;
}

template class JetMatrix<Rational>;
template class JetMatrix<ModP>;

// ---------------------------------------------------------------------------------------------

template <class F>
JetMatrix<F> solve_linear_jets(const JetMatrix<F>& a, const JetMatrix<F>& b) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t k = b.cols();
    if (b.rows() != m) throw DimensionMismatch("right-hand side has the wrong number of rows");
    if (m < n) throw SingularSystem("underdetermined system (" + std::to_string(m) + " x " + std::to_string(n) + ")");

    // Gauss-Jordan on row copies; rows are referred to by their original index.
    std::vector<std::vector<Jet<F>>> rows(m);
    for (std::size_t r = 0; r < m; ++r) {
        rows[r].reserve(n + k);
        for (std::size_t c = 0; c < n; ++c) rows[r].push_back(a(r, c));
        for (std::size_t c = 0; c < k; ++c) rows[r].push_back(b(r, c));
    }
    std::vector<bool> used(m, false);
    std::vector<std::size_t> pivot_row(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = m;
        for (std::size_t r = 0; r < m; ++r)
            if (!used[r] && !qc::is_zero(rows[r][c].value())) {
                p = r;
                break;
            }
        if (p == m) throw SingularSystem("no pivot with nonzero value part in column " + std::to_string(c));
        used[p] = true;
        pivot_row[c] = p;
        const Jet<F> piv = rows[p][c];
        for (std::size_t j = c; j < n + k; ++j) rows[p][j] = rows[p][j] / piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == p || rows[r][c].is_zero()) continue;
            const Jet<F> f = rows[r][c];
            for (std::size_t j = c; j < n + k; ++j) {
                if (rows[p][j].is_zero()) {
                    if (j == c) rows[r][j] = rows[r][j] - f; // keeps order bookkeeping consistent
                    continue;
                }
                rows[r][j] = rows[r][j] - f * rows[p][j];
            }
        }
    }

    const int dim = a(0, 0).dim();
    int order = std::min(a.order(), b.order());
    auto x = JetMatrix<F>::zero(n, k, dim, order);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t j = 0; j < k; ++j) x(c, j) = rows[pivot_row[c]][n + j];

    // Consistency of the equations that were not used as pivots, against the original system.
    for (std::size_t r = 0; r < m; ++r) {
        if (used[r]) continue;
        for (std::size_t j = 0; j < k; ++j) {
            Jet<F> res = -b(r, j);
            for (std::size_t c = 0; c < n; ++c) res.add_product(a(r, c), x(c, j));
            if (!res.is_zero()) {
                auto idx = res.first_nonzero();
                throw InconsistentSystem("equation " + std::to_string(r) + " has residual coefficient " +
                                         to_string(res.coefficient(idx)) + " (monomial #" + std::to_string(idx) + ")");
            }
        }
    }
    return x;
}

template <class F>
std::vector<Jet<F>> solve_linear_jets(const JetMatrix<F>& a, const std::vector<Jet<F>>& b) {
    JetMatrix<F> rhs(b.size(), 1, Jet<F>());
    for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
    auto x = solve_linear_jets(a, rhs);
    std::vector<Jet<F>> out;
    for (std::size_t i = 0; i < x.rows(); ++i) out.push_back(x(i, 0));
    return out;
}

template <class F>
JetMatrix<F> inverse(const JetMatrix<F>& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("inverse of a non-square matrix");
    return solve_linear_jets(a, JetMatrix<F>::identity(a.rows(), a(0, 0).dim(), a.order()));
}

template <class F>
std::vector<std::vector<F>> value_part(const JetMatrix<F>& a) {
    std::vector<std::vector<F>> v(a.rows(), std::vector<F>(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) v[r][c] = a(r, c).value();
    return v;
}

template JetMatrix<Rational> solve_linear_jets(const JetMatrix<Rational>&, const JetMatrix<Rational>&);
template JetMatrix<ModP> solve_linear_jets(const JetMatrix<ModP>&, const JetMatrix<ModP>&);
template std::vector<Jet<Rational>> solve_linear_jets(const JetMatrix<Rational>&, const std::vector<Jet<Rational>>&);
template std::vector<Jet<ModP>> solve_linear_jets(const JetMatrix<ModP>&, const std::vector<Jet<ModP>>&);
template JetMatrix<Rational> inverse(const JetMatrix<Rational>&);
template JetMatrix<ModP> inverse(const JetMatrix<ModP>&);
template std::vector<std::vector<Rational>> value_part(const JetMatrix<Rational>&);
template std::vector<std::vector<ModP>> value_part(const JetMatrix<ModP>&);

// ---------------------------------------------------------------------------------------------

Inertia inertia(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Inertia out;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && sgn(a[i][i]) != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // All remaining diagonal entries vanish; fold a nonzero off-diagonal entry onto the diagonal.
            std::size_t fi = n, fj = n;
            for (std::size_t i = 0; i < n && fi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && sgn(a[i][j]) != 0) {
                        fi = i;
                        fj = j;
                        break;
                    }
            if (fi == n) break; // the remaining block is zero
            for (std::size_t c = 0; c < n; ++c) a[fi][c] += a[fj][c];
            for (std::size_t r = 0; r < n; ++r) a[r][fi] += a[r][fj];
            p = fi;
        }
        done[p] = true;
        const Rational piv = a[p][p];
        (sgn(piv) > 0 ? out.positive : out.negative)++;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || sgn(a[i][p]) == 0) continue;
            const Rational f = a[i][p] / piv;
            for (std::size_t c = 0; c < n; ++c) a[i][c] -= f * a[p][c];
            for (std::size_t r = 0; r < n; ++r) a[r][i] -= f * a[r][p];
        }
    }
    out.zero = static_cast<int>(n) - out.positive - out.negative;
    return out;
}

bool leading_minors_positive(const std::vector<std::vector<Rational>>& sym) {
    auto a = sym;
    const std::size_t n = a.size();
    // Without row exchanges the k-th pivot is D_k / D_{k-1}.
    for (std::size_t k = 0; k < n; ++k) {
        if (sgn(a[k][k]) <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(a[i][k]) == 0) continue;
            const Rational f = a[i][k] / a[k][k];
            for (std::size_t c = k; c < n; ++c) a[i][c] -= f * a[k][c];
        }
    }
    return true;
}

} // namespace qc
