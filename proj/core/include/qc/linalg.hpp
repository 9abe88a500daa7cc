#pragma once

// Dense matrices over the jet ring and exact elimination.

#include "qc/jet.hpp"

#include <vector>

namespace qc {

template <class F>
class JetMatrix {
public:
    JetMatrix() = default;
    JetMatrix(std::size_t rows, std::size_t cols, const Jet<F>& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static JetMatrix identity(std::size_t n, int dim, int order);
    static JetMatrix zero(std::size_t rows, std::size_t cols, int dim, int order);
    /// Constant-jet matrix from a rational matrix (row-major).
    static JetMatrix from_values(std::size_t rows, std::size_t cols, const std::vector<Rational>& values, int dim,
                                 int order);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Jet<F>& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Jet<F>& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    JetMatrix transpose() const;
    friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) { return multiply(a, b); }
    friend JetMatrix operator+(const JetMatrix& a, const JetMatrix& b) { return combine(a, b, false); }
    friend JetMatrix operator-(const JetMatrix& a, const JetMatrix& b) { return combine(a, b, true); }
    JetMatrix operator-() const;
    JetMatrix scaled(const F& s) const;
    JetMatrix truncated(int order) const;

    Jet<F> trace() const;
    bool is_zero() const;
    /// Minimum order over all entries.
    int order() const;

    friend bool operator==(const JetMatrix& a, const JetMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    static JetMatrix multiply(const JetMatrix& a, const JetMatrix& b);
    static JetMatrix combine(const JetMatrix& a, const JetMatrix& b, bool subtract);

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Jet<F>> data_;
};

extern template class JetMatrix<Rational>;
extern template class JetMatrix<ModP>;

/// Solves A X = B over the jet ring (A is m x n with m >= n; B is m x k).
///
/// Pivots on the first row (in index order) whose pivot-column value part is
/// nonzero. For m > n the remaining m - n equations are checked exactly.
/// Throws SingularSystem when no pivot exists and InconsistentSystem (with the
/// residual) when a leftover equation fails.
template <class F>
JetMatrix<F> solve_linear_jets(const JetMatrix<F>& a, const JetMatrix<F>& b);

template <class F>
std::vector<Jet<F>> solve_linear_jets(const JetMatrix<F>& a, const std::vector<Jet<F>>& b);

template <class F>
JetMatrix<F> inverse(const JetMatrix<F>& a);

/// Value parts of a square jet matrix.
template <class F>
std::vector<std::vector<F>> value_part(const JetMatrix<F>& a);

/// Exact inertia (positive, negative, zero) of a symmetric rational matrix by congruence.
struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};
Inertia inertia(std::vector<std::vector<Rational>> sym);

/// True when every leading principal minor of the value part is positive.
bool leading_minors_positive(const std::vector<std::vector<Rational>>& sym);

} // namespace qc
