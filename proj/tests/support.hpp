#pragma once

#include "qc/exterior.hpp"
#include "qc/linalg.hpp"

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace qctest {

using qc::FormJet;
using qc::IndexMask;
using qc::Jet;
using qc::JetMatrix;
using qc::Rational;
using qc::VectorJet;

class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational rational(int bound = 5) {
        Rational q(integer(-bound, bound), integer(1, bound));
        q.canonicalize();
        return q;
    }

    Rational nonzero_rational(int bound = 5) {
        for (;;)
            if (auto q = rational(bound); q != 0) return q;
    }

    /// Dense jet; roughly a third of the coefficients are zero.
    Jet<Rational> jet(int dim, int order) {
        auto j = Jet<Rational>::zero(dim, order);
        const auto count = j.table().count(order);
        for (std::size_t i = 0; i < count; ++i)
            if (integer(0, 2) != 0) j.set_coefficient(static_cast<qc::MonomialTable::Index>(i), rational());
        return j;
    }

    Jet<Rational> unit_jet(int dim, int order) {
        auto j = jet(dim, order);
        j.set_coefficient(0, nonzero_rational());
        return j;
    }

    FormJet<Rational> form(int dim, int degree, int order) {
        FormJet<Rational> a(dim, degree, order);
        for (IndexMask m = 0; m < (IndexMask(1) << dim); ++m)
            if (std::popcount(m) == degree && integer(0, 1) == 1) a.accumulate(m, jet(dim, order));
        return a;
    }

    VectorJet<Rational> vector(int dim, int order) {
        std::vector<Jet<Rational>> c;
        for (int i = 0; i < dim; ++i) c.push_back(jet(dim, order));
        return VectorJet<Rational>(std::move(c));
    }

    JetMatrix<Rational> matrix(std::size_t rows, std::size_t cols, int dim, int order) {
        auto m = JetMatrix<Rational>::zero(rows, cols, dim, order);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = jet(dim, order);
        return m;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Constant-value determinant by cofactor expansion.
inline Rational cofactor_det(const std::vector<std::vector<Rational>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Rational d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Rational>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(std::move(row));
        }
        const Rational term = a[0][c] * cofactor_det(minor);
        d += (c % 2 == 0) ? term : Rational(-term);
    }
    return d;
}

/// adj(A) / det(A).
inline std::vector<std::vector<Rational>> adjugate_inverse(const std::vector<std::vector<Rational>>& a) {
    const std::size_t n = a.size();
    const Rational det = cofactor_det(a);
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<std::vector<Rational>> minor;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == r) continue;
                std::vector<Rational> row;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != c) row.push_back(a[i][k]);
                minor.push_back(std::move(row));
            }
            Rational cof = n == 1 ? Rational(1) : cofactor_det(minor);
            if ((r + c) % 2 == 1) cof = -cof;
            inv[c][r] = cof / det;
        }
    return inv;
}

} // namespace qctest
