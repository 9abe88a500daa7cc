#pragma once

// Scalar fields the engine is instantiated over.
//
// Rational is the certifying field (GMP rationals, always canonical).
// ModP is the prime-field prescreen: a fixed prime just above 2^61, used to
// screen identities quickly before the rational pass certifies them.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qc {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

/// "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& x);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

class ModP {
public:
    static constexpr std::uint64_t kPrime = 2305843009213693967ULL; // nextprime(2^61)

    constexpr ModP() = default;
    explicit ModP(std::int64_t v) : v_(from_int(v).v_) {}
    static ModP from_int(std::int64_t v);
    /// Throws DivisionByZero when the denominator vanishes mod p.
    static ModP from_rational(const Rational& x);

    std::uint64_t value() const { return v_; }
    ModP inverse() const;

    friend ModP operator+(ModP a, ModP b) {
        std::uint64_t s = a.v_ + b.v_;
        if (s >= kPrime) s -= kPrime;
        return raw(s);
    }
    friend ModP operator-(ModP a, ModP b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + kPrime - b.v_); }
    friend ModP operator-(ModP a) { return raw(a.v_ == 0 ? 0 : kPrime - a.v_); }
    friend ModP operator*(ModP a, ModP b) {
        auto prod = static_cast<unsigned __int128>(a.v_) * b.v_;
        return raw(static_cast<std::uint64_t>(prod % kPrime));
    }
    friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
    ModP& operator+=(ModP b) { return *this = *this + b; }
    ModP& operator-=(ModP b) { return *this = *this - b; }
    ModP& operator*=(ModP b) { return *this = *this * b; }
    ModP& operator/=(ModP b) { return *this = *this / b; }
    friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

private:
    static constexpr ModP raw(std::uint64_t v) {
        ModP m;
        m.v_ = v;
        return m;
    }
    std::uint64_t v_ = 0;
};

inline bool is_zero(const ModP& x) { return x.value() == 0; }
std::string to_string(const ModP& x);

/// Field-generic conversion from the certifying field.
template <class F>
F from_rational(const Rational& x);

template <>
inline Rational from_rational<Rational>(const Rational& x) { return x; }

template <>
inline ModP from_rational<ModP>(const Rational& x) { return ModP::from_rational(x); }

template <class F>
F from_int(long v) { return from_rational<F>(Rational(v)); }

/// Human-readable tag used in reports.
template <class F>
constexpr const char* field_name();
template <>
constexpr const char* field_name<Rational>() { return "rational"; }
template <>
constexpr const char* field_name<ModP>() { return "modp"; }

} // namespace qc
