#include "qc/field.hpp"

#include "qc/errors.hpp"

#include <stdexcept>

namespace qc {

Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) { return x.get_str(10); }

ModP ModP::from_int(std::int64_t v) {
    auto m = static_cast<std::int64_t>(kPrime);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    return raw(static_cast<std::uint64_t>(r));
}

namespace {

std::uint64_t reduce(const mpz_class& z) {
    mpz_class r;
    mpz_class p;
    // kPrime does not fit an unsigned long on every platform; build it from halves.
    p = static_cast<unsigned long>(ModP::kPrime >> 32);
    p <<= 32;
    p += static_cast<unsigned long>(ModP::kPrime & 0xffffffffULL);
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
    mpz_class hi = r >> 32;
    mpz_class lo = r - (hi << 32);
    return (static_cast<std::uint64_t>(hi.get_ui()) << 32) | lo.get_ui();
}

} // namespace

ModP ModP::from_rational(const Rational& x) {
    ModP num = raw(reduce(x.get_num()));
    ModP den = raw(reduce(x.get_den()));
    if (den.v_ == 0) throw DivisionByZero("denominator of " + qc::to_string(x) + " vanishes mod p");
    return num / den;
}

ModP ModP::inverse() const {
    if (v_ == 0) throw DivisionByZero("inverse of zero mod p");
    ModP base = *this;
    ModP acc = raw(1);
    std::uint64_t e = kPrime - 2;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

std::string to_string(const ModP& x) { return std::to_string(x.value()) + " (mod p)"; }

} // namespace qc
