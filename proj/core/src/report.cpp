#include "qc/report.hpp"

#include <sstream>

namespace qc {

const char* status_name(Status s) {
    switch (s) {
    case Status::Zero: return "zero";
    case Status::Nonzero: return "nonzero";
    case Status::Error: return "error";
    }
    return "error";
}

namespace {

std::string index_list(const std::vector<int>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

} // namespace

template <class F>
std::string witness(const Jet<F>& j) {
    const auto idx = j.first_nonzero();
    if (idx == MonomialTable::npos) return {};
    const auto e = j.table().exponents(idx);
    return to_string(j.coefficient(idx)) + " at x^" + index_list(std::vector<int>(e.begin(), e.end()));
}

template <class F>
std::string witness(const FormJet<F>& a) {
    for (const auto& [mask, c] : a.components())
        if (!c.is_zero()) return "dx" + index_list(mask_indices(mask)) + ": " + witness(c);
    return {};
}

template <class F>
std::string witness(const VectorJet<F>& v) {
    for (int mu = 0; mu < v.dim(); ++mu)
        if (!v[mu].is_zero()) return "component " + std::to_string(mu) + ": " + witness(v[mu]);
    return {};
}

template <class F>
std::string witness(const JetMatrix<F>& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero())
                return "entry (" + std::to_string(r) + "," + std::to_string(c) + "): " + witness(m(r, c));
    return {};
}

template std::string witness(const Jet<Rational>&);
template std::string witness(const Jet<ModP>&);
template std::string witness(const FormJet<Rational>&);
template std::string witness(const FormJet<ModP>&);
template std::string witness(const VectorJet<Rational>&);
template std::string witness(const VectorJet<ModP>&);
template std::string witness(const JetMatrix<Rational>&);
template std::string witness(const JetMatrix<ModP>&);

Check* CheckList::find(const std::string& name) {
    for (auto& c : checks_)
        if (c.name == name) return &c;
    return nullptr;
}

void CheckList::append(const CheckList& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

} // namespace qc
