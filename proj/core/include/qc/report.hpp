#pragma once

// Exact verdicts for named identities.

#include "qc/errors.hpp"
#include "qc/exterior.hpp"
#include "qc/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qc {

enum class Status { Zero, Nonzero, Error };

const char* status_name(Status s);

struct Check {
    std::string name;
    Status status = Status::Zero;
    std::string witness;
    /// False for informative checks whose nonzero value is not a failure.
    bool expect_zero = true;
};

/// First nonzero Taylor coefficient, e.g. "3/4 at x^(0,1,0)"; empty when zero.
template <class F>
std::string witness(const Jet<F>& j);
/// e.g. "dx(0,3): 3/4 at x^(0,1,0)".
template <class F>
std::string witness(const FormJet<F>& a);
template <class F>
std::string witness(const VectorJet<F>& v);
template <class F>
std::string witness(const JetMatrix<F>& m);

class CheckList {
public:
    /// Records zero/nonzero for a residual object.
    template <class R>
    void residual(const std::string& name, const R& r, bool expect_zero = true) {
        Check c{name, Status::Zero, {}, expect_zero};
        if (!r.is_zero()) {
            c.status = Status::Nonzero;
            c.witness = witness(r);
        }
        checks_.push_back(std::move(c));
    }

    /// A property that holds or not; `why` is kept as the witness when it fails.
    void holds(const std::string& name, bool ok, const std::string& why, bool expect_zero = true) {
        checks_.push_back({name, ok ? Status::Zero : Status::Nonzero, ok ? std::string() : why, expect_zero});
    }

    void error(const std::string& name, const std::string& what, bool expect_zero = true) {
        checks_.push_back({name, Status::Error, what, expect_zero});
    }

    /// Runs fn(*this); an engine error becomes an error check named `name`.
    template <class Fn>
    void guarded(const std::string& name, Fn&& fn) {
        try {
            fn(*this);
        } catch (const Error& e) {
            error(name, e.kind() + ": " + e.what());
        }
    }

    Check* find(const std::string& name);
    const std::vector<Check>& checks() const { return checks_; }
    std::vector<Check>& checks() { return checks_; }
    void append(const CheckList& other);

private:
    std::vector<Check> checks_;
};

} // namespace qc
