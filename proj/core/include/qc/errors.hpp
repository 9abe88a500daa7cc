#pragma once

#include <stdexcept>
#include <string>

namespace qc {

/// Root of every error the engine raises. `kind()` is a stable tag used in reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define QC_DEFINE_ERROR(Name)                                                  \
    class Name : public Error {                                               \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    };

// ratjet
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error("SyntaxError", what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownSymbol : public Error {
public:
    UnknownSymbol(const std::string& symbol, std::size_t offset)
        : Error("UnknownSymbol", "unknown symbol '" + symbol + "' at offset " + std::to_string(offset)),
          symbol_(symbol) {}
    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

QC_DEFINE_ERROR(DivisionByZero)
QC_DEFINE_ERROR(DimensionMismatch)
QC_DEFINE_ERROR(ValuePartZero)
QC_DEFINE_ERROR(InsufficientJetOrder)
QC_DEFINE_ERROR(SingularSystem)
QC_DEFINE_ERROR(InconsistentSystem)

// exterior
QC_DEFINE_ERROR(DegreeMismatch)

// qcframe
QC_DEFINE_ERROR(NotQuaternionicContact)
QC_DEFINE_ERROR(DegenerateStructure)
QC_DEFINE_ERROR(NotQuaternionCompatible)

// biquard
QC_DEFINE_ERROR(CrossKInconsistency)
QC_DEFINE_ERROR(DimensionSevenUnsupported)

// atlas
QC_DEFINE_ERROR(ConstructionInvalid)
QC_DEFINE_ERROR(SchemaError)

// runner
QC_DEFINE_ERROR(ConfigError)

#undef QC_DEFINE_ERROR

} // namespace qc
