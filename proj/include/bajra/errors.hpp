#pragma once

#include <stdexcept>
#include <string>

namespace bajra {

// Base for all typed failures.  kind() is a stable machine-readable tag that
// the CLI echoes into rejection reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define BAJRA_DEFINE_ERROR(NAME)                                     \
    struct NAME : Error {                                            \
        explicit NAME(const std::string& m) : Error(#NAME, m) {}     \
    }

BAJRA_DEFINE_ERROR(NotIndependent);
BAJRA_DEFINE_ERROR(NotPositive);
BAJRA_DEFINE_ERROR(AnchorNotPositive);
BAJRA_DEFINE_ERROR(VanishingDerivative);
BAJRA_DEFINE_ERROR(OutOfDomain);
BAJRA_DEFINE_ERROR(InversionFailure);
BAJRA_DEFINE_ERROR(DegeneratePair);
BAJRA_DEFINE_ERROR(DenominatorUnderflow);
BAJRA_DEFINE_ERROR(StencilOutOfDomain);
BAJRA_DEFINE_ERROR(NonConstantSchwarzian);
BAJRA_DEFINE_ERROR(DomainEmpty);
BAJRA_DEFINE_ERROR(SpecRejected);

#undef BAJRA_DEFINE_ERROR

}  // namespace bajra
