#pragma once

#include <stdexcept>
#include <string>

namespace qrs {

// Base error. `code()` is the stable machine-readable identifier used by the
// CLI error objects; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define QRS_DEFINE_ERROR(NAME, CODE)                                \
    class NAME : public Error {                                    \
    public:                                                         \
        explicit NAME(const std::string& msg) : Error(CODE, msg) {} \
    }

QRS_DEFINE_ERROR(DegenerateInput, "degenerate_input");
QRS_DEFINE_ERROR(DegenerateOutput, "degenerate_output");
QRS_DEFINE_ERROR(ShapeError, "shape_error");
QRS_DEFINE_ERROR(DomainError, "domain_error");
QRS_DEFINE_ERROR(RegimeError, "regime_error");
QRS_DEFINE_ERROR(PreconditionError, "precondition_error");
QRS_DEFINE_ERROR(ClauseShapeError, "clause_shape_error");
QRS_DEFINE_ERROR(ModelError, "model_error");
QRS_DEFINE_ERROR(NumericalError, "numerical_error");
QRS_DEFINE_ERROR(NoCrossover, "no_crossover");

#undef QRS_DEFINE_ERROR

} // namespace qrs
