#pragma once

#include <stdexcept>
#include <string>

namespace slet {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
    invalid_input,
    domain,
    unsupported_order,
    non_monotone_point,
    no_harmonic_regime,
    bracketing,
    convergence,
    sequencing,
    basis,
    inconsistency,
    unphysical_coupling,
    supercritical_coupling,
    window,
    level_identification,
    internal,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string stage = {})
        : std::runtime_error(stage.empty() ? message : stage + ": " + message),
          kind_(kind), stage_(std::move(stage)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& stage() const noexcept { return stage_; }

private:
    ErrorKind kind_;
    std::string stage_;
};

/// Rethrows `e` with `stage` prefixed when it does not carry one already.
[[noreturn]] void rethrow_with_stage(const Error& e, const std::string& stage);

}  // namespace slet
