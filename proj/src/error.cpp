#include "slet/error.hpp"

namespace slet {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid_input";
        case ErrorKind::domain: return "domain";
        case ErrorKind::unsupported_order: return "unsupported_order";
        case ErrorKind::non_monotone_point: return "non_monotone_point";
        case ErrorKind::no_harmonic_regime: return "no_harmonic_regime";
        case ErrorKind::bracketing: return "bracketing";
        case ErrorKind::convergence: return "convergence";
        case ErrorKind::sequencing: return "sequencing";
        case ErrorKind::basis: return "basis";
        case ErrorKind::inconsistency: return "inconsistency";
        case ErrorKind::unphysical_coupling: return "unphysical_coupling";
        case ErrorKind::supercritical_coupling: return "supercritical_coupling";
        case ErrorKind::window: return "window";
        case ErrorKind::level_identification: return "level_identification";
        case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

void rethrow_with_stage(const Error& e, const std::string& stage) {
    if (!e.stage().empty()) throw e;
    throw Error(e.kind(), e.what(), stage);
}

}  // namespace slet
