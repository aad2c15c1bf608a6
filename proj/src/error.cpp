#include "pass_noma/error.hpp"

namespace pass_noma {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_parameter: return "invalid-parameter";
        case ErrorKind::degenerate_geometry: return "degenerate-geometry";
        case ErrorKind::dimension_mismatch: return "dimension-mismatch";
        case ErrorKind::infeasible_fractions: return "infeasible-fractions";
        case ErrorKind::out_of_range: return "out-of-range";
        case ErrorKind::invalid_pair: return "invalid-pair";
        case ErrorKind::degenerate_radiation: return "degenerate-radiation";
        case ErrorKind::qos_infeasible: return "qos-infeasible";
        case ErrorKind::infeasible_start: return "infeasible-start";
        case ErrorKind::too_many_users: return "too-many-users";
        case ErrorKind::too_many_antennas: return "too-many-antennas";
        case ErrorKind::config: return "config";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

}  // namespace pass_noma
