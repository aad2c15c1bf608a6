#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pass_noma {

enum class ErrorKind {
    invalid_parameter,
    degenerate_geometry,
    dimension_mismatch,
    infeasible_fractions,
    out_of_range,
    invalid_pair,
    degenerate_radiation,
    qos_infeasible,
    infeasible_start,
    too_many_users,
    too_many_antennas,
    config,
    io,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace pass_noma
