#ifndef CHEMOPULSE_ERRORS_HPP
#define CHEMOPULSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chemopulse {

// Coarse failure categories, mapped to process exit codes by the CLI:
//   config    -> 2, numerical -> 3, hypothesis -> 4.
enum class errc {
    invalid_parameter,
    admissibility,
    bifurcation_undefined,
    domain,
    singular_fit,
    invalid_profile,
    step_rejected,
    numerical_failure,
    no_peak,
    insufficient_data,
    config_parse,
    config_invalid,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_parameter:     return "invalid-parameter";
        case errc::admissibility:         return "admissibility";
        case errc::bifurcation_undefined: return "bifurcation-undefined";
        case errc::domain:                return "domain";
        case errc::singular_fit:          return "singular-fit";
        case errc::invalid_profile:       return "invalid-profile";
        case errc::step_rejected:         return "step-rejected";
        case errc::numerical_failure:     return "numerical-failure";
        case errc::no_peak:               return "no-peak";
        case errc::insufficient_data:     return "insufficient-data";
        case errc::config_parse:          return "config-parse";
        case errc::config_invalid:        return "config-invalid";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code),
          message_(message) {}

    errc code() const noexcept { return code_; }

    /// The message without the code prefix (what() carries both).
    const std::string& message() const noexcept { return message_; }

private:
    errc code_;
    std::string message_;
};

} // namespace chemopulse

#endif
