#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pqcside {

enum class Errc {
    unknown_algorithm,
    unknown_suite,
    malformed_key,
    malformed_input,
    invalid_validity_window,
    bad_config,
    no_common_suite,
    oversize,
    channel_closed,
    auth_failure,
    bind_failure,
    credential_error,
    protocol_parse_error,
    upstream_timeout,
    unreachable,
    empty_sample,
    domain_error,
    insufficient_runs,
    startup_failure,
    incomplete_run,
    io_failure,
    unknown_level,
};

std::string_view errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace pqcside
