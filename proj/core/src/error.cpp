#include "pqcside/error.hpp"

namespace pqcside {

std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::unknown_algorithm: return "UnknownAlgorithm";
        case Errc::unknown_suite: return "UnknownSuite";
        case Errc::malformed_key: return "MalformedKey";
        case Errc::malformed_input: return "MalformedInput";
        case Errc::invalid_validity_window: return "InvalidValidityWindow";
        case Errc::bad_config: return "BadConfig";
        case Errc::no_common_suite: return "NoCommonSuite";
        case Errc::oversize: return "Oversize";
        case Errc::channel_closed: return "ChannelClosed";
        case Errc::auth_failure: return "AuthFailure";
        case Errc::bind_failure: return "BindFailure";
        case Errc::credential_error: return "CredentialError";
        case Errc::protocol_parse_error: return "ProtocolParseError";
        case Errc::upstream_timeout: return "UpstreamTimeout";
        case Errc::unreachable: return "Unreachable";
        case Errc::empty_sample: return "EmptySample";
        case Errc::domain_error: return "DomainError";
        case Errc::insufficient_runs: return "InsufficientRuns";
        case Errc::startup_failure: return "StartupFailure";
        case Errc::incomplete_run: return "IncompleteRun";
        case Errc::io_failure: return "IoFailure";
        case Errc::unknown_level: return "UnknownLevel";
    }
    return "UnknownError";
}

}  // namespace pqcside
