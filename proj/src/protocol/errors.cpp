#include "slcm/protocol/errors.hpp"

namespace slcm::protocol {

const char* to_string(ProtocolErrc code)
{
    switch (code) {
    case ProtocolErrc::TooFewFounders: return "TooFewFounders";
    case ProtocolErrc::IllegalTransition: return "IllegalTransition";
    case ProtocolErrc::StaleBeyondFifo: return "StaleBeyondFifo";
    case ProtocolErrc::NotAuthenticated: return "NotAuthenticated";
    case ProtocolErrc::DivergedState: return "DivergedState";
    }
    return "unknown";
}

ProtocolError::ProtocolError(ProtocolErrc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

} // namespace slcm::protocol
