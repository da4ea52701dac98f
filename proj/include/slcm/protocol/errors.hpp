#pragma once

#include <stdexcept>
#include <string>

namespace slcm::protocol {

enum class ProtocolErrc {
    TooFewFounders,
    IllegalTransition,
    StaleBeyondFifo,
    NotAuthenticated,
    DivergedState,
};

const char* to_string(ProtocolErrc code);

class ProtocolError : public std::runtime_error {
public:
    ProtocolError(ProtocolErrc code, const std::string& what);

    ProtocolErrc code() const noexcept { return code_; }

private:
    ProtocolErrc code_;
};

} // namespace slcm::protocol
