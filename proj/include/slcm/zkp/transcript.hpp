#pragma once

#include "slcm/zkp/protocol.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace slcm::zkp {

// Line format:
//   round <j>: C_G=<hex> C_H=<hex> b=<0|1> verdict=<ok|fail>
//   verdict: accepted|rejected
void write_transcript(std::ostream& os, const ZkpTranscript& t);

struct TranscriptLine {
    std::size_t round{0};
    std::string graph_commitment;
    std::string cycle_commitment;
    int bit{0};
    bool ok{false};
};

struct TranscriptSummary {
    std::vector<TranscriptLine> rounds;
    bool accepted{false};
};

/// Throws `ZkpError{MalformedTranscript}` naming the offending line.
TranscriptSummary read_transcript(std::istream& is);

} // namespace slcm::zkp
