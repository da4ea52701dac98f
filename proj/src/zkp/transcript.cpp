#include "slcm/zkp/transcript.hpp"

#include <istream>
#include <ostream>
#include <regex>

namespace slcm::zkp {

void write_transcript(std::ostream& os, const ZkpTranscript& t)
{
    for (std::size_t j = 0; j < t.rounds.size(); ++j) {
        const auto& r = t.rounds[j];
        os << "round " << (j + 1) << ": C_G=" << r.commitments.graph.hex() << " C_H=" << r.commitments.cycle.hex()
           << " b=" << static_cast<int>(r.challenge) << " verdict=" << (r.verdict ? "ok" : "fail") << '\n';
    }
    os << "verdict: " << (t.accepted ? "accepted" : "rejected") << '\n';
}

TranscriptSummary read_transcript(std::istream& is)
{
    static const std::regex kRound(R"(round (\d+): C_G=([0-9a-f]{64}) C_H=([0-9a-f]{64}) b=([01]) verdict=(ok|fail))");
    static const std::regex kFinal(R"(verdict: (accepted|rejected))");

    TranscriptSummary out;
    std::string line;
    std::size_t lineno = 0;
    bool done = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        if (done) {
            throw ZkpError(ZkpErrc::MalformedTranscript, "line " + std::to_string(lineno) + ": trailing content");
        }
        std::smatch m;
        if (std::regex_match(line, m, kRound)) {
            TranscriptLine r;
            r.round = std::stoul(m[1]);
            if (r.round != out.rounds.size() + 1) {
                throw ZkpError(ZkpErrc::MalformedTranscript, "line " + std::to_string(lineno) + ": round out of order");
            }
            r.graph_commitment = m[2];
            r.cycle_commitment = m[3];
            r.bit = m[4] == "1" ? 1 : 0;
            r.ok = m[5] == "ok";
            out.rounds.push_back(std::move(r));
        } else if (std::regex_match(line, m, kFinal)) {
            out.accepted = m[1] == "accepted";
            done = true;
        } else {
            throw ZkpError(ZkpErrc::MalformedTranscript, "line " + std::to_string(lineno) + ": " + line);
        }
    }
    if (!done) {
        throw ZkpError(ZkpErrc::MalformedTranscript, "missing final verdict");
    }
    return out;
}

} // namespace slcm::zkp
