#include "slcm/graph/serialization.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace slcm::graph {

void write_graph(std::ostream& os, const NetworkGraph& g)
{
    for (VertexId v : g.vertices()) {
        if (g.degree(v) == 0) {
            std::ostringstream msg;
            msg << "vertex " << v << " is isolated and cannot be written as an edge list";
            throw GraphError(GraphErrc::MalformedInput, msg.str());
        }
    }
    os << "graph " << g.order() << ' ' << g.size() << ' ' << g.stage() << '\n';
    for (const Edge& e : g.edges()) {
        os << e.a << ' ' << e.b << '\n';
    }
}

NetworkGraph read_graph(std::istream& is)
{
    std::string header;
    if (!std::getline(is, header)) {
        throw GraphError(GraphErrc::MalformedInput, "missing graph header");
    }
    std::istringstream hs(header);
    std::string tag;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t stage = 0;
    if (!(hs >> tag >> n >> m >> stage) || tag != "graph") {
        throw GraphError(GraphErrc::MalformedInput, "bad graph header: " + header);
    }

    std::set<VertexId> vertices;
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::string line;
        if (!std::getline(is, line)) {
            throw GraphError(GraphErrc::MalformedInput, "edge list shorter than header count");
        }
        std::istringstream ls(line);
        std::uint32_t u = 0;
        std::uint32_t v = 0;
        if (!(ls >> u >> v)) {
            throw GraphError(GraphErrc::MalformedInput, "bad edge line: " + line);
        }
        vertices.insert(VertexId{u});
        vertices.insert(VertexId{v});
        edges.push_back(make_edge(VertexId{u}, VertexId{v}));
    }
    if (vertices.size() != n) {
        throw GraphError(GraphErrc::MalformedInput, "vertex count does not match header");
    }
    NetworkGraph g(stage, std::vector<VertexId>(vertices.begin(), vertices.end()), std::move(edges));
    if (g.size() != m) {
        throw GraphError(GraphErrc::MalformedInput, "duplicate edges in edge list");
    }
    return g;
}

void write_cycle(std::ostream& os, const HamiltonianCycle& hc)
{
    bool first = true;
    for (VertexId v : hc.order()) {
        if (!first) {
            os << ' ';
        }
        os << v;
        first = false;
    }
    os << '\n';
}

HamiltonianCycle read_cycle(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) {
        throw GraphError(GraphErrc::MalformedInput, "missing cycle line");
    }
    std::istringstream ls(line);
    std::vector<VertexId> order;
    std::uint32_t v = 0;
    while (ls >> v) {
        order.push_back(VertexId{v});
    }
    if (!ls.eof()) {
        throw GraphError(GraphErrc::MalformedInput, "bad cycle line: " + line);
    }
    return HamiltonianCycle(std::move(order));
}

std::string to_text(const NetworkGraph& g)
{
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

std::string to_text(const HamiltonianCycle& hc)
{
    std::ostringstream os;
    write_cycle(os, hc);
    return os.str();
}

} // namespace slcm::graph
