#pragma once

#include "slcm/graph/hamiltonian_cycle.hpp"
#include "slcm/graph/network_graph.hpp"

#include <iosfwd>
#include <string>

namespace slcm::graph {

// Edge-list text format:
//
//   graph <n> <m> <stage>
//   <u> <v>          (m lines, sorted)
//
// Vertices are recovered from edge endpoints, so graphs with isolated
// vertices cannot be written.
void write_graph(std::ostream& os, const NetworkGraph& g);
NetworkGraph read_graph(std::istream& is);

// Single line of space separated ids in canonical order.
void write_cycle(std::ostream& os, const HamiltonianCycle& hc);
HamiltonianCycle read_cycle(std::istream& is);

std::string to_text(const NetworkGraph& g);
std::string to_text(const HamiltonianCycle& hc);

} // namespace slcm::graph
