#include "helpers.hpp"

#include "slcm/graph/operations.hpp"
#include "slcm/graph/serialization.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

using namespace slcm;
using namespace slcm::graph;
using namespace slcm::test;

namespace {

template <typename F>
GraphErrc error_of(F&& f)
{
    try {
        f();
    } catch (const GraphError& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected GraphError";
    return GraphErrc::MalformedInput;
}

struct Planted {
    NetworkGraph graph;
    HamiltonianCycle cycle;
};

Planted planted(std::uint32_t n, std::size_t m, std::uint64_t seed)
{
    Rng rng(seed);
    const auto domain = range_ids(1, n);
    const std::vector<Permutation> perms{Permutation::random(domain, rng)};
    HamiltonianCycle hc = generate_initial_cycle(perms);
    return {complete_graph(hc, m, rng), hc};
}

} // namespace

TEST(HamiltonianCycle, CanonicalFormStartsAtSmallestTowardsSmallerNeighbour)
{
    const auto c = cycle({3, 1, 4, 2});
    EXPECT_EQ(std::vector<VertexId>(c.order().begin(), c.order().end()), ids({1, 3, 2, 4}));
    EXPECT_EQ(cycle({2, 1, 3}), cycle({1, 2, 3}));
    EXPECT_EQ(cycle({4, 3, 2, 1}), cycle({1, 2, 3, 4}));
    EXPECT_EQ(error_of([] { cycle({1, 2}); }), GraphErrc::InvalidCycle);
    EXPECT_EQ(error_of([] { cycle({1, 2, 2}); }), GraphErrc::InvalidCycle);
}

TEST(Permutation, RejectsNonBijectionAndComposesInOrder)
{
    EXPECT_EQ(error_of([] { perm({{1, 2}, {2, 2}}); }), GraphErrc::NotBijective);
    EXPECT_EQ(error_of([] { perm({{1, 3}, {2, 1}}); }), GraphErrc::NotBijective);

    const auto p = perm({{1, 2}, {2, 3}, {3, 1}});
    const auto q = perm({{1, 1}, {2, 3}, {3, 2}});
    // p then q: 1 -> 2 -> 3
    EXPECT_EQ(p.then(q)(V(1)), V(3));
    EXPECT_EQ(p.then(p.inverse()), Permutation::identity(ids({1, 2, 3})));
    EXPECT_EQ(error_of([&] { p(V(9)); }), GraphErrc::DomainMismatch);
}

TEST(GenerateInitialCycle, IdentityPermutations)
{
    const auto id3 = Permutation::identity(ids({1, 2, 3}));
    const std::vector<Permutation> perms{id3, id3, id3};
    EXPECT_EQ(generate_initial_cycle(perms), cycle({1, 2, 3}));
}

TEST(GenerateInitialCycle, ComposedSwap)
{
    // Hand composition: swap(1,2) then identity gives 1->2, 2->1, 3->3, so
    // the cyclic order is Π(1), Π(2), Π(3) = (2, 1, 3).
    const std::vector<Permutation> perms{perm({{1, 2}, {2, 1}, {3, 3}}), Permutation::identity(ids({1, 2, 3}))};
    EXPECT_EQ(generate_initial_cycle(perms), cycle({2, 1, 3}));

    // Four vertices where orientation matters: rotate then swap(1,3).
    // 1->2->2, 2->3->1, 3->4->4, 4->1->3 gives sequence (2, 1, 4, 3).
    const std::vector<Permutation> four{perm({{1, 2}, {2, 3}, {3, 4}, {4, 1}}),
                                        perm({{1, 3}, {2, 2}, {3, 1}, {4, 4}})};
    EXPECT_EQ(generate_initial_cycle(four), cycle({2, 1, 4, 3}));
}

TEST(GenerateInitialCycle, Errors)
{
    const std::vector<Permutation> two{Permutation::identity(ids({1, 2}))};
    EXPECT_EQ(error_of([&] { generate_initial_cycle(two); }), GraphErrc::FewerThanThreeVertices);
    const std::vector<Permutation> mixed{Permutation::identity(ids({1, 2, 3})),
                                         Permutation::identity(ids({1, 2, 4}))};
    EXPECT_EQ(error_of([&] { generate_initial_cycle(mixed); }), GraphErrc::MismatchedDomains);
}

TEST(CompleteGraph, NoRoomForExtras)
{
    Rng rng(1);
    const auto g = complete_graph(cycle({1, 2, 3, 4}), 4, rng);
    EXPECT_EQ(g, ring(4));
    EXPECT_EQ(g.stage(), 0u);
}

TEST(CompleteGraph, TenVerticesThirtyEdges)
{
    Rng rng(42);
    const auto hc = generate_initial_cycle(std::vector<Permutation>{Permutation::random(range_ids(1, 10), rng)});
    const auto g = complete_graph(hc, 30, rng);
    EXPECT_EQ(g.size(), 30u);
    EXPECT_EQ(g.order(), 10u);
    for (const Edge& e : hc.edges()) {
        EXPECT_TRUE(g.has_edge(e.a, e.b));
    }
    for (VertexId v : g.vertices()) {
        EXPECT_EQ(g.degree(v), 6u) << "neighbour group of " << v;
    }
    EXPECT_TRUE(verify_cycle(g, hc));
}

TEST(CompleteGraph, Errors)
{
    Rng rng(1);
    EXPECT_EQ(error_of([&] { complete_graph(cycle({1, 2, 3, 4}), 8, rng); }), GraphErrc::InfeasibleDensity);
    EXPECT_EQ(error_of([&] { complete_graph(cycle({1, 2, 3, 4}), 3, rng); }), GraphErrc::InfeasibleDensity);
    EXPECT_EQ(error_of([&] { complete_graph(ring_cycle(5), 7, rng); }), GraphErrc::DegreeNotIntegral);
}

TEST(CompleteGraph, DenseExtremeIsComplete)
{
    Rng rng(3);
    const auto g = complete_graph(ring_cycle(7), 21, rng);
    EXPECT_EQ(g.size(), 21u);
}

TEST(VerifyCycle, Examples)
{
    const auto triangle = make_graph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
    EXPECT_TRUE(verify_cycle(triangle, cycle({1, 2, 3})));
    EXPECT_FALSE(verify_cycle(ring(4), cycle({1, 3, 2, 4})));
    EXPECT_FALSE(verify_cycle(ring(4), cycle({1, 2, 3})));
    const auto p = planted(10, 30, 5);
    EXPECT_TRUE(verify_cycle(p.graph, p.cycle));
}

TEST(InsertVertex, TriangleBecomesFourCycle)
{
    Rng rng(9);
    const auto triangle = make_graph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
    const auto ins = insert_vertex(triangle, cycle({1, 2, 3}), V(4), 2, rng);
    EXPECT_EQ(ins.graph.order(), 4u);
    EXPECT_EQ(ins.graph.size(), 5u);
    EXPECT_EQ(ins.cycle.size(), 4u);
    EXPECT_TRUE(verify_cycle(ins.graph, ins.cycle));
    EXPECT_EQ(ins.group.members, (std::vector<VertexId>{ins.splice.a, ins.splice.b}));
    EXPECT_EQ(ins.graph.stage(), 1u);
}

TEST(InsertVertex, TenVerticesDegreeSix)
{
    const auto p = planted(10, 30, 11);
    Rng rng(12);
    const auto ins = insert_vertex(p.graph, p.cycle, V(11), 6, rng);
    EXPECT_EQ(ins.graph.degree(V(11)), 6u);
    EXPECT_FALSE(ins.cycle.adjacent(ins.splice.a, ins.splice.b));
    EXPECT_TRUE(ins.graph.has_edge(ins.splice.a, ins.splice.b));
    EXPECT_TRUE(verify_cycle(ins.graph, ins.cycle));

    std::vector<VertexId> extras;
    for (VertexId v : ins.group.members) {
        if (v != ins.splice.a && v != ins.splice.b) {
            extras.push_back(v);
        }
    }
    ASSERT_EQ(extras.size(), 4u);
    for (VertexId a : extras) {
        for (VertexId b : extras) {
            EXPECT_FALSE(p.cycle.adjacent(a, b));
        }
    }
}

TEST(InsertVertex, Errors)
{
    Rng rng(1);
    EXPECT_EQ(error_of([&] { insert_vertex(ring(4), ring_cycle(4), V(2), 2, rng); }), GraphErrc::DuplicateId);
    // On a 4-cycle, after removing the splice pair the two remaining
    // vertices are cycle neighbours, so two extras can never be found.
    EXPECT_EQ(error_of([&] { insert_vertex(ring(4), ring_cycle(4), V(5), 4, rng); }),
              GraphErrc::InsufficientNonAdjacentCandidates);
}

TEST(DeleteVertex, FourCycleBecomesTriangle)
{
    const auto del = delete_vertex(ring(4), ring_cycle(4), V(3), 3);
    EXPECT_EQ(del.graph, make_graph({1, 2, 4}, {{1, 2}, {2, 4}, {1, 4}}, 1));
    EXPECT_EQ(del.cycle, cycle({1, 2, 4}));
    EXPECT_EQ(del.bypass, make_edge(V(2), V(4)));
}

TEST(DeleteVertex, Errors)
{
    EXPECT_EQ(error_of([] { delete_vertex(ring(6), ring_cycle(6), V(99)); }), GraphErrc::UnknownId);
    EXPECT_EQ(error_of([] { delete_vertex(ring(5), ring_cycle(5), V(1)); }), GraphErrc::NetworkTooSmall);
    EXPECT_NO_THROW(delete_vertex(ring(6), ring_cycle(6), V(1)));
}

TEST(DeleteVertex, EveryVertexOfPlantedGraph)
{
    const auto p = planted(10, 30, 21);
    for (VertexId v : p.graph.vertices()) {
        const auto del = delete_vertex(p.graph, p.cycle, v);
        EXPECT_TRUE(verify_cycle(del.graph, del.cycle));
        for (const Edge& e : del.graph.edges()) {
            EXPECT_NE(e.a, v);
            EXPECT_NE(e.b, v);
        }
    }
}

TEST(ApplyPermutation, Examples)
{
    const auto triangle = make_graph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
    const auto [same_g, same_c] = apply_permutation(triangle, cycle({1, 2, 3}), Permutation::identity(ids({1, 2, 3})));
    EXPECT_EQ(same_g, triangle);
    EXPECT_EQ(same_c, cycle({1, 2, 3}));

    const auto [pg, pc] = apply_permutation(triangle, cycle({1, 2, 3}), perm({{1, 3}, {2, 1}, {3, 2}}));
    EXPECT_EQ(pg, make_graph({1, 2, 3}, {{3, 1}, {1, 2}, {2, 3}}));
    EXPECT_EQ(pc, cycle({3, 1, 2}));

    // Asymmetric case: path-like 4-cycle with a chord relabelled by hand.
    const auto g = make_graph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 3}});
    const auto [qg, qc] = apply_permutation(g, ring_cycle(4), perm({{1, 2}, {2, 3}, {3, 4}, {4, 1}}));
    EXPECT_EQ(qg, make_graph({1, 2, 3, 4}, {{2, 3}, {3, 4}, {4, 1}, {1, 2}, {2, 4}}));
    EXPECT_EQ(qc, cycle({2, 3, 4, 1}));

    EXPECT_EQ(error_of([&] { apply_permutation(triangle, cycle({1, 2, 3}), perm({{1, 2}, {2, 1}})); }),
              GraphErrc::DomainMismatch);
}

TEST(BruteForce, Examples)
{
    const auto triangle = make_graph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
    ASSERT_TRUE(brute_force_find_cycle(triangle).has_value());
    const auto star = make_graph({1, 2, 3, 4}, {{1, 2}, {1, 3}, {1, 4}});
    EXPECT_FALSE(brute_force_find_cycle(star).has_value());
    EXPECT_EQ(error_of([] { brute_force_find_cycle(ring(13)); }), GraphErrc::TooLarge);
}

TEST(GraphProperties, OracleAgreementOnPlantedGraphs)
{
    // Every (n, 2m/n) combination small enough for the oracle.
    for (std::uint32_t n = 4; n <= 12; ++n) {
        for (std::size_t d = 2; d <= n - 1; ++d) {
            if ((n * d) % 2 != 0) {
                continue;
            }
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const auto p = planted(n, n * d / 2, seed * 100 + n);
                ASSERT_TRUE(verify_cycle(p.graph, p.cycle));
                const auto found = brute_force_find_cycle(p.graph);
                ASSERT_TRUE(found.has_value()) << "n=" << n << " d=" << d;
                EXPECT_TRUE(verify_cycle(p.graph, *found));
            }
        }
    }
}

TEST(GraphProperties, PermutationRoundTripIsIdentity)
{
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = planted(9, 18, static_cast<std::uint64_t>(trial));
        const auto pi = Permutation::random(p.graph.vertices(), rng);
        const auto [g1, c1] = apply_permutation(p.graph, p.cycle, pi);
        EXPECT_TRUE(verify_cycle(g1, c1));
        const auto [g2, c2] = apply_permutation(g1, c1, pi.inverse());
        EXPECT_EQ(g2, p.graph);
        EXPECT_EQ(c2, p.cycle);
    }
}

TEST(GraphProperties, CyclePreservedAndEdgeAccountingUnderChurn)
{
    Rng rng(2024);
    auto p = planted(8, 16, 3);
    NetworkGraph g = p.graph;
    HamiltonianCycle hc = p.cycle;
    for (int step = 0; step < 400; ++step) {
        const bool grow = g.order() <= 5 || (g.order() < 12 && bernoulli(rng, 0.5));
        if (grow) {
            std::set<VertexId> live(g.vertices().begin(), g.vertices().end());
            VertexId next{1};
            while (live.contains(next)) {
                ++next.value;
            }
            auto ins = insert_vertex(g, hc, next, 4, rng);
            g = ins.graph;
            hc = ins.cycle;
        } else {
            const VertexId victim = g.vertices()[uniform_index(rng, g.order())];
            const auto [vj, vk] = hc.neighbors(victim);
            const auto del = delete_vertex(g, hc, victim);
            for (VertexId v : del.graph.vertices()) {
                const auto before = static_cast<long>(g.degree(v));
                const auto after = static_cast<long>(del.graph.degree(v));
                if (v == vj || v == vk) {
                    EXPECT_TRUE(after - before == -1 || after - before == 0);
                } else {
                    EXPECT_TRUE(after - before == -1 || after - before == 0);
                    EXPECT_EQ(after - before, g.has_edge(v, victim) ? -1 : 0);
                }
            }
            g = del.graph;
            hc = del.cycle;
        }
        ASSERT_TRUE(verify_cycle(g, hc)) << "step " << step;
    }
}

TEST(Serialization, GraphAndCycleText)
{
    const auto p = planted(6, 12, 8);
    const auto text = to_text(p.graph);
    EXPECT_EQ(text.substr(0, text.find('\n')), "graph 6 12 0");
    std::istringstream in(text);
    EXPECT_EQ(read_graph(in), p.graph);

    EXPECT_EQ(to_text(cycle({3, 1, 4, 2})), "1 3 2 4\n");
    std::istringstream cin_("4 2 1 3\n");
    EXPECT_EQ(read_cycle(cin_), cycle({1, 3, 4, 2}));

    std::istringstream bad("graph 3 2 0\n1 2\n");
    EXPECT_EQ(error_of([&] { read_graph(bad); }), GraphErrc::MalformedInput);
}
