#include "helpers.hpp"

#include "slcm/graph/operations.hpp"
#include "slcm/protocol/operations.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace slcm;
using namespace slcm::protocol;
using slcm::test::ids;
using slcm::test::range_ids;
using slcm::test::V;

namespace {

// Online members plus one parked record; drives churn with time == stage.
struct Fixture {
    std::map<VertexId, NodeRecord> online;
    Rng rng{2024};
    std::uint32_t next_device{1000};

    explicit Fixture(std::size_t n = 10, std::size_t m = 30, double retention = 1000.0)
    {
        const auto founders = range_ids(1, static_cast<std::uint32_t>(n));
        online = initialize_network(founders, m, 7, {5, retention, 0.0});
    }

    NodeRecord& any() { return online.begin()->second; }

    std::vector<VertexId> online_ids() const
    {
        std::vector<VertexId> out;
        for (const auto& [v, r] : online) {
            out.push_back(v);
        }
        return out;
    }

    void broadcast(const UpdateEvent& e)
    {
        for (auto& [v, r] : online) {
            apply_update(r, e);
        }
        for (auto it = online.begin(); it != online.end();) {
            it = it->second.state == LifeState::Deleted ? online.erase(it) : std::next(it);
        }
    }

    void insert(double now)
    {
        auto& auth = any();
        const auto out = handle_insertion(auth, auth.graph.order(), {now, 4, std::nullopt}, rng);
        ASSERT_EQ(out.status, InsertionStatus::Inserted);
        broadcast(*out.update);
        NodeRecord fresh;
        fresh.device = DeviceId{next_device++};
        admit_supplicant(fresh, any(), *out.vertex, now);
        fresh.state = normalize(fresh.state);
        online.emplace(*out.vertex, std::move(fresh));
    }

    // Deletes a random online vertex other than `keep`.
    void remove(double now, std::optional<VertexId> keep = std::nullopt)
    {
        auto live = online_ids();
        std::erase_if(live, [&](VertexId v) { return keep && v == *keep; });
        const auto victim = live[uniform_index(rng, live.size())];
        const auto reporter = victim == online.begin()->first ? std::next(online.begin()) : online.begin();
        broadcast(make_deletion(reporter->second, victim, now));
    }

    // Alternating churn until the graph reaches `stage`, one stage per second.
    void churn_to(std::uint64_t stage, std::optional<VertexId> keep = std::nullopt)
    {
        while (any().graph.stage() < stage) {
            const double now = static_cast<double>(any().graph.stage() + 1);
            if (any().graph.stage() % 2 == 0) {
                insert(now);
            } else {
                remove(now, keep);
            }
        }
    }

    NodeRecord power_off(VertexId v, double now)
    {
        auto node = std::move(online.at(v));
        online.erase(v);
        node.state = transition(node.state, LifeState::Off);
        node.off_since = now;
        node.last_seen_stage = node.graph.stage();
        return node;
    }
};

} // namespace

TEST(LifeState, TransitionTable)
{
    EXPECT_TRUE(can_transition(LifeState::NonLegitimate, LifeState::Added));
    EXPECT_TRUE(can_transition(LifeState::Off, LifeState::OnToAuthenticate));
    EXPECT_TRUE(can_transition(LifeState::OnToAuthenticate, LifeState::ReInserted));
    EXPECT_TRUE(can_transition(LifeState::OutOfService, LifeState::OnToAuthenticate));
    EXPECT_TRUE(can_transition(LifeState::Off, LifeState::Deleted));
    EXPECT_FALSE(can_transition(LifeState::Off, LifeState::OnAuthenticated));
    EXPECT_FALSE(can_transition(LifeState::NonLegitimate, LifeState::OnAuthenticated));
    EXPECT_FALSE(can_transition(LifeState::Deleted, LifeState::OnToAuthenticate));
    try {
        transition(LifeState::Deleted, LifeState::Off);
        FAIL();
    } catch (const ProtocolError& e) {
        EXPECT_EQ(e.code(), ProtocolErrc::IllegalTransition);
    }
}

TEST(LifeState, TransientStatesNormalize)
{
    EXPECT_EQ(normalize(LifeState::ReInserted), LifeState::OnAuthenticated);
    EXPECT_EQ(normalize(LifeState::Added), LifeState::OnAuthenticated);
    EXPECT_EQ(normalize(LifeState::Off), LifeState::Off);
    for (auto s : kAllLifeStates) {
        EXPECT_EQ(parse_life_state(to_string(s)), s);
    }
}

TEST(NextVertexId, Examples)
{
    EXPECT_EQ(next_vertex_id(ids({1, 2, 3})), V(4));
    EXPECT_EQ(next_vertex_id(ids({1, 3, 4})), V(2));
    EXPECT_EQ(next_vertex_id({}), V(1));
}

TEST(Initialize, FiveFoundersShareState)
{
    const auto founders = range_ids(1, 5);
    const auto net = initialize_network(founders, 10, 3);
    ASSERT_EQ(net.size(), 5u);
    const auto& first = net.begin()->second;
    EXPECT_EQ(first.graph.size(), 10u);
    EXPECT_TRUE(graph::verify_cycle(first.graph, *first.cycle));
    for (const auto& [v, r] : net) {
        EXPECT_EQ(r.graph, first.graph);
        EXPECT_EQ(r.cycle, first.cycle);
        EXPECT_EQ(r.state, LifeState::OnAuthenticated);
        EXPECT_EQ(r.vertex, v);
    }
}

TEST(Initialize, TooFewFounders)
{
    try {
        initialize_network(ids({1, 2}), 2, 1);
        FAIL();
    } catch (const ProtocolError& e) {
        EXPECT_EQ(e.code(), ProtocolErrc::TooFewFounders);
    }
}

TEST(Initialize, DeterministicReplay)
{
    const auto founders = range_ids(1, 10);
    const auto a = initialize_network(founders, 30, 42);
    const auto b = initialize_network(founders, 30, 42);
    const auto c = initialize_network(founders, 30, 43);
    EXPECT_EQ(a.at(V(1)).graph, b.at(V(1)).graph);
    EXPECT_EQ(a.at(V(1)).cycle, b.at(V(1)).cycle);
    EXPECT_NE(a.at(V(1)).cycle, c.at(V(1)).cycle);
}

TEST(Initialize, CycleComposesFounderPermutationsInAscendingOrder)
{
    const auto founders = range_ids(1, 6);
    const auto net = initialize_network(ids({6, 2, 4, 1, 5, 3}), 6, 11);
    std::vector<graph::Permutation> perms;
    for (auto id : founders) {
        auto rng = derive_rng(11, id.value);
        perms.push_back(graph::Permutation::random(founders, rng));
    }
    EXPECT_EQ(*net.at(V(1)).cycle, graph::generate_initial_cycle(perms));
}

TEST(Insertion, QuorumBoundary)
{
    Fixture f;
    Rng rng(1);
    EXPECT_EQ(handle_insertion(f.any(), 4, {1.0, 4, std::nullopt}, rng).status, InsertionStatus::Aborted);
    const auto ok = handle_insertion(f.any(), 5, {1.0, 4, std::nullopt}, rng);
    ASSERT_EQ(ok.status, InsertionStatus::Inserted);
    EXPECT_EQ(ok.vertex, V(11));
    EXPECT_EQ(ok.update->stage, 1u);
}

TEST(Insertion, QuorumOddNetwork)
{
    Fixture f(11, 22);
    Rng rng(1);
    EXPECT_EQ(handle_insertion(f.any(), 5, {1.0, 4, std::nullopt}, rng).status, InsertionStatus::Aborted);
    EXPECT_EQ(handle_insertion(f.any(), 6, {1.0, 4, std::nullopt}, rng).status, InsertionStatus::Inserted);
}

TEST(Insertion, SybilClaimDenied)
{
    Fixture f;
    Rng rng(1);
    const auto out = handle_insertion(f.any(), 10, {1.0, 4, V(3)}, rng);
    EXPECT_EQ(out.status, InsertionStatus::Denied);
    EXPECT_FALSE(out.update);
}

TEST(Insertion, ReusesDeletedSlot)
{
    Fixture f;
    f.broadcast(make_deletion(f.online.at(V(1)), V(4), 1.0));
    Rng rng(3);
    const auto out = handle_insertion(f.any(), 9, {2.0, 4, std::nullopt}, rng);
    EXPECT_EQ(out.vertex, V(4));
}

TEST(Insertion, AllReplicasAgreeAfterBroadcast)
{
    Fixture f;
    f.insert(1.0);
    const auto& ref = f.any();
    EXPECT_EQ(ref.graph.order(), 11u);
    EXPECT_TRUE(graph::verify_cycle(ref.graph, *ref.cycle));
    for (const auto& [v, r] : f.online) {
        EXPECT_EQ(r.graph, ref.graph);
        EXPECT_EQ(r.cycle, ref.cycle);
    }
    EXPECT_TRUE(exemption_check(ref, 1.0, 10.0));
}

TEST(ApplyUpdate, OutOfOrderStageRejected)
{
    Fixture f;
    Rng rng(1);
    const auto a = handle_insertion(f.any(), 10, {1.0, 4, std::nullopt}, rng);
    auto node = f.any();
    apply_update(node, *a.update);
    try {
        apply_update(node, *a.update);
        FAIL();
    } catch (const ProtocolError& e) {
        EXPECT_EQ(e.code(), ProtocolErrc::DivergedState);
    }
}

TEST(ApplyUpdate, SplitViewReportedAsDivergence)
{
    Fixture f;
    const auto ids = f.online_ids();
    auto left = f.online.at(ids[0]);
    auto right = f.online.at(ids[1]);
    apply_update(left, make_deletion(left, ids[5], 1.0));
    apply_update(right, make_deletion(right, ids[6], 1.0));
    // Same stage on both sides, but ids[5] is already gone on the left.
    const auto late = make_deletion(right, ids[5], 2.0);
    ASSERT_EQ(late.stage, left.graph.stage() + 1);
    try {
        apply_update(left, late);
        FAIL();
    } catch (const ProtocolError& e) {
        EXPECT_EQ(e.code(), ProtocolErrc::DivergedState);
    }
}

TEST(AccessControl, ExpiredAtBoundary)
{
    Fixture f;
    f.churn_to(80);
    const auto who = f.online_ids().back();
    auto sup = f.power_off(who, 80.0);
    f.churn_to(100, who);
    const auto online = f.online_ids();
    Rng rng(5);
    const auto out = handle_access_control(f.any(), sup, {100.0, 20.0, 20, online}, rng);
    EXPECT_EQ(out.status, AccessStatus::Rejected);
    EXPECT_EQ(out.reason, RejectReason::Expired);
    EXPECT_EQ(sup.state, LifeState::Deleted);
    EXPECT_FALSE(out.transcript);
}

TEST(AccessControl, ReturningWithinThresholdReplaysToCurrentStage)
{
    Fixture f;
    f.churn_to(85);
    const auto who = f.online_ids().back();
    auto sup = f.power_off(who, 85.0);
    ASSERT_EQ(sup.graph.stage(), 85u);
    f.churn_to(100, who);
    const auto online = f.online_ids();
    Rng rng(5);
    const auto out = handle_access_control(f.any(), sup, {100.0, 20.0, 20, online}, rng);
    ASSERT_EQ(out.status, AccessStatus::Admitted) << to_string(out.reason);
    EXPECT_EQ(sup.state, LifeState::ReInserted);
    EXPECT_EQ(sup.graph.stage(), 100u);
    EXPECT_EQ(sup.graph, f.any().graph);
    EXPECT_EQ(sup.cycle, f.any().cycle);
    EXPECT_EQ(out.replayed, 15u);
    EXPECT_DOUBLE_EQ(out.offline_duration, 15.0);
    ASSERT_TRUE(out.transcript);
    EXPECT_EQ(out.transcript->round_count(), 20u);
}

TEST(AccessControl, SupplicantWithoutCycleIsIsolated)
{
    Fixture f;
    f.churn_to(10);
    const auto who = f.online_ids().back();
    const auto parked = f.power_off(who, 10.0);
    f.churn_to(14, who);
    const auto online = f.online_ids();
    int accepted = 0;
    constexpr int kTrials = 200;
    for (int i = 0; i < kTrials; ++i) {
        auto sup = parked;
        sup.cycle.reset();
        Rng rng(static_cast<std::uint64_t>(i));
        const auto out = handle_access_control(f.any(), sup, {15.0, 20.0, 10, online}, rng);
        if (out.status == AccessStatus::Admitted) {
            ++accepted;
        } else {
            EXPECT_EQ(out.reason, RejectReason::Isolated);
            EXPECT_TRUE(sup.isolated);
            EXPECT_EQ(sup.state, LifeState::Off);
        }
    }
    // Binomial(200, 2^-10): P(X >= 4) < 1e-4.
    EXPECT_LE(accepted, 3);
}

TEST(AccessControl, SybilIdRejected)
{
    Fixture f;
    auto impostor = f.online.at(V(3));
    impostor.state = LifeState::Off;
    impostor.off_since = 0.0;
    const auto online = f.online_ids();
    Rng rng(1);
    const auto out = handle_access_control(f.any(), impostor, {1.0, 20.0, 20, online}, rng);
    EXPECT_EQ(out.reason, RejectReason::Sybil);
    EXPECT_TRUE(impostor.isolated);
}

TEST(AccessControl, ForgedStaleGraphRejected)
{
    Fixture f;
    f.churn_to(4);
    const auto who = f.online_ids().back();
    auto sup = f.power_off(who, 4.0);
    f.churn_to(6, who);
    // Drop a non-cycle edge: the supplicant still knows a cycle of what it presents.
    std::vector<graph::Edge> edges(sup.graph.edges().begin(), sup.graph.edges().end());
    const auto hc_edges = sup.cycle->edges();
    std::erase_if(edges, [&, dropped = false](const graph::Edge& e) mutable {
        if (dropped || std::find(hc_edges.begin(), hc_edges.end(), e) != hc_edges.end()) {
            return false;
        }
        return dropped = true;
    });
    sup.graph = graph::NetworkGraph(sup.graph.stage(),
                                    std::vector<VertexId>(sup.graph.vertices().begin(), sup.graph.vertices().end()),
                                    edges);
    const auto online = f.online_ids();
    Rng rng(1);
    const auto out = handle_access_control(f.any(), sup, {7.0, 20.0, 20, online}, rng);
    EXPECT_EQ(out.reason, RejectReason::GraphMismatch);
}

TEST(AccessControl, EvictedGapThrows)
{
    Fixture f(10, 30, 5.0);
    f.churn_to(4);
    const auto who = f.online_ids().back();
    auto sup = f.power_off(who, 4.0);
    f.churn_to(20, who);
    for (auto& [v, r] : f.online) {
        r.fifo.evict(20.0);
    }
    const auto online = f.online_ids();
    Rng rng(1);
    try {
        handle_access_control(f.any(), sup, {20.0, 100.0, 20, online}, rng);
        FAIL();
    } catch (const ProtocolError& e) {
        EXPECT_EQ(e.code(), ProtocolErrc::StaleBeyondFifo);
    }
}

TEST(AccessControl, DeletedWhileAwayIsNotMember)
{
    Fixture f;
    const auto who = V(10);
    auto sup = f.power_off(who, 0.0);
    f.broadcast(make_deletion(f.any(), who, 1.0));
    const auto online = f.online_ids();
    Rng rng(1);
    const auto out = handle_access_control(f.any(), sup, {2.0, 20.0, 20, online}, rng);
    EXPECT_EQ(out.reason, RejectReason::NotMember);
}

TEST(Threshold, Examples)
{
    auto th = ThresholdT::initial(30.0, 1.0);
    EXPECT_DOUBLE_EQ(th.current, 30.0);
    for (int i = 0; i < 3; ++i) {
        th = update_threshold(th, 10.0);
    }
    EXPECT_DOUBLE_EQ(th.current, 11.0);

    auto t2 = ThresholdT::initial(30.0, 2.0);
    t2 = update_threshold(t2, 5.0);
    t2 = update_threshold(t2, 15.0);
    EXPECT_DOUBLE_EQ(t2.current, 17.0);
}

TEST(Threshold, FloorClampsShortObservations)
{
    auto th = ThresholdT::initial(30.0, 1.0, 20.0);
    th = update_threshold(th, 1.0);
    EXPECT_DOUBLE_EQ(th.current, 20.0);
    th = update_threshold(th, 61.0);
    EXPECT_DOUBLE_EQ(th.current, 31.0 + 30.0 + 1.0);
    EXPECT_THROW((void)ThresholdT::initial(30.0, 1.0, -1.0), std::invalid_argument);
}

TEST(Threshold, MatchesTwoPassOracle)
{
    Rng rng(8);
    auto th = ThresholdT::initial(30.0, 0.5);
    std::vector<double> xs;
    for (int i = 0; i < 100; ++i) {
        const double x = uniform_real(rng, 0.0, 40.0);
        xs.push_back(x);
        th = update_threshold(th, x);
        double mean = 0.0;
        for (double v : xs) {
            mean += v / static_cast<double>(xs.size());
        }
        double var = 0.0;
        for (double v : xs) {
            var += (v - mean) * (v - mean) / static_cast<double>(xs.size());
        }
        ASSERT_NEAR(th.current, mean + std::sqrt(var) + 0.5, 1e-9);
        ASSERT_GT(th.current, 0.0);
    }
}

TEST(Exemption, Window)
{
    NodeRecord n;
    constexpr double T = 20.0;
    EXPECT_FALSE(exemption_check(n, 100.0, T));
    n.last_exemption = 100.0 - 0.3 * T;
    EXPECT_TRUE(exemption_check(n, 100.0, T));
    n.last_exemption = 100.0 - 1.5 * T;
    EXPECT_FALSE(exemption_check(n, 100.0, T));
}

TEST(ProofOfLife, TickOnlyAfterThreshold)
{
    Fixture f;
    auto& n = f.any();
    constexpr double T = 20.0;
    Rng rng(1);
    EXPECT_FALSE(proof_of_life_tick(n, T / 2, T, rng));
    EXPECT_FALSE(proof_of_life_tick(n, T, T, rng));
    const auto act = proof_of_life_tick(n, T + 0.001, T, rng);
    ASSERT_TRUE(act);
    EXPECT_GE(act->defer, 0.0);
    EXPECT_LE(act->defer, T / 10);
    n.last_exemption = T;
    EXPECT_FALSE(proof_of_life_tick(n, T + 0.001, T, rng));
}

TEST(ProofOfLife, RosterCommitsWithHalfTheNetwork)
{
    Fixture f;
    auto& init = f.online.at(V(1));
    const auto d = conclude_proof_of_life(init, ids({2, 3, 4, 5, 6, 7}), 25.0);
    ASSERT_TRUE(d.committed);
    const auto& roster = std::get<RosterUpdate>(d.update->body);
    EXPECT_EQ(roster.proofs.size(), 6u);
    EXPECT_EQ(roster.initiator, V(1));
    f.broadcast(*d.update);
    for (const auto& [v, r] : f.online) {
        EXPECT_DOUBLE_EQ(r.last_sync, 25.0);
    }
}

TEST(ProofOfLife, TooFewProofsCancelsAndResetsClock)
{
    Fixture f;
    auto& init = f.online.at(V(1));
    const auto d = conclude_proof_of_life(init, ids({2, 3, 4}), 25.0);
    EXPECT_FALSE(d.committed);
    EXPECT_DOUBLE_EQ(init.last_sync, 25.0);
    Rng rng(1);
    EXPECT_FALSE(proof_of_life_tick(init, 30.0, 20.0, rng));
}

TEST(Prune, EveryoneAliveMeansNothingPruned)
{
    Fixture f;
    EXPECT_TRUE(prune_dead_nodes(f.any(), 10.0, 20.0).empty());
}

TEST(Prune, SilentNodeRemoved)
{
    Fixture f;
    const auto d = conclude_proof_of_life(f.online.at(V(1)), ids({2, 3, 4, 5, 6, 7, 8, 9}), 25.0);
    f.broadcast(*d.update);
    const auto dead = prune_dead_nodes(f.online.at(V(1)), 25.0, 20.0);
    ASSERT_EQ(dead, ids({10}));
    f.broadcast(make_deletion(f.online.at(V(1)), V(10), 25.0));
    const auto& g = f.any().graph;
    EXPECT_FALSE(g.has_vertex(V(10)));
    EXPECT_TRUE(graph::verify_cycle(g, *f.any().cycle));
    EXPECT_EQ(f.online.count(V(10)), 0u) << "deleted member dropped its own vertex";
}

TEST(Prune, ProofAtWindowEdgeDoesNotCount)
{
    Fixture f;
    // Vertex 10 last proved life in the founding roster at t=0.
    const auto d = conclude_proof_of_life(f.online.at(V(1)), ids({2, 3, 4, 5, 6, 7, 8, 9}), 5.0);
    f.broadcast(*d.update);
    EXPECT_EQ(prune_dead_nodes(f.any(), 20.0, 20.0), ids({10}));
    EXPECT_TRUE(prune_dead_nodes(f.any(), 19.999, 20.0).empty());
}

TEST(Prune, TooSmallNetworkTerminates)
{
    Fixture f(5, 10);
    const auto d = conclude_proof_of_life(f.online.at(V(1)), ids({2, 3, 4}), 25.0);
    f.broadcast(*d.update);
    try {
        prune_dead_nodes(f.online.at(V(1)), 25.0, 20.0);
        FAIL();
    } catch (const graph::GraphError& e) {
        EXPECT_EQ(e.code(), graph::GraphErrc::NetworkTooSmall);
    }
}

TEST(UpdateQueue, EvictionFoldsIntoBase)
{
    Fixture f(10, 30, 3.0);
    f.churn_to(10);
    auto q = f.any().fifo;
    q.evict(10.0);
    EXPECT_EQ(q.base_stage(), 6u);
    EXPECT_EQ(q.head_stage(), 10u);
    EXPECT_FALSE(q.gap_since(5));
    ASSERT_TRUE(q.gap_since(6));
    EXPECT_EQ(q.gap_since(6)->size(), 4u);
    EXPECT_TRUE(q.digest_at(6));
    EXPECT_FALSE(q.digest_at(5));
    EXPECT_EQ(*q.digest_at(10), graph_digest(f.any().graph));
}

TEST(Property, ChurnKeepsReplicasConsistentAndGapsReplayable)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Fixture f;
        f.rng.seed(seed);
        std::vector<NodeRecord> parked;
        for (std::uint64_t step = 1; step <= 60; ++step) {
            const double now = static_cast<double>(f.any().graph.stage() + 1);
            if (step % 10 == 3) {
                // Park a random non-reporter member for a while.
                auto ids = f.online_ids();
                parked.push_back(f.power_off(ids[1 + uniform_index(f.rng, ids.size() - 1)], now - 1));
                continue;
            }
            std::optional<VertexId> keep;
            if (f.online.size() > 12 || (f.online.size() > 6 && bernoulli(f.rng, 0.5))) {
                auto live = f.online_ids();
                std::erase_if(live, [&](VertexId v) { return v == f.online.begin()->first; });
                const auto victim = live[uniform_index(f.rng, live.size())];
                f.broadcast(make_deletion(f.online.begin()->second, victim, now));
            } else {
                f.insert(now);
            }
            const auto& ref = f.any();
            for (const auto& [v, r] : f.online) {
                ASSERT_EQ(r.graph, ref.graph);
                ASSERT_EQ(r.cycle, ref.cycle);
            }
            ASSERT_TRUE(graph::verify_cycle(ref.graph, *ref.cycle));
        }
        const double now = static_cast<double>(f.any().graph.stage() + 1);
        const auto online = f.online_ids();
        for (auto& sup : parked) {
            Rng rng(seed);
            const auto out = handle_access_control(f.any(), sup, {now, 1000.0, 8, online}, rng);
            if (f.any().graph.has_vertex(*sup.vertex)) {
                ASSERT_EQ(out.status, AccessStatus::Admitted);
                EXPECT_EQ(sup.graph, f.any().graph);
                EXPECT_EQ(sup.cycle, f.any().cycle);
            } else {
                EXPECT_EQ(out.reason, RejectReason::NotMember);
            }
        }
    }
}
