// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/error.hpp"
#include "fple/netsim.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace fple;

namespace {

std::string read_scenario(const std::string& name)
{
    std::ifstream in(std::string(FPLE_SCENARIO_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScenarioConfig scenario(const std::string& name) { return ScenarioConfig::parse(read_scenario(name)); }

Errc parse_error(const std::string& json)
{
    try {
        ScenarioConfig::parse(json);
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::DecodeError;
}

std::string trace_text(const Simulation& sim)
{
    std::string out;
    for (const SimEvent& e : sim.trace()) out += e.to_string() + "\n";
    return out;
}

std::optional<Hash> rogue_block(std::span<const NodeEvent> log, const Hash& ts)
{
    for (const NodeEvent& e : log) {
        if (e.event == "mined-tx" && e.subject == ts) return Hash::from_hex(e.verdict.substr(6));
    }
    return std::nullopt;
}

const char* kMinimal = R"({"seed": 1, "horizon": 10, "nodes": [{"weight": 0.5}, {"weight": 0.5}]})";

} // namespace

// ===========================================================================
// Scenario parsing
// ===========================================================================

TEST_CASE("scenario configs are validated before running")
{
    CHECK_NOTHROW(ScenarioConfig::parse(kMinimal));
    CHECK(parse_error("{") == Errc::ConfigError);
    CHECK(parse_error(R"({"seed": 1, "horizon": 10, "nodes": [{"weight": 0.5}, {"weight": 0.4}]})") ==
          Errc::ConfigError);
    CHECK(parse_error(R"({"seed": 1, "horizon": 10, "nodes": [{"weight": 1.0}], "bogus": 1})") == Errc::ConfigError);
    CHECK(parse_error(R"({"seed": 1, "horizon": 10, "nodes": [{"weight": 0.5}, {"weight": 0.5}],
                          "topology": [[0, 2]]})") == Errc::ConfigError);
    CHECK(parse_error(R"({"seed": 1, "horizon": 10, "nodes": [{"weight": 0.5}, {"weight": 0.5}],
                          "topology": [[0, 1, 0]]})") == Errc::ConfigError);
    CHECK(parse_error(R"({"seed": 1, "horizon": 10, "nodes": [{"weight": 0.5}, {"weight": 0.5}],
                          "topology": [[0, 1], [1, 0]]})") == Errc::ConfigError);
    CHECK(parse_error(R"({"seed": 1, "horizon": 10, "nodes": [{"weight": 1.0, "erase": {"tick": 3}}]})") ==
          Errc::ConfigError);
    CHECK(parse_error(R"({"seed": 1, "horizon": 10, "nodes": [{"weight": 1.0}], "data_tx": {"tick": 1, "origin": 0,
                          "outputs": 2}, "rogue_spends": [{"tick": 2, "origin": 0, "output": 0, "miner": 0}]})") ==
          Errc::ConfigError);
    CHECK(parse_error(R"({"seed": 1, "horizon": 0, "nodes": [{"weight": 1.0}]})") == Errc::ConfigError);
}

TEST_CASE("topologies expand to edge lists")
{
    const ScenarioConfig complete = ScenarioConfig::parse(
        R"({"seed": 1, "horizon": 5, "nodes": [{"weight": 0.25}, {"weight": 0.25}, {"weight": 0.25}, {"weight": 0.25}]})");
    CHECK(complete.edges.size() == 6);
    const ScenarioConfig ring = ScenarioConfig::parse(R"({"seed": 1, "horizon": 5, "topology": "ring", "latency": 3,
        "nodes": [{"weight": 0.25}, {"weight": 0.25}, {"weight": 0.25}, {"weight": 0.25}]})");
    CHECK(ring.edges.size() == 4);
    for (const Edge& e : ring.edges) CHECK(e.latency == 3);
    const ScenarioConfig explicit_edges = ScenarioConfig::parse(R"({"seed": 1, "horizon": 5,
        "nodes": [{"weight": 0.5}, {"weight": 0.5}, {}], "topology": [[0, 1, 2], [1, 2]]})");
    REQUIRE(explicit_edges.edges.size() == 2);
    CHECK(explicit_edges.edges[0].latency == 2);
    CHECK(explicit_edges.edges[1].latency == 1);
}

// ===========================================================================
// Event loop
// ===========================================================================

TEST_CASE("a tick with nothing queued advances without events")
{
    ScenarioConfig cfg = ScenarioConfig::parse(kMinimal);
    cfg.block_interval = 5;
    Simulation sim(cfg);
    CHECK(sim.tick() == 0);
    CHECK(sim.step().empty());
    CHECK(sim.tick() == 1);
}

TEST_CASE("blocks reach each neighbour after the edge latency")
{
    const ScenarioConfig cfg = ScenarioConfig::parse(R"({"seed": 3, "horizon": 12, "block_interval": 4,
        "nodes": [{"weight": 1.0}, {}, {}], "topology": [[0, 1, 2], [0, 2, 3]]})");
    Simulation sim(cfg);
    sim.run();
    size_t checked = 0;
    for (const SimEvent& mine : sim.trace()) {
        if (mine.kind != SimEvent::Kind::MineAttempt) continue;
        for (const auto& [peer, latency] : {std::pair<uint32_t, uint64_t>{1, 2}, {2, 3}}) {
            if (mine.tick + latency >= cfg.horizon) continue;
            const bool delivered = std::any_of(sim.trace().begin(), sim.trace().end(), [&](const SimEvent& d) {
                return d.kind == SimEvent::Kind::DeliverBlock && d.node == peer && d.from == 0 &&
                       d.tick == mine.tick + latency;
            });
            CHECK(delivered);
            ++checked;
        }
    }
    CHECK(checked >= 3);
    CHECK(sim.node(1).tip() == sim.node(0).active_chain()[sim.node(1).height()]);
}

TEST_CASE("the miner schedule follows the weights and the seed")
{
    ScenarioConfig cfg = ScenarioConfig::parse(
        R"({"seed": 9, "horizon": 20001, "nodes": [{"weight": 0.7}, {"weight": 0.2}, {"weight": 0.1}]})");
    const Simulation a(cfg);
    const Simulation b(cfg);
    CHECK(a.miner_schedule() == b.miner_schedule());
    std::map<uint32_t, size_t> counts;
    for (const auto& [tick, miner] : a.miner_schedule()) ++counts[miner];
    CHECK(a.miner_schedule().size() == 20000);
    CHECK(counts[0] / 20000.0 == doctest::Approx(0.7).epsilon(0.03));
    CHECK(counts[2] / 20000.0 == doctest::Approx(0.1).epsilon(0.1));
    cfg.seed = 10;
    CHECK(Simulation(cfg).miner_schedule() != a.miner_schedule());
}

TEST_CASE("identical configs give identical traces and reports")
{
    const ScenarioConfig cfg = scenario("rogue_minority.json");
    Simulation a(cfg), b(cfg);
    a.run();
    b.run();
    CHECK(trace_text(a) == trace_text(b));
    CHECK(a.finish().to_json() == b.finish().to_json());
    CHECK(run_scenario(cfg).to_text() == run_scenario(cfg).to_text());
}

// ===========================================================================
// Rogue spend outcomes
// ===========================================================================

TEST_CASE("no erasure: the rogue spend is discarded everywhere")
{
    const SimReport r = run_scenario(scenario("rogue_no_erasure.json"));
    REQUIRE(r.rogue.size() == 1);
    CHECK(r.rogue[0].leaf == RogueLeaf::DiscardedEverywhere);
    CHECK_FALSE(r.rogue[0].mined);
    CHECK(r.rogue[0].intervals.empty());
}

TEST_CASE("minority erasure: accepted by the eraser, then reorged out")
{
    const ScenarioConfig cfg = scenario("rogue_minority.json");
    Simulation sim(cfg);
    std::map<uint64_t, std::vector<bool>> holds; // tick -> per node: B_s on active chain after the tick
    std::optional<Hash> bs;
    while (!sim.done()) {
        const uint64_t t = sim.tick();
        sim.step();
        if (!bs) bs = rogue_block(sim.log(), compute_txid(sim.rogue_txs()[0]));
        for (uint32_t i = 0; i < cfg.nodes.size(); ++i) holds[t].push_back(bs && sim.node(i).on_active_chain(*bs));
    }
    const SimReport r = sim.finish();
    REQUIRE(r.rogue.size() == 1);
    const RogueOutcome& o = r.rogue[0];
    CHECK(o.leaf == RogueLeaf::AcceptedByErasingMinorityThenReorged);
    CHECK(o.mined);
    // Golden value recorded from the seed-42 run.
    CHECK(o.depth == 5);
    REQUIRE(bs);

    // The erasing node ends on the honest majority tip, which excludes B_s.
    for (uint32_t i = 0; i < cfg.nodes.size(); ++i) {
        CHECK(sim.node(i).tip() == sim.node(1).tip());
        CHECK_FALSE(sim.node(i).on_active_chain(*bs));
    }

    // Acceptance intervals are exactly the ticks during which B_s is on the node's active chain.
    for (uint32_t i = 0; i < cfg.nodes.size(); ++i) {
        for (const auto& [tick, per_node] : holds) {
            const bool inside = std::any_of(o.intervals.begin(), o.intervals.end(), [&](const AcceptanceInterval& a) {
                return a.node == i && a.from <= tick && (!a.to || tick < *a.to);
            });
            CHECK(inside == per_node[i]);
        }
    }
    CHECK(std::all_of(o.intervals.begin(), o.intervals.end(), [](const AcceptanceInterval& a) { return a.node == 0; }));
}

TEST_CASE("majority erasure: the rogue spend ends in the longest chain")
{
    const ScenarioConfig cfg = scenario("rogue_majority.json");
    Simulation sim(cfg);
    sim.run();
    const SimReport r = sim.finish();
    REQUIRE(r.rogue.size() == 1);
    CHECK(r.rogue[0].leaf == RogueLeaf::InLongestChain);
    const Hash bs = *rogue_block(sim.log(), compute_txid(sim.rogue_txs()[0]));
    for (uint32_t i = 0; i < cfg.nodes.size(); ++i) {
        if (cfg.nodes[i].erase) CHECK(sim.node(i).on_active_chain(bs));
    }
}

TEST_CASE("erasing nodes never relay or mine what they dropped")
{
    for (const char* name : {"rogue_no_erasure.json", "rogue_minority.json", "rogue_majority.json"}) {
        const ScenarioConfig cfg = scenario(name);
        Simulation sim(cfg);
        sim.run();
        sim.finish();
        std::map<uint32_t, std::set<Hash>> dropped;
        for (const NodeEvent& e : sim.log()) {
            if (e.event == "tx" && (e.verdict == "dropped-erased" || e.verdict == "dropped-depends-on-erased")) {
                dropped[e.node_id].insert(e.subject);
            }
            if (e.event == "announce-tx") CHECK_FALSE(dropped[e.node_id].count(e.subject));
            if (e.event == "mined-tx" && !cfg.nodes[e.node_id].rogue) CHECK_FALSE(dropped[e.node_id].count(e.subject));
        }
    }
}

TEST_CASE("without rogue activity every erasure setting converges to one tip")
{
    for (const char* mode : {"anyonecanspend", "commitment"}) {
        for (uint64_t seed = 1; seed <= 4; ++seed) {
            const std::string json = R"({"seed": )" + std::to_string(seed) + R"(, "horizon": 60, "block_interval": 3,
                "topology": "ring", "nodes": [
                  {"weight": 0.4, "maturity": 3, "erase": {"mode": ")" + mode + R"(", "tick": 20}},
                  {"weight": 0.3, "maturity": 3},
                  {"weight": 0.3, "maturity": 3, "erase": {"mode": ")" + mode + R"(", "tick": 25}},
                  {"maturity": 3}],
                "data_tx": {"tick": 1, "origin": 1, "outputs": 4}})";
            const SimReport r = run_scenario(ScenarioConfig::parse(json));
            for (const auto& row : r.tip_agreement) {
                for (bool agree : row) CHECK(agree);
            }
            CHECK(r.nodes[0].erased);
            CHECK_FALSE(r.nodes[1].erased);
        }
    }
}

TEST_CASE("classification of hand-written logs")
{
    const Hash ts = sha256(as_bytes("ts"));
    const Hash blk = sha256(as_bytes("b"));
    const std::vector<NodeEvent> unknown{{1, 0, "tx", blk, "accepted"}};
    CHECK_THROWS_AS(classify_rogue_outcome(unknown, ts), Error);

    const std::vector<NodeEvent> dropped{{1, 0, "tx", ts, "dropped-invalid: x"},
                                         {9, 0, "final-tip", blk, "height=3 work=4"}};
    CHECK(classify_rogue_outcome(dropped, ts).leaf == RogueLeaf::DiscardedEverywhere);

    const std::vector<NodeEvent> everywhere{{1, 0, "mined-tx", ts, "block=" + blk.to_hex()},
                                            {1, 0, "connect-tx", ts, "depends-on-erased(1)"},
                                            {2, 1, "connect-tx", ts, "valid"},
                                            {9, 0, "final-tip", blk, "height=3 work=4"},
                                            {9, 1, "final-tip", blk, "height=3 work=4"}};
    CHECK(classify_rogue_outcome(everywhere, ts).leaf == RogueLeaf::InLongestChain);

    const std::vector<NodeEvent> reorged{{1, 0, "mined-tx", ts, "block=" + blk.to_hex()},
                                         {1, 0, "connect-tx", ts, "depends-on-erased(1)"},
                                         {5, 0, "disconnect-tx", ts, ""},
                                         {5, 0, "reorg", blk, "depth=2"},
                                         {9, 0, "final-tip", blk, "height=4 work=5"},
                                         {9, 1, "final-tip", blk, "height=4 work=5"}};
    const RogueOutcome o = classify_rogue_outcome(reorged, ts);
    CHECK(o.leaf == RogueLeaf::AcceptedByErasingMinorityThenReorged);
    CHECK(o.depth == 2);
    REQUIRE(o.intervals.size() == 1);
    CHECK(o.intervals[0].from == 1);
    CHECK(o.intervals[0].to == 5u);
}
