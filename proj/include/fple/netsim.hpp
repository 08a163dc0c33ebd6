// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_NETSIM_HPP
#define FPLE_NETSIM_HPP

#include "fple/node.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fple {

// ===========================================================================
// Scenario description
// ===========================================================================

struct EraseSpec {
    ErasureMode mode;
    std::vector<uint32_t> outputs; // empty: every output of the data transaction
    uint64_t tick = 0;
};

struct NodeSpec {
    double weight = 0.0; // share of the mining schedule
    bool miner = false;
    bool rogue = false;
    uint32_t maturity = 300;
    std::optional<EraseSpec> erase;
};

struct Edge {
    uint32_t a = 0;
    uint32_t b = 0;
    uint64_t latency = 1;
};

/// T_e: spends the genesis output into `outputs` pay-to-hash outputs whose
/// hashes stand in for embedded data.
struct DataTxSpec {
    uint64_t tick = 0;
    uint32_t origin = 0;
    uint32_t outputs = 1;
};

/// T_s: spends output `output` of T_e with an attacker-chosen script_sig.
/// If `miner` is set, that node force-includes T_s and mines at `tick`.
struct RogueSpendSpec {
    uint64_t tick = 0;
    uint32_t origin = 0;
    uint32_t output = 0;
    std::optional<uint32_t> miner;
    Script script_sig;
};

struct InjectedTx {
    uint64_t tick = 0;
    uint32_t origin = 0;
    Transaction tx;
};

struct ScenarioConfig {
    uint64_t seed = 0;
    uint64_t horizon = 0;
    unsigned difficulty = 0;
    uint64_t block_interval = 1;
    std::vector<NodeSpec> nodes;
    std::vector<Edge> edges;
    std::optional<DataTxSpec> data_tx;
    std::vector<RogueSpendSpec> rogue_spends;
    std::vector<InjectedTx> injected_txs;

    /// Throws ConfigError on malformed JSON or violated invariants.
    static ScenarioConfig parse(std::string_view json);
    void check() const;
};

// ===========================================================================
// Simulation
// ===========================================================================

struct SimEvent {
    enum class Kind { DeliverBlock, DeliverTx, MineAttempt, EraseAt, InjectTx, RogueSpend };

    uint64_t tick = 0;
    uint64_t seq = 0;
    Kind kind = Kind::MineAttempt;
    uint32_t node = 0;
    uint32_t from = 0; // deliveries only
    Hash hash;         // deliveries only
    size_t index = 0;  // InjectTx / RogueSpend: position in the config lists

    std::string to_string() const;
};

std::string_view sim_event_kind_name(SimEvent::Kind k);

enum class RogueLeaf { DiscardedEverywhere, AcceptedByErasingMinorityThenReorged, InLongestChain };
std::string_view rogue_leaf_name(RogueLeaf leaf);

struct AcceptanceInterval {
    uint32_t node = 0;
    uint64_t from = 0;
    std::optional<uint64_t> to; // open when still accepted at horizon
};

struct RogueOutcome {
    Hash txid;
    RogueLeaf leaf = RogueLeaf::DiscardedEverywhere;
    uint32_t depth = 0; // deepest reorg that removed T_s
    bool mined = false;
    std::vector<AcceptanceInterval> intervals;
};

/// Pure function of a complete event log (which must end with one
/// final-tip event per node). Throws UnknownTxid if ts_txid never appears.
RogueOutcome classify_rogue_outcome(std::span<const NodeEvent> log, const Hash& ts_txid);

struct ForkEvent {
    uint32_t node = 0;
    uint64_t tick = 0;
    uint32_t depth = 0;
};

struct SimReport {
    struct NodeSummary {
        uint32_t id = 0;
        Hash tip;
        uint32_t height = 0;
        uint64_t work = 0;
        bool erased = false;
        size_t blocks_mined = 0;
        size_t blocks_orphaned = 0; // mined but off the heaviest final chain
    };

    uint64_t seed = 0;
    uint64_t horizon = 0;
    std::vector<NodeSummary> nodes;
    std::vector<std::vector<bool>> tip_agreement;
    std::vector<ForkEvent> forks;
    std::vector<RogueOutcome> rogue;
    size_t events_processed = 0;
    size_t log_lines = 0;
    Hash log_digest;

    std::string to_json() const;
    std::string to_text() const;
};

class Simulation {
public:
    explicit Simulation(ScenarioConfig config);

    /// Processes every event at the current tick and advances it.
    std::vector<SimEvent> step();
    bool done() const { return tick_ >= config_.horizon; }
    void run();
    /// Appends the final-tip events and builds the report. Call once, at horizon.
    SimReport finish();

    uint64_t tick() const { return tick_; }
    const ScenarioConfig& config() const { return config_; }
    Node& node(uint32_t id) { return *nodes_.at(id); }
    const std::vector<NodeEvent>& log() const { return log_; }
    const std::vector<SimEvent>& trace() const { return trace_; }
    const std::map<uint64_t, uint32_t>& miner_schedule() const { return schedule_; }
    const Block& genesis() const { return genesis_; }
    std::optional<Hash> data_txid() const;
    const std::vector<Transaction>& rogue_txs() const { return rogue_txs_; }

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const
        {
            return a.tick != b.tick ? a.tick > b.tick : a.seq > b.seq;
        }
    };

    void push(SimEvent e);
    void process(const SimEvent& e);
    void broadcast(uint32_t node);
    void collect(uint32_t node);

    ScenarioConfig config_;
    Block genesis_;
    std::optional<Transaction> data_tx_;
    std::vector<Transaction> rogue_txs_;
    std::vector<std::unique_ptr<Node>> nodes_;
    std::vector<std::vector<std::pair<uint32_t, uint64_t>>> neighbours_;
    std::map<uint64_t, uint32_t> schedule_;
    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
    uint64_t seq_ = 0;
    uint64_t tick_ = 0;
    std::vector<NodeEvent> log_;
    std::vector<SimEvent> trace_;
    std::vector<Hash> mined_by_;  // block hash per mined block, in order
    std::vector<uint32_t> miners_;
};

SimReport run_scenario(const ScenarioConfig& config);

} // namespace fple

#endif // FPLE_NETSIM_HPP
