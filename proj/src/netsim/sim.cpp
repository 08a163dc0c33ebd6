// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/netsim.hpp"

#include "fple/error.hpp"
#include "fple/pow.hpp"

#include <algorithm>
#include <limits>

namespace fple {

namespace {

constexpr size_t kDataTx = std::numeric_limits<size_t>::max();

// Portable mapping of a 64-bit draw onto [0, 1).
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

uint32_t parse_field(const std::string& verdict, std::string_view key)
{
    const size_t pos = verdict.find(key);
    if (pos == std::string::npos) return 0;
    return static_cast<uint32_t>(std::stoul(verdict.substr(pos + key.size())));
}

} // namespace

std::string_view sim_event_kind_name(SimEvent::Kind k)
{
    switch (k) {
    case SimEvent::Kind::DeliverBlock: return "deliver-block";
    case SimEvent::Kind::DeliverTx: return "deliver-tx";
    case SimEvent::Kind::MineAttempt: return "mine-attempt";
    case SimEvent::Kind::EraseAt: return "erase-at";
    case SimEvent::Kind::InjectTx: return "inject-tx";
    case SimEvent::Kind::RogueSpend: return "rogue-spend";
    }
    return "?";
}

std::string SimEvent::to_string() const
{
    std::string out = std::to_string(tick) + " " + std::string(sim_event_kind_name(kind)) + " node=" +
                      std::to_string(node);
    if (kind == Kind::DeliverBlock || kind == Kind::DeliverTx) {
        out += " from=" + std::to_string(from) + " " + hash.to_hex();
    }
    return out;
}

// ===========================================================================
// Setup
// ===========================================================================

Simulation::Simulation(ScenarioConfig config) : config_(std::move(config))
{
    config_.check();
    genesis_ = make_genesis(config_.difficulty);
    std::mt19937_64 rng(config_.seed);

    const uint32_t n = static_cast<uint32_t>(config_.nodes.size());
    for (uint32_t i = 0; i < n; ++i) {
        const NodeSpec& entry = config_.nodes[i];
        NodeConfig nc;
        nc.maturity = entry.maturity;
        nc.difficulty = config_.difficulty;
        nc.is_miner = entry.miner;
        nc.rogue = entry.rogue;
        nodes_.push_back(std::make_unique<Node>(i, nc, genesis_));
    }
    neighbours_.resize(n);
    for (const Edge& e : config_.edges) {
        neighbours_[e.a].emplace_back(e.b, e.latency);
        neighbours_[e.b].emplace_back(e.a, e.latency);
    }

    if (config_.data_tx) {
        Transaction tx;
        tx.inputs.push_back({OutPoint{compute_txid(genesis_.transactions[0]), 0}, Script{}});
        const Amount each = kBlockReward / config_.data_tx->outputs;
        for (uint32_t i = 0; i < config_.data_tx->outputs; ++i) {
            Writer w;
            w.u64(rng());
            w.u64(rng());
            tx.outputs.push_back(build_output(PayToHash{sha256(w.bytes())}, each));
        }
        data_tx_ = std::move(tx);
        push({config_.data_tx->tick, 0, SimEvent::Kind::InjectTx, config_.data_tx->origin, 0, {}, kDataTx});
    }
    for (uint32_t i = 0; i < n; ++i) {
        if (const auto& erase = config_.nodes[i].erase) push({erase->tick, 0, SimEvent::Kind::EraseAt, i, 0, {}, 0});
    }
    for (size_t i = 0; i < config_.rogue_spends.size(); ++i) {
        const RogueSpendSpec& r = config_.rogue_spends[i];
        Transaction ts;
        ts.inputs.push_back({OutPoint{compute_txid(*data_tx_), r.output}, r.script_sig});
        ts.outputs.push_back({data_tx_->outputs[r.output].value, Script{{op(Opcode::True)}}});
        rogue_txs_.push_back(std::move(ts));
        push({r.tick, 0, SimEvent::Kind::RogueSpend, r.origin, 0, {}, i});
    }
    for (size_t i = 0; i < config_.injected_txs.size(); ++i) {
        push({config_.injected_txs[i].tick, 0, SimEvent::Kind::InjectTx, config_.injected_txs[i].origin, 0, {}, i});
    }

    for (uint32_t i = 0; i < n; ++i) {
        if (config_.nodes[i].weight > 0.0) miners_.push_back(i);
    }
    for (uint64_t t = config_.block_interval; t < config_.horizon; t += config_.block_interval) {
        const double u = unit_draw(rng);
        double cumulative = 0.0;
        uint32_t chosen = miners_.back();
        for (uint32_t m : miners_) {
            cumulative += config_.nodes[m].weight;
            if (u < cumulative) {
                chosen = m;
                break;
            }
        }
        schedule_[t] = chosen;
        push({t, 0, SimEvent::Kind::MineAttempt, chosen, 0, {}, 0});
    }
}

std::optional<Hash> Simulation::data_txid() const
{
    if (!data_tx_) return std::nullopt;
    return compute_txid(*data_tx_);
}

void Simulation::push(SimEvent e)
{
    e.seq = seq_++;
    queue_.push(e);
}

// ===========================================================================
// Event loop
// ===========================================================================

std::vector<SimEvent> Simulation::step()
{
    std::vector<SimEvent> processed;
    while (!queue_.empty() && queue_.top().tick <= tick_) {
        SimEvent e = queue_.top();
        queue_.pop();
        process(e);
        processed.push_back(e);
        trace_.push_back(e);
    }
    ++tick_;
    return processed;
}

void Simulation::run()
{
    while (!done()) step();
}

void Simulation::collect(uint32_t id)
{
    std::vector<NodeEvent> events = nodes_[id]->drain_events();
    log_.insert(log_.end(), std::make_move_iterator(events.begin()), std::make_move_iterator(events.end()));
}

void Simulation::broadcast(uint32_t id)
{
    collect(id);
    for (const Announcement& a : nodes_[id]->drain_outbox()) {
        const bool block = a.kind == Announcement::Kind::Block;
        for (const auto& [peer, latency] : neighbours_[id]) {
            push({tick_ + latency, 0, block ? SimEvent::Kind::DeliverBlock : SimEvent::Kind::DeliverTx, peer, id,
                  a.hash, 0});
            log_.push_back({tick_, id, block ? "announce-block" : "announce-tx", a.hash, "to=" + std::to_string(peer)});
        }
    }
}

void Simulation::process(const SimEvent& e)
{
    Node& node = *nodes_[e.node];
    node.set_clock(e.tick);
    switch (e.kind) {
    case SimEvent::Kind::DeliverBlock: {
        if (!node.should_request({Announcement::Kind::Block, e.hash})) break;
        std::optional<Block> block = nodes_[e.from]->serve_block(e.hash);
        if (!block) break;
        log_.push_back({e.tick, e.node, "recv-block", e.hash, "from=" + std::to_string(e.from)});
        node.handle_block(*block);
        break;
    }
    case SimEvent::Kind::DeliverTx: {
        if (!node.should_request({Announcement::Kind::Tx, e.hash})) break;
        std::optional<Transaction> tx = nodes_[e.from]->get_transaction(e.hash);
        if (!tx) break;
        log_.push_back({e.tick, e.node, "recv-tx", e.hash, "from=" + std::to_string(e.from)});
        node.handle_transaction(*tx);
        break;
    }
    case SimEvent::Kind::MineAttempt: {
        Block b = node.mine(e.tick);
        mined_by_.push_back(compute_block_hash(b.header));
        break;
    }
    case SimEvent::Kind::EraseAt: {
        const EraseSpec& target = *config_.nodes[e.node].erase;
        std::set<uint32_t> indices(target.outputs.begin(), target.outputs.end());
        if (indices.empty()) {
            for (uint32_t i = 0; i < data_tx_->outputs.size(); ++i) indices.insert(i);
        }
        try {
            node.erase(*data_txid(), indices, target.mode);
        } catch (const Error& err) {
            log_.push_back({e.tick, e.node, "erase-failed", *data_txid(), std::string(errc_name(err.code()))});
        }
        break;
    }
    case SimEvent::Kind::InjectTx:
        node.handle_transaction(e.index == kDataTx ? *data_tx_ : config_.injected_txs[e.index].tx);
        break;
    case SimEvent::Kind::RogueSpend: {
        const Transaction& ts = rogue_txs_[e.index];
        node.handle_transaction(ts);
        broadcast(e.node);
        if (std::optional<uint32_t> miner = config_.rogue_spends[e.index].miner) {
            Node& rogue = *nodes_[*miner];
            rogue.set_clock(e.tick);
            rogue.force_include(ts);
            Block b = rogue.mine(e.tick);
            mined_by_.push_back(compute_block_hash(b.header));
            broadcast(*miner);
        }
        break;
    }
    }
    broadcast(e.node);
}

// ===========================================================================
// Classification and report
// ===========================================================================

std::string_view rogue_leaf_name(RogueLeaf leaf)
{
    switch (leaf) {
    case RogueLeaf::DiscardedEverywhere: return "DiscardedEverywhere";
    case RogueLeaf::AcceptedByErasingMinorityThenReorged: return "AcceptedByErasingMinorityThenReorged";
    case RogueLeaf::InLongestChain: return "InLongestChain";
    }
    return "?";
}

RogueOutcome classify_rogue_outcome(std::span<const NodeEvent> log, const Hash& ts_txid)
{
    RogueOutcome out;
    out.txid = ts_txid;
    bool seen = false;
    bool ever_connected = false;
    std::map<uint32_t, size_t> open;           // node -> index into out.intervals
    std::map<uint32_t, uint64_t> removed_at;   // node -> step of the last disconnect of T_s
    std::map<uint32_t, uint64_t> final_work;

    for (const NodeEvent& e : log) {
        if (e.event == "final-tip") {
            final_work[e.node_id] = std::stoull(e.verdict.substr(e.verdict.find("work=") + 5));
            continue;
        }
        if (e.event == "reorg") {
            auto it = removed_at.find(e.node_id);
            if (it != removed_at.end() && it->second == e.step) {
                out.depth = std::max(out.depth, parse_field(e.verdict, "depth="));
                removed_at.erase(it);
            }
            continue;
        }
        if (e.subject != ts_txid) continue;
        seen = true;
        if (e.event == "mined-tx") {
            out.mined = true;
        } else if (e.event == "connect-tx") {
            ever_connected = true;
            open[e.node_id] = out.intervals.size();
            out.intervals.push_back({e.node_id, e.step, std::nullopt});
        } else if (e.event == "disconnect-tx") {
            if (auto it = open.find(e.node_id); it != open.end()) {
                out.intervals[it->second].to = e.step;
                open.erase(it);
            }
            removed_at[e.node_id] = e.step;
        }
    }
    if (!seen) throw Error(Errc::UnknownTxid, ts_txid.to_hex());

    if (!out.mined && !ever_connected) {
        out.leaf = RogueLeaf::DiscardedEverywhere;
        return out;
    }
    uint64_t best = 0;
    for (const auto& [node, work] : final_work) best = std::max(best, work);
    bool everywhere = !final_work.empty();
    for (const auto& [node, work] : final_work) {
        if (work == best && !open.count(node)) everywhere = false;
    }
    out.leaf = everywhere ? RogueLeaf::InLongestChain : RogueLeaf::AcceptedByErasingMinorityThenReorged;
    return out;
}

SimReport Simulation::finish()
{
    const uint32_t n = static_cast<uint32_t>(nodes_.size());
    for (uint32_t i = 0; i < n; ++i) {
        collect(i);
        const Node& node = *nodes_[i];
        log_.push_back({config_.horizon, i, "final-tip", node.tip(),
                        "height=" + std::to_string(node.height()) + " work=" + std::to_string(node.tip_work())});
    }

    SimReport r;
    r.seed = config_.seed;
    r.horizon = config_.horizon;

    uint32_t heaviest = 0;
    for (uint32_t i = 1; i < n; ++i) {
        if (nodes_[i]->tip_work() > nodes_[heaviest]->tip_work()) heaviest = i;
    }
    std::map<uint32_t, size_t> mined, orphaned;
    for (const NodeEvent& e : log_) {
        if (e.event != "mined") continue;
        ++mined[e.node_id];
        if (!nodes_[heaviest]->on_active_chain(e.subject)) ++orphaned[e.node_id];
    }
    for (uint32_t i = 0; i < n; ++i) {
        const Node& node = *nodes_[i];
        r.nodes.push_back({i, node.tip(), node.height(), node.tip_work(), !node.erasure_db().empty(), mined[i],
                           orphaned[i]});
    }
    r.tip_agreement.assign(n, std::vector<bool>(n));
    for (uint32_t a = 0; a < n; ++a) {
        for (uint32_t b = 0; b < n; ++b) r.tip_agreement[a][b] = nodes_[a]->tip() == nodes_[b]->tip();
    }
    for (const NodeEvent& e : log_) {
        if (e.event == "reorg") r.forks.push_back({e.node_id, e.step, parse_field(e.verdict, "depth=")});
    }
    for (const Transaction& ts : rogue_txs_) r.rogue.push_back(classify_rogue_outcome(log_, compute_txid(ts)));

    std::string all;
    for (const NodeEvent& e : log_) {
        all += e.to_line();
        all += '\n';
    }
    r.events_processed = trace_.size();
    r.log_lines = log_.size();
    r.log_digest = sha256(as_bytes(all));
    return r;
}

SimReport run_scenario(const ScenarioConfig& config)
{
    Simulation sim(config);
    sim.run();
    return sim.finish();
}

} // namespace fple
