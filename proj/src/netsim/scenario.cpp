// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/netsim.hpp"

#include "fple/error.hpp"
#include "fple/pow.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

namespace fple {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(Errc::ConfigError, msg); }

void expect_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where)
{
    if (!obj.is_object()) fail(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = key == "description";
        for (std::string_view a : allowed) known = known || key == a;
        if (!known) fail("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback)
{
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <typename T>
T get_required(const json& obj, const char* key, const std::string& where)
{
    if (!obj.contains(key)) fail("missing '" + std::string(key) + "' in " + where);
    return get_or<T>(obj, key, T{});
}

ErasureMode parse_mode(const std::string& text, uint64_t seed, uint32_t node)
{
    if (text == "commitment") {
        Writer w;
        w.raw(as_bytes("fple-sim-salt"));
        w.u64(seed);
        w.u32(node);
        Hash h = sha256(w.bytes());
        Salt salt{};
        std::copy_n(h.bytes.begin(), salt.size(), salt.begin());
        return ErasureMode::hash_commitment(salt);
    }
    try {
        return ErasureMode::parse(text);
    } catch (const Error& e) {
        fail("bad erasure mode '" + text + "'");
    }
}

} // namespace

ScenarioConfig ScenarioConfig::parse(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("scenario is not valid JSON: ") + e.what());
    }
    expect_keys(doc,
                {"seed", "horizon", "difficulty", "block_interval", "topology", "latency", "nodes", "data_tx",
                 "rogue_spends", "injected_txs"},
                "scenario");

    ScenarioConfig cfg;
    cfg.seed = get_required<uint64_t>(doc, "seed", "scenario");
    cfg.horizon = get_required<uint64_t>(doc, "horizon", "scenario");
    cfg.difficulty = get_or<unsigned>(doc, "difficulty", 0);
    cfg.block_interval = get_or<uint64_t>(doc, "block_interval", 1);

    if (!doc.contains("nodes") || !doc["nodes"].is_array()) fail("'nodes' must be an array");
    for (const json& n : doc["nodes"]) {
        expect_keys(n, {"weight", "miner", "rogue", "maturity", "erase"}, "node");
        NodeSpec entry;
        entry.weight = get_or<double>(n, "weight", 0.0);
        entry.miner = get_or<bool>(n, "miner", entry.weight > 0.0);
        entry.rogue = get_or<bool>(n, "rogue", false);
        entry.maturity = get_or<uint32_t>(n, "maturity", 300);
        if (n.contains("erase")) {
            const json& e = n["erase"];
            expect_keys(e, {"mode", "outputs", "tick"}, "erase");
            EraseSpec es;
            es.mode = parse_mode(get_or<std::string>(e, "mode", "anyonecanspend"), cfg.seed,
                                 static_cast<uint32_t>(cfg.nodes.size()));
            es.outputs = get_or<std::vector<uint32_t>>(e, "outputs", {});
            es.tick = get_required<uint64_t>(e, "tick", "erase");
            entry.erase = std::move(es);
        }
        cfg.nodes.push_back(std::move(entry));
    }

    const uint64_t latency = get_or<uint64_t>(doc, "latency", 1);
    const uint32_t count = static_cast<uint32_t>(cfg.nodes.size());
    const json topology = doc.contains("topology") ? doc["topology"] : json("complete");
    if (topology.is_string() && topology == "complete") {
        for (uint32_t a = 0; a < count; ++a) {
            for (uint32_t b = a + 1; b < count; ++b) cfg.edges.push_back({a, b, latency});
        }
    } else if (topology.is_string() && topology == "ring") {
        for (uint32_t a = 0; count > 1 && a < count; ++a) {
            const uint32_t b = (a + 1) % count;
            if (count == 2 && a == 1) break;
            cfg.edges.push_back({std::min(a, b), std::max(a, b), latency});
        }
    } else if (topology.is_array()) {
        for (const json& e : topology) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3) fail("edges are [a, b] or [a, b, latency]");
            try {
                cfg.edges.push_back({e[0].get<uint32_t>(), e[1].get<uint32_t>(),
                                     e.size() == 3 ? e[2].get<uint64_t>() : latency});
            } catch (const json::exception& ex) {
                fail(std::string("bad edge: ") + ex.what());
            }
        }
    } else {
        fail("topology must be \"complete\", \"ring\" or an edge list");
    }

    if (doc.contains("data_tx")) {
        const json& d = doc["data_tx"];
        expect_keys(d, {"tick", "origin", "outputs"}, "data_tx");
        cfg.data_tx = DataTxSpec{get_or<uint64_t>(d, "tick", 0), get_or<uint32_t>(d, "origin", 0),
                                 get_or<uint32_t>(d, "outputs", 1)};
    }

    for (const json& r : doc.value("rogue_spends", json::array())) {
        expect_keys(r, {"tick", "origin", "output", "miner", "script_sig_hex"}, "rogue spend");
        RogueSpendSpec rogue;
        rogue.tick = get_required<uint64_t>(r, "tick", "rogue spend");
        rogue.origin = get_or<uint32_t>(r, "origin", 0);
        rogue.output = get_or<uint32_t>(r, "output", 0);
        if (r.contains("miner")) rogue.miner = get_or<uint32_t>(r, "miner", 0);
        if (r.contains("script_sig_hex")) {
            try {
                rogue.script_sig = Script::decode(from_hex(get_or<std::string>(r, "script_sig_hex", "")));
            } catch (const Error& e) {
                fail(std::string("bad script_sig_hex: ") + e.what());
            }
        } else {
            rogue.script_sig = Script{{push(Bytes(64, 0x00)), push(Bytes(32, 0x01))}};
        }
        cfg.rogue_spends.push_back(std::move(rogue));
    }

    for (const json& t : doc.value("injected_txs", json::array())) {
        expect_keys(t, {"tick", "origin", "tx_hex"}, "injected tx");
        InjectedTx inj;
        inj.tick = get_required<uint64_t>(t, "tick", "injected tx");
        inj.origin = get_or<uint32_t>(t, "origin", 0);
        try {
            inj.tx = Transaction::decode(from_hex(get_required<std::string>(t, "tx_hex", "injected tx")));
        } catch (const Error& e) {
            fail(std::string("bad tx_hex: ") + e.what());
        }
        cfg.injected_txs.push_back(std::move(inj));
    }

    cfg.check();
    return cfg;
}

void ScenarioConfig::check() const
{
    const size_t n = nodes.size();
    if (n == 0) fail("scenario needs at least one node");
    if (horizon == 0) fail("horizon must be positive");
    if (block_interval == 0) fail("block_interval must be positive");
    if (difficulty > kMaxDifficulty) fail("difficulty above " + std::to_string(kMaxDifficulty));

    double total = 0.0;
    for (const NodeSpec& s : nodes) {
        if (s.weight < 0.0) fail("negative weight");
        if (s.weight > 0.0 && !s.miner) fail("non-miner with positive weight");
        if (s.maturity < 1) fail("maturity must be at least 1");
        total += s.weight;
    }
    if (std::fabs(total - 1.0) > 1e-9) fail("weights sum to " + std::to_string(total) + ", not 1");

    std::set<std::pair<uint32_t, uint32_t>> seen;
    for (const Edge& e : edges) {
        if (e.a >= n || e.b >= n) fail("edge references unknown node");
        if (e.a == e.b) fail("self edge");
        if (e.latency == 0) fail("edge latency must be at least 1 tick");
        if (!seen.insert({std::min(e.a, e.b), std::max(e.a, e.b)}).second) fail("duplicate edge");
    }
    auto node_ok = [&](uint32_t id) { return id < n; };
    if (data_tx) {
        if (!node_ok(data_tx->origin)) fail("data_tx origin out of range");
        if (data_tx->outputs == 0) fail("data_tx needs at least one output");
    }
    for (const NodeSpec& s : nodes) {
        if (s.erase && !data_tx) fail("erase configured without a data_tx");
        if (s.erase && data_tx) {
            for (uint32_t i : s.erase->outputs) {
                if (i >= data_tx->outputs) fail("erase output index out of range");
            }
        }
    }
    for (const RogueSpendSpec& r : rogue_spends) {
        if (!data_tx) fail("rogue spend without a data_tx");
        if (!node_ok(r.origin) || (r.miner && !node_ok(*r.miner))) fail("rogue spend references unknown node");
        if (r.output >= data_tx->outputs) fail("rogue spend output out of range");
        if (r.miner && !nodes[*r.miner].rogue) fail("rogue spend miner must be configured rogue");
    }
    for (const InjectedTx& t : injected_txs) {
        if (!node_ok(t.origin)) fail("injected tx origin out of range");
    }
}

} // namespace fple
