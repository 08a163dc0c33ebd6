// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/chaingen.hpp"
#include "fple/erasure.hpp"
#include "fple/netsim.hpp"
#include "fple/node.hpp"

#include "support/reference_node.hpp"
#include "support/scan.hpp"
#include "support/temp_dir.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

using namespace fple;
using fple::testing::ReferenceNode;
using fple::testing::TempDir;

namespace {

// ===========================================================================
// Harness
// ===========================================================================

class Check {
public:
    void expect(bool ok, const std::string& what)
    {
        if (ok) return;
        if (failures_.size() < 5) failures_.push_back(what);
        ++failed_;
    }
    bool ok() const { return failed_ == 0; }
    std::string summary() const
    {
        std::string out;
        for (const std::string& f : failures_) out += (out.empty() ? "" : "; ") + f;
        if (failed_ > failures_.size()) out += "; +" + std::to_string(failed_ - failures_.size()) + " more";
        return out;
    }

private:
    std::vector<std::string> failures_;
    size_t failed_ = 0;
};

struct Result {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0;
    std::optional<double> limit;
    std::string detail;
};

Result run_criterion(int id, const std::string& title, std::optional<double> limit,
                     const std::function<std::string(Check&)>& body)
{
    Result r{id, title, false, 0, limit, {}};
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
        r.detail = body(check);
    } catch (const std::exception& e) {
        check.expect(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = check.ok() && (!limit || r.seconds < *limit);
    if (!check.ok()) r.detail = check.summary();
    if (check.ok() && limit && r.seconds >= *limit) r.detail = "over the time limit";
    return r;
}

// Byte scans of persisted node state, gathered from every erasure run.
struct ScanRecord {
    std::string run;
    size_t files = 0;
    size_t payloads = 0;
    size_t findings = 0;
};
std::vector<ScanRecord> g_scans;

void scan_after(const std::string& run, const std::filesystem::path& dir, const std::vector<Bytes>& payloads)
{
    const auto files = fple::testing::files_under(dir);
    g_scans.push_back({run, files.size(), payloads.size(), fple::testing::scan_for_payloads(files, payloads).size()});
}

Salt random_salt(std::mt19937_64& rng)
{
    Salt s;
    for (uint8_t& b : s) b = static_cast<uint8_t>(rng());
    return s;
}

std::string kind_name(const BlockOutcome& o)
{
    switch (o.kind) {
    case BlockOutcome::Kind::Extended: return "extended";
    case BlockOutcome::Kind::Reorged: return "reorged";
    case BlockOutcome::Kind::StoredSideChain: return "side";
    case BlockOutcome::Kind::Rejected: return "rejected";
    case BlockOutcome::Kind::Orphaned: return "orphaned";
    case BlockOutcome::Kind::Duplicate: return "duplicate";
    }
    return "?";
}

std::set<uint32_t> all_outputs(const Transaction& tx)
{
    std::set<uint32_t> out;
    for (uint32_t i = 0; i < tx.outputs.size(); ++i) out.insert(i);
    return out;
}

bool contains_tx(const std::optional<Block>& block, const Transaction& tx)
{
    return block && std::find(block->transactions.begin(), block->transactions.end(), tx) != block->transactions.end();
}

// ===========================================================================
// 1. Incoming-data decision leaves
// ===========================================================================

std::string decision_leaves(Check& c)
{
    TempDir dir;
    std::vector<Block> blocks;
    ChainGenerator g(1001);
    for (int i = 0; i < 2; ++i) blocks.push_back(g.build(g.random_txs(g.tip(), 2)));
    const Transaction data = g.data_tx(g.tip(), 4, 2);
    const Hash txid = compute_txid(data);
    g.reserve(OutPoint{txid, 0});
    g.reserve(OutPoint{txid, 1});
    blocks.push_back(g.build({data}));
    for (int i = 0; i < 3; ++i) blocks.push_back(g.build(g.random_txs(g.tip(), 2)));

    NodeConfig cfg;
    cfg.maturity = 3;
    Node node = Node::open(dir.path(), cfg, g.genesis());
    for (const Block& b : blocks) c.expect(node.handle_block(b).accepted(), "setup block rejected");
    node.erase(txid, all_outputs(data), ErasureMode::anyone_can_spend());
    node.drain_outbox();

    const Transaction dependent = g.spend(g.tip(), OutPoint{txid, 0}, {g.pay_to_key(0, data.outputs[0].value)});
    const std::vector<Transaction> normal = g.random_txs(g.tip(), 1);
    c.expect(normal.size() == 1, "no normal transaction available");

    const TxOutcome v1 = node.handle_transaction(data);
    const TxOutcome v2 = node.handle_transaction(dependent);
    const TxOutcome v3 = node.handle_transaction(normal.at(0));
    c.expect(v1.kind == TxOutcome::Kind::DroppedErased, "erased txid: " + v1.to_string());
    c.expect(v2.kind == TxOutcome::Kind::DroppedDependsOnErased, "dependent: " + v2.to_string());
    c.expect(v3.kind == TxOutcome::Kind::AcceptedToMempool, "normal: " + v3.to_string());
    for (const Announcement& a : node.drain_outbox()) {
        c.expect(a.hash != txid && a.hash != compute_txid(dependent), "dropped transaction relayed");
    }

    const Block mined = g.build({dependent});
    const BlockOutcome v4 = node.handle_block(mined);
    c.expect(v4.kind == BlockOutcome::Kind::Extended, "mined dependent: " + v4.to_string());
    const std::vector<NodeEvent> events = node.drain_events();
    c.expect(std::any_of(events.begin(), events.end(),
                         [&](const NodeEvent& e) {
                             return e.event == "connect-tx" && e.subject == compute_txid(dependent) &&
                                    e.verdict == "depends-on-erased(1)";
                         }),
             "mined dependent not connected under the erased-input rule");
    node.flush();
    scan_after("decision leaves", dir.path(), fple::testing::output_payloads(data, all_outputs(data)));
    return "erased drop, dependent drop, mempool accept, mined accept";
}

// ===========================================================================
// 2. Staying in sync through spends of erased outputs
// ===========================================================================

std::string stay_in_sync(Check& c)
{
    constexpr uint32_t kHeight = 200;
    constexpr uint32_t kDataHeight = 20;
    constexpr uint32_t kMaturity = 10;
    const uint32_t spend_heights[2] = {150, 180};

    TempDir dir;
    ChainGenerator gen(2002);
    std::vector<Block> chain;
    Transaction data;
    Hash data_txid;
    for (uint32_t h = 1; h <= kHeight; ++h) {
        std::vector<Transaction> txs;
        if (h == kDataHeight) {
            data = gen.data_tx(gen.tip(), 155, 2);
            data_txid = compute_txid(data);
            gen.reserve(OutPoint{data_txid, 0});
            gen.reserve(OutPoint{data_txid, 1});
            txs.push_back(data);
        } else {
            txs = gen.random_txs(gen.tip(), gen.rng()() % 3);
        }
        for (uint32_t i = 0; i < 2; ++i) {
            if (h == spend_heights[i]) {
                txs.push_back(gen.spend(gen.tip(), OutPoint{data_txid, i}, {gen.pay_to_key(0, data.outputs[i].value)}));
            }
        }
        chain.push_back(gen.build(std::move(txs)));
    }

    NodeConfig cfg;
    cfg.maturity = kMaturity;
    Node node = Node::open(dir.path(), cfg, gen.genesis());
    ReferenceNode ref(gen.genesis(), 0);
    size_t divergent = 0;
    bool erased = false;
    size_t rewrites = 0;
    size_t erased_spends = 0;
    for (const Block& b : chain) {
        const BlockOutcome o = node.handle_block(b);
        ref.submit(b);
        c.expect(o.accepted(), "block rejected: " + o.reason);
        if (node.tip() != ref.tip()) ++divergent;
        if (!erased && node.height() >= kDataHeight + kMaturity) {
            const ErasureReceipt r = node.erase(data_txid, all_outputs(data), ErasureMode::anyone_can_spend());
            rewrites = r.utxo_rewrites;
            erased = true;
        }
        for (const NodeEvent& e : node.drain_events()) {
            if (e.event == "connect-tx" && e.verdict.rfind("depends-on-erased", 0) == 0) ++erased_spends;
        }
    }
    node.flush();
    c.expect(divergent == 0, std::to_string(divergent) + " heights with a divergent tip");
    c.expect(node.tip() == ref.tip() && node.height() == kHeight, "final tip differs");
    c.expect(rewrites == 155, "erasure rewrote " + std::to_string(rewrites) + " UTXO entries");
    c.expect(erased_spends == 2, std::to_string(erased_spends) + " spends of erased outputs connected");
    scan_after("stay in sync", dir.path(), fple::testing::output_payloads(data, all_outputs(data)));
    return "200 blocks, 155 outputs erased at depth " + std::to_string(kMaturity) + ", 2 erased spends, tips equal";
}

// ===========================================================================
// 3. Post-erasure checklist
// ===========================================================================

std::string checklist(Check& c)
{
    TempDir dir;
    ChainGenerator gen(3003);
    std::vector<Block> chain;
    for (int i = 0; i < 3; ++i) chain.push_back(gen.build(gen.random_txs(gen.tip(), 2)));
    const Transaction data = gen.data_tx(gen.tip(), 8, 2);
    const Hash txid = compute_txid(data);
    gen.reserve(OutPoint{txid, 0});
    gen.reserve(OutPoint{txid, 1});
    chain.push_back(gen.build({data}));
    const Hash data_block = compute_block_hash(chain.back().header);
    for (int i = 0; i < 12; ++i) chain.push_back(gen.build(gen.random_txs(gen.tip(), 2)));

    NodeConfig cfg;
    cfg.maturity = 10;
    {
        Node node = Node::open(dir.path(), cfg, gen.genesis());
        for (const Block& b : chain) c.expect(node.handle_block(b).accepted(), "setup block rejected");
        const std::set<uint32_t> indices = all_outputs(data);
        node.erase(txid, indices, ErasureMode::anyone_can_spend());
        const Transaction redacted = *node.get_redacted(txid);

        // (a) neither the original nor the redaction is requested.
        c.expect(!node.should_request({Announcement::Kind::Tx, txid}), "(a) erased txid requested");
        c.expect(!node.should_request({Announcement::Kind::Tx, compute_txid(redacted)}), "(a) redacted txid requested");

        // (b) erased outputs are absent from the UTXO set or redacted.
        for (uint32_t i : indices) {
            const UtxoEntry* e = node.utxo().find(OutPoint{txid, i});
            c.expect(!e || e->output.script_pubkey != data.outputs[i].script_pubkey, "(b) original output script kept");
        }

        // (c) no query interface yields the original.
        c.expect(!node.get_transaction(txid).has_value(), "(c) get_transaction returned the original");
        c.expect(!node.get_transaction(compute_txid(redacted)).has_value(), "(c) get_transaction served the redaction");
        c.expect(!contains_tx(node.serve_block(data_block), data), "(c) served block carries the original");
        c.expect(!contains_tx(node.block_store().read(data_block), data), "(c) stored block carries the original");
        c.expect(node.handle_transaction(data).kind == TxOutcome::Kind::DroppedErased, "(c) original re-admitted");
        c.expect(!node.in_mempool(txid), "(c) original in mempool");
        for (const Transaction& tx : node.mempool()) c.expect(tx != data, "(c) original in mempool");

        // (d) mined blocks spending erased outputs are accepted.
        const Transaction s0 = gen.spend(gen.tip(), OutPoint{txid, 0}, {gen.pay_to_key(0, data.outputs[0].value)});
        const Block b1 = gen.build({s0});
        c.expect(node.handle_block(b1).kind == BlockOutcome::Kind::Extended, "(d) first erased spend rejected");
        const Transaction s1 = gen.spend(gen.tip(), OutPoint{txid, 1}, {gen.pay_to_key(1, data.outputs[1].value)});
        const Block b2 = gen.build({s1});
        c.expect(node.handle_block(b2).kind == BlockOutcome::Kind::Extended, "(d) second erased spend rejected");
        c.expect(node.tip() == gen.tip(), "(d) tip did not advance");
        node.flush();
    }

    // (b) again on the persisted snapshot.
    Node reopened = Node::open(dir.path(), cfg);
    for (uint32_t i = 0; i < data.outputs.size(); ++i) {
        const UtxoEntry* e = reopened.utxo().find(OutPoint{txid, i});
        c.expect(!e || e->output.script_pubkey != data.outputs[i].script_pubkey, "(b) snapshot keeps original output");
    }
    c.expect(!reopened.get_transaction(txid).has_value(), "(c) reopened node returned the original");
    scan_after("checklist", dir.path(), fple::testing::output_payloads(data, all_outputs(data)));
    return "(a) not requested, (b) snapshot redacted, (c) no original served, (d) erased spends accepted";
}

// ===========================================================================
// 4. Byte scan of persisted state
// ===========================================================================

std::string irrecoverability(Check& c)
{
    // A free-text payload, on top of the pay-to-hash payloads scanned after the other runs.
    TempDir dir;
    ChainGenerator gen(4004);
    const std::string msg = "Hi mom! I love you.";
    const Bytes text(msg.begin(), msg.end());
    NodeConfig cfg;
    cfg.maturity = 2;
    {
        Node node = Node::open(dir.path(), cfg, gen.genesis());
        const OutPoint coin{compute_txid(gen.genesis().transactions[0]), 0};
        const Transaction tx =
            gen.spend(gen.tip(), coin, {build_output(DataCarrier{text}, 0), gen.pay_to_key(0, kBlockReward)});
        c.expect(node.handle_block(gen.build({tx})).accepted(), "data carrier block rejected");
        for (int i = 0; i < 3; ++i) c.expect(node.handle_block(gen.build({})).accepted(), "block rejected");
        node.flush();
        c.expect(!fple::testing::scan_for_payloads(fple::testing::files_under(dir.path()), {text}).empty(),
                 "scanner misses the payload before erasure");
        node.erase(compute_txid(tx), {0}, ErasureMode::anyone_can_spend());
        node.flush();
    }
    scan_after("data carrier", dir.path(), {text});

    const std::set<std::string> required{"decision leaves", "stay in sync", "checklist", "commitment node",
                                         "data carrier"};
    std::set<std::string> seen;
    size_t files = 0;
    size_t findings = 0;
    for (const ScanRecord& s : g_scans) {
        seen.insert(s.run);
        files += s.files;
        findings += s.findings;
        c.expect(s.findings == 0, s.run + ": " + std::to_string(s.findings) + " payload occurrences");
        c.expect(s.files > 0 && s.payloads > 0, s.run + ": empty scan");
    }
    for (const std::string& r : required) c.expect(seen.count(r) == 1, "no scan after " + r);
    return std::to_string(g_scans.size()) + " scans, " + std::to_string(files) + " files, " +
           std::to_string(findings) + " occurrences";
}

// ===========================================================================
// 5. Commitment-mode spend checks
// ===========================================================================

size_t commitment_trials(size_t trials)
{
    ChainGenerator gen(5005);
    std::mt19937_64 rng(5005);
    size_t disagreements = 0;
    for (size_t trial = 0; trial < trials; ++trial) {
        const KeyPair& owner = gen.key(rng() % gen.key_count());
        const KeyPair& other = gen.key(rng() % gen.key_count());
        Transaction tx;
        tx.inputs.push_back({OutPoint{sha256(as_bytes("trial" + std::to_string(trial))), 0}, Script{}});
        tx.outputs.push_back(build_output(PayToHash{owner.pubkey_hash()}, kCoin));
        ErasureRecord record;
        record.original_txid = compute_txid(tx);
        record.mode = ErasureMode::hash_commitment(random_salt(rng));
        RedactionResult r = redact_transaction(tx, {0}, record.mode);
        record.redacted_tx = r.redacted;
        record.commitments = r.commitments;
        record.erased_indices = {0};

        const Hash msg = sha256(as_bytes("spend" + std::to_string(trial)));
        Script sig_script;
        switch (rng() % 6) {
        case 0:
        case 1: sig_script = Script{{push(owner.sign(msg)), push(owner.pubkey())}}; break;
        case 2: sig_script = Script{{push(other.sign(msg)), push(owner.pubkey())}}; break;
        case 3: sig_script = Script{{push(owner.sign(msg)), push(other.pubkey())}}; break;
        case 4: sig_script = Script{{push(owner.sign(sha256(msg.span()))), push(owner.pubkey())}}; break;
        default: {
            Bytes x(1 + rng() % 40);
            for (uint8_t& b : x) b = static_cast<uint8_t>(rng());
            sig_script = Script{{push(x)}};
        }
        }
        const SignatureContext ctx{msg};
        const bool full = eval_script(sig_script, tx.outputs[0].script_pubkey, ctx);
        const SpendCheck fast = check_erased_spend(record, 0, sig_script, ctx);
        if (fast == SpendCheck::Unverifiable || (fast == SpendCheck::Pass) != full) ++disagreements;
    }
    return disagreements;
}

// One random chain with a data transaction erased in commitment mode once
// buried, followed by valid and wrong-key spends of its keyed outputs.
void commitment_chain(Check& c, uint64_t seed, size_t& blocks_compared, const std::filesystem::path* dir)
{
    constexpr uint32_t kMaturity = 10;
    ChainGenerator gen(seed);
    std::mt19937_64& rng = gen.rng();
    std::optional<Node> erasing;
    NodeConfig cfg;
    cfg.maturity = kMaturity;
    if (dir) {
        erasing.emplace(Node::open(*dir, cfg, gen.genesis()));
    } else {
        erasing.emplace(0, cfg, gen.genesis());
    }
    Node plain(1, cfg, gen.genesis());

    std::vector<Hash> built{gen.genesis_hash()};
    Transaction data;
    Hash txid;
    bool erased = false;
    const uint32_t data_height = 3 + static_cast<uint32_t>(rng() % 5);
    for (uint32_t step = 1; step <= 60; ++step) {
        Block block;
        const double roll = static_cast<double>(rng() % 1000) / 1000.0;
        const Hash tip = gen.tip();
        const uint32_t height = gen.height_of(tip) + 1;
        if (height == data_height && txid.is_zero()) {
            data = gen.data_tx(tip, 6, 3);
            txid = compute_txid(data);
            for (uint32_t i = 0; i < 3; ++i) gen.reserve(OutPoint{txid, i});
            block = gen.build({data});
        } else if (erased && roll < 0.35) {
            const uint32_t i = static_cast<uint32_t>(rng() % 3);
            const OutPoint out{txid, i};
            if (!gen.coins_at(tip).count(out)) continue;
            Transaction spend = gen.spend(tip, out, {gen.pay_to_key(0, data.outputs[i].value)});
            const bool wrong = rng() % 2 == 0;
            if (wrong) gen.sign(spend, tip, (i + 1) % ChainGenerator::kDataKeys + gen.key_count());
            block = gen.build({spend}, tip, !wrong);
        } else if (roll < 0.45) {
            block = gen.faulty_block(tip, static_cast<ChainGenerator::Fault>(rng() % 5));
        } else if (roll < 0.6 && built.size() > 2) {
            const Hash parent = built[built.size() - 2 - rng() % std::min<size_t>(3, built.size() - 2)];
            block = gen.build(gen.random_txs(parent, rng() % 3), parent);
        } else {
            block = gen.build(gen.random_txs(tip, rng() % 3));
        }
        const Hash hash = compute_block_hash(block.header);
        const BlockOutcome a = erasing->handle_block(block);
        const BlockOutcome b = plain.handle_block(block);
        ++blocks_compared;
        // Rejection reasons may differ: the erasing node checks the commitment
        // where the plain node evaluates the original script.
        c.expect(kind_name(a) == kind_name(b) && a.depth == b.depth,
                 "seed " + std::to_string(seed) + ": " + a.to_string() + " vs " + b.to_string());
        c.expect(erasing->tip() == plain.tip(), "seed " + std::to_string(seed) + ": tips differ");
        if (a.accepted()) built.push_back(hash);

        if (!erased && !txid.is_zero() && erasing->height() >= data_height + kMaturity &&
            erasing->on_active_chain(gen.tip())) {
            erasing->erase(txid, all_outputs(data), ErasureMode::hash_commitment(random_salt(rng)));
            erased = true;
        }
    }
    c.expect(erased, "seed " + std::to_string(seed) + ": data never erased");
    if (dir) {
        erasing->flush();
        scan_after("commitment node", *dir, fple::testing::output_payloads(data, all_outputs(data)));
    }
}

std::string commitment_oracle(Check& c)
{
    constexpr size_t kTrials = 1000;
    const size_t disagreements = commitment_trials(kTrials);
    c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements in commitment trials");

    size_t blocks = 0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        if (seed % 10 == 0) {
            TempDir dir;
            commitment_chain(c, 5100 + seed, blocks, &dir.path());
        } else {
            commitment_chain(c, 5100 + seed, blocks, nullptr);
        }
    }
    return std::to_string(kTrials) + " trials, 0 disagreements; 100 chains, " + std::to_string(blocks) +
           " block verdicts identical";
}

// ===========================================================================
// 6. Network outcomes
// ===========================================================================

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string network_outcomes(Check& c)
{
    const std::pair<const char*, RogueLeaf> scenarios[] = {
        {"rogue_no_erasure.json", RogueLeaf::DiscardedEverywhere},
        {"rogue_minority.json", RogueLeaf::AcceptedByErasingMinorityThenReorged},
        {"rogue_majority.json", RogueLeaf::InLongestChain},
    };
    std::string out;
    for (const auto& [name, expected] : scenarios) {
        const ScenarioConfig cfg = ScenarioConfig::parse(read_text(std::string(FPLE_SCENARIO_DIR) + "/" + name));
        std::string json[2], text[2], log[2];
        RogueLeaf leaf{};
        for (int run = 0; run < 2; ++run) {
            Simulation sim(cfg);
            sim.run();
            const SimReport report = sim.finish();
            json[run] = report.to_json();
            text[run] = report.to_text();
            for (const NodeEvent& e : sim.log()) log[run] += e.to_line() + "\n";
            c.expect(report.rogue.size() == 1, std::string(name) + ": expected one rogue spend");
            if (!report.rogue.empty()) leaf = report.rogue[0].leaf;
        }
        c.expect(leaf == expected, std::string(name) + ": leaf " + std::string(rogue_leaf_name(leaf)));
        c.expect(json[0] == json[1] && text[0] == text[1] && log[0] == log[1],
                 std::string(name) + ": reports differ between runs");
        out += (out.empty() ? "" : ", ") + std::string(rogue_leaf_name(leaf));
    }
    return out;
}

// ===========================================================================
// 7. Pruning and erasure neutrality
// ===========================================================================

std::string pruning_neutrality(Check& c)
{
    size_t verdicts = 0;
    for (uint64_t seed = 0; seed < 25; ++seed) {
        ChainGenerator gen(7000 + seed);
        const std::vector<Block> chain = random_chain(
            gen, {.blocks = 300, .max_txs = 3, .fork_rate = 0.15, .max_fork_depth = 3, .invalid_rate = 0.05});

        NodeConfig archival_cfg;
        archival_cfg.maturity = 10;
        NodeConfig pruned_cfg = archival_cfg;
        pruned_cfg.prune = true;
        pruned_cfg.raw_policy = RawBlockPolicy::Prune;
        NodeConfig rewrite_cfg = archival_cfg;
        rewrite_cfg.raw_policy = RawBlockPolicy::RewriteInPlace;

        TempDir dir;
        Node archival(0, archival_cfg, gen.genesis());
        Node pruned(1, pruned_cfg, gen.genesis());
        Node rewrite = Node::open(dir.path(), rewrite_cfg, gen.genesis());
        rewrite.set_erase_targets({});
        const Hash genesis_txid = compute_txid(gen.genesis().transactions[0]);

        for (size_t i = 0; i < chain.size(); ++i) {
            const std::string a = archival.handle_block(chain[i]).to_string();
            const std::string p = pruned.handle_block(chain[i]).to_string();
            const std::string r = rewrite.handle_block(chain[i]).to_string();
            ++verdicts;
            c.expect(a == p && a == r, "seed " + std::to_string(seed) + " block " + std::to_string(i) + ": " + a +
                                           " / " + p + " / " + r);
            if (i == chain.size() / 2) {
                const ErasureReceipt receipt = rewrite.erase(genesis_txid, {}, ErasureMode::anyone_can_spend());
                c.expect(receipt.erased.empty() && receipt.utxo_rewrites == 0, "empty erasure changed state");
            }
        }
        c.expect(archival.tip() == pruned.tip() && archival.tip() == rewrite.tip(),
                 "seed " + std::to_string(seed) + ": tips differ");
        c.expect(archival.utxo() == pruned.utxo() && archival.utxo() == rewrite.utxo(),
                 "seed " + std::to_string(seed) + ": UTXO sets differ");
        c.expect(!pruned.block_store().has_body(pruned.active_chain()[1]),
                 "seed " + std::to_string(seed) + ": nothing pruned");
    }
    return "25 chains x 300 blocks, " + std::to_string(verdicts) + " verdict triples identical";
}

// ===========================================================================
// 8. Empty-erasure differential against the reference validator
// ===========================================================================

std::string expected_kind(const ReferenceNode& ref, const Hash& hash, bool valid, const Hash& old_tip,
                          uint32_t old_height, uint32_t& depth)
{
    depth = 0;
    if (!valid) return "rejected";
    if (ref.tip() == old_tip) return "side";
    if (ref.tip() == hash && ref.parent_of(hash) == old_tip) return "extended";
    depth = old_height - ref.fork_height(old_tip, ref.tip());
    return "reorged";
}

std::string empty_erasure_differential(Check& c)
{
    size_t blocks = 0;
    size_t reorgs = 0;
    size_t rejected = 0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        ChainGenerator gen(8000 + seed);
        const std::vector<Block> chain = random_chain(
            gen, {.blocks = 150, .max_txs = 3, .fork_rate = 0.25, .max_fork_depth = 4, .invalid_rate = 0.08});
        Node node(0, {}, gen.genesis());
        ReferenceNode ref(gen.genesis(), 0);
        const std::string tag = "seed " + std::to_string(seed);
        for (const Block& b : chain) {
            const Hash hash = compute_block_hash(b.header);
            const Hash old_tip = ref.tip();
            const uint32_t old_height = ref.height();
            const BlockOutcome o = node.handle_block(b);
            const std::optional<bool> valid = ref.submit(b);
            ++blocks;
            if (!valid) {
                c.expect(false, tag + ": reference saw an orphan");
                continue;
            }
            uint32_t depth = 0;
            const std::string want = expected_kind(ref, hash, *valid, old_tip, old_height, depth);
            c.expect(kind_name(o) == want, tag + ": " + o.to_string() + " vs " + want + " " + ref.reason(hash));
            if (o.kind == BlockOutcome::Kind::Reorged) {
                ++reorgs;
                c.expect(o.depth == depth, tag + ": reorg depth " + std::to_string(o.depth) + " vs " +
                                               std::to_string(depth));
            }
            rejected += o.kind == BlockOutcome::Kind::Rejected;
            c.expect(node.tip() == ref.tip(), tag + ": tips differ");
        }
        c.expect(fple::testing::to_coin_map(node.utxo()) == ref.utxo(), tag + ": UTXO sets differ");
        c.expect(node.erasure_db().size() == 0, tag + ": erasure db not empty");
    }
    return "50 chains, " + std::to_string(blocks) + " blocks (" + std::to_string(reorgs) + " reorgs, " +
           std::to_string(rejected) + " rejected), verdicts, tips and UTXO sets identical";
}

} // namespace

int main()
{
    std::vector<Result> results;
    results.push_back(run_criterion(1, "incoming-data decision leaves", 1.0, decision_leaves));
    results.push_back(run_criterion(2, "stay in sync through erased spends", 30.0, stay_in_sync));
    results.push_back(run_criterion(3, "post-erasure checklist", 10.0, checklist));
    results.push_back(run_criterion(5, "commitment-mode oracle", 60.0, commitment_oracle));
    results.push_back(run_criterion(4, "irrecoverability byte scan", std::nullopt, irrecoverability));
    results.push_back(run_criterion(6, "network rogue-spend outcomes", 60.0, network_outcomes));
    results.push_back(run_criterion(7, "pruning and erasure neutrality", 120.0, pruning_neutrality));
    results.push_back(run_criterion(8, "empty-erasure differential", std::nullopt, empty_erasure_differential));
    std::sort(results.begin(), results.end(), [](const Result& a, const Result& b) { return a.id < b.id; });

    bool all = true;
    for (const Result& r : results) {
        std::string limit = r.limit ? " < " + std::to_string(static_cast<int>(*r.limit)) + " s" : "";
        std::printf("%s %d %s (%.2f s%s): %s\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                    limit.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
