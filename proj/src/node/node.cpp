// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/node.hpp"

#include "fple/error.hpp"
#include "fple/pow.hpp"

#include <algorithm>
#include <fstream>

namespace fple {

namespace fs = std::filesystem;

namespace {

const char* const kUtxoFile = "utxo.dat";
const char* const kTipFile = "tip.dat";
const char* const kErasureFile = "erasure.db";

Bytes read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::StoreError, "cannot read " + path.string());
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, ByteSpan data)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        if (!out) throw Error(Errc::StoreError, "cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace

// ===========================================================================
// Outcomes and events
// ===========================================================================

std::string NodeEvent::to_line() const
{
    return std::to_string(step) + "\t" + std::to_string(node_id) + "\t" + event + "\t" + subject.to_hex() + "\t" +
           verdict;
}

std::string TxOutcome::to_string() const
{
    switch (kind) {
    case Kind::AcceptedToMempool: return "accepted";
    case Kind::DroppedErased: return "dropped-erased";
    case Kind::DroppedDependsOnErased: return "dropped-depends-on-erased";
    case Kind::DroppedInvalid: return "dropped-invalid: " + reason;
    }
    return "?";
}

std::string BlockOutcome::to_string() const
{
    switch (kind) {
    case Kind::Extended: return "extended";
    case Kind::Reorged: return "reorged depth=" + std::to_string(depth);
    case Kind::StoredSideChain: return "stored-side-chain";
    case Kind::Rejected: return "rejected: " + reason;
    case Kind::Orphaned: return "orphaned";
    case Kind::Duplicate: return "duplicate";
    }
    return "?";
}

// ===========================================================================
// Construction and persistence
// ===========================================================================

Node::Node(uint32_t node_id, NodeConfig config) : id_(node_id), config_(std::move(config))
{
    if (config_.maturity < 1) throw Error(Errc::ConfigError, "maturity must be at least 1");
    if (config_.difficulty > kMaxDifficulty) throw Error(Errc::ConfigError, "difficulty too high");
}

Node::Node(uint32_t node_id, NodeConfig config, const Block& genesis) : Node(node_id, std::move(config))
{
    init_genesis(genesis);
}

void Node::init_genesis(const Block& genesis)
{
    if (genesis.transactions.empty() || !genesis.transactions[0].is_coinbase()) {
        throw Error(Errc::ConfigError, "genesis needs a coinbase");
    }
    const Hash hash = compute_block_hash(genesis.header);
    Entry e;
    e.header = genesis.header;
    e.height = 0;
    e.work = block_work(config_.difficulty);
    e.seq = seq_++;
    e.status = Status::Valid;
    e.txids = compute_txids(genesis);
    e.redacted.assign(e.txids.size(), false);
    store_.put(hash, genesis, 0);
    store_.put_undo(hash, apply_block(utxo_, genesis, 0, e.txids));
    headers_.emplace(hash, std::move(e));
    active_.push_back(hash);
    active_pos_[hash] = 0;
}

Node Node::open(const fs::path& data_dir, NodeConfig config, const std::optional<Block>& genesis)
{
    Node node(0, std::move(config));
    node.data_dir_ = data_dir;
    fs::create_directories(data_dir / "chainstate");
    node.store_ = BlockStore::open(data_dir / "blocks");
    if (fs::exists(data_dir / kErasureFile)) node.erasure_ = ErasureDb::load(data_dir / kErasureFile);

    const fs::path tip_path = data_dir / "chainstate" / kTipFile;
    if (!fs::exists(tip_path)) {
        if (!genesis) throw Error(Errc::StoreError, "no chainstate in " + data_dir.string());
        node.init_genesis(*genesis);
        node.flush();
        return node;
    }

    Bytes tip_bytes = read_file(tip_path);
    const Hash tip = Hash::from_hex(std::string(tip_bytes.begin(), tip_bytes.end()));
    node.utxo_ = UtxoSet::from_snapshot(read_file(data_dir / "chainstate" / kUtxoFile));

    std::vector<std::pair<uint32_t, Hash>> by_height;
    for (const auto& [hash, info] : node.store_.index()) by_height.emplace_back(info.height, hash);
    std::sort(by_height.begin(), by_height.end());
    for (const auto& [height, hash] : by_height) {
        const StoredBlockInfo& info = *node.store_.info(hash);
        Entry e;
        e.header = info.header;
        e.parent = info.header.prev_block_hash;
        e.height = height;
        e.work = (uint64_t{height} + 1) * block_work(node.config_.difficulty);
        e.seq = node.seq_++;
        if (std::optional<Block> body = node.store_.read(hash)) {
            for (const Transaction& tx : body->transactions) {
                const Hash id = compute_txid(tx);
                std::optional<Hash> original = node.erasure_.original_of(id);
                e.txids.push_back(original.value_or(id));
                e.redacted.push_back(original.has_value());
            }
        }
        node.headers_.emplace(hash, std::move(e));
    }
    if (!node.headers_.count(tip)) throw Error(Errc::StoreError, "tip not in block index");
    for (Hash h = tip;;) {
        Entry& e = node.headers_.at(h);
        e.status = Status::Valid;
        node.active_.push_back(h);
        if (e.height == 0) break;
        h = e.header.prev_block_hash;
        if (!node.headers_.count(h)) throw Error(Errc::StoreError, "broken header chain");
    }
    std::reverse(node.active_.begin(), node.active_.end());
    for (size_t i = 0; i < node.active_.size(); ++i) node.active_pos_[node.active_[i]] = i;
    return node;
}

void Node::flush() const
{
    if (!data_dir_) return;
    store_.flush();
    write_file(*data_dir_ / "chainstate" / kUtxoFile, utxo_.snapshot());
    const std::string tip_hex = tip().to_hex();
    write_file(*data_dir_ / "chainstate" / kTipFile, as_bytes(tip_hex));
    erasure_.save(*data_dir_ / kErasureFile);
}

std::vector<fs::path> Node::persisted_files() const
{
    if (!data_dir_) return {};
    std::vector<fs::path> files = store_.files();
    for (const fs::path& p : {*data_dir_ / "chainstate" / kUtxoFile, *data_dir_ / "chainstate" / kTipFile,
                              *data_dir_ / fs::path(kErasureFile)}) {
        if (fs::exists(p)) files.push_back(p);
    }
    return files;
}

// ===========================================================================
// Queries
// ===========================================================================

uint64_t Node::tip_work() const { return headers_.at(tip()).work; }

bool Node::on_active_chain(const Hash& block_hash) const { return active_pos_.count(block_hash) != 0; }

std::vector<Transaction> Node::mempool() const
{
    std::vector<const MempoolEntry*> order;
    for (const auto& [txid, entry] : mempool_) order.push_back(&entry);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->seq < b->seq; });
    std::vector<Transaction> out;
    for (const MempoolEntry* e : order) out.push_back(e->tx);
    return out;
}

const std::vector<Hash>* Node::block_txids(const Hash& block_hash) const
{
    auto it = headers_.find(block_hash);
    return it == headers_.end() ? nullptr : &it->second.txids;
}

std::optional<bool> Node::block_valid(const Hash& block_hash) const
{
    auto it = headers_.find(block_hash);
    if (it == headers_.end() || it->second.status == Status::Stored) return std::nullopt;
    return it->second.status == Status::Valid;
}

bool Node::is_confirmed(const Hash& block_hash) const
{
    auto it = active_pos_.find(block_hash);
    return it != active_pos_.end() && active_.size() - it->second >= config_.confirmations_required;
}

bool Node::should_request(const Announcement& a) const
{
    if (a.kind == Announcement::Kind::Block) return !headers_.count(a.hash);
    if (erasure_.find(a.hash) || erasure_.original_of(a.hash)) return false;
    return !in_mempool(a.hash);
}

std::optional<Block> Node::serve_block(const Hash& block_hash) const
{
    std::optional<Block> block = store_.read(block_hash);
    if (!block) return std::nullopt;
    for (Transaction& tx : block->transactions) {
        const ErasureRecord* r = erasure_.find(compute_txid(tx));
        if (!r) continue;
        if (!r->redacted_tx) return std::nullopt;
        tx = *r->redacted_tx;
    }
    return block;
}

std::optional<Transaction> Node::get_transaction(const Hash& txid) const
{
    if (erasure_.find(txid) || erasure_.original_of(txid)) return std::nullopt;
    if (auto it = mempool_.find(txid); it != mempool_.end()) return it->second.tx;
    for (const Hash& hash : active_) {
        const Entry& e = headers_.at(hash);
        auto pos = std::find(e.txids.begin(), e.txids.end(), txid);
        if (pos == e.txids.end()) continue;
        const size_t i = static_cast<size_t>(pos - e.txids.begin());
        if (e.redacted[i]) return std::nullopt;
        std::optional<Block> block = store_.read(hash);
        if (!block) return std::nullopt;
        return block->transactions[i];
    }
    return std::nullopt;
}

std::optional<Transaction> Node::get_redacted(const Hash& txid) const
{
    const ErasureRecord* r = erasure_.find(txid);
    if (!r) return std::nullopt;
    return r->redacted_tx;
}

// ===========================================================================
// Transactions
// ===========================================================================

void Node::log(std::string event, const Hash& subject, std::string verdict)
{
    events_.push_back({clock_, id_, std::move(event), subject, std::move(verdict)});
}

ValidationOptions Node::validation_options() const
{
    ValidationOptions opts;
    opts.parallel_scripts = config_.parallel_scripts;
    return opts;
}

TxOutcome Node::check_unconfirmed(const Transaction& tx, const Hash& txid) const
{
    if (erasure_.find(txid) || erasure_.original_of(txid)) return {TxOutcome::Kind::DroppedErased, {}};
    if (in_mempool(txid)) return {TxOutcome::Kind::DroppedInvalid, "txn-already-in-mempool"};
    TxValidity v = validate_transaction(tx, utxo_, erasure_, height() + 1, validation_options());
    if (v.depends_on_erased()) return {TxOutcome::Kind::DroppedDependsOnErased, {}};
    if (v.is_invalid()) return {TxOutcome::Kind::DroppedInvalid, v.reason};
    for (const TxInput& in : tx.inputs) {
        if (mempool_spends_.count(in.prevout)) return {TxOutcome::Kind::DroppedInvalid, "txn-mempool-conflict"};
    }
    return {TxOutcome::Kind::AcceptedToMempool, {}};
}

TxOutcome Node::handle_transaction(const Transaction& tx)
{
    const Hash txid = compute_txid(tx);
    TxOutcome outcome = check_unconfirmed(tx, txid);
    if (outcome.kind == TxOutcome::Kind::AcceptedToMempool) {
        mempool_add(txid, tx);
        outbox_.push_back({Announcement::Kind::Tx, txid});
    }
    log("tx", txid, outcome.to_string());
    return outcome;
}

void Node::mempool_add(const Hash& txid, Transaction tx)
{
    for (const TxInput& in : tx.inputs) mempool_spends_[in.prevout] = txid;
    mempool_.emplace(txid, MempoolEntry{std::move(tx), seq_++});
}

void Node::mempool_remove(const Hash& txid)
{
    auto it = mempool_.find(txid);
    if (it == mempool_.end()) return;
    for (const TxInput& in : it->second.tx.inputs) mempool_spends_.erase(in.prevout);
    mempool_.erase(it);
}

// Re-checks every mempool entry against the current tip, in arrival order,
// and drops whatever no longer passes (spent inputs, erased dependencies).
void Node::revalidate_mempool()
{
    std::vector<std::pair<uint64_t, Hash>> order;
    for (const auto& [txid, entry] : mempool_) order.emplace_back(entry.seq, txid);
    std::sort(order.begin(), order.end());
    std::map<Hash, MempoolEntry> old = std::move(mempool_);
    mempool_.clear();
    mempool_spends_.clear();
    for (const auto& [seq, txid] : order) {
        MempoolEntry& entry = old.at(txid);
        TxOutcome outcome = check_unconfirmed(entry.tx, txid);
        if (outcome.kind != TxOutcome::Kind::AcceptedToMempool) {
            log("mempool-evict", txid, outcome.to_string());
            continue;
        }
        for (const TxInput& in : entry.tx.inputs) mempool_spends_[in.prevout] = txid;
        mempool_.emplace(txid, std::move(entry));
    }
}

// ===========================================================================
// Blocks
// ===========================================================================

BlockOutcome Node::handle_block(const Block& block)
{
    const Hash hash = compute_block_hash(block.header);
    BlockOutcome outcome;
    if (auto it = headers_.find(hash); it != headers_.end()) {
        outcome = it->second.status == Status::Invalid
                      ? BlockOutcome{BlockOutcome::Kind::Rejected, 0, "previously rejected"}
                      : BlockOutcome{BlockOutcome::Kind::Duplicate, 0, {}};
    } else if (!headers_.count(block.header.prev_block_hash)) {
        const bool buffered = std::any_of(orphans_.begin(), orphans_.end(), [&](const auto& o) {
            return compute_block_hash(o.second.header) == hash;
        });
        if (!buffered) {
            orphans_.emplace_back(block.header.prev_block_hash, block);
            if (orphans_.size() > config_.orphan_limit) orphans_.pop_front();
        }
        outcome = {BlockOutcome::Kind::Orphaned, 0, {}};
    } else {
        outcome = accept_block(block, hash);
    }
    log("block", hash, outcome.to_string());
    if (outcome.accepted()) process_orphans(hash);
    return outcome;
}

void Node::process_orphans(const Hash& parent)
{
    std::vector<Hash> work{parent};
    while (!work.empty()) {
        const Hash p = work.back();
        work.pop_back();
        for (auto it = orphans_.begin(); it != orphans_.end();) {
            if (it->first != p) {
                ++it;
                continue;
            }
            Block child = std::move(it->second);
            it = orphans_.erase(it);
            const Hash h = compute_block_hash(child.header);
            if (headers_.count(h)) continue;
            BlockOutcome o = accept_block(child, h);
            log("block", h, o.to_string());
            if (o.accepted()) work.push_back(h);
        }
    }
}

BlockOutcome Node::accept_block(const Block& received, const Hash& hash)
{
    const Entry& parent = headers_.at(received.header.prev_block_hash);
    const uint32_t height = parent.height + 1;

    // Key outputs under the original txids and make sure no erased original
    // reaches the block store.
    Block block = received;
    std::vector<Hash> txids;
    std::vector<bool> redacted;
    for (Transaction& tx : block.transactions) {
        const Hash id = compute_txid(tx);
        if (std::optional<Hash> original = erasure_.original_of(id)) {
            txids.push_back(*original);
            redacted.push_back(true);
        } else if (const ErasureRecord* r = erasure_.find(id)) {
            Transaction replacement =
                r->redacted_tx ? *r->redacted_tx : redact_transaction(tx, r->erased_indices, r->mode).redacted;
            if (!r->redacted_tx) {
                ErasureRecord filled = *r;
                filled.redacted_tx = replacement;
                erasure_.replace(std::move(filled));
            }
            tx = std::move(replacement);
            txids.push_back(id);
            redacted.push_back(true);
        } else {
            txids.push_back(id);
            redacted.push_back(false);
        }
    }

    BlockValidity structure = check_block_structure(block, txids, height, config_.difficulty);
    if (!structure.valid()) return {BlockOutcome::Kind::Rejected, 0, structure.to_string()};

    Entry e;
    e.header = block.header;
    e.parent = block.header.prev_block_hash;
    e.height = height;
    e.work = parent.work + block_work(config_.difficulty);
    e.seq = seq_++;
    e.status = parent.status == Status::Invalid ? Status::Invalid : Status::Stored;
    e.txids = std::move(txids);
    e.redacted = std::move(redacted);
    const bool parent_invalid = e.status == Status::Invalid;
    headers_.emplace(hash, std::move(e));
    if (parent_invalid) {
        store_.put_header(hash, block.header, height);
        return {BlockOutcome::Kind::Rejected, 0, "descends from an invalid block"};
    }
    store_.put(hash, block, height);

    const Hash old_tip = tip();
    const uint32_t old_height = this->height();
    activate_best_chain();
    run_erase_targets(hash);

    const Entry& self = headers_.at(hash);
    if (self.status == Status::Invalid) return {BlockOutcome::Kind::Rejected, 0, self.invalid_reason};
    if (!on_active_chain(hash)) return {BlockOutcome::Kind::StoredSideChain, 0, {}};
    outbox_.push_back({Announcement::Kind::Block, hash});
    uint32_t depth = 0;
    if (!on_active_chain(old_tip)) {
        Hash h = old_tip;
        while (!on_active_chain(h)) h = headers_.at(h).parent;
        depth = old_height - headers_.at(h).height;
    }
    if (depth == 0) return {BlockOutcome::Kind::Extended, 0, {}};
    log("reorg", hash, "depth=" + std::to_string(depth));
    return {BlockOutcome::Kind::Reorged, depth, {}};
}

// Every block from the fork point up to `hash` has a body, and every active
// block above the fork point can be undone.
bool Node::connectable(const Hash& hash) const
{
    Hash h = hash;
    while (!on_active_chain(h)) {
        const Entry& e = headers_.at(h);
        if (e.status == Status::Invalid || !store_.has_body(h)) return false;
        h = e.parent;
    }
    for (size_t i = active_pos_.at(h) + 1; i < active_.size(); ++i) {
        const StoredBlockInfo* info = store_.info(active_[i]);
        if (!info || !info->undo) return false;
    }
    return true;
}

std::optional<Hash> Node::best_candidate() const
{
    const Entry& current = headers_.at(tip());
    std::optional<Hash> best;
    const Entry* best_entry = nullptr;
    for (const auto& [hash, e] : headers_) {
        if (e.status == Status::Invalid || e.work <= current.work) continue;
        if (best_entry && (e.work < best_entry->work || (e.work == best_entry->work && e.seq > best_entry->seq))) {
            continue;
        }
        if (!connectable(hash)) continue;
        best = hash;
        best_entry = &e;
    }
    return best;
}

void Node::activate_best_chain()
{
    std::vector<Transaction> returned;
    bool changed = false;
    while (std::optional<Hash> target = best_candidate()) {
        std::vector<Hash> path;
        for (Hash h = *target; !on_active_chain(h); h = headers_.at(h).parent) path.push_back(h);
        std::reverse(path.begin(), path.end());
        const Hash fork = headers_.at(path.front()).parent;
        while (tip() != fork) disconnect_tip(returned);
        changed = true;
        for (const Hash& h : path) {
            if (std::optional<std::string> failure = connect(h)) {
                mark_invalid(h, *failure);
                break;
            }
        }
    }
    if (!changed) return;

    revalidate_mempool();
    for (const Transaction& tx : returned) {
        const Hash txid = compute_txid(tx);
        if (erasure_.find(txid) || erasure_.original_of(txid)) {
            log("tx", txid, TxOutcome{TxOutcome::Kind::DroppedErased, {}}.to_string());
            continue;
        }
        handle_transaction(tx);
    }
    if (config_.prune) prune_raw_blocks(store_, height(), config_.maturity);
}

std::optional<std::string> Node::connect(const Hash& hash)
{
    Entry& e = headers_.at(hash);
    std::optional<Block> block = store_.read(hash);
    if (!block) throw Error(Errc::StoreError, "missing body for " + hash.to_hex());

    std::vector<TxValidity> verdicts;
    if (e.status != Status::Valid) {
        BlockContext ctx{e.parent, e.height, config_.difficulty, e.txids, e.redacted};
        BlockValidity v = validate_block(*block, ctx, utxo_, erasure_, validation_options());
        if (!v.valid()) return v.to_string();
        verdicts = std::move(v.tx_verdicts);
        e.status = Status::Valid;
    }
    store_.put_undo(hash, apply_block(utxo_, *block, e.height, e.txids));
    active_pos_[hash] = active_.size();
    active_.push_back(hash);

    log("connect-block", hash, "height=" + std::to_string(e.height));
    for (size_t i = 1; i < block->transactions.size(); ++i) {
        std::string verdict = e.redacted[i] ? "redacted" : i < verdicts.size() ? verdicts[i].to_string() : "cached";
        log("connect-tx", e.txids[i], std::move(verdict));
        mempool_remove(e.txids[i]);
        for (const TxInput& in : block->transactions[i].inputs) {
            if (auto it = mempool_spends_.find(in.prevout); it != mempool_spends_.end()) mempool_remove(it->second);
        }
    }
    return std::nullopt;
}

void Node::disconnect_tip(std::vector<Transaction>& returned)
{
    const Hash hash = tip();
    std::optional<UndoData> undo = store_.read_undo(hash);
    if (!undo) throw Error(Errc::StoreError, "missing undo data for " + hash.to_hex());
    const Entry& e = headers_.at(hash);
    std::optional<Block> block = store_.read(hash);
    undo_block(utxo_, *undo);
    active_pos_.erase(hash);
    active_.pop_back();
    log("disconnect-block", hash, "height=" + std::to_string(e.height));
    if (!block) return;
    for (size_t i = 1; i < block->transactions.size(); ++i) {
        log("disconnect-tx", e.txids[i], {});
        returned.push_back(block->transactions[i]);
    }
}

void Node::mark_invalid(const Hash& hash, const std::string& reason)
{
    std::vector<Hash> doomed{hash};
    for (const auto& [h, e] : headers_) {
        if (h == hash || e.height <= headers_.at(hash).height) continue;
        Hash a = e.parent;
        while (headers_.count(a) && headers_.at(a).height > headers_.at(hash).height) a = headers_.at(a).parent;
        if (a == hash) doomed.push_back(h);
    }
    for (const Hash& h : doomed) {
        Entry& e = headers_.at(h);
        e.status = Status::Invalid;
        e.invalid_reason = h == hash ? reason : "descends from an invalid block";
        store_.prune(h);
        log("invalid-block", h, e.invalid_reason);
    }
}

// ===========================================================================
// Erasure
// ===========================================================================

ChainStores Node::stores() { return ChainStores{store_, utxo_, erasure_, active_, config_.raw_policy}; }

void Node::refresh_redacted(const Hash& block_hash)
{
    auto it = headers_.find(block_hash);
    std::optional<Block> block = store_.read(block_hash);
    if (it == headers_.end() || !block) return;
    Entry& e = it->second;
    for (size_t i = 0; i < block->transactions.size() && i < e.txids.size(); ++i) {
        e.redacted[i] = compute_txid(block->transactions[i]) != e.txids[i];
    }
}

ErasureReceipt Node::erase(const Hash& txid, const std::set<uint32_t>& indices, const ErasureMode& mode)
{
    ChainStores s = stores();
    ErasureReceipt receipt = erase_outputs(s, txid, indices, mode);
    for (const Hash& h : receipt.blocks_rewritten) refresh_redacted(h);
    if (receipt.changed()) {
        mempool_remove(txid);
        revalidate_mempool();
    }
    log("erase", txid, "erased=" + std::to_string(receipt.erased.size()) +
                           " already=" + std::to_string(receipt.already_erased.size()));
    return receipt;
}

ImportReport Node::import_records(std::string_view file, ImportPolicy policy)
{
    ImportReport report = fple::import_records(erasure_, file, policy);
    pending_imports_.insert(pending_imports_.end(), report.pending_chain_check.begin(),
                            report.pending_chain_check.end());
    revalidate_mempool();
    log("import", Hash{}, "imported=" + std::to_string(report.imported) +
                              " conflicts=" + std::to_string(report.conflicts.size()));
    return report;
}

std::vector<Hash> Node::unmatched_imports() const
{
    return check_records_against_chain(erasure_, pending_imports_,
                                       [this](const Hash& h) { return headers_.count(h) != 0; });
}

void Node::run_erase_targets(const Hash& block_hash)
{
    auto it = erase_targets_.find(block_hash);
    if (it == erase_targets_.end()) return;
    const Entry& e = headers_.at(block_hash);
    if (e.status == Status::Invalid || !store_.has_body(block_hash)) return;
    std::map<Hash, EraseTarget> targets = std::move(it->second);
    erase_targets_.erase(it);
    for (const auto& [txid, target] : targets) erase(txid, target.indices, target.mode);
}

// ===========================================================================
// Mining
// ===========================================================================

Block Node::mine(uint64_t time)
{
    const uint32_t h = height() + 1;
    Bytes extra(4);
    for (int i = 0; i < 4; ++i) extra[i] = static_cast<uint8_t>(id_ >> (8 * i));
    std::vector<Transaction> txs{make_coinbase(h, {TxOutput{kBlockReward, config_.payout}}, extra)};

    UtxoOverlay view(utxo_);
    std::set<Hash> included;
    auto take = [&](const Transaction& tx) {
        const Hash txid = compute_txid(tx);
        if (!included.insert(txid).second) return;
        for (const TxInput& in : tx.inputs) view.spend(in.prevout);
        for (uint32_t n = 0; n < tx.outputs.size(); ++n) {
            if (!tx.outputs[n].script_pubkey.is_unspendable()) view.add(OutPoint{txid, n}, {tx.outputs[n], h, false});
        }
        txs.push_back(tx);
    };
    if (config_.rogue) {
        for (const Transaction& tx : forced_) take(tx);
    }
    forced_.clear();
    for (const Transaction& tx : mempool()) {
        if (validate_transaction(tx, view, erasure_, h, validation_options()).is_valid()) take(tx);
    }

    Block block = mine_block(tip(), std::move(txs), config_.difficulty, time);
    const Hash hash = compute_block_hash(block.header);
    log("mined", hash, "height=" + std::to_string(h));
    for (size_t i = 1; i < block.transactions.size(); ++i) {
        log("mined-tx", compute_txid(block.transactions[i]), "block=" + hash.to_hex());
    }
    handle_block(block);
    return block;
}

// ===========================================================================
// Bootstrap
// ===========================================================================

BootstrapResult bootstrap(Node& node, std::span<const Block> blocks, const BootstrapMode& mode)
{
    BootstrapResult result;
    if (const auto* pre = std::get_if<PreSeeded>(&mode)) {
        result.import = node.import_records(pre->records, pre->policy);
    } else {
        node.set_erase_targets(std::get<ValidateThenErase>(mode).targets);
    }
    for (size_t i = 0; i < blocks.size(); ++i) {
        BlockOutcome outcome;
        try {
            outcome = node.handle_block(blocks[i]);
        } catch (const Error& e) {
            outcome = {BlockOutcome::Kind::Rejected, 0, e.what()};
        }
        if (outcome.kind == BlockOutcome::Kind::Duplicate && i == 0 &&
            compute_block_hash(blocks[i].header) == node.active_chain().front()) {
            continue;
        }
        if (outcome.kind == BlockOutcome::Kind::Rejected || outcome.kind == BlockOutcome::Kind::Orphaned) {
            const bool includes_genesis = !blocks.empty() && blocks[0].header.prev_block_hash.is_zero();
            result.failed_height = static_cast<uint32_t>(includes_genesis ? i : i + 1);
            result.failure = outcome.to_string();
            break;
        }
        ++result.blocks_processed;
    }
    result.tip = node.tip();
    result.height = node.height();
    result.unmatched_records = node.unmatched_imports();
    return result;
}

} // namespace fple
