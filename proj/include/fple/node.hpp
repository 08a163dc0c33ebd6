// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_NODE_HPP
#define FPLE_NODE_HPP

#include "fple/block_store.hpp"
#include "fple/erasure.hpp"
#include "fple/erasure_db.hpp"
#include "fple/utxo.hpp"
#include "fple/validation.hpp"

#include <deque>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace fple {

struct NodeConfig {
    uint32_t maturity = 300;
    unsigned difficulty = 0;
    bool is_miner = false;
    bool rogue = false; // includes forced transactions in its blocks without validating them
    uint32_t confirmations_required = 6;
    bool prune = false; // body-prune blocks buried deeper than `maturity`
    RawBlockPolicy raw_policy = RawBlockPolicy::RewriteInPlace;
    bool parallel_scripts = false;
    size_t orphan_limit = 64;
    Script payout = Script{{op(Opcode::True)}}; // coinbase output script when mining
};

/// One line of the node event log: (step, node_id, event, subject_hash, verdict).
struct NodeEvent {
    uint64_t step = 0;
    uint32_t node_id = 0;
    std::string event;
    Hash subject;
    std::string verdict;

    std::string to_line() const;
    bool operator==(const NodeEvent&) const = default;
};

struct Announcement {
    enum class Kind { Tx, Block };
    Kind kind = Kind::Tx;
    Hash hash;

    bool operator==(const Announcement&) const = default;
};

struct TxOutcome {
    enum class Kind { AcceptedToMempool, DroppedErased, DroppedDependsOnErased, DroppedInvalid };
    Kind kind = Kind::DroppedInvalid;
    std::string reason;

    std::string to_string() const;
};

struct BlockOutcome {
    enum class Kind { Extended, Reorged, StoredSideChain, Rejected, Orphaned, Duplicate };
    Kind kind = Kind::Rejected;
    uint32_t depth = 0; // Reorged only
    std::string reason; // Rejected only

    bool accepted() const { return kind == Kind::Extended || kind == Kind::Reorged || kind == Kind::StoredSideChain; }
    std::string to_string() const;
};

/// block hash -> txid -> (indices, mode): what ValidateThenErase erases.
struct EraseTarget {
    std::set<uint32_t> indices;
    ErasureMode mode;
};
using EraseTargets = std::map<Hash, std::map<Hash, EraseTarget>>;

class Node {
public:
    Node(uint32_t node_id, NodeConfig config, const Block& genesis);

    /// Opens (or initializes, when `genesis` is given) a node persisted in
    /// data_dir: blocks/, chainstate/, erasure.db.
    static Node open(const std::filesystem::path& data_dir, NodeConfig config,
                     const std::optional<Block>& genesis = std::nullopt);
    /// Writes chainstate, block index and erasure db. No-op for memory nodes.
    void flush() const;
    std::vector<std::filesystem::path> persisted_files() const;

    // --- message handling ---------------------------------------------------
    TxOutcome handle_transaction(const Transaction& tx);
    BlockOutcome handle_block(const Block& block);
    bool should_request(const Announcement& a) const;

    // --- serving / queries --------------------------------------------------
    /// The stored block, with redacted transactions in place of erased ones.
    std::optional<Block> serve_block(const Hash& block_hash) const;
    /// Mempool or stored transaction; never returns a transaction that has an
    /// erasure record.
    std::optional<Transaction> get_transaction(const Hash& txid) const;
    std::optional<Transaction> get_redacted(const Hash& txid) const;

    // --- erasure ------------------------------------------------------------
    ErasureReceipt erase(const Hash& txid, const std::set<uint32_t>& indices, const ErasureMode& mode);
    ImportReport import_records(std::string_view file, ImportPolicy policy);
    /// Records imported under ValidateAgainstChain whose block is still unknown.
    std::vector<Hash> unmatched_imports() const;
    void set_erase_targets(EraseTargets targets) { erase_targets_ = std::move(targets); }
    /// Targets whose block has not been stored yet.
    const EraseTargets& erase_targets() const { return erase_targets_; }

    // --- mining -------------------------------------------------------------
    /// Builds a block on the active tip from the mempool (plus forced
    /// transactions for rogue nodes), processes it locally and returns it.
    Block mine(uint64_t time);
    void force_include(Transaction tx) { forced_.push_back(std::move(tx)); }

    // --- state --------------------------------------------------------------
    uint32_t id() const { return id_; }
    const NodeConfig& config() const { return config_; }
    const Hash& tip() const { return active_.back(); }
    uint32_t height() const { return static_cast<uint32_t>(active_.size() - 1); }
    uint64_t tip_work() const;
    std::span<const Hash> active_chain() const { return active_; }
    bool on_active_chain(const Hash& block_hash) const;
    const UtxoSet& utxo() const { return utxo_; }
    const ErasureDb& erasure_db() const { return erasure_; }
    const BlockStore& block_store() const { return store_; }
    bool in_mempool(const Hash& txid) const { return mempool_.count(txid) != 0; }
    std::vector<Transaction> mempool() const;
    /// Original txids of the transactions in a stored or pruned-but-indexed block.
    const std::vector<Hash>* block_txids(const Hash& block_hash) const;
    /// true once validated, false once rejected, nullopt if unknown or not yet validated.
    std::optional<bool> block_valid(const Hash& block_hash) const;
    /// Whether a block is buried at least confirmations_required deep in the active chain.
    bool is_confirmed(const Hash& block_hash) const;

    void set_clock(uint64_t step) { clock_ = step; }
    std::vector<NodeEvent> drain_events() { return std::exchange(events_, {}); }
    std::vector<Announcement> drain_outbox() { return std::exchange(outbox_, {}); }

private:
    enum class Status { Stored, Valid, Invalid };

    struct Entry {
        BlockHeader header;
        Hash parent;
        uint32_t height = 0;
        uint64_t work = 0;
        uint64_t seq = 0;
        Status status = Status::Stored;
        std::vector<Hash> txids; // original identifiers
        std::vector<bool> redacted;
        std::string invalid_reason;
    };

    struct MempoolEntry {
        Transaction tx;
        uint64_t seq = 0;
    };

    Node(uint32_t node_id, NodeConfig config);
    void init_genesis(const Block& genesis);

    BlockOutcome accept_block(const Block& block, const Hash& hash);
    void activate_best_chain();
    std::optional<Hash> best_candidate() const;
    bool connectable(const Hash& hash) const;
    void disconnect_tip(std::vector<Transaction>& returned);
    std::optional<std::string> connect(const Hash& hash);
    void mark_invalid(const Hash& hash, const std::string& reason);
    void process_orphans(const Hash& parent);
    void run_erase_targets(const Hash& block_hash);
    void refresh_redacted(const Hash& block_hash);

    void mempool_add(const Hash& txid, Transaction tx);
    void mempool_remove(const Hash& txid);
    void revalidate_mempool();
    TxOutcome check_unconfirmed(const Transaction& tx, const Hash& txid) const;

    void log(std::string event, const Hash& subject, std::string verdict);
    ChainStores stores();
    ValidationOptions validation_options() const;

    uint32_t id_ = 0;
    NodeConfig config_;
    std::optional<std::filesystem::path> data_dir_;
    uint64_t clock_ = 0;
    uint64_t seq_ = 0;

    std::unordered_map<Hash, Entry> headers_;
    std::vector<Hash> active_;
    std::unordered_map<Hash, size_t> active_pos_;
    UtxoSet utxo_;
    BlockStore store_;
    ErasureDb erasure_;
    std::vector<Hash> pending_imports_;

    std::map<Hash, MempoolEntry> mempool_;
    std::map<OutPoint, Hash> mempool_spends_;
    std::vector<Transaction> forced_;

    std::deque<std::pair<Hash, Block>> orphans_; // (parent hash, block)
    EraseTargets erase_targets_;

    std::vector<NodeEvent> events_;
    std::vector<Announcement> outbox_;
};

// ===========================================================================
// Bootstrapping a fresh node from a block source
// ===========================================================================

struct ValidateThenErase {
    EraseTargets targets;
};
struct PreSeeded {
    std::string records;
    ImportPolicy policy = ImportPolicy::TrustSource;
};
using BootstrapMode = std::variant<ValidateThenErase, PreSeeded>;

struct BootstrapResult {
    Hash tip;
    uint32_t height = 0;
    size_t blocks_processed = 0;
    std::optional<uint32_t> failed_height;
    std::string failure;
    ImportReport import;
    std::vector<Hash> unmatched_records;

    bool ok() const { return !failed_height; }
};

/// Feeds `blocks` (genesis excluded) to the node in order, stopping at the
/// first rejected block.
BootstrapResult bootstrap(Node& node, std::span<const Block> blocks, const BootstrapMode& mode);

} // namespace fple

#endif // FPLE_NODE_HPP
