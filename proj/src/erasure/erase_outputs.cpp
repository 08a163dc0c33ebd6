// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/erasure.hpp"

#include "fple/error.hpp"

#include <algorithm>

namespace fple {

namespace {

struct Location {
    Hash block_hash;
    uint32_t height = 0;
    size_t tx_index = 0;
    Block block;
};

// Blocks whose body holds the transaction, either as the original or as a
// previously stored redaction. Active-chain blocks come first.
std::vector<Location> locate(const BlockStore& store, const ErasureDb& db, std::span<const Hash> active,
                             const Hash& txid)
{
    std::vector<Hash> order(active.begin(), active.end());
    for (const auto& [hash, info] : store.index()) {
        if (std::find(active.begin(), active.end(), hash) == active.end()) order.push_back(hash);
    }
    std::vector<Location> found;
    for (const Hash& hash : order) {
        std::optional<Block> block = store.read(hash);
        if (!block) continue;
        for (size_t i = 0; i < block->transactions.size(); ++i) {
            Hash id = compute_txid(block->transactions[i]);
            if (id != txid) id = db.original_of(id).value_or(id);
            if (id == txid) {
                found.push_back({hash, store.info(hash)->height, i, std::move(*block)});
                break;
            }
        }
    }
    return found;
}

Script redacted_script(const Script& original)
{
    return original.is_unspendable() ? Script{{op(Opcode::Return)}} : Script{{op(Opcode::True)}};
}

} // namespace

std::vector<std::string> ErasureReceipt::stores_touched() const
{
    std::vector<std::string> out;
    if (record_written) out.emplace_back("erasure.db");
    if (utxo_rewrites) out.emplace_back("chainstate");
    if (undo_rewrites || !blocks_rewritten.empty() || !blocks_pruned.empty()) out.emplace_back("blocks");
    return out;
}

ErasureReceipt erase_outputs(ChainStores& stores, const Hash& txid, const std::set<uint32_t>& indices,
                             const ErasureMode& mode)
{
    ErasureReceipt receipt;
    receipt.txid = txid;
    const ErasureRecord* existing = stores.db.find(txid);

    std::vector<Location> where = locate(stores.blocks, stores.db, stores.active_chain, txid);
    std::vector<OutPoint> unspent = stores.utxo.outpoints_of(txid);
    if (where.empty() && unspent.empty() && !existing) throw Error(Errc::UnknownTxid, txid.to_hex());

    std::optional<Transaction> base; // original, or the current redaction
    if (!where.empty()) {
        base = where.front().block.transactions[where.front().tx_index];
    } else if (existing && existing->redacted_tx) {
        base = existing->redacted_tx;
    }

    for (uint32_t i : indices) {
        bool in_range = base ? i < base->outputs.size()
                             : stores.utxo.find(OutPoint{txid, i}) != nullptr || (existing && existing->is_erased(i));
        if (!in_range) throw Error(Errc::IndexOutOfRange, "output " + std::to_string(i) + " of " + txid.to_hex());
    }

    std::set<uint32_t> fresh;
    for (uint32_t i : indices) {
        if (existing && existing->is_erased(i)) {
            receipt.already_erased.push_back(i);
        } else {
            fresh.insert(i);
        }
    }
    if (existing) receipt.block_hash = existing->block_hash;
    if (fresh.empty()) return receipt;

    if (existing && existing->mode != mode) {
        throw Error(Errc::ModeConflict, "record for " + txid.to_hex() + " uses " + existing->mode.to_string());
    }
    if (!existing && mode.is_commitment() && stores.db.salt_in_use(mode.salt)) {
        throw Error(Errc::SaltReuse, "salt already used by another record");
    }

    // Construct T'.
    ErasureRecord record = existing ? *existing : ErasureRecord{};
    record.original_txid = txid;
    record.mode = mode;
    if (base) {
        RedactionResult r = redact_transaction(*base, fresh, mode);
        record.redacted_tx = std::move(r.redacted);
        record.commitments.insert(r.commitments.begin(), r.commitments.end());
    } else {
        for (uint32_t i : fresh) {
            const UtxoEntry* e = stores.utxo.find(OutPoint{txid, i});
            if (mode.is_commitment()) {
                std::optional<Hash> h = pay_to_hash_payload(e->output.script_pubkey);
                if (!h) throw Error(Errc::NotPayToHash, "output " + std::to_string(i));
                record.commitments.emplace(i, commit_payload(mode.salt, *h));
            }
        }
    }
    record.erased_indices.insert(fresh.begin(), fresh.end());
    if (!existing) {
        if (!where.empty()) {
            record.block_hash = where.front().block_hash;
        } else {
            uint32_t height = stores.utxo.find(unspent.front())->height;
            if (height < stores.active_chain.size()) record.block_hash = stores.active_chain[height];
        }
    }
    receipt.block_hash = record.block_hash;

    // Store T' before touching any copy of the original.
    stores.db.replace(record);
    receipt.record_written = true;
    receipt.erased.assign(fresh.begin(), fresh.end());

    for (uint32_t i : fresh) {
        if (UtxoEntry* e = stores.utxo.find_mutable(OutPoint{txid, i})) {
            e->output.script_pubkey = redacted_script(e->output.script_pubkey);
            ++receipt.utxo_rewrites;
        }
    }

    std::vector<Hash> with_undo;
    for (const auto& [hash, info] : stores.blocks.index()) {
        if (info.undo) with_undo.push_back(hash);
    }
    for (const Hash& hash : with_undo) {
        UndoData undo = *stores.blocks.read_undo(hash);
        bool touched = false;
        for (auto& [out, entry] : undo.spent) {
            if (out.txid == txid && fresh.count(out.index)) {
                entry.output.script_pubkey = redacted_script(entry.output.script_pubkey);
                touched = true;
                ++receipt.undo_rewrites;
            }
        }
        if (touched) stores.blocks.rewrite_undo(hash, undo);
    }

    if (stores.policy == RawBlockPolicy::RewriteInPlace) {
        for (Location& loc : where) {
            loc.block.transactions[loc.tx_index] = *record.redacted_tx;
            stores.blocks.rewrite(loc.block_hash, loc.block);
            receipt.blocks_rewritten.push_back(loc.block_hash);
        }
    } else if (!where.empty()) {
        uint32_t limit = 0;
        for (const Location& loc : where) limit = std::max(limit, loc.height);
        std::vector<Hash> targets;
        for (const auto& [hash, info] : stores.blocks.index()) {
            if (info.body && info.height <= limit) targets.push_back(hash);
        }
        for (const Hash& hash : targets) {
            if (stores.blocks.prune(hash)) receipt.blocks_pruned.push_back(hash);
        }
    }
    return receipt;
}

} // namespace fple
