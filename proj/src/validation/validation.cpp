// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/validation.hpp"

#include "fple/merkle.hpp"
#include "fple/parallel.hpp"
#include "fple/pow.hpp"

#include <set>
#include <unordered_set>

namespace fple {

std::string TxValidity::to_string() const
{
    switch (verdict) {
    case Verdict::Valid: return "valid";
    case Verdict::Invalid: return "invalid(" + reason + ")";
    case Verdict::DependsOnErased: return "depends-on-erased(" + std::to_string(erased_inputs.size()) + ")";
    }
    return "?";
}

std::string_view block_error_name(BlockError e)
{
    switch (e) {
    case BlockError::None: return "none";
    case BlockError::BadPrevHash: return "bad-prevblk";
    case BlockError::BadPow: return "bad-pow";
    case BlockError::BadMerkleRoot: return "bad-merkleroot";
    case BlockError::BadTransaction: return "bad-txns";
    }
    return "?";
}

std::string BlockValidity::to_string() const
{
    if (valid()) return "valid";
    std::string out(block_error_name(error));
    if (error == BlockError::BadTransaction) out += "[" + std::to_string(bad_tx) + "]";
    if (!reason.empty()) out += ": " + reason;
    return out;
}

namespace {

// Everything but the ordinary script checks, which are either run inline
// or appended to `deferred`.
TxValidity check_tx(const Transaction& tx, const Hash& txid, const UtxoView& utxo,
                    const ErasureDb& erasure, uint32_t height, const ValidationOptions& opts,
                    bool skip_scripts, std::vector<par::ScriptCheck>* deferred, size_t tx_index)
{
    if (tx.is_coinbase()) return TxValidity::invalid("unexpected coinbase");
    if (tx.inputs.empty()) return TxValidity::invalid("no inputs");
    if (tx.outputs.empty()) return TxValidity::invalid("no outputs");

    Amount out_total = 0;
    for (const TxOutput& o : tx.outputs) {
        if (!money_range(o.value)) return TxValidity::invalid("output value out of range");
        out_total += o.value;
        if (!money_range(out_total)) return TxValidity::invalid("output total out of range");
    }
    if (tx.lock_time > height) return TxValidity::invalid("locktime not reached");

    std::set<OutPoint> seen;
    for (const TxInput& in : tx.inputs) {
        if (in.prevout.is_null()) return TxValidity::invalid("null prevout");
        if (!seen.insert(in.prevout).second) return TxValidity::invalid("duplicate input");
    }
    for (uint32_t n = 0; n < tx.outputs.size(); ++n) {
        if (utxo.find(OutPoint{txid, n})) return TxValidity::invalid("overwrites unspent output");
    }

    Amount in_total = 0;
    std::vector<const UtxoEntry*> coins;
    coins.reserve(tx.inputs.size());
    for (const TxInput& in : tx.inputs) {
        const UtxoEntry* e = utxo.find(in.prevout);
        if (!e) return TxValidity::invalid("unknown or spent outpoint");
        coins.push_back(e);
        in_total += e->output.value;
        if (!money_range(in_total)) return TxValidity::invalid("input total out of range");
    }
    if (in_total < out_total) return TxValidity::invalid("outputs exceed inputs");

    std::vector<OutPoint> erased;
    const Hash message = signing_digest(tx);
    const SignatureContext ctx{message, opts.verifier};
    for (size_t i = 0; i < tx.inputs.size(); ++i) {
        const TxInput& in = tx.inputs[i];
        const ErasureRecord* record = erasure.find(in.prevout.txid);
        if (record && record->is_erased(in.prevout.index)) {
            erased.push_back(in.prevout);
            if (skip_scripts) continue;
            if (record->mode_of(in.prevout.index).is_commitment()) {
                if (check_erased_spend(*record, in.prevout.index, in.script_sig, ctx) == SpendCheck::Fail) {
                    return TxValidity::invalid("erased-output commitment mismatch");
                }
            } else if (!eval_script(in.script_sig, coins[i]->output.script_pubkey, ctx)) {
                return TxValidity::invalid("script verification failed on redacted output");
            }
            continue;
        }
        if (skip_scripts) continue;
        if (deferred) {
            deferred->push_back({&in.script_sig, coins[i]->output.script_pubkey, message, opts.verifier, tx_index});
            continue;
        }
        ScriptError err = verify_script(in.script_sig, coins[i]->output.script_pubkey, ctx);
        if (err != ScriptError::Ok) {
            return TxValidity::invalid("script verification failed: " + std::string(script_error_name(err)));
        }
    }
    if (!erased.empty()) return TxValidity::depends_on_erased(std::move(erased));
    return TxValidity::valid();
}

// First transaction index with a failing deferred check, if any.
std::optional<std::pair<size_t, ScriptError>> first_script_failure(std::span<const par::ScriptCheck> checks)
{
    if (checks.empty()) return std::nullopt;
    std::vector<ScriptError> results = par::run_script_checks(checks);
    for (size_t i = 0; i < checks.size(); ++i) {
        if (results[i] != ScriptError::Ok) return std::make_pair(checks[i].tx_index, results[i]);
    }
    return std::nullopt;
}

} // namespace

TxValidity validate_transaction(const Transaction& tx, const UtxoView& utxo, const ErasureDb& erasure,
                                uint32_t height, const ValidationOptions& opts)
{
    return check_tx(tx, compute_txid(tx), utxo, erasure, height, opts, false, nullptr, 0);
}

BlockValidity check_block_structure(const Block& block, std::span<const Hash> txids, uint32_t height,
                                    unsigned difficulty)
{
    if (!meets_difficulty(compute_block_hash(block.header), difficulty)) {
        return BlockValidity::fail(BlockError::BadPow, "hash misses difficulty " + std::to_string(difficulty));
    }
    if (block.transactions.empty()) return BlockValidity::fail(BlockError::BadTransaction, "no transactions");
    if (!block.transactions[0].is_coinbase()) {
        return BlockValidity::fail(BlockError::BadTransaction, "first transaction is not a coinbase");
    }
    if (coinbase_height(block.transactions[0]) != height) {
        return BlockValidity::fail(BlockError::BadTransaction, "coinbase height mismatch");
    }
    for (size_t i = 1; i < block.transactions.size(); ++i) {
        if (block.transactions[i].is_coinbase()) {
            return BlockValidity::fail(BlockError::BadTransaction, "more than one coinbase", i);
        }
    }
    std::unordered_set<Hash> unique;
    for (size_t i = 0; i < txids.size(); ++i) {
        if (!unique.insert(txids[i]).second) {
            return BlockValidity::fail(BlockError::BadTransaction, "duplicate transaction", i);
        }
    }
    if (compute_merkle_root(txids) != block.header.merkle_root) {
        return BlockValidity::fail(BlockError::BadMerkleRoot, "merkle root mismatch");
    }
    return {};
}

BlockValidity validate_block(const Block& block, const BlockContext& ctx, const UtxoView& utxo,
                             const ErasureDb& erasure, const ValidationOptions& opts)
{
    if (block.header.prev_block_hash != ctx.parent_hash) {
        return BlockValidity::fail(BlockError::BadPrevHash, "prev_block_hash is not the parent");
    }
    std::vector<Hash> computed;
    if (!ctx.txids) computed = par::compute_txids(block.transactions);
    const std::vector<Hash>& txids = ctx.txids ? *ctx.txids : computed;
    if (txids.size() != block.transactions.size()) {
        return BlockValidity::fail(BlockError::BadMerkleRoot, "txid list does not match transactions");
    }
    if (BlockValidity s = check_block_structure(block, txids, ctx.height, ctx.difficulty); !s.valid()) return s;

    BlockValidity result;
    result.tx_verdicts.reserve(block.transactions.size());
    UtxoOverlay view(utxo);
    std::vector<par::ScriptCheck> deferred;
    std::vector<par::ScriptCheck>* sink = opts.parallel_scripts ? &deferred : nullptr;

    auto fail_tx = [&](size_t index, const std::string& reason) {
        // Script failures in earlier transactions take precedence, exactly
        // as in the inline (serial) order.
        if (auto early = first_script_failure(deferred); early && early->first < index) {
            return BlockValidity::fail(BlockError::BadTransaction,
                                       "script verification failed: " +
                                           std::string(script_error_name(early->second)),
                                       early->first);
        }
        return BlockValidity::fail(BlockError::BadTransaction, reason, index);
    };

    const Transaction& coinbase = block.transactions[0];
    Amount cb_total = 0;
    for (const TxOutput& o : coinbase.outputs) {
        if (!money_range(o.value)) return fail_tx(0, "coinbase output out of range");
        cb_total += o.value;
    }
    if (cb_total > kBlockReward) return fail_tx(0, "coinbase pays more than the block reward");
    result.tx_verdicts.push_back(TxValidity::valid());

    auto add_outputs = [&](size_t i) {
        const Transaction& tx = block.transactions[i];
        for (uint32_t n = 0; n < tx.outputs.size(); ++n) {
            if (tx.outputs[n].script_pubkey.is_unspendable()) continue;
            view.add(OutPoint{txids[i], n}, UtxoEntry{tx.outputs[n], ctx.height, tx.is_coinbase()});
        }
    };
    add_outputs(0);

    for (size_t i = 1; i < block.transactions.size(); ++i) {
        const Transaction& tx = block.transactions[i];
        const bool skip = i < ctx.redacted.size() && ctx.redacted[i];
        TxValidity v = check_tx(tx, txids[i], view, erasure, ctx.height, opts, skip, sink, i);
        if (v.is_invalid()) return fail_tx(i, v.reason);
        for (const TxInput& in : tx.inputs) view.spend(in.prevout);
        add_outputs(i);
        result.tx_verdicts.push_back(std::move(v));
    }
    if (auto failure = first_script_failure(deferred)) {
        return BlockValidity::fail(BlockError::BadTransaction,
                                   "script verification failed: " + std::string(script_error_name(failure->second)),
                                   failure->first);
    }
    return result;
}

} // namespace fple
