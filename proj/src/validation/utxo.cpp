// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/utxo.hpp"

#include "fple/error.hpp"
#include "fple/serialize.hpp"

namespace fple {

namespace {

void write_entry(Writer& w, const OutPoint& out, const UtxoEntry& e)
{
    w.hash(out.txid);
    w.u32(out.index);
    w.u32(e.height);
    w.u8(e.is_coinbase ? 1 : 0);
    w.u64(static_cast<uint64_t>(e.output.value));
    w.var_bytes(e.output.script_pubkey.encode());
}

std::pair<OutPoint, UtxoEntry> read_entry(Reader& r)
{
    OutPoint out;
    out.txid = r.hash();
    out.index = r.u32();
    UtxoEntry e;
    e.height = r.u32();
    e.is_coinbase = r.u8() != 0;
    e.output.value = static_cast<Amount>(r.u64());
    e.output.script_pubkey = Script::decode(r.var_bytes());
    return {out, std::move(e)};
}

} // namespace

const UtxoEntry* UtxoSet::find(const OutPoint& out) const
{
    auto it = entries_.find(out);
    return it == entries_.end() ? nullptr : &it->second;
}

UtxoEntry* UtxoSet::find_mutable(const OutPoint& out)
{
    auto it = entries_.find(out);
    return it == entries_.end() ? nullptr : &it->second;
}

bool UtxoSet::add(const OutPoint& out, UtxoEntry entry)
{
    return entries_.emplace(out, std::move(entry)).second;
}

std::optional<UtxoEntry> UtxoSet::spend(const OutPoint& out)
{
    auto it = entries_.find(out);
    if (it == entries_.end()) return std::nullopt;
    UtxoEntry e = std::move(it->second);
    entries_.erase(it);
    return e;
}

std::vector<OutPoint> UtxoSet::outpoints_of(const Hash& txid) const
{
    std::vector<OutPoint> out;
    for (auto it = entries_.lower_bound(OutPoint{txid, 0}); it != entries_.end() && it->first.txid == txid;
         ++it) {
        out.push_back(it->first);
    }
    return out;
}

Bytes UtxoSet::snapshot() const
{
    Writer w;
    w.u64(entries_.size());
    for (const auto& [out, e] : entries_) write_entry(w, out, e);
    return std::move(w).take();
}

UtxoSet UtxoSet::from_snapshot(ByteSpan data)
{
    Reader r(data);
    UtxoSet set;
    uint64_t n = r.u64();
    for (uint64_t i = 0; i < n; ++i) {
        auto [out, e] = read_entry(r);
        if (!set.add(out, std::move(e))) throw Error(Errc::DecodeError, "duplicate outpoint in snapshot");
    }
    r.expect_done("utxo snapshot");
    return set;
}

const UtxoEntry* UtxoOverlay::find(const OutPoint& out) const
{
    if (auto it = added_.find(out); it != added_.end()) return &it->second;
    if (spent_.count(out)) return nullptr;
    return base_.find(out);
}

void UtxoOverlay::spend(const OutPoint& out)
{
    if (added_.erase(out) == 0) spent_.insert(out);
}

void UtxoOverlay::add(const OutPoint& out, UtxoEntry entry) { added_[out] = std::move(entry); }

Bytes UndoData::encode() const
{
    Writer w;
    w.u32(static_cast<uint32_t>(spent.size()));
    for (const auto& [out, e] : spent) write_entry(w, out, e);
    w.u32(static_cast<uint32_t>(created.size()));
    for (const OutPoint& out : created) {
        w.hash(out.txid);
        w.u32(out.index);
    }
    return std::move(w).take();
}

UndoData UndoData::decode(ByteSpan data)
{
    Reader r(data);
    UndoData u;
    uint32_t n = r.u32();
    for (uint32_t i = 0; i < n; ++i) u.spent.push_back(read_entry(r));
    n = r.u32();
    for (uint32_t i = 0; i < n; ++i) {
        OutPoint out;
        out.txid = r.hash();
        out.index = r.u32();
        u.created.push_back(out);
    }
    r.expect_done("undo data");
    return u;
}

UndoData apply_block(UtxoSet& utxo, const Block& block, uint32_t height, std::span<const Hash> txids)
{
    UndoData undo;
    for (size_t i = 0; i < block.transactions.size(); ++i) {
        const Transaction& tx = block.transactions[i];
        if (!tx.is_coinbase()) {
            for (const TxInput& in : tx.inputs) {
                std::optional<UtxoEntry> e = utxo.spend(in.prevout);
                if (!e) throw Error(Errc::StoreError, "apply_block: missing input " + in.prevout.to_string());
                undo.spent.emplace_back(in.prevout, std::move(*e));
            }
        }
        for (uint32_t n = 0; n < tx.outputs.size(); ++n) {
            if (tx.outputs[n].script_pubkey.is_unspendable()) continue;
            OutPoint out{txids[i], n};
            if (utxo.add(out, UtxoEntry{tx.outputs[n], height, tx.is_coinbase()})) {
                undo.created.push_back(out);
            }
        }
    }
    return undo;
}

UndoData apply_block(UtxoSet& utxo, const Block& block, uint32_t height)
{
    std::vector<Hash> txids = compute_txids(block);
    return apply_block(utxo, block, height, txids);
}

void undo_block(UtxoSet& utxo, const UndoData& undo)
{
    for (auto it = undo.created.rbegin(); it != undo.created.rend(); ++it) utxo.spend(*it);
    for (auto it = undo.spent.rbegin(); it != undo.spent.rend(); ++it) utxo.add(it->first, it->second);
}

} // namespace fple
