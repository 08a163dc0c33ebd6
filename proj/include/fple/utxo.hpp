// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_UTXO_HPP
#define FPLE_UTXO_HPP

#include "fple/primitives.hpp"

#include <map>
#include <set>
#include <span>
#include <vector>

namespace fple {

struct UtxoEntry {
    TxOutput output;
    uint32_t height = 0;
    bool is_coinbase = false;

    bool operator==(const UtxoEntry&) const = default;
};

class UtxoView {
public:
    virtual ~UtxoView() = default;
    virtual const UtxoEntry* find(const OutPoint& out) const = 0;
};

// Ordered so that snapshots are deterministic and all outputs of one txid
// are contiguous.
class UtxoSet final : public UtxoView {
public:
    using Map = std::map<OutPoint, UtxoEntry>;

    const UtxoEntry* find(const OutPoint& out) const override;
    UtxoEntry* find_mutable(const OutPoint& out);
    /// Returns false if the outpoint already exists.
    bool add(const OutPoint& out, UtxoEntry entry);
    std::optional<UtxoEntry> spend(const OutPoint& out);
    std::vector<OutPoint> outpoints_of(const Hash& txid) const;

    size_t size() const { return entries_.size(); }
    const Map& entries() const { return entries_; }

    /// chainstate snapshot: u64 count, then (txid, index, height, coinbase flag, value, script).
    Bytes snapshot() const;
    static UtxoSet from_snapshot(ByteSpan data);

    bool operator==(const UtxoSet& other) const { return entries_ == other.entries_; }

private:
    Map entries_;
};

// Copy-on-write view over a base set, used while validating a block.
class UtxoOverlay final : public UtxoView {
public:
    explicit UtxoOverlay(const UtxoView& base) : base_(base) {}

    const UtxoEntry* find(const OutPoint& out) const override;
    void spend(const OutPoint& out);
    void add(const OutPoint& out, UtxoEntry entry);

private:
    const UtxoView& base_;
    std::map<OutPoint, UtxoEntry> added_;
    std::set<OutPoint> spent_;
};

struct UndoData {
    std::vector<std::pair<OutPoint, UtxoEntry>> spent;
    std::vector<OutPoint> created;

    Bytes encode() const;
    static UndoData decode(ByteSpan data);

    bool operator==(const UndoData&) const = default;
};

/// Spends inputs and inserts outputs of a validated block. txids are the
/// identifiers outputs are keyed under (the original txids when a redacted
/// transaction stands in for an erased one). Provably unspendable outputs
/// are never inserted.
UndoData apply_block(UtxoSet& utxo, const Block& block, uint32_t height,
                     std::span<const Hash> txids);
UndoData apply_block(UtxoSet& utxo, const Block& block, uint32_t height);
void undo_block(UtxoSet& utxo, const UndoData& undo);

} // namespace fple

#endif // FPLE_UTXO_HPP
