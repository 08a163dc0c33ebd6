// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_ERASURE_HPP
#define FPLE_ERASURE_HPP

#include "fple/block_store.hpp"
#include "fple/erasure_db.hpp"
#include "fple/utxo.hpp"

#include <set>
#include <span>
#include <string>
#include <vector>

namespace fple {

enum class RawBlockPolicy {
    RewriteInPlace, // replace T by T' inside the stored block
    Prune,          // body-prune the containing block and everything below it
};

struct ChainStores {
    BlockStore& blocks;
    UtxoSet& utxo;
    ErasureDb& db;
    std::span<const Hash> active_chain; // block hash by height
    RawBlockPolicy policy = RawBlockPolicy::RewriteInPlace;
};

struct ErasureReceipt {
    Hash txid;
    Hash block_hash;
    std::vector<uint32_t> erased;         // newly erased by this call
    std::vector<uint32_t> already_erased; // requested but erased before
    size_t utxo_rewrites = 0;
    size_t undo_rewrites = 0;
    std::vector<Hash> blocks_rewritten;
    std::vector<Hash> blocks_pruned;
    bool record_written = false;

    bool changed() const { return !erased.empty(); }
    std::vector<std::string> stores_touched() const;
};

/// Erases the given outputs of a locally stored transaction: writes the
/// record (i_T, T') first, then rewrites UTXO entries, undo data and raw
/// blocks so the original payload is gone from every store. Outputs that
/// are already erased are reported and left alone.
///
/// Throws UnknownTxid, IndexOutOfRange, NotPayToHash, ModeConflict (further
/// indices requested with a different mode than the existing record) and
/// SaltReuse.
ErasureReceipt erase_outputs(ChainStores& stores, const Hash& txid, const std::set<uint32_t>& indices,
                             const ErasureMode& mode);

} // namespace fple

#endif // FPLE_ERASURE_HPP
