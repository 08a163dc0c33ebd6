// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_VALIDATION_HPP
#define FPLE_VALIDATION_HPP

#include "fple/erasure_db.hpp"
#include "fple/primitives.hpp"
#include "fple/utxo.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fple {

struct TxValidity {
    enum class Verdict { Valid, Invalid, DependsOnErased };

    Verdict verdict = Verdict::Valid;
    std::string reason;                  // Invalid only
    std::vector<OutPoint> erased_inputs; // DependsOnErased only

    static TxValidity valid() { return {}; }
    static TxValidity invalid(std::string reason) { return {Verdict::Invalid, std::move(reason), {}}; }
    static TxValidity depends_on_erased(std::vector<OutPoint> outs)
    {
        return {Verdict::DependsOnErased, {}, std::move(outs)};
    }

    bool is_valid() const { return verdict == Verdict::Valid; }
    bool is_invalid() const { return verdict == Verdict::Invalid; }
    bool depends_on_erased() const { return verdict == Verdict::DependsOnErased; }
    std::string to_string() const;

    bool operator==(const TxValidity&) const = default;
};

struct ValidationOptions {
    const SignatureVerifier* verifier = &default_verifier();
    // Batch the block's ordinary script checks through the OpenMP kernel
    // instead of checking them inline. Verdicts are identical either way.
    bool parallel_scripts = false;
};

/// Transaction check-list: scripts satisfy referenced outputs, referenced
/// outputs are unspent, values add up, lock_time <= height. Spends of erased
/// outputs are checked against the redacted script (or the stored
/// commitment) and reported as DependsOnErased.
TxValidity validate_transaction(const Transaction& tx, const UtxoView& utxo, const ErasureDb& erasure,
                                uint32_t height, const ValidationOptions& opts = {});

enum class BlockError { None, BadPrevHash, BadPow, BadMerkleRoot, BadTransaction };
std::string_view block_error_name(BlockError e);

struct BlockValidity {
    BlockError error = BlockError::None;
    std::string reason;
    size_t bad_tx = 0;
    std::vector<TxValidity> tx_verdicts; // per transaction, coinbase included

    bool valid() const { return error == BlockError::None; }
    std::string to_string() const;

    static BlockValidity fail(BlockError e, std::string reason, size_t bad_tx = 0)
    {
        return {e, std::move(reason), bad_tx, {}};
    }
};

struct BlockContext {
    Hash parent_hash;
    uint32_t height = 0;
    unsigned difficulty = 0;
    // Identifiers to key outputs under and to check the merkle root against;
    // defaults to compute_txids(block).
    std::optional<std::vector<Hash>> txids;
    // Transactions standing in for erased originals: their inputs were
    // validated before erasure, so only UTXO-level checks are re-run.
    std::vector<bool> redacted;
};

/// Context-free part of block validation: PoW, coinbase placement, duplicate
/// txids and the merkle root. Needs no UTXO state.
BlockValidity check_block_structure(const Block& block, std::span<const Hash> txids, uint32_t height,
                                    unsigned difficulty);

/// Full block check-list. Transactions are validated sequentially against an
/// overlay of `utxo` so later transactions see earlier ones.
BlockValidity validate_block(const Block& block, const BlockContext& ctx, const UtxoView& utxo,
                             const ErasureDb& erasure, const ValidationOptions& opts = {});

} // namespace fple

#endif // FPLE_VALIDATION_HPP
