// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_POW_HPP
#define FPLE_POW_HPP

#include "fple/primitives.hpp"

#include <optional>
#include <vector>

namespace fple {

static constexpr unsigned kMaxDifficulty = 24;

unsigned leading_zero_bits(const Hash& h);
inline bool meets_difficulty(const Hash& block_hash, unsigned difficulty)
{
    return leading_zero_bits(block_hash) >= difficulty;
}

/// Work contributed by one block at the given difficulty (2^difficulty).
inline uint64_t block_work(unsigned difficulty) { return uint64_t{1} << difficulty; }

/// Searches nonces upward from start_nonce. Throws NonceSpaceExhausted when
/// the 64-bit nonce would wrap.
BlockHeader mine_header(BlockHeader header, unsigned difficulty, uint64_t start_nonce = 0);

/// Builds the block (merkle root over txs) and searches from nonce 0.
Block mine_block(const Hash& parent_hash, std::vector<Transaction> txs, unsigned difficulty,
                 uint64_t time);

/// Height-0 block whose coinbase pays kBlockReward to `payout` (or [TRUE]).
Block make_genesis(unsigned difficulty, const std::optional<Script>& payout = std::nullopt, uint64_t time = 0);

} // namespace fple

#endif // FPLE_POW_HPP
