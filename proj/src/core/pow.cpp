// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/pow.hpp"

#include "fple/error.hpp"
#include "fple/merkle.hpp"

#include <bit>
#include <limits>

namespace fple {

unsigned leading_zero_bits(const Hash& h)
{
    unsigned bits = 0;
    for (uint8_t b : h.bytes) {
        if (b != 0) return bits + static_cast<unsigned>(std::countl_zero(b));
        bits += 8;
    }
    return bits;
}

BlockHeader mine_header(BlockHeader header, unsigned difficulty, uint64_t start_nonce)
{
    header.nonce = start_nonce;
    for (;;) {
        if (meets_difficulty(compute_block_hash(header), difficulty)) return header;
        if (header.nonce == std::numeric_limits<uint64_t>::max()) {
            throw Error(Errc::NonceSpaceExhausted, "no nonce satisfies difficulty " +
                                                       std::to_string(difficulty));
        }
        ++header.nonce;
    }
}

Block mine_block(const Hash& parent_hash, std::vector<Transaction> txs, unsigned difficulty,
                 uint64_t time)
{
    if (difficulty > kMaxDifficulty) {
        throw Error(Errc::ConfigError, "difficulty above " + std::to_string(kMaxDifficulty));
    }
    if (txs.empty() || !txs.front().is_coinbase()) {
        throw Error(Errc::ConfigError, "first transaction must be a coinbase");
    }
    Block block;
    block.transactions = std::move(txs);
    block.header.prev_block_hash = parent_hash;
    block.header.time = time;
    std::vector<Hash> txids = compute_txids(block);
    block.header.merkle_root = compute_merkle_root(txids);
    block.header = mine_header(block.header, difficulty, 0);
    return block;
}

Block make_genesis(unsigned difficulty, const std::optional<Script>& payout, uint64_t time)
{
    Script script = payout ? *payout : Script{{op(Opcode::True)}};
    Transaction coinbase = make_coinbase(0, {TxOutput{kBlockReward, std::move(script)}});
    return mine_block(Hash{}, {std::move(coinbase)}, difficulty, time);
}

} // namespace fple
