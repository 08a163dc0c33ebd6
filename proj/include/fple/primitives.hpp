// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_PRIMITIVES_HPP
#define FPLE_PRIMITIVES_HPP

#include "fple/hash.hpp"
#include "fple/script.hpp"
#include "fple/serialize.hpp"

#include <compare>
#include <optional>
#include <cstdint>
#include <string>
#include <vector>

namespace fple {

using Amount = int64_t;

static constexpr Amount kCoin = 100'000'000;
static constexpr Amount kMaxMoney = 21'000'000 * kCoin;
static constexpr Amount kBlockReward = 50 * kCoin;
static constexpr uint32_t kNullIndex = 0xffffffff;

inline bool money_range(Amount v) { return v >= 0 && v <= kMaxMoney; }

struct OutPoint {
    Hash txid;
    uint32_t index = 0;

    bool is_null() const { return txid.is_zero() && index == kNullIndex; }
    std::string to_string() const { return txid.to_hex() + ":" + std::to_string(index); }
    auto operator<=>(const OutPoint&) const = default;
};

struct TxOutput {
    Amount value = 0;
    Script script_pubkey;

    bool operator==(const TxOutput&) const = default;
};

struct TxInput {
    OutPoint prevout;
    Script script_sig;

    bool operator==(const TxInput&) const = default;
};

struct Transaction {
    std::vector<TxInput> inputs;
    std::vector<TxOutput> outputs;
    uint32_t lock_time = 0;

    bool is_coinbase() const { return inputs.size() == 1 && inputs[0].prevout.is_null(); }

    void serialize(Writer& w) const;
    static Transaction deserialize(Reader& r);
    Bytes encode() const;
    static Transaction decode(ByteSpan data);

    bool operator==(const Transaction&) const = default;
};

struct BlockHeader {
    Hash prev_block_hash;
    Hash merkle_root;
    uint64_t time = 0;
    uint64_t nonce = 0; // mining data

    static constexpr size_t kEncodedSize = 32 + 32 + 8 + 8;

    void serialize(Writer& w) const;
    static BlockHeader deserialize(Reader& r);
    Bytes encode() const;

    bool operator==(const BlockHeader&) const = default;
};

struct Block {
    BlockHeader header;
    std::vector<Transaction> transactions;

    Bytes encode() const;
    static Block decode(ByteSpan data);

    bool operator==(const Block&) const = default;
};

Hash compute_txid(const Transaction& tx);
std::vector<Hash> compute_txids(const Block& block);
/// Digest of the transaction with every script_sig emptied; what CHECKSIG signs.
Hash signing_digest(const Transaction& tx);
Hash compute_block_hash(const BlockHeader& header);

/// Coinbase whose script_sig starts with PUSH(height as u64 LE), making txids unique per height.
Transaction make_coinbase(uint32_t height, std::vector<TxOutput> outputs, Bytes extra = {});
/// Height committed in a coinbase script_sig, if well-formed.
std::optional<uint32_t> coinbase_height(const Transaction& coinbase);

/// Output constructor for the three supported templates. Negative values or
/// values above kMaxMoney throw ConfigError; oversize payloads PayloadTooLarge.
TxOutput build_output(const OutputTemplate& tmpl, Amount value);

} // namespace fple

#endif // FPLE_PRIMITIVES_HPP
