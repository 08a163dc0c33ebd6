// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_CHAINGEN_HPP
#define FPLE_CHAINGEN_HPP

#include "fple/primitives.hpp"
#include "fple/signature.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

namespace fple {

// Deterministic block and transaction factory for test chains and demos.
// Tracks the spendable coins at every block it built so transactions can be
// crafted against any branch.
class ChainGenerator {
public:
    struct Coin {
        TxOutput output;
        std::optional<size_t> key; // signing key for pay-to-hash outputs
    };
    using CoinMap = std::map<OutPoint, Coin>;

    static constexpr size_t kDataKeys = 4;

    /// key_count wallet keys receive coinbases and random payments; a further
    /// kDataKeys keys are used only by data_tx outputs.
    explicit ChainGenerator(uint64_t seed, unsigned difficulty = 0, size_t key_count = 16);

    const Block& genesis() const { return genesis_; }
    Hash genesis_hash() const { return compute_block_hash(genesis_.header); }
    unsigned difficulty() const { return difficulty_; }
    const KeyPair& key(size_t i) const { return keys_.at(i); }
    size_t key_count() const { return wallet_keys_; }
    const KeyPair& data_key(size_t i) const { return keys_.at(wallet_keys_ + i); }
    std::mt19937_64& rng() { return rng_; }

    /// Most recently built block on the longest tracked branch.
    const Hash& tip() const { return tip_; }
    uint32_t height_of(const Hash& block) const { return heights_.at(block); }
    const CoinMap& coins_at(const Hash& block) const { return coins_.at(block); }

    /// Mines a block on `parent` (default: tip) with a coinbase paying a
    /// generator key. The resulting coin state is tracked only when `track`.
    Block build(std::vector<Transaction> txs, const std::optional<Hash>& parent = std::nullopt, bool track = true);

    /// Signs every input whose coin is known at `parent`.
    void sign(Transaction& tx, const Hash& parent, std::optional<size_t> wrong_key = std::nullopt) const;
    /// Spends `out` (known at parent) into the given outputs, signed.
    Transaction spend(const Hash& parent, const OutPoint& out, std::vector<TxOutput> outputs) const;
    /// Pay-to-hash output for generator key i.
    TxOutput pay_to_key(size_t i, Amount value) const;

    /// A transaction with `outputs` pay-to-hash outputs whose hashes stand in
    /// for embedded data; the first `keyed` of them are spendable by
    /// data keys (at most kDataKeys). Funded from the largest coin available
    /// at parent.
    Transaction data_tx(const Hash& parent, uint32_t outputs, uint32_t keyed);

    /// Keeps random_txs away from an outpoint (e.g. one a test spends later).
    void reserve(const OutPoint& out) { reserved_.insert(out); }

    /// Up to `count` valid, mutually non-conflicting transactions at parent.
    std::vector<Transaction> random_txs(const Hash& parent, size_t count);

    enum class Fault { BadSignature, MissingInput, Overspend, DoubleSpend, CoinbaseOverpay };
    /// Block on `parent` containing one fault. Never tracked.
    Block faulty_block(const Hash& parent, Fault fault);

private:
    Transaction coinbase(uint32_t height);

    unsigned difficulty_;
    size_t wallet_keys_;
    std::mt19937_64 rng_;
    std::vector<KeyPair> keys_;
    Block genesis_;
    Hash tip_;
    std::unordered_map<Hash, CoinMap> coins_;
    std::unordered_map<Hash, uint32_t> heights_;
    uint64_t time_ = 0;
    std::set<OutPoint> reserved_;
};

struct RandomChainOptions {
    uint32_t blocks = 100;     // blocks delivered, genesis excluded
    size_t max_txs = 3;        // per block
    double fork_rate = 0.0;    // chance a block builds on an older tracked block
    uint32_t max_fork_depth = 3;
    double invalid_rate = 0.0; // chance a delivered block carries a fault
};

/// Delivery-ordered blocks; every block's parent precedes it.
std::vector<Block> random_chain(ChainGenerator& gen, const RandomChainOptions& opts);

} // namespace fple

#endif // FPLE_CHAINGEN_HPP
