// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/chaingen.hpp"

#include "fple/error.hpp"
#include "fple/merkle.hpp"
#include "fple/pow.hpp"

#include <algorithm>

namespace fple {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Bytes random_bytes(std::mt19937_64& rng, size_t n)
{
    Bytes out(n);
    for (uint8_t& b : out) b = static_cast<uint8_t>(rng());
    return out;
}

} // namespace

ChainGenerator::ChainGenerator(uint64_t seed, unsigned difficulty, size_t key_count)
    : difficulty_(difficulty), wallet_keys_(key_count), rng_(seed)
{
    if (key_count == 0) throw Error(Errc::ConfigError, "need at least one key");
    for (size_t i = 0; i < key_count + kDataKeys; ++i) {
        Writer w;
        w.raw(as_bytes("fple-key"));
        w.u64(seed);
        w.u64(i);
        keys_.push_back(KeyPair::from_seed(sha256(w.bytes()).bytes));
    }
    genesis_ = make_genesis(difficulty, make_script(PayToHash{keys_[0].pubkey_hash()}));
    tip_ = genesis_hash();
    const Transaction& cb = genesis_.transactions[0];
    coins_[tip_][OutPoint{compute_txid(cb), 0}] = Coin{cb.outputs[0], 0};
    heights_[tip_] = 0;
}

TxOutput ChainGenerator::pay_to_key(size_t i, Amount value) const
{
    return build_output(PayToHash{keys_.at(i).pubkey_hash()}, value);
}

Transaction ChainGenerator::coinbase(uint32_t height)
{
    return make_coinbase(height, {pay_to_key(rng_() % wallet_keys_, kBlockReward)}, random_bytes(rng_, 8));
}

Block ChainGenerator::build(std::vector<Transaction> txs, const std::optional<Hash>& parent, bool track)
{
    const Hash p = parent.value_or(tip_);
    const uint32_t height = heights_.at(p) + 1;
    txs.insert(txs.begin(), coinbase(height));
    Block block = mine_block(p, std::move(txs), difficulty_, ++time_);
    if (!track) return block;

    const Hash hash = compute_block_hash(block.header);
    CoinMap coins = coins_.at(p);
    std::map<Hash, size_t> key_of;
    for (size_t i = 0; i < keys_.size(); ++i) key_of[keys_[i].pubkey_hash()] = i;
    for (const Transaction& tx : block.transactions) {
        if (!tx.is_coinbase()) {
            for (const TxInput& in : tx.inputs) coins.erase(in.prevout);
        }
        const Hash txid = compute_txid(tx);
        for (uint32_t n = 0; n < tx.outputs.size(); ++n) {
            const TxOutput& o = tx.outputs[n];
            if (o.script_pubkey.is_unspendable()) continue;
            std::optional<size_t> key;
            if (std::optional<Hash> h = pay_to_hash_payload(o.script_pubkey)) {
                auto it = key_of.find(*h);
                if (it == key_of.end()) continue; // data output nobody can spend
                key = it->second;
            }
            coins[OutPoint{txid, n}] = Coin{o, key};
        }
    }
    coins_[hash] = std::move(coins);
    heights_[hash] = height;
    if (height > heights_.at(tip_)) tip_ = hash;
    return block;
}

void ChainGenerator::sign(Transaction& tx, const Hash& parent, std::optional<size_t> wrong_key) const
{
    const Hash message = signing_digest(tx);
    const CoinMap& coins = coins_.at(parent);
    for (TxInput& in : tx.inputs) {
        auto it = coins.find(in.prevout);
        if (it == coins.end() || !it->second.key) continue;
        const size_t owner = *it->second.key;
        const KeyPair& signer = keys_.at(wrong_key.value_or(owner));
        in.script_sig = Script{{push(signer.sign(message)), push(keys_[owner].pubkey())}};
    }
}

Transaction ChainGenerator::spend(const Hash& parent, const OutPoint& out, std::vector<TxOutput> outputs) const
{
    Transaction tx;
    tx.inputs.push_back({out, Script{}});
    tx.outputs = std::move(outputs);
    sign(tx, parent);
    return tx;
}

Transaction ChainGenerator::data_tx(const Hash& parent, uint32_t outputs, uint32_t keyed)
{
    const CoinMap& coins = coins_.at(parent);
    auto best = coins.end();
    for (auto it = coins.begin(); it != coins.end(); ++it) {
        if (it->second.key && (best == coins.end() || it->second.output.value > best->second.output.value)) best = it;
    }
    if (best == coins.end() || outputs == 0) throw Error(Errc::ConfigError, "no funding coin for data tx");
    if (keyed > kDataKeys) throw Error(Errc::ConfigError, "at most " + std::to_string(kDataKeys) + " keyed outputs");
    const Amount each = best->second.output.value / outputs;
    Transaction tx;
    tx.inputs.push_back({best->first, Script{}});
    for (uint32_t i = 0; i < outputs; ++i) {
        if (i < keyed) {
            tx.outputs.push_back(build_output(PayToHash{data_key(i).pubkey_hash()}, each));
        } else {
            tx.outputs.push_back(build_output(PayToHash{sha256(random_bytes(rng_, 32))}, each));
        }
    }
    sign(tx, parent);
    return tx;
}

std::vector<Transaction> ChainGenerator::random_txs(const Hash& parent, size_t count)
{
    const uint32_t height = heights_.at(parent) + 1;
    std::vector<std::pair<OutPoint, Coin>> pool;
    for (const auto& c : coins_.at(parent)) {
        if (!reserved_.count(c.first)) pool.push_back(c);
    }
    std::vector<Transaction> out;
    for (size_t t = 0; t < count && !pool.empty(); ++t) {
        Transaction tx;
        Amount total = 0;
        const size_t inputs = std::min<size_t>(pool.size(), 1 + rng_() % 2);
        for (size_t i = 0; i < inputs; ++i) {
            const size_t pick = rng_() % pool.size();
            tx.inputs.push_back({pool[pick].first, Script{}});
            total += pool[pick].second.output.value;
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        const size_t n_out = 1 + rng_() % 3;
        Amount left = total;
        for (size_t i = 0; i < n_out; ++i) {
            const Amount value = i + 1 == n_out ? left : static_cast<Amount>(rng_() % static_cast<uint64_t>(left + 1));
            left -= value;
            const uint64_t kind = rng_() % 10;
            if (kind == 0) {
                tx.outputs.push_back(build_output(AnyoneCanSpend{}, value));
            } else if (kind == 1) {
                tx.outputs.push_back(build_output(DataCarrier{random_bytes(rng_, 1 + rng_() % 40)}, 0));
                left += value;
            } else {
                tx.outputs.push_back(pay_to_key(rng_() % wallet_keys_, value));
            }
        }
        if (left > 0) tx.outputs.back().value += left;
        if (rng_() % 4 == 0) tx.lock_time = static_cast<uint32_t>(rng_() % (height + 1));
        sign(tx, parent);
        out.push_back(std::move(tx));
    }
    return out;
}

Block ChainGenerator::faulty_block(const Hash& parent, Fault fault)
{
    const CoinMap& coins = coins_.at(parent);
    auto keyed = std::find_if(coins.begin(), coins.end(), [](const auto& c) { return c.second.key.has_value(); });
    if (keyed == coins.end()) fault = Fault::MissingInput;

    std::vector<Transaction> txs;
    switch (fault) {
    case Fault::BadSignature: {
        Transaction tx;
        tx.inputs.push_back({keyed->first, Script{}});
        tx.outputs.push_back(pay_to_key(0, keyed->second.output.value));
        sign(tx, parent, (*keyed->second.key + 1) % keys_.size());
        txs.push_back(std::move(tx));
        break;
    }
    case Fault::MissingInput: {
        Transaction tx;
        tx.inputs.push_back({OutPoint{sha256(random_bytes(rng_, 32)), 0}, Script{}});
        tx.outputs.push_back(pay_to_key(0, kCoin));
        txs.push_back(std::move(tx));
        break;
    }
    case Fault::Overspend:
        txs.push_back(spend(parent, keyed->first, {pay_to_key(0, keyed->second.output.value + 1)}));
        break;
    case Fault::DoubleSpend:
        txs.push_back(spend(parent, keyed->first, {pay_to_key(0, keyed->second.output.value)}));
        txs.push_back(spend(parent, keyed->first, {pay_to_key(1 % wallet_keys_, keyed->second.output.value)}));
        break;
    case Fault::CoinbaseOverpay: {
        const uint32_t height = heights_.at(parent) + 1;
        Transaction cb = make_coinbase(height, {pay_to_key(0, kBlockReward + 1)}, random_bytes(rng_, 8));
        return mine_block(parent, {std::move(cb)}, difficulty_, ++time_);
    }
    }
    return build(std::move(txs), parent, false);
}

std::vector<Block> random_chain(ChainGenerator& gen, const RandomChainOptions& opts)
{
    std::vector<Block> out;
    std::vector<Hash> built{gen.genesis_hash()};
    for (uint32_t i = 0; i < opts.blocks; ++i) {
        Hash parent = gen.tip();
        if (unit(gen.rng()) < opts.invalid_rate) {
            const auto fault = static_cast<ChainGenerator::Fault>(gen.rng()() % 5);
            out.push_back(gen.faulty_block(parent, fault));
            continue;
        }
        if (unit(gen.rng()) < opts.fork_rate) {
            const uint32_t tip_height = gen.height_of(gen.tip());
            std::vector<Hash> candidates;
            for (const Hash& h : built) {
                if (gen.height_of(h) + opts.max_fork_depth >= tip_height) candidates.push_back(h);
            }
            parent = candidates[gen.rng()() % candidates.size()];
        }
        std::vector<Transaction> txs = gen.random_txs(parent, gen.rng()() % (opts.max_txs + 1));
        Block block = gen.build(std::move(txs), parent);
        built.push_back(compute_block_hash(block.header));
        out.push_back(std::move(block));
    }
    return out;
}

} // namespace fple
