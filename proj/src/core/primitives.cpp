// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/primitives.hpp"

#include "fple/error.hpp"

namespace fple {

namespace {

void write_script(Writer& w, const Script& s) { w.var_bytes(s.encode()); }

Script read_script(Reader& r) { return Script::decode(r.var_bytes()); }

void serialize_tx(Writer& w, const Transaction& tx, bool with_script_sigs)
{
    w.u32(static_cast<uint32_t>(tx.inputs.size()));
    for (const TxInput& in : tx.inputs) {
        w.hash(in.prevout.txid);
        w.u32(in.prevout.index);
        write_script(w, with_script_sigs ? in.script_sig : Script{});
    }
    w.u32(static_cast<uint32_t>(tx.outputs.size()));
    for (const TxOutput& out : tx.outputs) {
        w.u64(static_cast<uint64_t>(out.value));
        write_script(w, out.script_pubkey);
    }
    w.u32(tx.lock_time);
}

} // namespace

void Transaction::serialize(Writer& w) const { serialize_tx(w, *this, true); }

Transaction Transaction::deserialize(Reader& r)
{
    Transaction tx;
    uint32_t n_in = r.u32();
    // Each input needs at least 40 bytes; reject absurd counts before reserving.
    if (n_in > r.remaining() / 40) throw Error(Errc::DecodeError, "input count exceeds data");
    tx.inputs.reserve(n_in);
    for (uint32_t i = 0; i < n_in; ++i) {
        TxInput in;
        in.prevout.txid = r.hash();
        in.prevout.index = r.u32();
        in.script_sig = read_script(r);
        tx.inputs.push_back(std::move(in));
    }
    uint32_t n_out = r.u32();
    if (n_out > r.remaining() / 12) throw Error(Errc::DecodeError, "output count exceeds data");
    tx.outputs.reserve(n_out);
    for (uint32_t i = 0; i < n_out; ++i) {
        TxOutput out;
        out.value = static_cast<Amount>(r.u64());
        out.script_pubkey = read_script(r);
        tx.outputs.push_back(std::move(out));
    }
    tx.lock_time = r.u32();
    return tx;
}

Bytes Transaction::encode() const
{
    Writer w;
    serialize(w);
    return std::move(w).take();
}

Transaction Transaction::decode(ByteSpan data)
{
    Reader r(data);
    Transaction tx = deserialize(r);
    r.expect_done("transaction");
    return tx;
}

void BlockHeader::serialize(Writer& w) const
{
    w.hash(prev_block_hash);
    w.hash(merkle_root);
    w.u64(time);
    w.u64(nonce);
}

BlockHeader BlockHeader::deserialize(Reader& r)
{
    BlockHeader h;
    h.prev_block_hash = r.hash();
    h.merkle_root = r.hash();
    h.time = r.u64();
    h.nonce = r.u64();
    return h;
}

Bytes BlockHeader::encode() const
{
    Writer w;
    serialize(w);
    return std::move(w).take();
}

Bytes Block::encode() const
{
    Writer w;
    header.serialize(w);
    w.u32(static_cast<uint32_t>(transactions.size()));
    for (const Transaction& tx : transactions) tx.serialize(w);
    return std::move(w).take();
}

Block Block::decode(ByteSpan data)
{
    Reader r(data);
    Block b;
    b.header = BlockHeader::deserialize(r);
    uint32_t n = r.u32();
    if (n > r.remaining() / 12) throw Error(Errc::DecodeError, "transaction count exceeds data");
    b.transactions.reserve(n);
    for (uint32_t i = 0; i < n; ++i) b.transactions.push_back(Transaction::deserialize(r));
    r.expect_done("block");
    return b;
}

Hash compute_txid(const Transaction& tx) { return sha256(tx.encode()); }

std::vector<Hash> compute_txids(const Block& block)
{
    std::vector<Hash> out;
    out.reserve(block.transactions.size());
    for (const Transaction& tx : block.transactions) out.push_back(compute_txid(tx));
    return out;
}

Hash signing_digest(const Transaction& tx)
{
    Writer w;
    serialize_tx(w, tx, false);
    return sha256(w.bytes());
}

Hash compute_block_hash(const BlockHeader& header) { return sha256(header.encode()); }

Transaction make_coinbase(uint32_t height, std::vector<TxOutput> outputs, Bytes extra)
{
    Writer w;
    w.u64(height);
    Transaction tx;
    TxInput in;
    in.prevout.index = kNullIndex;
    in.script_sig.ops.push_back(push(std::move(w).take()));
    if (!extra.empty()) in.script_sig.ops.push_back(push(std::move(extra)));
    tx.inputs.push_back(std::move(in));
    tx.outputs = std::move(outputs);
    return tx;
}

std::optional<uint32_t> coinbase_height(const Transaction& coinbase)
{
    if (!coinbase.is_coinbase()) return std::nullopt;
    const Script& sig = coinbase.inputs[0].script_sig;
    if (sig.ops.empty() || sig.ops[0].code != Opcode::Push || sig.ops[0].data.size() != 8) {
        return std::nullopt;
    }
    Reader r(sig.ops[0].data);
    uint64_t h = r.u64();
    if (h > 0xffffffffu) return std::nullopt;
    return static_cast<uint32_t>(h);
}

TxOutput build_output(const OutputTemplate& tmpl, Amount value)
{
    if (!money_range(value)) throw Error(Errc::ConfigError, "output value out of range");
    return TxOutput{value, make_script(tmpl)};
}

} // namespace fple
