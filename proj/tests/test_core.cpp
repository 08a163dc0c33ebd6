// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/chaingen.hpp"
#include "fple/error.hpp"
#include "fple/interpreter.hpp"
#include "fple/merkle.hpp"
#include "fple/pow.hpp"
#include "fple/primitives.hpp"

#include <doctest.h>

#include <random>

using namespace fple;

namespace {

Hash random_hash(std::mt19937_64& rng)
{
    Hash h;
    for (uint8_t& b : h.bytes) b = static_cast<uint8_t>(rng());
    return h;
}

Bytes random_bytes(std::mt19937_64& rng, size_t n)
{
    Bytes out(n);
    for (uint8_t& b : out) b = static_cast<uint8_t>(rng());
    return out;
}

Script random_script(std::mt19937_64& rng)
{
    static constexpr Opcode kOps[] = {Opcode::False, Opcode::Push,        Opcode::True, Opcode::Return,
                                      Opcode::Dup,   Opcode::EqualVerify, Opcode::Hash, Opcode::CheckSig};
    Script s;
    const size_t n = rng() % 8;
    for (size_t i = 0; i < n; ++i) {
        const Opcode code = kOps[rng() % 8];
        s.ops.push_back(code == Opcode::Push ? push(random_bytes(rng, rng() % 80)) : op(code));
    }
    return s;
}

// Straightforward recursive tree, written without the library's helpers.
Hash brute_force_root(std::vector<Hash> level)
{
    for (Hash& h : level) {
        Bytes b{0x00};
        b.insert(b.end(), h.bytes.begin(), h.bytes.end());
        h = sha256(b);
    }
    while (level.size() > 1) {
        if (level.size() % 2) level.push_back(level.back());
        std::vector<Hash> next;
        for (size_t i = 0; i < level.size(); i += 2) {
            Bytes b{0x01};
            b.insert(b.end(), level[i].bytes.begin(), level[i].bytes.end());
            b.insert(b.end(), level[i + 1].bytes.begin(), level[i + 1].bytes.end());
            next.push_back(sha256(b));
        }
        level = std::move(next);
    }
    return level[0];
}

const SignatureContext kNoSig{Hash{}};

} // namespace

// ===========================================================================
// Hashing and encoding
// ===========================================================================

TEST_CASE("sha256 matches the standard test vectors")
{
    CHECK(sha256(as_bytes("abc")).to_hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256(as_bytes("")).to_hex() == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256(as_bytes("ab"), as_bytes("c")) == sha256(as_bytes("abc")));
}

TEST_CASE("hash hex form is 64 lowercase characters and round-trips")
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const Hash h = random_hash(rng);
        const std::string hex = h.to_hex();
        CHECK(hex.size() == 64);
        CHECK(hex.find_first_not_of("0123456789abcdef") == std::string::npos);
        CHECK(Hash::from_hex(hex) == h);
    }
    CHECK_THROWS_AS(Hash::from_hex("zz"), Error);
    CHECK_THROWS_AS(Hash::from_hex(std::string(63, 'a')), Error);
}

TEST_CASE("script encoding round-trips and rejects malformed bytes")
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < 500; ++i) {
        const Script s = random_script(rng);
        CHECK(Script::decode(s.encode()) == s);
    }
    const Bytes unknown{0x99};
    CHECK_THROWS_AS(Script::decode(unknown), Error);
    const Bytes truncated{0x4d, 0x05, 0x00, 0x01};
    CHECK_THROWS_AS(Script::decode(truncated), Error);
    CHECK_THROWS_AS(Script{{push(Bytes(kMaxPushSize + 1))}}.encode(), Error);
    CHECK_NOTHROW(Script{{push(Bytes(kMaxPushSize))}}.encode());
}

TEST_CASE("transactions and blocks round-trip byte-exactly")
{
    ChainGenerator gen(3);
    for (const Block& b : random_chain(gen, {.blocks = 40, .max_txs = 4})) {
        const Bytes enc = b.encode();
        const Block back = Block::decode(enc);
        CHECK(back == b);
        CHECK(back.encode() == enc);
        for (const Transaction& tx : b.transactions) CHECK(Transaction::decode(tx.encode()) == tx);
    }
    Bytes junk = gen.genesis().encode();
    junk.push_back(0);
    CHECK_THROWS_AS(Block::decode(junk), Error);
}

TEST_CASE("txid is deterministic and sensitive to every value")
{
    ChainGenerator gen(4);
    const Transaction tx = gen.spend(gen.genesis_hash(), OutPoint{compute_txid(gen.genesis().transactions[0]), 0},
                                     {gen.pay_to_key(1, kCoin), gen.pay_to_key(2, kCoin)});
    Transaction copy = tx;
    CHECK(compute_txid(copy) == compute_txid(tx));
    copy.outputs[1].value += 1;
    CHECK(compute_txid(copy) != compute_txid(tx));
    // The signing digest ignores script_sigs, the txid does not.
    Transaction unsigned_tx = tx;
    unsigned_tx.inputs[0].script_sig = Script{};
    CHECK(signing_digest(unsigned_tx) == signing_digest(tx));
    CHECK(compute_txid(unsigned_tx) != compute_txid(tx));
}

TEST_CASE("coinbase commits to its height")
{
    for (uint32_t h : {0u, 1u, 299u, 0xfffffffeu}) {
        const Transaction cb = make_coinbase(h, {TxOutput{kBlockReward, Script{{op(Opcode::True)}}}});
        CHECK(cb.is_coinbase());
        CHECK(coinbase_height(cb) == h);
    }
}

// ===========================================================================
// Merkle tree
// ===========================================================================

TEST_CASE("merkle root of one leaf is the tagged leaf hash")
{
    std::mt19937_64 rng(5);
    const Hash t = random_hash(rng);
    Bytes b{kMerkleLeafTag};
    b.insert(b.end(), t.bytes.begin(), t.bytes.end());
    CHECK(compute_merkle_root(std::vector<Hash>{t}) == sha256(b));
    CHECK_THROWS_AS(compute_merkle_root(std::vector<Hash>{}), Error);
}

TEST_CASE("merkle root is order sensitive and duplicates the odd leaf")
{
    std::mt19937_64 rng(6);
    const Hash t1 = random_hash(rng), t2 = random_hash(rng), t3 = random_hash(rng);
    CHECK(compute_merkle_root(std::vector<Hash>{t1, t2}) != compute_merkle_root(std::vector<Hash>{t2, t1}));
    CHECK(compute_merkle_root(std::vector<Hash>{t1, t2, t3}) == compute_merkle_root(std::vector<Hash>{t1, t2, t3, t3}));
    CHECK(compute_merkle_root(std::vector<Hash>{t1, t2, t3}) == brute_force_root({t1, t2, t3, t3}));
}

TEST_CASE("merkle root agrees with a brute-force tree and changes with any txid")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Hash> txids(1 + rng() % 64);
        for (Hash& h : txids) h = random_hash(rng);
        const Hash root = compute_merkle_root(txids);
        CHECK(root == brute_force_root(txids));
        const size_t i = rng() % txids.size();
        txids[i].bytes[rng() % 32] ^= static_cast<uint8_t>(1 + rng() % 255);
        CHECK(compute_merkle_root(txids) != root);
    }
}

// ===========================================================================
// Block hash and proof of work
// ===========================================================================

TEST_CASE("genesis block hash matches the pinned value")
{
    // Reproduced by tests/oracles/genesis_hash.py, which re-encodes the block from scratch.
    const Block g = make_genesis(0);
    CHECK(compute_txid(g.transactions[0]).to_hex() == "4e17222e2d18eee8412f390fef3db2488bb789ee07ab14236b6645b9c3cfac62");
    CHECK(g.header.merkle_root.to_hex() == "9701261ad5f45eb5a8822aa038458bac74f00d84d527461e1d7a550a58519f07");
    CHECK(compute_block_hash(g.header).to_hex() == "fe54e0aded2c828e68eabeeac4e76d27ea8840faa9d39ff05b90fc38bc47dfdb");
}

TEST_CASE("block hash covers the nonce")
{
    BlockHeader h = make_genesis(0).header;
    const Hash a = compute_block_hash(h);
    CHECK(compute_block_hash(h) == a);
    ++h.nonce;
    CHECK(compute_block_hash(h) != a);
}

TEST_CASE("leading zero bits")
{
    Hash h;
    CHECK(leading_zero_bits(h) == 256);
    h.bytes[0] = 0x80;
    CHECK(leading_zero_bits(h) == 0);
    h.bytes[0] = 0x01;
    CHECK(leading_zero_bits(h) == 7);
    h.bytes[0] = 0x00;
    h.bytes[1] = 0x10;
    CHECK(leading_zero_bits(h) == 11);
    CHECK(block_work(0) == 1);
    CHECK(block_work(10) == 1024);
}

TEST_CASE("mine_block meets its difficulty and is deterministic")
{
    const Transaction cb = make_coinbase(1, {TxOutput{kBlockReward, Script{{op(Opcode::True)}}}});
    const Block easy = mine_block(Hash{}, {cb}, 0, 7);
    CHECK(easy.header.nonce == 0);
    CHECK(easy.header.merkle_root == compute_merkle_root(compute_txids(easy)));

    const Block hard = mine_block(Hash{}, {cb}, 8, 7);
    CHECK(compute_block_hash(hard.header).bytes[0] == 0x00);
    CHECK(meets_difficulty(compute_block_hash(hard.header), 8));
    CHECK(mine_block(Hash{}, {cb}, 8, 7) == hard);

    for (unsigned d = 0; d <= 12; ++d) {
        const Block b = mine_block(Hash{}, {cb}, d, d);
        CHECK(meets_difficulty(compute_block_hash(b.header), d));
    }

    BlockHeader top = easy.header;
    CHECK_THROWS_AS(mine_header(top, 64, ~uint64_t{0}), Error);
}

// ===========================================================================
// Output templates and the interpreter
// ===========================================================================

TEST_CASE("output templates")
{
    const TxOutput acs = build_output(AnyoneCanSpend{}, 0);
    CHECK(acs.script_pubkey == Script{{op(Opcode::True)}});

    const Hash h = sha256(as_bytes("pubkey"));
    const TxOutput p2h = build_output(PayToHash{h}, 50);
    CHECK(p2h.value == 50);
    REQUIRE(p2h.script_pubkey.ops.size() == 5);
    CHECK(p2h.script_pubkey.ops[0].code == Opcode::Dup);
    CHECK(p2h.script_pubkey.ops[1].code == Opcode::Hash);
    CHECK(p2h.script_pubkey.ops[2] == push(h.span()));
    CHECK(p2h.script_pubkey.ops[3].code == Opcode::EqualVerify);
    CHECK(p2h.script_pubkey.ops[4].code == Opcode::CheckSig);
    CHECK(is_pay_to_hash(p2h.script_pubkey));
    CHECK(pay_to_hash_payload(p2h.script_pubkey) == h);

    const std::string msg = "Hi mom! I love you.";
    const TxOutput data = build_output(DataCarrier{Bytes(msg.begin(), msg.end())}, 0);
    CHECK(data.script_pubkey.is_unspendable());
    REQUIRE(data.script_pubkey.ops.size() == 2);
    CHECK(data.script_pubkey.ops[1].data == Bytes(msg.begin(), msg.end()));
    CHECK_FALSE(is_pay_to_hash(data.script_pubkey));

    CHECK_THROWS_AS(build_output(AnyoneCanSpend{}, -1), Error);
    CHECK_THROWS_AS(build_output(AnyoneCanSpend{}, kMaxMoney + 1), Error);
    CHECK_THROWS_AS(build_output(DataCarrier{Bytes(kMaxPushSize + 1)}, 0), Error);
}

TEST_CASE("eval_script examples")
{
    const Script true_script{{op(Opcode::True)}};
    CHECK(eval_script(Script{}, true_script, kNoSig));

    ChainGenerator gen(8);
    const KeyPair& key = gen.key(0);
    const Hash msg = sha256(as_bytes("message"));
    const Script p2h = make_script(PayToHash{key.pubkey_hash()});
    const Script good{{push(key.sign(msg)), push(key.pubkey())}};
    CHECK(eval_script(good, p2h, SignatureContext{msg}));
    CHECK_FALSE(eval_script(good, p2h, SignatureContext{sha256(as_bytes("other"))}));
    const Script wrong_key{{push(gen.key(1).sign(msg)), push(gen.key(1).pubkey())}};
    CHECK(verify_script(wrong_key, p2h, SignatureContext{msg}) == ScriptError::EqualVerifyFailed);
    CHECK(verify_script(Script{}, p2h, SignatureContext{msg}) == ScriptError::StackUnderflow);

    const Script data = make_script(DataCarrier{Bytes{1, 2, 3}});
    CHECK_FALSE(eval_script(Script{}, data, kNoSig));
    CHECK_FALSE(eval_script(good, data, SignatureContext{msg}));
    CHECK(verify_script(Script{}, data, kNoSig) == ScriptError::OpReturn);
}

TEST_CASE("a TRUE script_pubkey accepts every non-aborting push-only script_sig")
{
    std::mt19937_64 rng(9);
    const Script true_script{{op(Opcode::True)}};
    for (int i = 0; i < 1000; ++i) {
        Script sig;
        const size_t n = rng() % 6;
        for (size_t k = 0; k < n; ++k) {
            sig.ops.push_back(rng() % 4 ? push(random_bytes(rng, rng() % 100)) : op(Opcode::False));
        }
        CHECK(sig.is_push_only());
        CHECK(eval_script(sig, true_script, kNoSig));
    }
    // A script_sig that deliberately terminates still fails.
    CHECK_FALSE(eval_script(Script{{op(Opcode::Return)}}, true_script, kNoSig));
}

TEST_CASE("cast_to_bool is false only for all-zero elements")
{
    CHECK_FALSE(cast_to_bool(Bytes{}));
    CHECK_FALSE(cast_to_bool(Bytes{0, 0}));
    CHECK(cast_to_bool(Bytes{1}));
    CHECK(cast_to_bool(Bytes{0x80, 0}));
}

TEST_CASE("Ed25519 signatures verify only for the signed message and key")
{
    ChainGenerator gen(10);
    const Hash msg = sha256(as_bytes("m"));
    const Bytes sig = gen.key(0).sign(msg);
    CHECK(sig.size() == 64);
    CHECK(gen.key(0).sign(msg) == sig);
    CHECK(default_verifier().verify(sig, gen.key(0).pubkey(), msg));
    CHECK_FALSE(default_verifier().verify(sig, gen.key(1).pubkey(), msg));
    CHECK_FALSE(default_verifier().verify(sig, gen.key(0).pubkey(), sha256(as_bytes("n"))));
    CHECK_FALSE(default_verifier().verify(Bytes(10), gen.key(0).pubkey(), msg));
    CHECK_FALSE(default_verifier().verify(sig, Bytes(5), msg));
}
