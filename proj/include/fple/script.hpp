// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_SCRIPT_HPP
#define FPLE_SCRIPT_HPP

#include "fple/hash.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fple {

static constexpr size_t kMaxPushSize = 520;

enum class Opcode : uint8_t {
    False = 0x00,
    Push = 0x4d,
    True = 0x51,
    Return = 0x6a,
    Dup = 0x76,
    EqualVerify = 0x88,
    Hash = 0xa8,
    CheckSig = 0xac,
};

std::string_view opcode_name(Opcode op);

struct Op {
    Opcode code = Opcode::False;
    Bytes data; // only meaningful for Push

    bool operator==(const Op&) const = default;
};

struct Script {
    std::vector<Op> ops;

    /// Canonical byte form: one byte per opcode; Push is followed by a u16
    /// length and the payload. Throws PayloadTooLarge for pushes > 520 bytes.
    Bytes encode() const;
    /// Rejects unknown opcodes, oversize pushes and truncation (DecodeError).
    static Script decode(ByteSpan data);

    bool empty() const { return ops.empty(); }
    bool is_push_only() const;
    /// RETURN as the first opcode makes the output provably unspendable.
    bool is_unspendable() const { return !ops.empty() && ops.front().code == Opcode::Return; }
    std::string to_string() const;

    bool operator==(const Script&) const = default;
};

inline Op op(Opcode code) { return Op{code, {}}; }
inline Op push(Bytes data) { return Op{Opcode::Push, std::move(data)}; }
inline Op push(ByteSpan data) { return Op{Opcode::Push, Bytes(data.begin(), data.end())}; }

// ---------------------------------------------------------------------------
// Output templates
// ---------------------------------------------------------------------------

struct PayToHash {
    Hash hash;
};
struct AnyoneCanSpend {};
struct DataCarrier {
    Bytes payload;
};
using OutputTemplate = std::variant<PayToHash, AnyoneCanSpend, DataCarrier>;

Script make_script(const OutputTemplate& tmpl);
/// [DUP, HASH, PUSH(h), EQUALVERIFY, CHECKSIG] with a 32-byte h.
bool is_pay_to_hash(const Script& script);
/// The h of a pay-to-hash script, if it matches the template.
std::optional<Hash> pay_to_hash_payload(const Script& script);

} // namespace fple

#endif // FPLE_SCRIPT_HPP
