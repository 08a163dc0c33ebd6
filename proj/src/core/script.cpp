// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/script.hpp"

#include "fple/error.hpp"
#include "fple/serialize.hpp"

namespace fple {

std::string_view opcode_name(Opcode op)
{
    switch (op) {
    case Opcode::False: return "FALSE";
    case Opcode::Push: return "PUSH";
    case Opcode::True: return "TRUE";
    case Opcode::Return: return "RETURN";
    case Opcode::Dup: return "DUP";
    case Opcode::EqualVerify: return "EQUALVERIFY";
    case Opcode::Hash: return "HASH";
    case Opcode::CheckSig: return "CHECKSIG";
    }
    return "UNKNOWN";
}

Bytes Script::encode() const
{
    Writer w;
    for (const Op& o : ops) {
        w.u8(static_cast<uint8_t>(o.code));
        if (o.code == Opcode::Push) {
            if (o.data.size() > kMaxPushSize) {
                throw Error(Errc::PayloadTooLarge, std::to_string(o.data.size()) + " byte push");
            }
            w.u16(static_cast<uint16_t>(o.data.size()));
            w.raw(o.data);
        }
    }
    return std::move(w).take();
}

Script Script::decode(ByteSpan data)
{
    Reader r(data);
    Script s;
    while (!r.done()) {
        auto code = static_cast<Opcode>(r.u8());
        switch (code) {
        case Opcode::Push: {
            uint16_t len = r.u16();
            if (len > kMaxPushSize) throw Error(Errc::DecodeError, "push exceeds 520 bytes");
            ByteSpan payload = r.raw(len);
            s.ops.push_back(push(payload));
            break;
        }
        case Opcode::False:
        case Opcode::True:
        case Opcode::Return:
        case Opcode::Dup:
        case Opcode::EqualVerify:
        case Opcode::Hash:
        case Opcode::CheckSig:
            s.ops.push_back(op(code));
            break;
        default:
            throw Error(Errc::DecodeError, "unknown opcode");
        }
    }
    return s;
}

bool Script::is_push_only() const
{
    for (const Op& o : ops) {
        if (o.code != Opcode::Push && o.code != Opcode::True && o.code != Opcode::False) return false;
    }
    return true;
}

std::string Script::to_string() const
{
    std::string out;
    for (const Op& o : ops) {
        if (!out.empty()) out += ' ';
        if (o.code == Opcode::Push) {
            out += '<' + to_hex(o.data) + '>';
        } else {
            out += opcode_name(o.code);
        }
    }
    return out;
}

Script make_script(const OutputTemplate& tmpl)
{
    struct Visitor {
        Script operator()(const PayToHash& p) const
        {
            return Script{{op(Opcode::Dup), op(Opcode::Hash), push(p.hash.span()),
                           op(Opcode::EqualVerify), op(Opcode::CheckSig)}};
        }
        Script operator()(const AnyoneCanSpend&) const { return Script{{op(Opcode::True)}}; }
        Script operator()(const DataCarrier& d) const
        {
            if (d.payload.size() > kMaxPushSize) {
                throw Error(Errc::PayloadTooLarge, std::to_string(d.payload.size()) + " byte payload");
            }
            return Script{{op(Opcode::Return), push(d.payload)}};
        }
    };
    return std::visit(Visitor{}, tmpl);
}

bool is_pay_to_hash(const Script& s)
{
    return s.ops.size() == 5 && s.ops[0].code == Opcode::Dup && s.ops[1].code == Opcode::Hash &&
           s.ops[2].code == Opcode::Push && s.ops[2].data.size() == Hash::kSize &&
           s.ops[3].code == Opcode::EqualVerify && s.ops[4].code == Opcode::CheckSig;
}

std::optional<Hash> pay_to_hash_payload(const Script& s)
{
    if (!is_pay_to_hash(s)) return std::nullopt;
    return Hash::from_bytes(s.ops[2].data);
}

} // namespace fple
