// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/interpreter.hpp"

namespace fple {

std::string_view script_error_name(ScriptError err)
{
    switch (err) {
    case ScriptError::Ok: return "ok";
    case ScriptError::StackUnderflow: return "stack-underflow";
    case ScriptError::OpReturn: return "op-return";
    case ScriptError::EqualVerifyFailed: return "equalverify-failed";
    case ScriptError::PushTooLarge: return "push-too-large";
    case ScriptError::EvalFalse: return "eval-false";
    }
    return "unknown";
}

bool cast_to_bool(ByteSpan element)
{
    for (uint8_t b : element) {
        if (b != 0) return true;
    }
    return false;
}

ScriptError execute(const Script& script, Stack& stack, const SignatureContext& ctx)
{
    for (const Op& o : script.ops) {
        switch (o.code) {
        case Opcode::Push:
            if (o.data.size() > kMaxPushSize) return ScriptError::PushTooLarge;
            stack.push_back(o.data);
            break;
        case Opcode::True:
            stack.push_back(Bytes{1});
            break;
        case Opcode::False:
            stack.emplace_back();
            break;
        case Opcode::Return:
            return ScriptError::OpReturn;
        case Opcode::Dup:
            if (stack.empty()) return ScriptError::StackUnderflow;
            stack.push_back(stack.back());
            break;
        case Opcode::Hash: {
            if (stack.empty()) return ScriptError::StackUnderflow;
            Hash h = sha256(stack.back());
            stack.back().assign(h.bytes.begin(), h.bytes.end());
            break;
        }
        case Opcode::EqualVerify: {
            if (stack.size() < 2) return ScriptError::StackUnderflow;
            bool equal = stack[stack.size() - 1] == stack[stack.size() - 2];
            stack.resize(stack.size() - 2);
            if (!equal) return ScriptError::EqualVerifyFailed;
            break;
        }
        case Opcode::CheckSig: {
            if (stack.size() < 2) return ScriptError::StackUnderflow;
            Bytes pubkey = std::move(stack.back());
            stack.pop_back();
            Bytes sig = std::move(stack.back());
            stack.pop_back();
            bool ok = ctx.verifier->verify(sig, pubkey, ctx.message);
            stack.push_back(ok ? Bytes{1} : Bytes{});
            break;
        }
        }
    }
    return ScriptError::Ok;
}

ScriptError verify_script(const Script& script_sig, const Script& script_pubkey,
                          const SignatureContext& ctx)
{
    Stack stack;
    if (ScriptError err = execute(script_sig, stack, ctx); err != ScriptError::Ok) return err;
    if (ScriptError err = execute(script_pubkey, stack, ctx); err != ScriptError::Ok) return err;
    if (stack.empty() || !cast_to_bool(stack.back())) return ScriptError::EvalFalse;
    return ScriptError::Ok;
}

} // namespace fple
