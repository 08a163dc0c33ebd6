// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_INTERPRETER_HPP
#define FPLE_INTERPRETER_HPP

#include "fple/hash.hpp"
#include "fple/script.hpp"
#include "fple/signature.hpp"

#include <string_view>
#include <vector>

namespace fple {

enum class ScriptError {
    Ok,
    StackUnderflow,
    OpReturn,
    EqualVerifyFailed,
    PushTooLarge,
    EvalFalse,
};

std::string_view script_error_name(ScriptError err);

using Stack = std::vector<Bytes>;

struct SignatureContext {
    Hash message; // signing digest of the spending transaction
    const SignatureVerifier* verifier = &default_verifier();
};

bool cast_to_bool(ByteSpan element);

/// Runs one script against an existing stack. Stops at the first error.
ScriptError execute(const Script& script, Stack& stack, const SignatureContext& ctx);

/// script_sig then script_pubkey on a shared stack; Ok iff nothing aborted
/// and the top element is truthy.
ScriptError verify_script(const Script& script_sig, const Script& script_pubkey,
                          const SignatureContext& ctx);

inline bool eval_script(const Script& script_sig, const Script& script_pubkey,
                        const SignatureContext& ctx)
{
    return verify_script(script_sig, script_pubkey, ctx) == ScriptError::Ok;
}

} // namespace fple

#endif // FPLE_INTERPRETER_HPP
