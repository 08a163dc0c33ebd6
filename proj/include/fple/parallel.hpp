// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_PARALLEL_HPP
#define FPLE_PARALLEL_HPP

// Data-parallel kernels. Each has a *_serial twin that is the reference
// the tests and the benchmark compare against.

#include "fple/interpreter.hpp"
#include "fple/primitives.hpp"

#include <span>
#include <vector>

namespace fple::par {

struct ScriptCheck {
    const Script* script_sig = nullptr;
    Script script_pubkey;
    Hash message;
    const SignatureVerifier* verifier = &default_verifier();
    size_t tx_index = 0;
};

std::vector<ScriptError> run_script_checks_serial(std::span<const ScriptCheck> checks);
std::vector<ScriptError> run_script_checks(std::span<const ScriptCheck> checks);

std::vector<Hash> compute_txids_serial(std::span<const Transaction> txs);
std::vector<Hash> compute_txids(std::span<const Transaction> txs);

struct ScanHit {
    size_t needle = 0;
    size_t offset = 0;
    auto operator<=>(const ScanHit&) const = default;
};

/// Every occurrence of every needle in the haystack, sorted by (needle, offset).
std::vector<ScanHit> scan_serial(ByteSpan haystack, std::span<const Bytes> needles);
std::vector<ScanHit> scan(ByteSpan haystack, std::span<const Bytes> needles);

int max_threads();

} // namespace fple::par

#endif // FPLE_PARALLEL_HPP
