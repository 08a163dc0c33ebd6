// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/parallel.hpp"

#include <algorithm>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fple::par {

namespace {

ScriptError run_one(const ScriptCheck& c)
{
    SignatureContext ctx{c.message, c.verifier};
    return verify_script(*c.script_sig, c.script_pubkey, ctx);
}

void scan_needle(ByteSpan hay, const Bytes& needle, size_t needle_index, std::vector<ScanHit>& out)
{
    if (needle.empty() || needle.size() > hay.size()) return;
    auto it = hay.begin();
    for (;;) {
        it = std::search(it, hay.end(), needle.begin(), needle.end());
        if (it == hay.end()) break;
        out.push_back({needle_index, static_cast<size_t>(it - hay.begin())});
        ++it;
    }
}

} // namespace

std::vector<ScriptError> run_script_checks_serial(std::span<const ScriptCheck> checks)
{
    std::vector<ScriptError> out(checks.size());
    for (size_t i = 0; i < checks.size(); ++i) out[i] = run_one(checks[i]);
    return out;
}

std::vector<ScriptError> run_script_checks(std::span<const ScriptCheck> checks)
{
    std::vector<ScriptError> out(checks.size());
    const long n = static_cast<long>(checks.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) out[i] = run_one(checks[i]);
    return out;
}

std::vector<Hash> compute_txids_serial(std::span<const Transaction> txs)
{
    std::vector<Hash> out(txs.size());
    for (size_t i = 0; i < txs.size(); ++i) out[i] = compute_txid(txs[i]);
    return out;
}

std::vector<Hash> compute_txids(std::span<const Transaction> txs)
{
    std::vector<Hash> out(txs.size());
    const long n = static_cast<long>(txs.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[i] = compute_txid(txs[i]);
    return out;
}

std::vector<ScanHit> scan_serial(ByteSpan haystack, std::span<const Bytes> needles)
{
    std::vector<ScanHit> out;
    for (size_t k = 0; k < needles.size(); ++k) scan_needle(haystack, needles[k], k, out);
    return out;
}

std::vector<ScanHit> scan(ByteSpan haystack, std::span<const Bytes> needles)
{
    std::vector<std::vector<ScanHit>> per_needle(needles.size());
    const long n = static_cast<long>(needles.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < n; ++k) scan_needle(haystack, needles[k], static_cast<size_t>(k), per_needle[k]);
    std::vector<ScanHit> out;
    for (auto& v : per_needle) out.insert(out.end(), v.begin(), v.end());
    return out;
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace fple::par
