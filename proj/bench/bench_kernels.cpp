// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/chaingen.hpp"
#include "fple/parallel.hpp"
#include "fple/validation.hpp"

#include <benchmark/benchmark.h>

using namespace fple;

namespace {

struct ScriptFixture {
    std::vector<Transaction> txs;
    std::vector<Script> pubkeys;
    std::vector<par::ScriptCheck> checks;

    explicit ScriptFixture(size_t count)
    {
        ChainGenerator gen(1);
        txs.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            const KeyPair& key = gen.key(i % gen.key_count());
            const Hash msg = sha256(as_bytes("bench" + std::to_string(i)));
            Transaction tx;
            tx.inputs.push_back({OutPoint{msg, 0}, Script{{push(key.sign(msg)), push(key.pubkey())}}});
            tx.outputs.push_back(build_output(PayToHash{key.pubkey_hash()}, kCoin));
            txs.push_back(std::move(tx));
            checks.push_back({&txs.back().inputs[0].script_sig, txs.back().outputs[0].script_pubkey, msg});
        }
    }
};

const ScriptFixture& scripts()
{
    static const ScriptFixture f(512);
    return f;
}

struct ScanFixture {
    Bytes haystack;
    std::vector<Bytes> needles;

    ScanFixture()
    {
        std::mt19937_64 rng(2);
        haystack.resize(8 << 20);
        for (uint8_t& b : haystack) b = static_cast<uint8_t>(rng());
        for (int i = 0; i < 16; ++i) {
            Bytes n(32);
            for (uint8_t& b : n) b = static_cast<uint8_t>(rng());
            needles.push_back(std::move(n));
        }
    }
};

const ScanFixture& scan_data()
{
    static const ScanFixture f;
    return f;
}

void BM_ScriptChecksSerial(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(par::run_script_checks_serial(scripts().checks));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(scripts().checks.size()));
}

void BM_ScriptChecksParallel(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(par::run_script_checks(scripts().checks));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(scripts().checks.size()));
}

void BM_TxidsSerial(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(par::compute_txids_serial(scripts().txs));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(scripts().txs.size()));
}

void BM_TxidsParallel(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(par::compute_txids(scripts().txs));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(scripts().txs.size()));
}

void BM_ScanSerial(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(par::scan_serial(scan_data().haystack, scan_data().needles));
    state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(scan_data().haystack.size()));
}

void BM_ScanParallel(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(par::scan(scan_data().haystack, scan_data().needles));
    state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(scan_data().haystack.size()));
}

} // namespace

BENCHMARK(BM_ScriptChecksSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScriptChecksParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TxidsSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TxidsParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
