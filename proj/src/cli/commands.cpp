// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/cli.hpp"

#include "fple/chaingen.hpp"
#include "fple/netsim.hpp"

#include <fstream>
#include <sstream>

namespace fple::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ConfigError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(Errc::StoreError, "cannot write " + path.string());
}

void append_events(const fs::path& datadir, Node& node)
{
    std::ofstream log(datadir / "events.log", std::ios::app);
    for (const NodeEvent& e : node.drain_events()) log << e.to_line() << '\n';
}

// Runs a command body, mapping escaping errors to exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kStoreFailure;
    }
}

} // namespace

int exit_code_for(const Error& e)
{
    switch (e.code()) {
    case Errc::UnknownTxid: return kUnknownTxid;
    case Errc::LockHeld: return kLockHeld;
    case Errc::StoreError: return kStoreFailure;
    default: return kBadInput;
    }
}

// ===========================================================================
// erase
// ===========================================================================

int cmd_erase(const EraseArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const EraseConfigFile cfg = EraseConfigFile::parse(read_text(args.config));
        if (args.mode) resolve_mode(args.mode, std::nullopt);
        DataDirLock lock(args.datadir);
        Node node = Node::open(args.datadir, NodeConfig{});

        bool unknown = false;
        bool failed = false;
        for (const auto& [block, txs] : cfg.erase) {
            for (const auto& [txid, entry] : txs) {
                std::set<uint32_t> indices(entry.outputs.begin(), entry.outputs.end());
                try {
                    ErasureReceipt r = node.erase(txid, indices, resolve_mode(entry.mode, args.mode));
                    out << txid.to_hex() << ": erased " << r.erased.size() << ", already erased "
                        << r.already_erased.size() << ", utxo rewrites " << r.utxo_rewrites << ", undo rewrites "
                        << r.undo_rewrites << ", blocks rewritten " << r.blocks_rewritten.size()
                        << ", blocks pruned " << r.blocks_pruned.size() << "\n";
                    if (!r.block_hash.is_zero() && r.block_hash != block) {
                        out << "  note: found in block " << r.block_hash.to_hex() << "\n";
                    }
                } catch (const Error& e) {
                    if (e.code() == Errc::UnknownTxid) {
                        unknown = true;
                        out << txid.to_hex() << ": unknown txid\n";
                    } else {
                        failed = true;
                        out << txid.to_hex() << ": " << errc_name(e.code()) << ": " << e.what() << "\n";
                    }
                }
            }
        }
        node.flush();
        append_events(args.datadir, node);
        if (unknown) return int{kUnknownTxid};
        return failed ? int{kBadInput} : int{kOk};
    });
}

// ===========================================================================
// sync
// ===========================================================================

int cmd_sync(const SyncArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (args.preseed && args.erase_config) {
            err << "error: --preseed and --erase-config are mutually exclusive\n";
            return int{kBadInput};
        }
        const ChainFile chain = ChainFile::load(args.chain);
        BootstrapMode mode = ValidateThenErase{};
        if (args.preseed) {
            mode = PreSeeded{read_text(*args.preseed),
                             args.validate_records ? ImportPolicy::ValidateAgainstChain : ImportPolicy::TrustSource};
        } else if (args.erase_config) {
            mode = ValidateThenErase{to_targets(EraseConfigFile::parse(read_text(*args.erase_config)))};
        }

        DataDirLock lock(args.datadir);
        NodeConfig nc;
        nc.difficulty = chain.difficulty;
        nc.maturity = args.maturity;
        nc.prune = args.prune;
        Node node = Node::open(args.datadir, nc, chain.blocks.front());
        if (node.active_chain().front() != compute_block_hash(chain.blocks.front().header)) {
            err << "error: data directory holds a different chain\n";
            return int{kBadInput};
        }

        BootstrapResult result = bootstrap(node, std::span(chain.blocks).subspan(1), mode);
        node.flush();
        append_events(args.datadir, node);

        if (result.import.imported || !result.import.conflicts.empty()) {
            out << "records imported " << result.import.imported << ", conflicts " << result.import.conflicts.size()
                << ", duplicates " << result.import.duplicates.size() << "\n";
        }
        for (const Hash& txid : result.unmatched_records) {
            out << "warning: record " << txid.to_hex() << " names a block not in the chain\n";
        }
        for (const auto& [block, txs] : node.erase_targets()) {
            out << "warning: erase target block " << block.to_hex() << " never arrived\n";
        }
        out << "tip " << result.tip.to_hex() << "\nheight " << result.height << "\n";
        if (result.failed_height) {
            err << "error: block at height " << *result.failed_height << " " << result.failure << "\n";
            return int{kSyncRejected};
        }
        return int{kOk};
    });
}

// ===========================================================================
// simulate
// ===========================================================================

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ScenarioConfig cfg = ScenarioConfig::parse(read_text(args.scenario));
        Simulation sim(cfg);
        sim.run();
        const SimReport report = sim.finish();
        fs::create_directories(args.out);
        write_text(args.out / "report.json", report.to_json());
        const std::string text = report.to_text();
        write_text(args.out / "report.txt", text);
        std::string log;
        for (const NodeEvent& e : sim.log()) log += e.to_line() + "\n";
        write_text(args.out / "events.log", log);
        out << text;
        return int{kOk};
    });
}

// ===========================================================================
// export / import
// ===========================================================================

int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        std::vector<Hash> txids;
        for (const std::string& t : args.txids) txids.push_back(Hash::from_hex(t));
        DataDirLock lock(args.datadir);
        Node node = Node::open(args.datadir, NodeConfig{});
        const std::string records = export_records(node.erasure_db(), txids);
        if (args.out) {
            write_text(*args.out, records);
        } else {
            out << records;
        }
        return int{kOk};
    });
}

int cmd_import(const ImportArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const std::string text = read_text(args.records);
        DataDirLock lock(args.datadir);
        Node node = Node::open(args.datadir, NodeConfig{});
        ImportReport report =
            node.import_records(text, args.validate ? ImportPolicy::ValidateAgainstChain : ImportPolicy::TrustSource);
        node.flush();
        append_events(args.datadir, node);
        out << "imported " << report.imported << ", duplicates " << report.duplicates.size() << ", conflicts "
            << report.conflicts.size() << "\n";
        for (const Hash& h : report.conflicts) out << "conflict: " << h.to_hex() << " (existing record kept)\n";
        for (const Hash& h : node.unmatched_imports()) {
            out << "warning: record " << h.to_hex() << " names a block not in the header chain\n";
        }
        return int{kOk};
    });
}

// ===========================================================================
// gen-chain
// ===========================================================================

int cmd_gen_chain(const GenChainArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (args.data_outputs && (args.data_height == 0 || args.data_height > args.blocks)) {
            err << "error: --data-height must lie within the chain\n";
            return int{kBadInput};
        }
        if (args.spend_erased_at && (args.spend_erased_at <= args.data_height || args.spend_erased_at > args.blocks ||
                                     args.data_outputs < 2)) {
            err << "error: --spend-erased-at needs a data tx with two outputs below it\n";
            return int{kBadInput};
        }
        ChainGenerator gen(args.seed, args.difficulty);
        ChainFile file;
        file.difficulty = args.difficulty;
        file.blocks.push_back(gen.genesis());

        std::optional<Transaction> data;
        Hash data_block;
        for (uint32_t h = 1; h <= args.blocks; ++h) {
            const Hash parent = gen.tip();
            std::vector<Transaction> txs = gen.random_txs(parent, gen.rng()() % 3);
            if (args.data_outputs && h == args.data_height) {
                data = gen.data_tx(parent, args.data_outputs, std::min<uint32_t>(2, args.data_outputs));
                const Hash txid = compute_txid(*data);
                for (uint32_t i = 0; i < 2 && i < args.data_outputs; ++i) gen.reserve(OutPoint{txid, i});
                // The funding coin may also be picked by random_txs.
                txs.clear();
                txs.push_back(*data);
            }
            if (data && h == args.spend_erased_at) {
                const Hash txid = compute_txid(*data);
                for (uint32_t i = 0; i < 2; ++i) {
                    txs.push_back(gen.spend(parent, OutPoint{txid, i}, {gen.pay_to_key(0, data->outputs[i].value)}));
                }
            }
            Block block = gen.build(std::move(txs), parent);
            if (data && h == args.data_height) data_block = compute_block_hash(block.header);
            file.blocks.push_back(std::move(block));
        }
        file.save(args.out);

        out << "tip " << gen.tip().to_hex() << "\nheight " << args.blocks << "\n";
        if (data) {
            const Hash txid = compute_txid(*data);
            out << "data_tx " << txid.to_hex() << "\ndata_block " << data_block.to_hex() << "\n";
            if (args.erase_config_out) {
                EraseConfigFile cfg;
                cfg.chain = "fple-regtest";
                EraseEntry entry;
                for (uint32_t i = 0; i < data->outputs.size(); ++i) entry.outputs.push_back(i);
                cfg.erase[data_block][txid] = entry;
                write_text(*args.erase_config_out, cfg.print());
            }
        }
        return int{kOk};
    });
}

} // namespace fple::cli
