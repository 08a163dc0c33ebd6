// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace fple::cli;

    CLI::App app{"fple: UTXO node with local output erasure"};
    app.require_subcommand(1);

    EraseArgs erase;
    CLI::App* erase_cmd = app.add_subcommand("erase", "erase transaction outputs from a stopped node's data directory");
    erase_cmd->add_option("--config", erase.config, "erase configuration (JSON)")->required();
    erase_cmd->add_option("--datadir", erase.datadir, "node data directory")->required();
    erase_cmd->add_option("--mode", erase.mode, "default mode for targets without one")
        ->check(CLI::IsMember({"anyonecanspend", "commitment"}));

    SyncArgs sync;
    std::string preseed, erase_config;
    CLI::App* sync_cmd = app.add_subcommand("sync", "bootstrap or extend a node from a chain file");
    sync_cmd->add_option("--datadir", sync.datadir, "node data directory")->required();
    sync_cmd->add_option("--chain", sync.chain, "chain file")->required();
    auto* pre_opt = sync_cmd->add_option("--preseed", preseed, "erasure records to import before syncing");
    auto* cfg_opt = sync_cmd->add_option("--erase-config", erase_config, "erase targets as their blocks arrive");
    pre_opt->excludes(cfg_opt);
    sync_cmd->add_flag("--validate-records", sync.validate_records, "check preseeded records against the chain");
    sync_cmd->add_option("--maturity", sync.maturity, "burial depth before raw blocks may be pruned");
    sync_cmd->add_flag("--prune", sync.prune, "prune raw blocks buried deeper than --maturity");

    SimulateArgs sim;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "run a network scenario");
    sim_cmd->add_option("--scenario", sim.scenario, "scenario file (JSON)")->required();
    sim_cmd->add_option("--out", sim.out, "report directory")->required();

    ExportArgs exp;
    std::string exp_out;
    CLI::App* exp_cmd = app.add_subcommand("export", "export erasure records");
    exp_cmd->add_option("--datadir", exp.datadir, "node data directory")->required();
    exp_cmd->add_option("--txid", exp.txids, "txid to export (repeatable)")->required();
    exp_cmd->add_option("--out", exp_out, "output file (default: stdout)");

    ImportArgs imp;
    CLI::App* imp_cmd = app.add_subcommand("import", "import erasure records");
    imp_cmd->add_option("--datadir", imp.datadir, "node data directory")->required();
    imp_cmd->add_option("--records", imp.records, "record file")->required();
    imp_cmd->add_flag("--validate-against-chain", imp.validate, "report records naming unknown blocks");

    GenChainArgs gen;
    std::string gen_cfg;
    CLI::App* gen_cmd = app.add_subcommand("gen-chain", "write a deterministic test chain");
    gen_cmd->add_option("--out", gen.out, "chain file to write")->required();
    gen_cmd->add_option("--blocks", gen.blocks, "blocks after genesis");
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("--difficulty", gen.difficulty, "leading zero bits per block hash")->check(CLI::Range(0, 24));
    gen_cmd->add_option("--data-outputs", gen.data_outputs, "outputs of the data-carrying transaction");
    gen_cmd->add_option("--data-height", gen.data_height, "height of the data-carrying transaction");
    gen_cmd->add_option("--spend-erased-at", gen.spend_erased_at, "height spending two data outputs");
    gen_cmd->add_option("--erase-config-out", gen_cfg, "write an erase config targeting the data transaction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kBadInput;
    }

    if (*erase_cmd) return cmd_erase(erase, std::cout, std::cerr);
    if (*sync_cmd) {
        if (!preseed.empty()) sync.preseed = preseed;
        if (!erase_config.empty()) sync.erase_config = erase_config;
        return cmd_sync(sync, std::cout, std::cerr);
    }
    if (*sim_cmd) return cmd_simulate(sim, std::cout, std::cerr);
    if (*exp_cmd) {
        if (!exp_out.empty()) exp.out = exp_out;
        return cmd_export(exp, std::cout, std::cerr);
    }
    if (*imp_cmd) return cmd_import(imp, std::cout, std::cerr);
    if (!gen_cfg.empty()) gen.erase_config_out = gen_cfg;
    return cmd_gen_chain(gen, std::cout, std::cerr);
}
