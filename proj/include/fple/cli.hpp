// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_CLI_HPP
#define FPLE_CLI_HPP

#include "fple/error.hpp"
#include "fple/node.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fple::cli {

enum ExitCode : int {
    kOk = 0,
    kBadInput = 1,       // malformed config, chain or record file; bad arguments
    kUnknownTxid = 2,
    kLockHeld = 3,
    kSyncRejected = 4,   // a block in the chain file failed validation
    kStoreFailure = 5,   // data directory unreadable or inconsistent
};

// ===========================================================================
// Erase configuration
// ===========================================================================

struct EraseEntry {
    std::vector<uint32_t> outputs;
    std::optional<std::string> mode; // "anyonecanspend", "commitment" or "commitment:<salt hex>"

    bool operator==(const EraseEntry&) const = default;
};

struct EraseConfigFile {
    std::string chain;
    std::map<Hash, std::map<Hash, EraseEntry>> erase; // block hash -> txid -> entry

    /// Throws ConfigError.
    static EraseConfigFile parse(std::string_view json);
    std::string print() const;

    bool operator==(const EraseConfigFile&) const = default;
};

/// Resolves an entry's mode string; "commitment" without a salt draws a
/// fresh random one.
ErasureMode resolve_mode(const std::optional<std::string>& mode, const std::optional<std::string>& fallback);

EraseTargets to_targets(const EraseConfigFile& cfg);

// ===========================================================================
// Chain files: "FPLECHN1" | u32 difficulty | u32 count | (u32 size | block)*
// ===========================================================================

struct ChainFile {
    unsigned difficulty = 0;
    std::vector<Block> blocks; // blocks[0] is genesis

    Bytes encode() const;
    static ChainFile decode(ByteSpan data);
    void save(const std::filesystem::path& path) const;
    static ChainFile load(const std::filesystem::path& path);
};

// ===========================================================================
// Data directory lock
// ===========================================================================

class DataDirLock {
public:
    /// Creates <dir>/node.lock exclusively; throws LockHeld if it exists.
    explicit DataDirLock(const std::filesystem::path& dir);
    ~DataDirLock();
    DataDirLock(const DataDirLock&) = delete;
    DataDirLock& operator=(const DataDirLock&) = delete;

private:
    std::filesystem::path path_;
};

// ===========================================================================
// Commands
// ===========================================================================

struct EraseArgs {
    std::filesystem::path config;
    std::filesystem::path datadir;
    std::optional<std::string> mode;
};
int cmd_erase(const EraseArgs& args, std::ostream& out, std::ostream& err);

struct SyncArgs {
    std::filesystem::path datadir;
    std::filesystem::path chain;
    std::optional<std::filesystem::path> preseed;
    std::optional<std::filesystem::path> erase_config;
    bool validate_records = false; // check preseeded records against the synced header chain
    uint32_t maturity = 300;
    bool prune = false;
};
int cmd_sync(const SyncArgs& args, std::ostream& out, std::ostream& err);

struct SimulateArgs {
    std::filesystem::path scenario;
    std::filesystem::path out;
};
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);

struct ExportArgs {
    std::filesystem::path datadir;
    std::vector<std::string> txids;
    std::optional<std::filesystem::path> out;
};
int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err);

struct ImportArgs {
    std::filesystem::path datadir;
    std::filesystem::path records;
    bool validate = false;
};
int cmd_import(const ImportArgs& args, std::ostream& out, std::ostream& err);

struct GenChainArgs {
    std::filesystem::path out;
    uint32_t blocks = 100;
    uint64_t seed = 1;
    unsigned difficulty = 0;
    uint32_t data_outputs = 0; // 0: no data transaction
    uint32_t data_height = 1;
    uint32_t spend_erased_at = 0; // spend two keyed data outputs at this height (0: never)
    std::optional<std::filesystem::path> erase_config_out; // config erasing every data output
};
int cmd_gen_chain(const GenChainArgs& args, std::ostream& out, std::ostream& err);

/// Exit code for an error escaping a command.
int exit_code_for(const Error& e);

} // namespace fple::cli

#endif // FPLE_CLI_HPP
