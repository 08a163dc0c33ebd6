// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/cli.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <fstream>
#include <random>
#include <unistd.h>

namespace fple::cli {

using nlohmann::ordered_json;

namespace {

constexpr std::string_view kChainMagic = "FPLECHN1";

[[noreturn]] void config_error(const std::string& msg) { throw Error(Errc::ConfigError, msg); }

Hash parse_hash(const std::string& text, const char* what)
{
    try {
        return Hash::from_hex(text);
    } catch (const Error&) {
        config_error(std::string("invalid ") + what + " '" + text + "'");
    }
}

std::vector<uint32_t> parse_indices(const ordered_json& list)
{
    if (!list.is_array()) config_error("output list must be an array");
    std::vector<uint32_t> out;
    for (const ordered_json& v : list) {
        if (!v.is_number_integer() || v.get<int64_t>() < 0 || v.get<int64_t>() > 0xffffffffLL) {
            config_error("output indices must be non-negative integers");
        }
        out.push_back(v.get<uint32_t>());
    }
    return out;
}

} // namespace

// ===========================================================================
// Erase configuration
// ===========================================================================

EraseConfigFile EraseConfigFile::parse(std::string_view text)
{
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        config_error(std::string("erase config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) config_error("erase config must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "chain" && key != "erase") config_error("unknown key '" + key + "'");
    }

    EraseConfigFile cfg;
    if (doc.contains("chain")) {
        if (!doc["chain"].is_string()) config_error("'chain' must be a string");
        cfg.chain = doc["chain"].get<std::string>();
    }
    if (!doc.contains("erase")) return cfg;
    if (!doc["erase"].is_object()) config_error("'erase' must be an object");
    for (const auto& [block_hex, txs] : doc["erase"].items()) {
        const Hash block = parse_hash(block_hex, "block hash");
        if (!txs.is_object()) config_error("entries under a block hash must be an object");
        auto& slot = cfg.erase[block];
        for (const auto& [txid_hex, target] : txs.items()) {
            EraseEntry entry;
            if (target.is_array()) {
                entry.outputs = parse_indices(target);
            } else if (target.is_object()) {
                for (const auto& [key, value] : target.items()) {
                    if (key != "outputs" && key != "mode") config_error("unknown key '" + key + "' in target");
                }
                if (!target.contains("outputs")) config_error("target needs 'outputs'");
                entry.outputs = parse_indices(target["outputs"]);
                if (target.contains("mode")) {
                    if (!target["mode"].is_string()) config_error("'mode' must be a string");
                    entry.mode = target["mode"].get<std::string>();
                    resolve_mode(entry.mode, std::nullopt); // validates the spelling
                }
            } else {
                config_error("target must be an index list or an object");
            }
            if (!slot.emplace(parse_hash(txid_hex, "txid"), std::move(entry)).second) {
                config_error("duplicate txid " + txid_hex);
            }
        }
    }
    return cfg;
}

std::string EraseConfigFile::print() const
{
    // Hand-assembled so index lists stay on one line.
    auto quote = [](const std::string& t) { return ordered_json(t).dump(); };
    auto list = [](const std::vector<uint32_t>& v) {
        std::string t = "[";
        for (size_t i = 0; i < v.size(); ++i) t += (i ? ", " : "") + std::to_string(v[i]);
        return t + "]";
    };
    std::string out = "{\n  \"chain\": " + quote(chain) + ",\n  \"erase\": {";
    bool first_block = true;
    for (const auto& [block, txs] : erase) {
        out += first_block ? "\n" : ",\n";
        first_block = false;
        out += "    " + quote(block.to_hex()) + ": {";
        bool first_tx = true;
        for (const auto& [txid, entry] : txs) {
            out += first_tx ? "\n" : ",\n";
            first_tx = false;
            out += "      " + quote(txid.to_hex()) + ": ";
            if (entry.mode) {
                out += "{\"outputs\": " + list(entry.outputs) + ", \"mode\": " + quote(*entry.mode) + "}";
            } else {
                out += list(entry.outputs);
            }
        }
        out += txs.empty() ? "}" : "\n    }";
    }
    out += erase.empty() ? "}\n}\n" : "\n  }\n}\n";
    return out;
}

ErasureMode resolve_mode(const std::optional<std::string>& mode, const std::optional<std::string>& fallback)
{
    const std::string text = mode ? *mode : fallback.value_or("anyonecanspend");
    if (text == "commitment") {
        std::random_device rd;
        Salt salt{};
        for (uint8_t& b : salt) b = static_cast<uint8_t>(rd());
        return ErasureMode::hash_commitment(salt);
    }
    try {
        return ErasureMode::parse(text);
    } catch (const Error&) {
        config_error("unknown erasure mode '" + text + "'");
    }
}

EraseTargets to_targets(const EraseConfigFile& cfg)
{
    EraseTargets targets;
    for (const auto& [block, txs] : cfg.erase) {
        for (const auto& [txid, entry] : txs) {
            targets[block][txid] =
                EraseTarget{std::set<uint32_t>(entry.outputs.begin(), entry.outputs.end()), resolve_mode(entry.mode, {})};
        }
    }
    return targets;
}

// ===========================================================================
// Chain files
// ===========================================================================

Bytes ChainFile::encode() const
{
    Writer w;
    w.raw(as_bytes(kChainMagic));
    w.u32(difficulty);
    w.u32(static_cast<uint32_t>(blocks.size()));
    for (const Block& b : blocks) w.var_bytes(b.encode());
    return std::move(w).take();
}

ChainFile ChainFile::decode(ByteSpan data)
{
    Reader r(data);
    ByteSpan magic = r.raw(kChainMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kChainMagic.begin())) {
        throw Error(Errc::DecodeError, "not a chain file");
    }
    ChainFile file;
    file.difficulty = r.u32();
    const uint32_t count = r.u32();
    if (count == 0) throw Error(Errc::DecodeError, "chain file without genesis");
    for (uint32_t i = 0; i < count; ++i) file.blocks.push_back(Block::decode(r.var_bytes()));
    r.expect_done("chain file");
    return file;
}

void ChainFile::save(const std::filesystem::path& path) const
{
    const Bytes data = encode();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(Errc::StoreError, "cannot write " + path.string());
}

ChainFile ChainFile::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ConfigError, "cannot read " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode(data);
}

// ===========================================================================
// Lock file
// ===========================================================================

DataDirLock::DataDirLock(const std::filesystem::path& dir) : path_(dir / "node.lock")
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
    if (fd < 0) {
        if (errno == EEXIST) throw Error(Errc::LockHeld, path_.string() + " exists; is another process using it?");
        throw Error(Errc::StoreError, "cannot create " + path_.string() + ": " + std::strerror(errno));
    }
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] ssize_t n = ::write(fd, pid.data(), pid.size());
    ::close(fd);
}

DataDirLock::~DataDirLock()
{
    std::error_code ec;
    std::filesystem::remove(path_, ec);
}

} // namespace fple::cli
