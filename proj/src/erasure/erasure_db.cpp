// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/erasure_db.hpp"

#include "fple/error.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

namespace fple {

namespace {

constexpr std::string_view kAnyoneCanSpend = "anyonecanspend";
constexpr std::string_view kCommitmentPrefix = "commitment:";

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    size_t start = 0;
    for (;;) {
        size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

uint32_t parse_index(std::string_view s)
{
    uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
        throw Error(Errc::ParseError, "bad output index '" + std::string(s) + "'");
    }
    return v;
}

// ParseError wrapper for the lower-level hex/decode errors.
template <typename F>
auto parse_field(const char* what, F&& f)
{
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == Errc::ParseError) throw;
        throw Error(Errc::ParseError, std::string(what) + ": " + e.what());
    }
}

} // namespace

// ===========================================================================
// ErasureMode / commitments
// ===========================================================================

std::string ErasureMode::to_string() const
{
    if (kind == Kind::AnyoneCanSpend) return std::string(kAnyoneCanSpend);
    return std::string(kCommitmentPrefix) + to_hex(salt);
}

ErasureMode ErasureMode::parse(std::string_view text)
{
    if (text == kAnyoneCanSpend) return anyone_can_spend();
    if (text.substr(0, kCommitmentPrefix.size()) == kCommitmentPrefix) {
        Bytes raw = parse_field("salt", [&] { return from_hex(text.substr(kCommitmentPrefix.size())); });
        if (raw.size() != Salt{}.size()) throw Error(Errc::ParseError, "salt must be 16 bytes");
        Salt salt{};
        std::copy(raw.begin(), raw.end(), salt.begin());
        return hash_commitment(salt);
    }
    throw Error(Errc::ParseError, "unknown erasure mode '" + std::string(text) + "'");
}

Hash commit_payload(const Salt& salt, const Hash& h) { return sha256(salt, h.span()); }

RedactionResult redact_transaction(const Transaction& tx, const std::set<uint32_t>& indices,
                                   const ErasureMode& mode)
{
    RedactionResult result{tx, {}};
    for (uint32_t index : indices) {
        if (index >= tx.outputs.size()) {
            throw Error(Errc::IndexOutOfRange, "output " + std::to_string(index) + " of " +
                                                   std::to_string(tx.outputs.size()));
        }
        Script& script = result.redacted.outputs[index].script_pubkey;
        if (mode.is_commitment()) {
            std::optional<Hash> h = pay_to_hash_payload(script);
            if (!h) throw Error(Errc::NotPayToHash, "output " + std::to_string(index));
            result.commitments.emplace(index, commit_payload(mode.salt, *h));
        }
        script = script.is_unspendable() ? Script{{op(Opcode::Return)}} : Script{{op(Opcode::True)}};
    }
    return result;
}

std::string_view spend_check_name(SpendCheck c)
{
    switch (c) {
    case SpendCheck::Pass: return "pass";
    case SpendCheck::Fail: return "fail";
    case SpendCheck::Unverifiable: return "unverifiable";
    }
    return "?";
}

SpendCheck check_erased_spend(const ErasureRecord& record, uint32_t index, const Script& script_sig,
                              const SignatureContext& ctx)
{
    if (!record.is_erased(index)) throw Error(Errc::IndexOutOfRange, "output is not erased");
    if (!record.mode_of(index).is_commitment()) return SpendCheck::Unverifiable;
    auto commitment = record.commitments.find(index);
    if (commitment == record.commitments.end()) return SpendCheck::Unverifiable;

    // Replays the pay-to-hash template with EQUALVERIFY against h replaced by
    // a comparison of hash(salt || hash(X_s)) against h'.
    Stack stack;
    if (execute(script_sig, stack, ctx) != ScriptError::Ok) return SpendCheck::Fail;
    if (stack.empty()) return SpendCheck::Fail;
    const Bytes& x_s = stack.back();
    if (commit_payload(record.mode.salt, sha256(x_s)) != commitment->second) return SpendCheck::Fail;
    if (stack.size() < 2) return SpendCheck::Fail;
    const Bytes& pubkey = stack[stack.size() - 1];
    const Bytes& sig = stack[stack.size() - 2];
    return ctx.verifier->verify(sig, pubkey, ctx.message) ? SpendCheck::Pass : SpendCheck::Fail;
}

// ===========================================================================
// ErasureRecord line format
// ===========================================================================

std::string ErasureRecord::to_line() const
{
    std::string out = original_txid.to_hex();
    out += ' ';
    out += block_hash.to_hex();
    out += ' ';
    out += mode.to_string();
    out += ' ';
    if (commitments.empty()) {
        out += '-';
    } else {
        bool first = true;
        for (uint32_t i : erased_indices) {
            if (!first) out += ',';
            first = false;
            auto it = commitments.find(i);
            out += it == commitments.end() ? std::string("-") : it->second.to_hex();
        }
    }
    out += ' ';
    out += redacted_tx ? to_hex(redacted_tx->encode()) : std::string("-");
    out += ' ';
    bool first = true;
    for (uint32_t i : erased_indices) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(i);
    }
    return out;
}

ErasureRecord ErasureRecord::from_line(std::string_view line)
{
    std::vector<std::string_view> f = split(line, ' ');
    if (f.size() != 6) throw Error(Errc::ParseError, "expected 6 fields, got " + std::to_string(f.size()));
    ErasureRecord r;
    r.original_txid = parse_field("txid", [&] { return Hash::from_hex(f[0]); });
    r.block_hash = parse_field("block hash", [&] { return Hash::from_hex(f[1]); });
    r.mode = ErasureMode::parse(f[2]);
    if (f[4] != "-") {
        r.redacted_tx = parse_field("redacted tx", [&] { return Transaction::decode(from_hex(f[4])); });
    }
    std::vector<uint32_t> ordered;
    for (std::string_view s : split(f[5], ',')) {
        uint32_t i = parse_index(s);
        if (!ordered.empty() && i <= ordered.back()) throw Error(Errc::ParseError, "indices not ascending");
        ordered.push_back(i);
        r.erased_indices.insert(i);
    }
    if (f[3] != "-") {
        std::vector<std::string_view> c = split(f[3], ',');
        if (c.size() != ordered.size()) throw Error(Errc::ParseError, "commitment count mismatch");
        for (size_t k = 0; k < c.size(); ++k) {
            if (c[k] == "-") continue;
            r.commitments.emplace(ordered[k], parse_field("commitment", [&] { return Hash::from_hex(c[k]); }));
        }
    }
    if (!r.commitments.empty() && !r.mode.is_commitment()) {
        throw Error(Errc::ParseError, "commitments on an anyone-can-spend record");
    }
    if (r.redacted_tx) {
        for (uint32_t i : r.erased_indices) {
            if (i >= r.redacted_tx->outputs.size()) throw Error(Errc::ParseError, "erased index out of range");
        }
    }
    if (r.to_line() != line) throw Error(Errc::ParseError, "non-canonical record line");
    return r;
}

// ===========================================================================
// ErasureDb
// ===========================================================================

const ErasureRecord* ErasureDb::find(const Hash& original_txid) const
{
    auto it = records_.find(original_txid);
    return it == records_.end() ? nullptr : &it->second;
}

bool ErasureDb::is_erased(const OutPoint& out) const
{
    const ErasureRecord* r = find(out.txid);
    return r && r->is_erased(out.index);
}

void ErasureDb::index(const ErasureRecord& record)
{
    if (record.redacted_tx) by_redacted_[compute_txid(*record.redacted_tx)] = record.original_txid;
    if (record.mode.is_commitment()) salts_.insert(record.mode.salt);
}

void ErasureDb::unindex(const ErasureRecord& record)
{
    if (record.redacted_tx) by_redacted_.erase(compute_txid(*record.redacted_tx));
    if (record.mode.is_commitment()) {
        if (auto it = salts_.find(record.mode.salt); it != salts_.end()) salts_.erase(it);
    }
}

ErasureDb::InsertResult ErasureDb::insert(ErasureRecord record)
{
    if (const ErasureRecord* existing = find(record.original_txid)) {
        return *existing == record ? InsertResult::Duplicate : InsertResult::Conflict;
    }
    index(record);
    Hash key = record.original_txid;
    records_.emplace(key, std::move(record));
    return InsertResult::Inserted;
}

void ErasureDb::replace(ErasureRecord record)
{
    if (const ErasureRecord* existing = find(record.original_txid)) unindex(*existing);
    index(record);
    Hash key = record.original_txid;
    records_.insert_or_assign(key, std::move(record));
}

std::optional<Hash> ErasureDb::original_of(const Hash& redacted_txid) const
{
    auto it = by_redacted_.find(redacted_txid);
    if (it == by_redacted_.end()) return std::nullopt;
    return it->second;
}

bool ErasureDb::salt_in_use(const Salt& salt) const { return salts_.count(salt) != 0; }

std::string ErasureDb::serialize() const
{
    std::string out;
    for (const auto& [txid, record] : records_) {
        out += record.to_line();
        out += '\n';
    }
    return out;
}

ErasureDb ErasureDb::parse(std::string_view text)
{
    ErasureDb db;
    size_t line_no = 0;
    size_t start = 0;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) throw Error(Errc::ParseError, "missing final newline");
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        ErasureRecord r;
        try {
            r = ErasureRecord::from_line(line);
        } catch (const Error& e) {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
        }
        if (db.insert(std::move(r)) != InsertResult::Inserted) {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": duplicate txid");
        }
    }
    return db;
}

void ErasureDb::save(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    std::string text = serialize();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(Errc::StoreError, "cannot write " + path.string());
}

ErasureDb ErasureDb::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse(text);
}

// ===========================================================================
// Import / export
// ===========================================================================

std::string export_records(const ErasureDb& db, std::span<const Hash> txids)
{
    std::string out;
    for (const Hash& txid : txids) {
        const ErasureRecord* r = db.find(txid);
        if (!r) throw Error(Errc::UnknownTxid, txid.to_hex());
        out += r->to_line();
        out += '\n';
    }
    return out;
}

ImportReport import_records(ErasureDb& db, std::string_view file, ImportPolicy policy)
{
    // Parse everything first so a malformed file changes nothing. Lines may
    // repeat a txid here; the first one is the one that counts.
    std::vector<ErasureRecord> parsed;
    size_t line_no = 0;
    size_t start = 0;
    while (start < file.size()) {
        size_t end = file.find('\n', start);
        if (end == std::string_view::npos) end = file.size();
        std::string_view line = file.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        try {
            parsed.push_back(ErasureRecord::from_line(line));
        } catch (const Error& e) {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    ImportReport report;
    for (ErasureRecord& r : parsed) {
        Hash txid = r.original_txid;
        switch (db.insert(std::move(r))) {
        case ErasureDb::InsertResult::Inserted:
            ++report.imported;
            if (policy == ImportPolicy::ValidateAgainstChain) report.pending_chain_check.push_back(txid);
            break;
        case ErasureDb::InsertResult::Duplicate: report.duplicates.push_back(txid); break;
        case ErasureDb::InsertResult::Conflict: report.conflicts.push_back(txid); break;
        }
    }
    return report;
}

std::vector<Hash> check_records_against_chain(const ErasureDb& db, std::span<const Hash> txids,
                                              const std::function<bool(const Hash&)>& has_header)
{
    std::vector<Hash> missing;
    for (const Hash& txid : txids) {
        const ErasureRecord* r = db.find(txid);
        if (r && !has_header(r->block_hash)) missing.push_back(txid);
    }
    return missing;
}

} // namespace fple
