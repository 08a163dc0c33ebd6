// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_ERASURE_DB_HPP
#define FPLE_ERASURE_DB_HPP

#include "fple/interpreter.hpp"
#include "fple/primitives.hpp"

#include <array>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fple {

using Salt = std::array<uint8_t, 16>;

struct ErasureMode {
    enum class Kind { AnyoneCanSpend, HashCommitment };

    Kind kind = Kind::AnyoneCanSpend;
    Salt salt{}; // HashCommitment only

    static ErasureMode anyone_can_spend() { return {}; }
    static ErasureMode hash_commitment(const Salt& salt) { return {Kind::HashCommitment, salt}; }

    bool is_commitment() const { return kind == Kind::HashCommitment; }
    /// "anyonecanspend" or "commitment:<32 hex salt>".
    std::string to_string() const;
    static ErasureMode parse(std::string_view text);

    bool operator==(const ErasureMode&) const = default;
};

/// h' = sha256(salt || h)
Hash commit_payload(const Salt& salt, const Hash& h);

/// One erased transaction: the tuple (original txid, redacted tx) plus the
/// block it was found in and, for commitment mode, h' per erased output.
struct ErasureRecord {
    Hash original_txid;
    Hash block_hash;
    ErasureMode mode;
    // Absent when the raw body had already been pruned at erasure time and
    // only UTXO entries could be rewritten.
    std::optional<Transaction> redacted_tx;
    std::set<uint32_t> erased_indices;
    std::map<uint32_t, Hash> commitments;

    bool is_erased(uint32_t index) const { return erased_indices.count(index) != 0; }
    const ErasureMode& mode_of(uint32_t) const { return mode; }

    std::string to_line() const;
    static ErasureRecord from_line(std::string_view line);

    bool operator==(const ErasureRecord&) const = default;
};

struct RedactionResult {
    Transaction redacted;
    std::map<uint32_t, Hash> commitments;
};

/// Replaces the script_pubkey at each index by [TRUE] (or [RETURN] for
/// provably unspendable outputs, which must stay unspendable). Values,
/// inputs and lock_time are untouched. Commitment mode requires every
/// targeted output to be pay-to-hash (NotPayToHash otherwise).
RedactionResult redact_transaction(const Transaction& tx, const std::set<uint32_t>& indices,
                                   const ErasureMode& mode);

enum class SpendCheck { Pass, Fail, Unverifiable };
std::string_view spend_check_name(SpendCheck c);

/// Validates a spend of an erased output without the erased payload. Only
/// commitment-mode records can be checked; anyone-can-spend yields
/// Unverifiable.
SpendCheck check_erased_spend(const ErasureRecord& record, uint32_t index, const Script& script_sig,
                              const SignatureContext& ctx);

class ErasureDb {
public:
    using Map = std::map<Hash, ErasureRecord>;

    struct Lookup {
        const ErasureRecord* record = nullptr;
        bool erased() const { return record != nullptr; }
        bool absent() const { return record == nullptr; }
    };

    enum class InsertResult { Inserted, Duplicate, Conflict };

    Lookup lookup(const Hash& original_txid) const { return {find(original_txid)}; }
    const ErasureRecord* find(const Hash& original_txid) const;
    /// Whether the output at (txid, index) has been erased.
    bool is_erased(const OutPoint& out) const;

    /// First writer wins: an existing record for the same txid is kept.
    InsertResult insert(ErasureRecord record);
    /// Overwrites; used when further indices of an already-erased tx are erased.
    void replace(ErasureRecord record);

    /// Maps the txid of a stored redacted transaction back to the original.
    std::optional<Hash> original_of(const Hash& redacted_txid) const;
    bool salt_in_use(const Salt& salt) const;

    size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const Map& records() const { return records_; }

    /// One record per line, sorted by txid (see docs/formats.md).
    std::string serialize() const;
    static ErasureDb parse(std::string_view text);
    void save(const std::filesystem::path& path) const;
    static ErasureDb load(const std::filesystem::path& path);

    bool operator==(const ErasureDb& other) const { return records_ == other.records_; }

private:
    void index(const ErasureRecord& record);
    void unindex(const ErasureRecord& record);

    Map records_;
    std::unordered_map<Hash, Hash> by_redacted_;
    std::multiset<Salt> salts_;
};

/// Throws UnknownTxid for txids without a record.
std::string export_records(const ErasureDb& db, std::span<const Hash> txids);

enum class ImportPolicy { TrustSource, ValidateAgainstChain };

struct ImportReport {
    size_t imported = 0;
    std::vector<Hash> conflicts;  // different record already present; existing kept
    std::vector<Hash> duplicates; // byte-identical record already present
    std::vector<Hash> pending_chain_check;
};

/// Parses the whole file first (ParseError leaves the db untouched), then
/// inserts first-writer-wins. Under ValidateAgainstChain the inserted txids
/// are listed for a later check_records_against_chain.
ImportReport import_records(ErasureDb& db, std::string_view file, ImportPolicy policy);

/// Txids among `txids` whose record names a block hash not in the header chain.
std::vector<Hash> check_records_against_chain(const ErasureDb& db, std::span<const Hash> txids,
                                              const std::function<bool(const Hash&)>& has_header);

} // namespace fple

#endif // FPLE_ERASURE_DB_HPP
