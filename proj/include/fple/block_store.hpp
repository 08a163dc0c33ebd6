// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_BLOCK_STORE_HPP
#define FPLE_BLOCK_STORE_HPP

#include "fple/primitives.hpp"
#include "fple/utxo.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <vector>

namespace fple {

// Append-only file of fixed slots. A slot is
//   u32 slot_size | u32 payload_len | payload | zero padding
// and may be rewritten in place with a payload no larger than the slot;
// the freed tail is zero-filled so nothing of the old payload survives.
class SlotFile {
public:
    SlotFile() = default;
    explicit SlotFile(std::filesystem::path path);

    struct Slot {
        uint64_t offset = 0;
        uint32_t size = 0;
    };

    Slot append(ByteSpan payload);
    /// Rewrites in place, or moves to a new slot (zeroing the old one) when
    /// the payload does not fit.
    Slot rewrite(Slot slot, ByteSpan payload);
    void zero(Slot slot);
    Bytes read(Slot slot) const;

    const std::optional<std::filesystem::path>& path() const { return path_; }

private:
    void write_through(uint64_t offset, ByteSpan data);

    std::optional<std::filesystem::path> path_;
    Bytes buf_;
};

struct StoredBlockInfo {
    BlockHeader header;
    uint32_t height = 0;
    std::optional<SlotFile::Slot> body;
    std::optional<SlotFile::Slot> undo;
    bool pruned = false;
};

// Raw block bodies and undo data, keyed by block hash. Headers are kept in
// the index even after a body is pruned. Memory-only unless opened on a
// directory, in which case blk.dat / rev.dat / index.dat live there.
class BlockStore {
public:
    BlockStore() = default;
    static BlockStore open(const std::filesystem::path& dir);

    /// No-op if the block is already stored (or was pruned).
    void put(const Hash& hash, const Block& block, uint32_t height);
    void put_header(const Hash& hash, const BlockHeader& header, uint32_t height);
    std::optional<Block> read(const Hash& hash) const;
    void rewrite(const Hash& hash, const Block& replacement);

    void put_undo(const Hash& hash, const UndoData& undo);
    std::optional<UndoData> read_undo(const Hash& hash) const;
    void rewrite_undo(const Hash& hash, const UndoData& undo);

    /// Zeroes body and undo slots. Returns false if there was no body.
    bool prune(const Hash& hash);

    bool contains(const Hash& hash) const { return index_.count(hash) != 0; }
    bool has_body(const Hash& hash) const;
    const StoredBlockInfo* info(const Hash& hash) const;
    const std::map<Hash, StoredBlockInfo>& index() const { return index_; }

    /// Persists index.dat (no-op when memory-only).
    void flush() const;
    /// Every file this store persists to.
    std::vector<std::filesystem::path> files() const;

private:
    std::optional<std::filesystem::path> dir_;
    SlotFile blocks_;
    SlotFile undo_;
    std::map<Hash, StoredBlockInfo> index_;
};

/// Body-prunes every stored block at height <= tip_height - maturity.
/// Returns the number of bodies removed by this call.
size_t prune_raw_blocks(BlockStore& store, uint32_t tip_height, uint32_t maturity);

} // namespace fple

#endif // FPLE_BLOCK_STORE_HPP
