// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/block_store.hpp"

#include "fple/error.hpp"
#include "fple/serialize.hpp"

#include <fstream>
#include <iterator>

namespace fple {

namespace fs = std::filesystem;

namespace {

constexpr uint32_t kSlotHeader = 8;

Bytes read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, ByteSpan data)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(Errc::StoreError, "cannot write " + path.string());
}

} // namespace

// ===========================================================================
// SlotFile
// ===========================================================================

SlotFile::SlotFile(fs::path path) : path_(std::move(path))
{
    if (fs::exists(*path_)) {
        buf_ = read_file(*path_);
    } else {
        write_file(*path_, {});
    }
}

void SlotFile::write_through(uint64_t offset, ByteSpan data)
{
    if (offset + data.size() > buf_.size()) buf_.resize(offset + data.size());
    std::copy(data.begin(), data.end(), buf_.begin() + static_cast<std::ptrdiff_t>(offset));
    if (!path_) return;
    std::fstream f(*path_, std::ios::in | std::ios::out | std::ios::binary);
    if (!f) throw Error(Errc::StoreError, "cannot open " + path_->string());
    f.seekp(static_cast<std::streamoff>(offset));
    f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    f.flush();
    if (!f) throw Error(Errc::StoreError, "write failed on " + path_->string());
}

SlotFile::Slot SlotFile::append(ByteSpan payload)
{
    Slot slot{buf_.size(), static_cast<uint32_t>(kSlotHeader + payload.size())};
    Writer w;
    w.u32(slot.size);
    w.u32(static_cast<uint32_t>(payload.size()));
    w.raw(payload);
    write_through(slot.offset, w.bytes());
    return slot;
}

SlotFile::Slot SlotFile::rewrite(Slot slot, ByteSpan payload)
{
    if (kSlotHeader + payload.size() > slot.size) {
        zero(slot);
        return append(payload);
    }
    Writer w;
    w.u32(slot.size);
    w.u32(static_cast<uint32_t>(payload.size()));
    w.raw(payload);
    Bytes image = std::move(w).take();
    image.resize(slot.size, 0);
    write_through(slot.offset, image);
    return slot;
}

void SlotFile::zero(Slot slot)
{
    Writer w;
    w.u32(slot.size);
    w.u32(0);
    Bytes image = std::move(w).take();
    image.resize(slot.size, 0);
    write_through(slot.offset, image);
}

Bytes SlotFile::read(Slot slot) const
{
    if (slot.offset + slot.size > buf_.size() || slot.size < kSlotHeader) {
        throw Error(Errc::StoreError, "slot out of bounds");
    }
    Reader r(ByteSpan(buf_).subspan(slot.offset, slot.size));
    r.u32();
    uint32_t len = r.u32();
    if (len > slot.size - kSlotHeader) throw Error(Errc::StoreError, "corrupt slot");
    ByteSpan payload = r.raw(len);
    return Bytes(payload.begin(), payload.end());
}

// ===========================================================================
// BlockStore
// ===========================================================================

BlockStore BlockStore::open(const fs::path& dir)
{
    fs::create_directories(dir);
    BlockStore store;
    store.dir_ = dir;
    store.blocks_ = SlotFile(dir / "blk.dat");
    store.undo_ = SlotFile(dir / "rev.dat");

    Bytes index = read_file(dir / "index.dat");
    if (index.empty()) return store;
    Reader r(index);
    uint32_t n = r.u32();
    for (uint32_t i = 0; i < n; ++i) {
        Hash hash = r.hash();
        StoredBlockInfo info;
        info.header = BlockHeader::deserialize(r);
        info.height = r.u32();
        uint8_t flags = r.u8();
        SlotFile::Slot body{r.u64(), r.u32()};
        SlotFile::Slot undo{r.u64(), r.u32()};
        if (flags & 1) info.body = body;
        if (flags & 2) info.undo = undo;
        info.pruned = (flags & 4) != 0;
        store.index_.emplace(hash, info);
    }
    r.expect_done("block index");
    return store;
}

void BlockStore::put(const Hash& hash, const Block& block, uint32_t height)
{
    auto it = index_.find(hash);
    if (it != index_.end() && (it->second.body || it->second.pruned)) return;
    StoredBlockInfo& info = index_[hash];
    info.header = block.header;
    info.height = height;
    info.body = blocks_.append(block.encode());
}

void BlockStore::put_header(const Hash& hash, const BlockHeader& header, uint32_t height)
{
    auto [it, inserted] = index_.try_emplace(hash);
    if (!inserted) return;
    it->second.header = header;
    it->second.height = height;
}

std::optional<Block> BlockStore::read(const Hash& hash) const
{
    const StoredBlockInfo* i = info(hash);
    if (!i || !i->body) return std::nullopt;
    return Block::decode(blocks_.read(*i->body));
}

void BlockStore::rewrite(const Hash& hash, const Block& replacement)
{
    auto it = index_.find(hash);
    if (it == index_.end() || !it->second.body) throw Error(Errc::StoreError, "no body to rewrite");
    it->second.body = blocks_.rewrite(*it->second.body, replacement.encode());
}

void BlockStore::put_undo(const Hash& hash, const UndoData& undo)
{
    auto it = index_.find(hash);
    if (it == index_.end()) throw Error(Errc::StoreError, "undo for unknown block");
    if (it->second.undo) {
        it->second.undo = undo_.rewrite(*it->second.undo, undo.encode());
    } else {
        it->second.undo = undo_.append(undo.encode());
    }
}

std::optional<UndoData> BlockStore::read_undo(const Hash& hash) const
{
    const StoredBlockInfo* i = info(hash);
    if (!i || !i->undo) return std::nullopt;
    return UndoData::decode(undo_.read(*i->undo));
}

void BlockStore::rewrite_undo(const Hash& hash, const UndoData& undo) { put_undo(hash, undo); }

bool BlockStore::prune(const Hash& hash)
{
    auto it = index_.find(hash);
    if (it == index_.end() || !it->second.body) return false;
    blocks_.zero(*it->second.body);
    it->second.body.reset();
    if (it->second.undo) {
        undo_.zero(*it->second.undo);
        it->second.undo.reset();
    }
    it->second.pruned = true;
    return true;
}

bool BlockStore::has_body(const Hash& hash) const
{
    const StoredBlockInfo* i = info(hash);
    return i && i->body.has_value();
}

const StoredBlockInfo* BlockStore::info(const Hash& hash) const
{
    auto it = index_.find(hash);
    return it == index_.end() ? nullptr : &it->second;
}

void BlockStore::flush() const
{
    if (!dir_) return;
    Writer w;
    w.u32(static_cast<uint32_t>(index_.size()));
    for (const auto& [hash, info] : index_) {
        w.hash(hash);
        info.header.serialize(w);
        w.u32(info.height);
        w.u8(static_cast<uint8_t>((info.body ? 1 : 0) | (info.undo ? 2 : 0) | (info.pruned ? 4 : 0)));
        SlotFile::Slot body = info.body.value_or(SlotFile::Slot{});
        SlotFile::Slot undo = info.undo.value_or(SlotFile::Slot{});
        w.u64(body.offset);
        w.u32(body.size);
        w.u64(undo.offset);
        w.u32(undo.size);
    }
    write_file(*dir_ / "index.dat", w.bytes());
}

std::vector<fs::path> BlockStore::files() const
{
    if (!dir_) return {};
    return {*dir_ / "blk.dat", *dir_ / "rev.dat", *dir_ / "index.dat"};
}

size_t prune_raw_blocks(BlockStore& store, uint32_t tip_height, uint32_t maturity)
{
    if (tip_height < maturity) return 0;
    const uint32_t limit = tip_height - maturity;
    std::vector<Hash> targets;
    for (const auto& [hash, info] : store.index()) {
        if (info.height <= limit && info.body) targets.push_back(hash);
    }
    size_t pruned = 0;
    for (const Hash& h : targets) pruned += store.prune(h) ? 1 : 0;
    return pruned;
}

} // namespace fple
