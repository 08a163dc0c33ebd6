// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_SERIALIZE_HPP
#define FPLE_SERIALIZE_HPP

#include "fple/error.hpp"
#include "fple/hash.hpp"

#include <cstdint>
#include <string>

namespace fple {

// Little-endian writer for the canonical encodings (see docs/formats.md).
class Writer {
public:
    void u8(uint8_t v) { out_.push_back(v); }
    void u16(uint16_t v) { le(v, 2); }
    void u32(uint32_t v) { le(v, 4); }
    void u64(uint64_t v) { le(v, 8); }
    void raw(ByteSpan data) { out_.insert(out_.end(), data.begin(), data.end()); }
    void hash(const Hash& h) { raw(h.bytes); }
    /// u32 length prefix followed by the bytes.
    void var_bytes(ByteSpan data)
    {
        u32(static_cast<uint32_t>(data.size()));
        raw(data);
    }

    const Bytes& bytes() const& { return out_; }
    Bytes take() && { return std::move(out_); }

private:
    void le(uint64_t v, int n)
    {
        for (int i = 0; i < n; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }

    Bytes out_;
};

// Bounds-checked reader; every short read throws Error(DecodeError).
class Reader {
public:
    explicit Reader(ByteSpan data) : data_(data) {}

    uint8_t u8() { return static_cast<uint8_t>(le(1)); }
    uint16_t u16() { return static_cast<uint16_t>(le(2)); }
    uint32_t u32() { return static_cast<uint32_t>(le(4)); }
    uint64_t u64() { return le(8); }
    ByteSpan raw(size_t n)
    {
        need(n);
        ByteSpan out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }
    Hash hash() { return Hash::from_bytes(raw(Hash::kSize)); }
    ByteSpan var_bytes() { return raw(u32()); }

    size_t remaining() const { return data_.size() - pos_; }
    bool done() const { return pos_ == data_.size(); }
    void expect_done(const char* what) const
    {
        if (!done()) throw Error(Errc::DecodeError, std::string("trailing bytes after ") + what);
    }

private:
    void need(size_t n) const
    {
        if (n > remaining()) throw Error(Errc::DecodeError, "unexpected end of input");
    }
    uint64_t le(int n)
    {
        need(static_cast<size_t>(n));
        uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
        pos_ += static_cast<size_t>(n);
        return v;
    }

    ByteSpan data_;
    size_t pos_ = 0;
};

} // namespace fple

#endif // FPLE_SERIALIZE_HPP
