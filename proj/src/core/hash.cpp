// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/hash.hpp"

#include "fple/error.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <memory>

namespace fple {

namespace {

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

struct MdCtxDeleter {
    void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

} // namespace

std::string to_hex(ByteSpan data)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.resize(data.size() * 2);
    for (size_t i = 0; i < data.size(); ++i) {
        out[2 * i] = kDigits[data[i] >> 4];
        out[2 * i + 1] = kDigits[data[i] & 0x0f];
    }
    return out;
}

Bytes from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0) throw Error(Errc::InvalidHex, "odd-length hex string");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw Error(Errc::InvalidHex, "non-hex character");
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

Hash Hash::from_hex(std::string_view hex)
{
    if (hex.size() != 2 * kSize) throw Error(Errc::InvalidHex, "hash must be 64 hex characters");
    return from_bytes(fple::from_hex(hex));
}

Hash Hash::from_bytes(ByteSpan data)
{
    if (data.size() != kSize) throw Error(Errc::DecodeError, "hash must be 32 bytes");
    Hash h;
    std::copy(data.begin(), data.end(), h.bytes.begin());
    return h;
}

bool Hash::is_zero() const
{
    return std::all_of(bytes.begin(), bytes.end(), [](uint8_t b) { return b == 0; });
}

Hash sha256(ByteSpan a, ByteSpan b)
{
    std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
    Hash out;
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), a.data(), a.size()) != 1 ||
        EVP_DigestUpdate(ctx.get(), b.data(), b.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), out.bytes.data(), &len) != 1 || len != Hash::kSize) {
        throw std::runtime_error("sha256 failed");
    }
    return out;
}

Hash sha256(ByteSpan data) { return sha256(data, ByteSpan{}); }

} // namespace fple
