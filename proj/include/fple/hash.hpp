// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_HASH_HPP
#define FPLE_HASH_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fple {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

std::string to_hex(ByteSpan data);
/// Throws Error(InvalidHex) on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

inline ByteSpan as_bytes(std::string_view s)
{
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

/// 32-byte digest. Hex form is the plain byte order, lowercase.
struct Hash {
    static constexpr size_t kSize = 32;
    std::array<uint8_t, kSize> bytes{};

    static Hash from_hex(std::string_view hex);
    static Hash from_bytes(ByteSpan data);

    std::string to_hex() const { return fple::to_hex(bytes); }
    bool is_zero() const;
    ByteSpan span() const { return bytes; }
    const uint8_t* data() const { return bytes.data(); }

    auto operator<=>(const Hash&) const = default;
};

Hash sha256(ByteSpan data);
/// sha256(a || b) without materializing the concatenation.
Hash sha256(ByteSpan a, ByteSpan b);

} // namespace fple

template <>
struct std::hash<fple::Hash> {
    size_t operator()(const fple::Hash& h) const noexcept
    {
        size_t out = 0;
        std::memcpy(&out, h.bytes.data(), sizeof(out));
        return out;
    }
};

#endif // FPLE_HASH_HPP
