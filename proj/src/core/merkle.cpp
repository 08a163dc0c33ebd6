// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/merkle.hpp"

#include "fple/error.hpp"

#include <array>
#include <vector>

namespace fple {

Hash merkle_leaf(const Hash& txid)
{
    const std::array<uint8_t, 1> tag{kMerkleLeafTag};
    return sha256(tag, txid.span());
}

Hash merkle_node(const Hash& left, const Hash& right)
{
    std::array<uint8_t, 1 + 2 * Hash::kSize> buf{};
    buf[0] = kMerkleNodeTag;
    std::copy(left.bytes.begin(), left.bytes.end(), buf.begin() + 1);
    std::copy(right.bytes.begin(), right.bytes.end(), buf.begin() + 1 + Hash::kSize);
    return sha256(buf);
}

Hash compute_merkle_root(std::span<const Hash> txids)
{
    if (txids.empty()) throw Error(Errc::EmptyList, "merkle root of zero transactions");
    std::vector<Hash> level;
    level.reserve(txids.size());
    for (const Hash& t : txids) level.push_back(merkle_leaf(t));
    while (level.size() > 1) {
        if (level.size() % 2 == 1) level.push_back(level.back());
        std::vector<Hash> next;
        next.reserve(level.size() / 2);
        for (size_t i = 0; i < level.size(); i += 2) next.push_back(merkle_node(level[i], level[i + 1]));
        level = std::move(next);
    }
    return level.front();
}

} // namespace fple
