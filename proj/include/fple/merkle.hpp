// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_MERKLE_HPP
#define FPLE_MERKLE_HPP

#include "fple/hash.hpp"

#include <span>

namespace fple {

static constexpr uint8_t kMerkleLeafTag = 0x00;
static constexpr uint8_t kMerkleNodeTag = 0x01;

Hash merkle_leaf(const Hash& txid);
Hash merkle_node(const Hash& left, const Hash& right);

/// Binary tree over domain-tagged leaves; odd levels duplicate their last
/// element. Throws Error(EmptyList) on an empty input.
Hash compute_merkle_root(std::span<const Hash> txids);

} // namespace fple

#endif // FPLE_MERKLE_HPP
