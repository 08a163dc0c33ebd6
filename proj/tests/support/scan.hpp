// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_TEST_SCAN_HPP
#define FPLE_TEST_SCAN_HPP

#include "fple/primitives.hpp"

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace fple::testing {

struct ScanFinding {
    std::filesystem::path file;
    size_t payload = 0;
    size_t offset = 0;
};

/// Every regular file below dir.
std::vector<std::filesystem::path> files_under(const std::filesystem::path& dir);

/// Occurrences of any `window`-byte substring of any payload in the files.
std::vector<ScanFinding> scan_for_payloads(const std::vector<std::filesystem::path>& files,
                                           const std::vector<Bytes>& payloads, size_t window = 8);

/// The hash payloads of the given pay-to-hash outputs of tx.
std::vector<Bytes> output_payloads(const Transaction& tx, const std::set<uint32_t>& indices);

} // namespace fple::testing

#endif // FPLE_TEST_SCAN_HPP
