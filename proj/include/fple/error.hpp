// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_ERROR_HPP
#define FPLE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace fple {

enum class Errc {
    DecodeError,
    InvalidHex,
    EmptyList,
    PayloadTooLarge,
    NonceSpaceExhausted,
    IndexOutOfRange,
    NotPayToHash,
    UnknownTxid,
    SaltReuse,
    ModeConflict,
    ParseError,
    ConflictingRecord,
    ConfigError,
    StoreError,
    LockHeld,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace fple

#endif // FPLE_ERROR_HPP
