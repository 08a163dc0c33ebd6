// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/error.hpp"

namespace fple {

std::string_view errc_name(Errc code)
{
    switch (code) {
    case Errc::DecodeError: return "DecodeError";
    case Errc::InvalidHex: return "InvalidHex";
    case Errc::EmptyList: return "EmptyList";
    case Errc::PayloadTooLarge: return "PayloadTooLarge";
    case Errc::NonceSpaceExhausted: return "NonceSpaceExhausted";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotPayToHash: return "NotPayToHash";
    case Errc::UnknownTxid: return "UnknownTxid";
    case Errc::SaltReuse: return "SaltReuse";
    case Errc::ModeConflict: return "ModeConflict";
    case Errc::ParseError: return "ParseError";
    case Errc::ConflictingRecord: return "ConflictingRecord";
    case Errc::ConfigError: return "ConfigError";
    case Errc::StoreError: return "StoreError";
    case Errc::LockHeld: return "LockHeld";
    }
    return "Unknown";
}

} // namespace fple
