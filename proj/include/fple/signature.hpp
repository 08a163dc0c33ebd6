// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef FPLE_SIGNATURE_HPP
#define FPLE_SIGNATURE_HPP

#include "fple/hash.hpp"

#include <array>

namespace fple {

class SignatureVerifier {
public:
    virtual ~SignatureVerifier() = default;
    virtual bool verify(ByteSpan signature, ByteSpan pubkey, const Hash& message) const = 0;
};

// Ed25519 through OpenSSL. Deterministic signing, 32-byte keys, 64-byte sigs.
class Ed25519Verifier final : public SignatureVerifier {
public:
    bool verify(ByteSpan signature, ByteSpan pubkey, const Hash& message) const override;
};

const SignatureVerifier& default_verifier();

class KeyPair {
public:
    static KeyPair from_seed(const std::array<uint8_t, 32>& seed);

    const Bytes& pubkey() const { return pubkey_; }
    Hash pubkey_hash() const { return sha256(pubkey_); }
    Bytes sign(const Hash& message) const;

private:
    std::array<uint8_t, 32> seed_{};
    Bytes pubkey_;
};

} // namespace fple

#endif // FPLE_SIGNATURE_HPP
