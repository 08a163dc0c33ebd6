// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/signature.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace fple {

namespace {

struct PkeyDeleter {
    void operator()(EVP_PKEY* k) const { EVP_PKEY_free(k); }
};
struct MdCtxDeleter {
    void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

constexpr size_t kPubkeySize = 32;
constexpr size_t kSignatureSize = 64;

PkeyPtr private_key(const std::array<uint8_t, 32>& seed)
{
    PkeyPtr key(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), seed.size()));
    if (!key) throw std::runtime_error("ed25519 key construction failed");
    return key;
}

} // namespace

bool Ed25519Verifier::verify(ByteSpan signature, ByteSpan pubkey, const Hash& message) const
{
    if (signature.size() != kSignatureSize || pubkey.size() != kPubkeySize) return false;
    PkeyPtr key(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, pubkey.data(), pubkey.size()));
    if (!key) return false;
    MdCtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1) return false;
    return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(),
                            Hash::kSize) == 1;
}

const SignatureVerifier& default_verifier()
{
    static const Ed25519Verifier verifier;
    return verifier;
}

KeyPair KeyPair::from_seed(const std::array<uint8_t, 32>& seed)
{
    KeyPair kp;
    kp.seed_ = seed;
    PkeyPtr key = private_key(seed);
    size_t len = kPubkeySize;
    kp.pubkey_.resize(kPubkeySize);
    if (EVP_PKEY_get_raw_public_key(key.get(), kp.pubkey_.data(), &len) != 1 || len != kPubkeySize) {
        throw std::runtime_error("ed25519 public key export failed");
    }
    return kp;
}

Bytes KeyPair::sign(const Hash& message) const
{
    PkeyPtr key = private_key(seed_);
    MdCtxPtr ctx(EVP_MD_CTX_new());
    Bytes sig(kSignatureSize);
    size_t len = sig.size();
    if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1 ||
        EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), Hash::kSize) != 1 ||
        len != kSignatureSize) {
        throw std::runtime_error("ed25519 signing failed");
    }
    return sig;
}

} // namespace fple
