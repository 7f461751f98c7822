#pragma once

#include "sfwt/crypto/ecdsa.hpp"

#include <filesystem>

namespace sfwt::wallet {

class WalletError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Decryption failed: wrong passphrase or a modified file.
class UnlockError : public WalletError {
public:
    using WalletError::WalletError;
};

struct KeystoreEntry {
    std::string label;
    Address address;
    std::uint32_t iterations = 0;
    Bytes salt;
    Bytes iv;
    Bytes ciphertext;
    Bytes tag;
};

/// JSON keystore. Secret keys are sealed with AES-256-GCM under a key derived from the
/// passphrase by PBKDF2-HMAC-SHA256; the address is authenticated as associated data.
class Keystore {
public:
    static constexpr std::size_t min_passphrase_length = 8;
    static constexpr std::uint32_t default_iterations = 100000;

    /// Missing files open as an empty keystore; save() creates them.
    static Keystore open(std::filesystem::path path);

    void add(const std::string& label, const crypto::KeyPair& keys, const std::string& passphrase,
             std::uint32_t iterations = default_iterations);
    /// Accepts a label or a 0x address. Throws UnlockError on a wrong passphrase.
    crypto::KeyPair unlock(const std::string& label_or_address, const std::string& passphrase) const;
    const KeystoreEntry& find(const std::string& label_or_address) const;
    bool contains(const std::string& label) const;

    const std::vector<KeystoreEntry>& entries() const { return entries_; }
    /// Atomic replace via a temporary file.
    void save() const;

private:
    std::filesystem::path path_;
    std::vector<KeystoreEntry> entries_;
};

}  // namespace sfwt::wallet
