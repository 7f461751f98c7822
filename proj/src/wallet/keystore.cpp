#include "sfwt/wallet/keystore.hpp"

#include <json.hpp>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include <fstream>
#include <memory>
#include <sstream>

namespace sfwt::wallet {

using nlohmann::json;

namespace {

constexpr int key_len = 32;
constexpr int iv_len = 12;
constexpr int tag_len = 16;

std::array<std::uint8_t, key_len> derive_key(const std::string& passphrase, const Bytes& salt, std::uint32_t iterations) {
    std::array<std::uint8_t, key_len> key{};
    if (PKCS5_PBKDF2_HMAC(passphrase.data(), static_cast<int>(passphrase.size()), salt.data(),
                          static_cast<int>(salt.size()), static_cast<int>(iterations), EVP_sha256(), key_len,
                          key.data()) != 1)
        throw WalletError("PBKDF2 failed");
    return key;
}

Bytes random_bytes(std::size_t n) {
    Bytes out(n);
    if (RAND_bytes(out.data(), static_cast<int>(n)) != 1) throw WalletError("RAND_bytes failed");
    return out;
}

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

CipherCtx new_ctx() {
    CipherCtx ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
    if (!ctx) throw WalletError("EVP_CIPHER_CTX_new failed");
    return ctx;
}

void seal(KeystoreEntry& e, const crypto::SecretKey& secret, const std::string& passphrase) {
    auto key = derive_key(passphrase, e.salt, e.iterations);
    auto ctx = new_ctx();
    const auto& aad = e.address.bytes();
    int len = 0;
    e.ciphertext.assign(secret.size(), 0);
    e.tag.assign(tag_len, 0);
    bool ok = EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), e.iv.data()) == 1 &&
              EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) == 1 &&
              EVP_EncryptUpdate(ctx.get(), e.ciphertext.data(), &len, secret.data(), static_cast<int>(secret.size())) == 1 &&
              EVP_EncryptFinal_ex(ctx.get(), e.ciphertext.data() + len, &len) == 1 &&
              EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, tag_len, e.tag.data()) == 1;
    if (!ok) throw WalletError("encryption failed");
}

crypto::SecretKey open_sealed(const KeystoreEntry& e, const std::string& passphrase) {
    auto key = derive_key(passphrase, e.salt, e.iterations);
    auto ctx = new_ctx();
    const auto& aad = e.address.bytes();
    crypto::SecretKey secret{};
    if (e.ciphertext.size() != secret.size() || e.tag.size() != tag_len || e.iv.size() != iv_len)
        throw UnlockError("keystore entry '" + e.label + "' is malformed");
    Bytes tag = e.tag;
    int len = 0;
    bool ok = EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), e.iv.data()) == 1 &&
              EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) == 1 &&
              EVP_DecryptUpdate(ctx.get(), secret.data(), &len, e.ciphertext.data(), static_cast<int>(e.ciphertext.size())) == 1 &&
              EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, tag_len, tag.data()) == 1 &&
              EVP_DecryptFinal_ex(ctx.get(), secret.data() + len, &len) == 1;
    if (!ok) {
        secret.fill(0);
        throw UnlockError("cannot unlock '" + e.label + "': wrong passphrase or corrupted keystore");
    }
    return secret;
}

json to_json(const KeystoreEntry& e) {
    return json{{"label", e.label},
                {"address", e.address.to_hex()},
                {"kdf", {{"name", "pbkdf2-hmac-sha256"}, {"iterations", e.iterations}, {"salt", to_hex(e.salt)}}},
                {"cipher", {{"name", "aes-256-gcm"}, {"iv", to_hex(e.iv)}, {"tag", to_hex(e.tag)}}},
                {"ciphertext", to_hex(e.ciphertext)}};
}

KeystoreEntry entry_from_json(const json& j) {
    KeystoreEntry e;
    e.label = j.at("label").get<std::string>();
    e.address = Address::from_hex(j.at("address").get<std::string>());
    const auto& kdf = j.at("kdf");
    if (kdf.at("name") != "pbkdf2-hmac-sha256") throw WalletError("unsupported kdf in keystore");
    e.iterations = kdf.at("iterations").get<std::uint32_t>();
    e.salt = from_hex(kdf.at("salt").get<std::string>());
    const auto& cipher = j.at("cipher");
    if (cipher.at("name") != "aes-256-gcm") throw WalletError("unsupported cipher in keystore");
    e.iv = from_hex(cipher.at("iv").get<std::string>());
    e.tag = from_hex(cipher.at("tag").get<std::string>());
    e.ciphertext = from_hex(j.at("ciphertext").get<std::string>());
    return e;
}

}  // namespace

Keystore Keystore::open(std::filesystem::path path) {
    Keystore ks;
    ks.path_ = std::move(path);
    std::ifstream in(ks.path_);
    if (!in) return ks;
    try {
        auto j = json::parse(in);
        if (j.at("version") != 1) throw WalletError("unsupported keystore version");
        for (const auto& e : j.at("entries")) ks.entries_.push_back(entry_from_json(e));
    } catch (const json::exception& e) {
        throw WalletError("keystore " + ks.path_.string() + " is not readable: " + e.what());
    }
    return ks;
}

void Keystore::add(const std::string& label, const crypto::KeyPair& keys, const std::string& passphrase,
                   std::uint32_t iterations) {
    if (label.empty()) throw WalletError("label must not be empty");
    if (contains(label)) throw WalletError("label '" + label + "' already exists");
    if (passphrase.size() < min_passphrase_length)
        throw WalletError("passphrase must have at least " + std::to_string(min_passphrase_length) + " characters");
    if (iterations == 0) throw WalletError("iterations must be positive");
    KeystoreEntry e;
    e.label = label;
    e.address = crypto::address_of(keys.pub);
    e.iterations = iterations;
    e.salt = random_bytes(16);
    e.iv = random_bytes(iv_len);
    seal(e, keys.secret, passphrase);
    entries_.push_back(std::move(e));
}

const KeystoreEntry& Keystore::find(const std::string& label_or_address) const {
    std::optional<Address> addr;
    if (label_or_address.starts_with("0x") && label_or_address.size() == 42) addr = Address::from_hex(label_or_address);
    for (const auto& e : entries_)
        if (e.label == label_or_address || (addr && e.address == *addr)) return e;
    throw WalletError("no key '" + label_or_address + "' in keystore");
}

bool Keystore::contains(const std::string& label) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.label == label; });
}

crypto::KeyPair Keystore::unlock(const std::string& label_or_address, const std::string& passphrase) const {
    const auto& e = find(label_or_address);
    auto secret = open_sealed(e, passphrase);
    crypto::KeyPair keys{secret, crypto::public_key_of(secret)};
    if (crypto::address_of(keys.pub) != e.address) throw UnlockError("keystore entry '" + e.label + "' is inconsistent");
    return keys;
}

void Keystore::save() const {
    json j{{"version", 1}, {"entries", json::array()}};
    for (const auto& e : entries_) j["entries"].push_back(to_json(e));
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    auto tmp = path_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw WalletError("cannot write " + tmp.string());
        out << j.dump(2) << "\n";
        if (!out) throw WalletError("cannot write " + tmp.string());
    }
    std::filesystem::permissions(tmp, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write);
    std::filesystem::rename(tmp, path_);
}

}  // namespace sfwt::wallet
