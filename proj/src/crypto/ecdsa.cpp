#include "sfwt/crypto/ecdsa.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/obj_mac.h>
#include <openssl/rand.h>

#include <memory>
#include <vector>

namespace sfwt::crypto {

namespace {

struct BnFree {
    void operator()(BIGNUM* bn) const { BN_clear_free(bn); }
};
struct BnCtxFree {
    void operator()(BN_CTX* ctx) const { BN_CTX_free(ctx); }
};
struct PointFree {
    void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
struct GroupFree {
    void operator()(EC_GROUP* g) const { EC_GROUP_free(g); }
};

using Bn = std::unique_ptr<BIGNUM, BnFree>;
using BnCtx = std::unique_ptr<BN_CTX, BnCtxFree>;
using Point = std::unique_ptr<EC_POINT, PointFree>;

void check(int ok, const char* what) {
    if (ok != 1) throw CryptoError(std::string("secp256k1: ") + what + " failed");
}

Bn new_bn() {
    Bn bn(BN_new());
    if (!bn) throw CryptoError("BN_new failed");
    return bn;
}

Bn bn_from(std::span<const std::uint8_t> bytes) {
    Bn bn(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
    if (!bn) throw CryptoError("BN_bin2bn failed");
    return bn;
}

std::array<std::uint8_t, 32> bn_to32(const BIGNUM* bn) {
    std::array<std::uint8_t, 32> out{};
    check(BN_bn2binpad(bn, out.data(), 32) == 32 ? 1 : 0, "BN_bn2binpad");
    return out;
}

/// Curve constants shared by every call; EC_GROUP is read-only after construction.
struct Curve {
    std::unique_ptr<EC_GROUP, GroupFree> group;
    Bn order;
    Bn half_order;

    Curve() : group(EC_GROUP_new_by_curve_name(NID_secp256k1)) {
        if (!group) throw CryptoError("secp256k1 unavailable in OpenSSL");
        order = new_bn();
        check(EC_GROUP_get_order(group.get(), order.get(), nullptr), "EC_GROUP_get_order");
        half_order = new_bn();
        check(BN_rshift1(half_order.get(), order.get()), "BN_rshift1");
    }
};

const Curve& curve() {
    static const Curve instance;
    return instance;
}

BnCtx new_ctx() {
    BnCtx ctx(BN_CTX_new());
    if (!ctx) throw CryptoError("BN_CTX_new failed");
    return ctx;
}

bool in_scalar_range(const BIGNUM* v) {
    return !BN_is_zero(v) && !BN_is_negative(v) && BN_cmp(v, curve().order.get()) < 0;
}

PublicKey encode_point(const EC_POINT* point, BN_CTX* ctx) {
    std::array<std::uint8_t, 65> buf{};
    auto len = EC_POINT_point2oct(curve().group.get(), point, POINT_CONVERSION_UNCOMPRESSED, buf.data(),
                                  buf.size(), ctx);
    if (len != buf.size()) throw CryptoError("point encoding failed");
    PublicKey pub{};
    std::copy(buf.begin() + 1, buf.end(), pub.begin());
    return pub;
}

using Mac = std::array<std::uint8_t, 32>;

Mac hmac_sha256(const Mac& key, std::span<const std::uint8_t> data) {
    Mac out{};
    unsigned int len = 0;
    if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), out.data(),
              &len) ||
        len != out.size()) {
        throw CryptoError("HMAC-SHA256 failed");
    }
    return out;
}

template <typename... Parts>
std::vector<std::uint8_t> concat(const Parts&... parts) {
    std::vector<std::uint8_t> out;
    (out.insert(out.end(), std::begin(parts), std::end(parts)), ...);
    return out;
}

/// RFC 6979 section 3.2 for qlen = hlen = 256.
class Rfc6979 {
public:
    Rfc6979(const SecretKey& secret, const Hash256& digest, BN_CTX* ctx) {
        auto h = bn_from(digest);
        check(BN_nnmod(h.get(), h.get(), curve().order.get(), ctx), "BN_nnmod");
        auto h1 = bn_to32(h.get());
        v_.fill(0x01);
        k_.fill(0x00);
        const std::array<std::uint8_t, 1> zero{0x00}, one{0x01};
        k_ = hmac_sha256(k_, concat(v_, zero, secret, h1));
        v_ = hmac_sha256(k_, v_);
        k_ = hmac_sha256(k_, concat(v_, one, secret, h1));
        v_ = hmac_sha256(k_, v_);
    }

    Bn next() {
        for (;;) {
            if (!first_) {
                const std::array<std::uint8_t, 1> zero{0x00};
                k_ = hmac_sha256(k_, concat(v_, zero));
                v_ = hmac_sha256(k_, v_);
            }
            first_ = false;
            v_ = hmac_sha256(k_, v_);
            auto k = bn_from(v_);
            if (in_scalar_range(k.get())) return k;
        }
    }

private:
    Mac v_{};
    Mac k_{};
    bool first_ = true;
};

}  // namespace

SessionId SessionId::from_hex(std::string_view text) {
    if (text.size() != 66) throw std::invalid_argument("session id must be 0x + 64 hex digits");
    return SessionId{from_hex_fixed<32>(text)};
}

std::array<std::uint8_t, 65> Signature::to_bytes() const {
    std::array<std::uint8_t, 65> out{};
    std::copy(r.begin(), r.end(), out.begin());
    std::copy(s.begin(), s.end(), out.begin() + 32);
    out[64] = v;
    return out;
}

Signature Signature::from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != 65) throw std::invalid_argument("signature must be 65 bytes");
    Signature sig;
    std::copy(bytes.begin(), bytes.begin() + 32, sig.r.begin());
    std::copy(bytes.begin() + 32, bytes.begin() + 64, sig.s.begin());
    sig.v = bytes[64];
    return sig;
}

std::string Signature::to_hex() const { return sfwt::to_hex(to_bytes()); }

Signature Signature::from_hex(std::string_view text) {
    if (text.size() != 132) throw std::invalid_argument("signature must be 0x + 130 hex digits");
    return from_bytes(from_hex_fixed<65>(text));
}

PublicKey public_key_of(const SecretKey& secret) {
    auto ctx = new_ctx();
    auto d = bn_from(secret);
    if (!in_scalar_range(d.get())) throw CryptoError("secret key outside [1, n-1]");
    Point p(EC_POINT_new(curve().group.get()));
    if (!p) throw CryptoError("EC_POINT_new failed");
    check(EC_POINT_mul(curve().group.get(), p.get(), d.get(), nullptr, nullptr, ctx.get()), "EC_POINT_mul");
    return encode_point(p.get(), ctx.get());
}

KeyPair generate_keypair(std::optional<std::uint64_t> seed) {
    KeyPair kp;
    for (std::uint32_t counter = 0;; ++counter) {
        if (seed) {
            std::array<std::uint8_t, 12> tail{};
            for (int i = 0; i < 8; ++i) tail[i] = static_cast<std::uint8_t>(*seed >> (56 - 8 * i));
            for (int i = 0; i < 4; ++i) tail[8 + i] = static_cast<std::uint8_t>(counter >> (24 - 8 * i));
            kp.secret = Keccak256{}.update("sfwt/keygen").update(tail).finish();
        } else if (RAND_bytes(kp.secret.data(), static_cast<int>(kp.secret.size())) != 1) {
            throw CryptoError("RAND_bytes failed");
        }
        if (in_scalar_range(bn_from(kp.secret).get())) break;
    }
    kp.pub = public_key_of(kp.secret);
    return kp;
}

Address address_of(const PublicKey& pub) {
    std::array<std::uint8_t, 65> encoded{};
    encoded[0] = 0x04;
    std::copy(pub.begin(), pub.end(), encoded.begin() + 1);
    auto ctx = new_ctx();
    Point p(EC_POINT_new(curve().group.get()));
    if (!p || EC_POINT_oct2point(curve().group.get(), p.get(), encoded.data(), encoded.size(), ctx.get()) != 1 ||
        EC_POINT_is_on_curve(curve().group.get(), p.get(), ctx.get()) != 1) {
        throw CryptoError("public key is not a point on secp256k1");
    }
    auto digest = keccak256(pub);
    std::array<std::uint8_t, Address::size> addr{};
    std::copy(digest.begin() + 12, digest.end(), addr.begin());
    return Address{addr};
}

Hash256 session_digest(const SessionId& session) { return keccak256(session.bytes); }

Signature sign_session(const SessionId& session, const SecretKey& secret) {
    const auto& c = curve();
    auto ctx = new_ctx();
    auto d = bn_from(secret);
    if (!in_scalar_range(d.get())) throw CryptoError("secret key outside [1, n-1]");

    auto digest = session_digest(session);
    auto z = bn_from(digest);
    check(BN_nnmod(z.get(), z.get(), c.order.get(), ctx.get()), "BN_nnmod");

    Rfc6979 nonces(secret, digest, ctx.get());
    Point big_r(EC_POINT_new(c.group.get()));
    auto rx = new_bn(), ry = new_bn(), r = new_bn(), s = new_bn(), kinv = new_bn();
    for (;;) {
        auto k = nonces.next();
        check(EC_POINT_mul(c.group.get(), big_r.get(), k.get(), nullptr, nullptr, ctx.get()), "EC_POINT_mul");
        check(EC_POINT_get_affine_coordinates(c.group.get(), big_r.get(), rx.get(), ry.get(), ctx.get()),
              "get_affine_coordinates");
        // x >= n would need recovery ids 2/3, which the wire format does not carry.
        if (BN_cmp(rx.get(), c.order.get()) >= 0) continue;
        check(BN_copy(r.get(), rx.get()) ? 1 : 0, "BN_copy");
        if (BN_is_zero(r.get())) continue;

        // s = k^-1 (z + r d) mod n
        check(BN_mod_mul(s.get(), r.get(), d.get(), c.order.get(), ctx.get()), "BN_mod_mul");
        check(BN_mod_add(s.get(), s.get(), z.get(), c.order.get(), ctx.get()), "BN_mod_add");
        if (!BN_mod_inverse(kinv.get(), k.get(), c.order.get(), ctx.get())) throw CryptoError("BN_mod_inverse");
        check(BN_mod_mul(s.get(), s.get(), kinv.get(), c.order.get(), ctx.get()), "BN_mod_mul");
        if (BN_is_zero(s.get())) continue;
        break;
    }

    std::uint8_t v = BN_is_odd(ry.get()) ? 1 : 0;
    if (BN_cmp(s.get(), c.half_order.get()) > 0) {
        check(BN_sub(s.get(), c.order.get(), s.get()), "BN_sub");
        v ^= 1;
    }
    Signature sig;
    sig.r = bn_to32(r.get());
    sig.s = bn_to32(s.get());
    sig.v = v;
    return sig;
}

bool is_low_s(const Signature& sig) {
    auto s = bn_from(sig.s);
    return BN_cmp(s.get(), curve().half_order.get()) <= 0;
}

PublicKey recover_public_key(const SessionId& session, const Signature& sig) {
    const auto& c = curve();
    if (sig.v > 1) throw SignatureError("recovery id must be 0 or 1");
    auto r = bn_from(sig.r);
    auto s = bn_from(sig.s);
    if (!in_scalar_range(r.get()) || !in_scalar_range(s.get())) throw SignatureError("r or s out of range");
    if (BN_cmp(s.get(), c.half_order.get()) > 0) throw SignatureError("non-canonical (high) s");

    auto ctx = new_ctx();
    Point big_r(EC_POINT_new(c.group.get()));
    if (!big_r || EC_POINT_set_compressed_coordinates(c.group.get(), big_r.get(), r.get(), sig.v, ctx.get()) != 1) {
        throw SignatureError("r is not the x coordinate of a curve point");
    }

    auto z = bn_from(session_digest(session));
    check(BN_nnmod(z.get(), z.get(), c.order.get(), ctx.get()), "BN_nnmod");
    auto rinv = new_bn(), u1 = new_bn(), u2 = new_bn();
    if (!BN_mod_inverse(rinv.get(), r.get(), c.order.get(), ctx.get())) throw SignatureError("r not invertible");
    // Q = r^-1 (s R - z G) = (-z r^-1) G + (s r^-1) R
    check(BN_mod_mul(u1.get(), z.get(), rinv.get(), c.order.get(), ctx.get()), "BN_mod_mul");
    check(BN_mod_sub(u1.get(), c.order.get(), u1.get(), c.order.get(), ctx.get()), "BN_mod_sub");
    check(BN_mod_mul(u2.get(), s.get(), rinv.get(), c.order.get(), ctx.get()), "BN_mod_mul");

    Point q(EC_POINT_new(c.group.get()));
    check(EC_POINT_mul(c.group.get(), q.get(), u1.get(), big_r.get(), u2.get(), ctx.get()), "EC_POINT_mul");
    if (EC_POINT_is_at_infinity(c.group.get(), q.get())) throw SignatureError("recovered point at infinity");
    return encode_point(q.get(), ctx.get());
}

Address recover_signer(const SessionId& session, const Signature& sig) {
    return address_of(recover_public_key(session, sig));
}

}  // namespace sfwt::crypto
