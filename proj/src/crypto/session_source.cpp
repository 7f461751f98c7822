#include "sfwt/crypto/session_source.hpp"

#include <openssl/rand.h>

namespace sfwt::crypto {

SessionId CsprngSessionSource::next() {
    SessionId id;
    if (RAND_bytes(id.bytes.data(), static_cast<int>(id.bytes.size())) != 1) {
        throw CryptoError("RAND_bytes failed");
    }
    return id;
}

SessionId SeededSessionSource::next() {
    std::uint64_t index;
    {
        std::lock_guard lock(mutex_);
        index = index_++;
    }
    std::array<std::uint8_t, 16> tail{};
    for (int i = 0; i < 8; ++i) {
        tail[i] = static_cast<std::uint8_t>(seed_ >> (56 - 8 * i));
        tail[8 + i] = static_cast<std::uint8_t>(index >> (56 - 8 * i));
    }
    return SessionId{Keccak256{}.update("sfwt/session").update(tail).finish()};
}

std::unique_ptr<SessionIdSource> make_session_source(std::optional<std::uint64_t> seed) {
    if (seed) return std::make_unique<SeededSessionSource>(*seed);
    return std::make_unique<CsprngSessionSource>();
}

}  // namespace sfwt::crypto
