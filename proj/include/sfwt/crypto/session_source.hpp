#pragma once

#include "sfwt/crypto/ecdsa.hpp"

#include <cstdint>
#include <memory>
#include <mutex>

namespace sfwt::crypto {

/// Source of 256-bit session identifiers.
class SessionIdSource {
public:
    virtual ~SessionIdSource() = default;
    virtual SessionId next() = 0;
};

/// OpenSSL RAND_bytes.
class CsprngSessionSource final : public SessionIdSource {
public:
    SessionId next() override;
};

/// Test mode: keccak256("sfwt/session" || seed_be64 || index_be64), index counting from 0.
class SeededSessionSource final : public SessionIdSource {
public:
    explicit SeededSessionSource(std::uint64_t seed) : seed_(seed) {}
    SessionId next() override;

private:
    std::mutex mutex_;
    std::uint64_t seed_;
    std::uint64_t index_ = 0;
};

std::unique_ptr<SessionIdSource> make_session_source(std::optional<std::uint64_t> seed);

}  // namespace sfwt::crypto
