#pragma once

#include "sfwt/ledger/contract.hpp"

#include <map>
#include <optional>
#include <span>

namespace sfwt::tokens {

/// ERC721-style single-owner registry, kept only as the gas baseline for batch
/// comparisons. Every id costs one ownership write and one event, so gas is affine in
/// the number of ids.
class NftRegistry {
public:
    /// Throws ledger::Revert if any id is already owned or repeated; nothing is minted then.
    void mint(ledger::ExecContext& ctx, const Address& to, std::span<const TokenId> ids);
    /// Throws ledger::Revert unless `from` owns every id; nothing moves then.
    void transfer(ledger::ExecContext& ctx, const Address& from, const Address& to, std::span<const TokenId> ids);

    std::optional<Address> owner_of(const TokenId& id) const;
    std::size_t size() const { return owners_.size(); }

private:
    std::map<TokenId, Address> owners_;
};

}  // namespace sfwt::tokens
