#include "sfwt/tokens/nft_registry.hpp"

#include <set>

namespace sfwt::tokens {

using ledger::json;
using ledger::Revert;

void NftRegistry::mint(ledger::ExecContext& ctx, const Address& to, std::span<const TokenId> ids) {
    std::set<TokenId> seen;
    for (const auto& id : ids) {
        if (owners_.count(id) || !seen.insert(id).second) throw Revert("token " + id.to_string() + " already minted");
    }
    for (const auto& id : ids) {
        ctx.storage_write(false);
        owners_.emplace(id, to);
        ctx.emit("Transfer", json{{"from", Address{}.to_hex()}, {"to", to.to_hex()}, {"tokenId", id.to_string()}});
    }
}

void NftRegistry::transfer(ledger::ExecContext& ctx, const Address& from, const Address& to,
                           std::span<const TokenId> ids) {
    for (const auto& id : ids) {
        auto it = owners_.find(id);
        if (it == owners_.end() || it->second != from) throw Revert("sender does not own token " + id.to_string());
    }
    for (const auto& id : ids) {
        ctx.storage_write(true);
        owners_[id] = to;
        ctx.emit("Transfer", json{{"from", from.to_hex()}, {"to", to.to_hex()}, {"tokenId", id.to_string()}});
    }
}

std::optional<Address> NftRegistry::owner_of(const TokenId& id) const {
    auto it = owners_.find(id);
    if (it == owners_.end()) return std::nullopt;
    return it->second;
}

}  // namespace sfwt::tokens
