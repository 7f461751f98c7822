#pragma once

#include "sfwt/tokens/multi_token.hpp"
#include "sfwt/tokens/nft_registry.hpp"

namespace sfwt::tokens {

/// Contract "bench" exposing both token engines directly, for gas measurements.
///
/// Transactions: mint1155{to, tokenId, quantity}, transfer1155{to, tokenId, quantity},
///               mint721{to, tokenIds[]}, transfer721{to, tokenIds[]}
/// Reads:        balanceOf1155{owner, tokenId}, ownerOf721{tokenId}
/// Transfers always move from the transaction sender.
class BenchTokenContract final : public ledger::Contract {
public:
    static constexpr const char* contract_name = "bench";

    std::string name() const override { return contract_name; }
    std::unique_ptr<ledger::Contract> clone() const override { return std::make_unique<BenchTokenContract>(*this); }
    bool has_transaction(std::string_view op) const override;
    bool has_read(std::string_view op) const override;
    ledger::json execute(ledger::ExecContext& ctx, std::string_view op, const ledger::json& args) override;
    ledger::json read(std::string_view op, const ledger::json& args, TimeSec now) const override;

    const MultiToken& multi() const { return multi_; }
    const NftRegistry& nfts() const { return nfts_; }

private:
    MultiToken multi_;
    NftRegistry nfts_;
};

}  // namespace sfwt::tokens
