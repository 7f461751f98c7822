#pragma once

#include "sfwt/tokens/multi_token.hpp"

#include <optional>
#include <set>

namespace sfwt::contract {

/// Per-token-id offering: where it works, what it costs, what one unit buys.
struct SfwtMetadata {
    std::string ap_id;
    Amount price_wei = 0;
    TimeSec duration_sec = 0;
    Uint256 data_cap_bytes = 0;

    bool operator==(const SfwtMetadata&) const = default;
};

enum class FailReason { none, unknown_token, no_balance, wrong_ap, expired, data_exhausted };

std::string_view to_string(FailReason reason);
/// Inverse of to_string; nullopt for anything else.
std::optional<FailReason> parse_fail_reason(std::string_view text);

struct VerifyResult {
    bool ok = false;
    TimeSec remaining_time_sec = 0;
    Uint256 remaining_data_bytes = 0;
    FailReason fail_reason = FailReason::none;

    bool operator==(const VerifyResult&) const = default;
};

ledger::json to_json(const VerifyResult& result);
VerifyResult verify_result_from_json(const ledger::json& j);
ledger::json to_json(const SfwtMetadata& metadata);

/// The semi-fungible Wi-Fi token contract (deployed as "sfwt").
///
/// Transactions: mintSfwt{owner, tokenId, apId, price, duration, dataCap, quantity}
///               buySfwt{tokenId, quantity, sum}
/// Reads:        verifySfwt{holder, tokenId, apId, usedDataBytes, nowSec?}
///               getMetadata{tokenId}, getExpiration{tokenId, holder},
///               balanceOf{owner, tokenId}, listTokens{}, info{}
///
/// duration and dataCap accept plain decimal seconds/bytes or unit strings ("1day", "10GB").
class SfwtContract final : public ledger::Contract {
public:
    static constexpr const char* contract_name = "sfwt";

    SfwtContract(Address operator_addr, std::set<Address> admins = {});

    std::string name() const override { return contract_name; }
    std::unique_ptr<ledger::Contract> clone() const override { return std::make_unique<SfwtContract>(*this); }
    bool has_transaction(std::string_view op) const override;
    bool has_read(std::string_view op) const override;
    ledger::json execute(ledger::ExecContext& ctx, std::string_view op, const ledger::json& args) override;
    ledger::json read(std::string_view op, const ledger::json& args, TimeSec now) const override;

    /// Only the operator or an admin may mint. Minting an existing id with identical
    /// metadata tops up supply; different metadata reverts. Throws ledger::Revert.
    void mint_sfwt(ledger::ExecContext& ctx, const Address& owner, const TokenId& id, const SfwtMetadata& metadata,
                   const Amount& quantity);

    /// Succeeds only if sum == price * quantity exactly. Pays the operator, moves tokens
    /// from the operator to the caller, and extends the caller's expiration by
    /// duration * quantity (from now if already lapsed). Throws ledger::Revert.
    void buy_sfwt(ledger::ExecContext& ctx, const TokenId& id, const Amount& quantity, const Amount& sum);

    /// Pure. Guards in order: minted, balance > 0, AP matches, now < expiration,
    /// used < dataCap * balance. The first failing guard names the reason.
    VerifyResult verify_sfwt(const Address& holder, const TokenId& id, std::string_view current_ap_id,
                             const Uint256& used_data_bytes, TimeSec now) const;

    std::optional<SfwtMetadata> get_metadata(const TokenId& id) const;
    /// Zero when the holder never bought this id.
    TimeSec get_expiration(const TokenId& id, const Address& holder) const;
    Amount balance_of(const Address& owner, const TokenId& id) const { return tokens_.balance_of(owner, id); }
    std::vector<TokenId> minted_tokens() const;

    const Address& operator_address() const { return operator_; }
    const std::set<Address>& admins() const { return admins_; }
    const tokens::MultiToken& tokens() const { return tokens_; }

private:
    Address operator_;
    std::set<Address> admins_;
    tokens::MultiToken tokens_;
    std::map<TokenId, SfwtMetadata> metadata_;
    std::map<TokenId, std::map<Address, TimeSec>> expirations_;
};

}  // namespace sfwt::contract
