#include "sfwt/tokens/multi_token.hpp"

namespace sfwt::tokens {

using ledger::json;
using ledger::Revert;

namespace {

json transfer_event(const Address& op, const Address& from, const Address& to, const TokenId& id,
                    const Amount& quantity) {
    return json{{"operator", op.to_hex()},
                {"from", from.to_hex()},
                {"to", to.to_hex()},
                {"id", id.to_string()},
                {"value", to_decimal(quantity)}};
}

}  // namespace

void MultiToken::mint(ledger::ExecContext& ctx, const Address& op, const Address& to, const TokenId& id,
                      const Amount& quantity) {
    Key key{id, to};
    auto it = balances_.find(key);
    bool existed = it != balances_.end();
    Amount current = existed ? it->second : Amount(0);
    Amount updated;
    try {
        updated = current + quantity;
    } catch (const std::overflow_error&) {
        throw Revert("balance overflow");
    }
    ctx.storage_write(existed);
    if (updated.is_zero()) {
        balances_.erase(key);
    } else {
        balances_[key] = updated;
    }
    ctx.emit("TransferSingle", transfer_event(op, Address{}, to, id, quantity));
}

void MultiToken::safe_transfer(ledger::ExecContext& ctx, const Address& op, const Address& from, const Address& to,
                               const TokenId& id, const Amount& quantity) {
    Key from_key{id, from};
    Key to_key{id, to};
    auto from_it = balances_.find(from_key);
    Amount from_balance = from_it == balances_.end() ? Amount(0) : from_it->second;
    if (from_balance < quantity) throw Revert("insufficient token balance");

    bool from_existed = from_it != balances_.end();
    bool to_existed = balances_.count(to_key) > 0;
    ctx.storage_write(from_existed);
    ctx.storage_write(to_existed);

    if (from != to) {
        Amount to_balance = to_existed ? balances_[to_key] : Amount(0);
        Amount remaining = from_balance - quantity;
        Amount credited;
        try {
            credited = to_balance + quantity;
        } catch (const std::overflow_error&) {
            throw Revert("balance overflow");
        }
        if (remaining.is_zero()) {
            balances_.erase(from_key);
        } else {
            balances_[from_key] = remaining;
        }
        if (credited.is_zero()) {
            balances_.erase(to_key);
        } else {
            balances_[to_key] = credited;
        }
    }
    ctx.emit("TransferSingle", transfer_event(op, from, to, id, quantity));
}

Amount MultiToken::balance_of(const Address& owner, const TokenId& id) const {
    auto it = balances_.find(Key{id, owner});
    return it == balances_.end() ? Amount(0) : it->second;
}

Amount MultiToken::total_supply(const TokenId& id) const {
    Amount total = 0;
    for (auto it = balances_.lower_bound(Key{id, Address{}}); it != balances_.end() && it->first.id == id; ++it) {
        total += it->second;
    }
    return total;
}

}  // namespace sfwt::tokens
