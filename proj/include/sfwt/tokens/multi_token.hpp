#pragma once

#include "sfwt/ledger/contract.hpp"

#include <map>

namespace sfwt::tokens {

/// ERC1155-style balances: (owner, id) -> quantity. Absent keys read as zero and
/// zeroed slots are erased, so a later write to them is metered as a fresh slot.
///
/// Gas does not depend on quantity: a mint is one slot write plus one event, a
/// transfer is two slot writes plus one event.
class MultiToken {
public:
    /// Throws ledger::Revert on overflow.
    void mint(ledger::ExecContext& ctx, const Address& op, const Address& to, const TokenId& id,
              const Amount& quantity);

    /// Throws ledger::Revert when `from` holds less than `quantity`.
    void safe_transfer(ledger::ExecContext& ctx, const Address& op, const Address& from, const Address& to,
                       const TokenId& id, const Amount& quantity);

    Amount balance_of(const Address& owner, const TokenId& id) const;
    Amount total_supply(const TokenId& id) const;

    struct Key {
        TokenId id;
        Address owner;
        friend bool operator<(const Key& a, const Key& b) {
            if (a.id < b.id) return true;
            if (b.id < a.id) return false;
            return a.owner < b.owner;
        }
        friend bool operator==(const Key& a, const Key& b) { return a.id == b.id && a.owner == b.owner; }
    };
    const std::map<Key, Amount>& balances() const { return balances_; }

private:
    std::map<Key, Amount> balances_;
};

}  // namespace sfwt::tokens
