#include "sfwt/tokens/bench_tokens.hpp"

namespace sfwt::tokens {

using ledger::CallError;
using ledger::json;

namespace {

std::vector<TokenId> token_list(const json& args) {
    auto it = args.find("tokenIds");
    if (it == args.end() || !it->is_array()) throw CallError("argument 'tokenIds' must be an array");
    std::vector<TokenId> ids;
    ids.reserve(it->size());
    for (const auto& v : *it) {
        if (!v.is_string()) throw CallError("tokenIds entries must be decimal strings");
        try {
            ids.push_back(TokenId::parse(v.get<std::string>()));
        } catch (const std::invalid_argument& e) {
            throw CallError(e.what());
        }
    }
    return ids;
}

}  // namespace

bool BenchTokenContract::has_transaction(std::string_view op) const {
    return op == "mint1155" || op == "transfer1155" || op == "mint721" || op == "transfer721";
}

bool BenchTokenContract::has_read(std::string_view op) const { return op == "balanceOf1155" || op == "ownerOf721"; }

json BenchTokenContract::execute(ledger::ExecContext& ctx, std::string_view op, const json& args) {
    if (op == "mint1155") {
        multi_.mint(ctx, ctx.caller(), ledger::arg_address(args, "to"), ledger::arg_token(args, "tokenId"),
                    ledger::arg_uint(args, "quantity"));
    } else if (op == "transfer1155") {
        multi_.safe_transfer(ctx, ctx.caller(), ctx.caller(), ledger::arg_address(args, "to"),
                             ledger::arg_token(args, "tokenId"), ledger::arg_uint(args, "quantity"));
    } else if (op == "mint721") {
        nfts_.mint(ctx, ledger::arg_address(args, "to"), token_list(args));
    } else if (op == "transfer721") {
        nfts_.transfer(ctx, ctx.caller(), ledger::arg_address(args, "to"), token_list(args));
    } else {
        throw CallError("unknown operation " + std::string(op));
    }
    return true;
}

json BenchTokenContract::read(std::string_view op, const json& args, TimeSec) const {
    if (op == "balanceOf1155") {
        return json{{"balance", to_decimal(multi_.balance_of(ledger::arg_address(args, "owner"),
                                                             ledger::arg_token(args, "tokenId")))}};
    }
    if (op == "ownerOf721") {
        auto owner = nfts_.owner_of(ledger::arg_token(args, "tokenId"));
        return json{{"owner", owner ? json(owner->to_hex()) : json(nullptr)}};
    }
    throw CallError("unknown read " + std::string(op));
}

}  // namespace sfwt::tokens
