#include "sfwt/ap/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace sfwt::ap {

void ApConfig::validate() const {
    if (ap_id.empty()) throw std::invalid_argument("apId must be set");
    if (sweep_interval_sec == 0) throw std::invalid_argument("sweepIntervalSec must be > 0");
    if (session_ttl_sec == 0) throw std::invalid_argument("sessionTtlSec must be > 0");
    if (max_pending_sessions == 0) throw std::invalid_argument("maxPendingSessions must be > 0");
}

namespace {

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size() || value.front() == '-')
        throw std::invalid_argument("config key '" + key + "' needs a non-negative integer, got '" + value + "'");
    return v;
}

void apply(ApConfig& c, const std::string& key, const std::string& value) {
    if (key == "apId") c.ap_id = value;
    else if (key == "ledgerEndpoint") c.ledger_endpoint = value;
    else if (key == "listenAddr") c.listen_addr = value;
    else if (key == "sweepIntervalSec") c.sweep_interval_sec = to_u64(key, value);
    else if (key == "sessionTtlSec") c.session_ttl_sec = to_u64(key, value);
    else if (key == "maxPendingSessions") c.max_pending_sessions = to_u64(key, value);
    else if (key == "adminToken") c.admin_token = value;
    else if (key == "walletUrl") c.wallet_url = value;
    else if (key == "sessionSeed") c.session_seed = to_u64(key, value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ApConfig parse_config(std::string_view text, ApConfig base) {
    auto body = trim(text);
    if (!body.empty() && body.front() == '{') {
        auto j = nlohmann::json::parse(body);
        for (const auto& [key, value] : j.items()) {
            if (value.is_string()) apply(base, key, value.get<std::string>());
            else if (value.is_number_unsigned()) apply(base, key, std::to_string(value.get<std::uint64_t>()));
            else throw std::invalid_argument("config key '" + key + "' must be a string or unsigned number");
        }
        return base;
    }
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
        apply(base, trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
    }
    return base;
}

ApConfig load_config(const std::string& path, ApConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

}  // namespace sfwt::ap
