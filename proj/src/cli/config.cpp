#include "argus/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <toml.hpp>

namespace argus::cli {

namespace fs = std::filesystem;

ScenarioConfig::ScenarioConfig() {
    campaign.n_versions = 10000;
    campaign.k_periods = 1000;
    campaign.lambda = 128;
    campaign.guarantee_len = 20;
    campaign.m_licensees = 2;
    assignment.licensees.assign(campaign.m_licensees, actors::LicenseeStrategy::Honest);
}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

toml::table parse_toml(std::string_view text) {
    try {
        return toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream where;
        where << e.source().begin;
        throw ConfigError(fmt::format("TOML syntax error at {}: {}", where.str(), e.description()));
    }
}

void reject_unknown(const toml::table& t, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [k, v] : t) {
        if (known.count(std::string(k.str())) == 0) throw ConfigError(fmt::format("unknown key {}{}", where, k.str()));
    }
}

template <typename T>
std::optional<T> get(const toml::table& t, const char* key, const std::string& where) {
    const auto* node = t.get(key);
    if (node == nullptr) return std::nullopt;
    auto v = node->value_exact<T>();
    if (!v) throw ConfigError(fmt::format("{}{} has the wrong type", where, key));
    return v;
}

std::uint32_t get_u32(const toml::table& t, const char* key, std::uint32_t fallback, const std::string& where) {
    auto v = get<std::int64_t>(t, key, where);
    if (!v) return fallback;
    if (*v < 0 || *v > 0xffffffffLL) throw ConfigError(fmt::format("{}{} out of range", where, key));
    return static_cast<std::uint32_t>(*v);
}

ledger::Money get_money(const toml::table& t, const char* key, const ledger::Money& fallback, const std::string& where) {
    const auto* node = t.get(key);
    if (node == nullptr) return fallback;
    if (auto s = node->value_exact<std::string>()) return incentive::parse_money(*s);
    if (auto i = node->value_exact<std::int64_t>()) return ledger::Money(*i);
    throw ConfigError(fmt::format("{}{} must be an integer or a decimal string", where, key));
}

std::vector<std::string> get_strings(const toml::table& t, const char* key, const std::string& where) {
    std::vector<std::string> out;
    const auto* node = t.get(key);
    if (node == nullptr) return out;
    const auto* arr = node->as_array();
    if (arr == nullptr) throw ConfigError(fmt::format("{}{} must be an array of strings", where, key));
    for (const auto& el : *arr) {
        auto s = el.value_exact<std::string>();
        if (!s) throw ConfigError(fmt::format("{}{} must be an array of strings", where, key));
        out.push_back(*s);
    }
    return out;
}

const toml::table* subtable(const toml::table& t, const char* key) {
    const auto* node = t.get(key);
    if (node == nullptr) return nullptr;
    const auto* tbl = node->as_table();
    if (tbl == nullptr) throw ConfigError(fmt::format("[{}] must be a table", key));
    return tbl;
}

void apply_gas(const toml::table& t, ledger::GasSchedule& g, const std::string& where) {
    static const std::set<std::string> keys = {"base_tx",      "per_hash",   "per_hash_word",
                                               "storage_write_new", "storage_write_update", "storage_read",
                                               "sig_verify",   "group_op",   "per_calldata_byte"};
    reject_unknown(t, keys, where);
    auto set = [&](const char* key, std::uint64_t& field) {
        auto v = get<std::int64_t>(t, key, where);
        if (!v) return;
        if (*v < 0) throw ConfigError(fmt::format("{}{} must be nonnegative", where, key));
        field = static_cast<std::uint64_t>(*v);
    };
    set("base_tx", g.base_tx);
    set("per_hash", g.per_hash);
    set("per_hash_word", g.per_hash_word);
    set("storage_write_new", g.storage_write_new);
    set("storage_write_update", g.storage_write_update);
    set("storage_read", g.storage_read);
    set("sig_verify", g.sig_verify);
    set("group_op", g.group_op);
    set("per_calldata_byte", g.per_calldata_byte);
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text, const fs::path& base_dir) {
    const auto root = parse_toml(text);
    reject_unknown(root, {"name", "seed", "backend", "campaign", "gas", "strategies"}, "");

    ScenarioConfig sc;
    auto& c = sc.campaign;
    if (auto v = get<std::string>(root, "name", "")) sc.name = *v;
    if (auto v = get<std::int64_t>(root, "seed", "")) {
        if (*v < 0) throw ConfigError("seed must be nonnegative");
        sc.seed = static_cast<std::uint64_t>(*v);
    }
    if (auto v = get<std::string>(root, "backend", "")) c.backend = *v;

    if (const auto* t = subtable(root, "campaign")) {
        const std::string w = "campaign.";
        reject_unknown(*t,
                       {"lambda", "n", "k", "m", "guarantee_len", "v", "timeout", "cache", "p_root_mode", "baseline_appeal",
                        "hybrid", "p_batch", "asset", "asset_bytes"},
                       w);
        c.lambda = get_u32(*t, "lambda", c.lambda, w);
        c.n_versions = get_u32(*t, "n", c.n_versions, w);
        c.k_periods = get_u32(*t, "k", c.k_periods, w);
        c.m_licensees = get_u32(*t, "m", c.m_licensees, w);
        c.guarantee_len = static_cast<int>(get_u32(*t, "guarantee_len", static_cast<std::uint32_t>(c.guarantee_len), w));
        c.v = get_money(*t, "v", c.v, w);
        c.timeout = get_u32(*t, "timeout", c.timeout, w);
        if (auto v = get<std::string>(*t, "cache", w)) c.cache = contract::parse_cache_policy(*v);
        if (auto v = get<bool>(*t, "p_root_mode", w)) c.p_root_mode = *v;
        if (auto v = get<bool>(*t, "baseline_appeal", w)) c.baseline_appeal = *v;
        if (auto v = get<bool>(*t, "hybrid", w)) c.hybrid = *v;
        c.p_batch = get_u32(*t, "p_batch", c.p_batch, w);
        c.asset_bytes = get_u32(*t, "asset_bytes", static_cast<std::uint32_t>(c.asset_bytes), w);
        if (auto v = get<std::string>(*t, "asset", w)) {
            fs::path p(*v);
            sc.asset_path = p.is_relative() ? base_dir / p : p;
            const auto blob = read_file(sc.asset_path);
            c.asset.assign(blob.begin(), blob.end());
        }
    }
    if (const auto* t = subtable(root, "gas")) apply_gas(*t, c.gas, "gas.");

    auto& a = sc.assignment;
    a.licensees.assign(c.m_licensees, actors::LicenseeStrategy::Honest);
    if (const auto* t = subtable(root, "strategies")) {
        const std::string w = "strategies.";
        reject_unknown(*t, {"owner", "licensees", "informers", "open_population", "frame_target", "self_report"}, w);
        if (auto v = get<std::string>(*t, "owner", w)) a.owner = actors::parse_owner_strategy(*v);
        const auto lic = get_strings(*t, "licensees", w);
        if (!lic.empty()) {
            if (lic.size() != c.m_licensees) {
                throw ConfigError(fmt::format("strategies.licensees has {} entries, campaign.m is {}", lic.size(), c.m_licensees));
            }
            for (std::size_t i = 0; i < lic.size(); ++i) a.licensees[i] = actors::parse_licensee_strategy(lic[i]);
        }
        const auto inf = get_strings(*t, "informers", w);
        for (std::size_t i = 0; i < inf.size(); ++i) a.informers.push_back(actors::parse_informer_spec(inf[i], fmt::format("I{}", i + 1)));
        a.open_population = get_u32(*t, "open_population", a.open_population, w);
        a.frame_target = get_u32(*t, "frame_target", a.frame_target, w);
        if (auto v = get<bool>(*t, "self_report", w)) a.self_report = *v;
    }
    c.validate();
    return sc;
}

ScenarioConfig load_scenario(const fs::path& path) { return parse_scenario(read_file(path), path.parent_path()); }

ledger::GasSchedule parse_gas_schedule(std::string_view text, ledger::GasSchedule base) {
    const auto root = parse_toml(text);
    apply_gas(root, base, "");
    return base;
}

ledger::GasSchedule load_gas_schedule(const fs::path& path, ledger::GasSchedule base) {
    return parse_gas_schedule(read_file(path), base);
}

}  // namespace argus::cli
