#include "robust_search/service/session_store.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <random>

#include "robust_search/error.hpp"
#include "robust_search/json_codec.hpp"
#include "robust_search/service/params.hpp"

namespace robust_search::service {
namespace {

using nlohmann::json;

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double number_field(const json& j, const char* key) {
    if (!j.contains(key)) throw ValidationError(std::string("config: missing '") + key + "'");
    return number_from_json(j.at(key));
}

void apply_offer(Session& s, double value) {
    s.offers.push_back(value);
    s.y = std::max(s.y, value);
    s.current_p = s.config.rule(s.y);
}

}  // namespace

SessionConfig session_config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    SessionConfig c;
    c.x0 = number_field(j, "x0");
    c.xbar = j.contains("xbar") ? number_from_json(j.at("xbar")) : 1.0;
    if (j.contains("cost")) {
        c.cost = j.at("cost").get<CostModel>();
    } else {
        c.cost.delta = number_field(j, "delta");
        c.cost.kappa = j.contains("kappa") ? number_from_json(j.at("kappa")) : 0.0;
    }
    c.cost.validate();
    if (!(c.x0 > 0.0) || !std::isfinite(c.x0)) throw ValidationError("config: x0 must be > 0");
    if (!(c.xbar >= c.x0)) throw ValidationError("config: xbar must be >= x0");
    if (!j.contains("rule")) throw ValidationError("config: missing 'rule'");
    c.rule_spec = j.at("rule");
    json context = {{"x0", c.x0}, {"delta", c.cost.delta}, {"kappa", c.cost.kappa}};
    if (std::isfinite(c.xbar)) context["xbar"] = c.xbar;
    c.rule = rule_from_value(c.rule_spec, context);
    return c;
}

json session_config_to_json(const SessionConfig& c) {
    return {{"x0", c.x0},
            {"xbar", number_to_json(c.xbar)},
            {"cost", c.cost},
            {"rule", c.rule_spec},
            {"resolved_rule", rule_to_json(c.rule)}};
}

json session_to_json(const Session& s) {
    json offers = json::array();
    for (const double v : s.offers) offers.push_back(v);
    return {{"id", s.id},
            {"config", session_config_to_json(s.config)},
            {"offers", offers},
            {"y", s.y},
            {"current_p", s.current_p},
            {"created_at", s.created_at}};
}

SessionStore::SessionStore(std::string state_file) : state_file_(std::move(state_file)) {
    std::random_device rd;
    id_key_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    if (state_file_.empty()) return;
    replay();
    log_.open(state_file_, std::ios::app);
    if (!log_) throw ConfigError("cannot open state file '" + state_file_ + "'");
}

void SessionStore::replay() {
    std::ifstream in(state_file_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json e;
        try {
            e = json::parse(line);
        } catch (const json::parse_error&) {
            continue;  // torn final write
        }
        const std::string kind = e.value("event", "");
        const std::string id = e.value("id", "");
        if (kind == "create") {
            auto entry = std::make_shared<Entry>();
            Session& s = entry->session;
            s.id = id;
            s.config = session_config_from_json(e.at("config"));
            s.created_at = e.value("created_at", "");
            s.y = s.config.x0;
            s.current_p = s.config.rule(s.y);
            sessions_[id] = std::move(entry);
        } else if (kind == "offer") {
            const auto it = sessions_.find(id);
            if (it == sessions_.end()) continue;
            Session& s = it->second->session;
            if (e.value("index", std::size_t{0}) != s.offers.size()) continue;
            apply_offer(s, number_from_json(e.at("value")));
        }
    }
}

void SessionStore::append_log(const json& event) {
    if (state_file_.empty()) return;
    const std::lock_guard lock(log_mutex_);
    log_ << event.dump() << '\n';
    log_.flush();
}

std::string SessionStore::next_id() {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(mix(id_key_ ^ mix(++id_counter_))));
    return buf;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
    const std::lock_guard lock(map_mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
    return it->second;
}

Session SessionStore::create(const json& config) {
    auto entry = std::make_shared<Entry>();
    Session& s = entry->session;
    s.config = session_config_from_json(config);
    s.created_at = utc_now();
    s.y = s.config.x0;
    s.current_p = s.config.rule(s.y);
    {
        const std::lock_guard lock(map_mutex_);
        do {
            s.id = next_id();
        } while (sessions_.contains(s.id));
        sessions_[s.id] = entry;
    }
    append_log({{"event", "create"}, {"id", s.id}, {"created_at", s.created_at}, {"config", config}});
    return s;
}

OfferOutcome SessionStore::offer(const std::string& id, double value,
                                 std::optional<std::size_t> index) {
    if (!std::isfinite(value) || value < 0.0) {
        throw ValidationError("offer value must be finite and >= 0");
    }
    const auto entry = find(id);
    const std::lock_guard lock(entry->mutex);
    Session& s = entry->session;
    if (value > s.config.xbar) throw ValidationError("offer value exceeds xbar");
    if (index && *index < s.offers.size()) {
        if (s.offers[*index] != value) {
            throw Conflict("offer index " + std::to_string(*index) +
                           " already recorded with a different value");
        }
        return {s, true};
    }
    if (index && *index > s.offers.size()) {
        throw ValidationError("offer index " + std::to_string(*index) + " skips ahead of " +
                              std::to_string(s.offers.size()));
    }
    const std::size_t at = s.offers.size();
    apply_offer(s, value);
    append_log({{"event", "offer"}, {"id", id}, {"index", at}, {"value", value}});
    return {s, false};
}

std::optional<Session> SessionStore::get(const std::string& id) const {
    const std::lock_guard map_lock(map_mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) return std::nullopt;
    const std::lock_guard lock(it->second->mutex);
    return it->second->session;
}

std::size_t SessionStore::size() const {
    const std::lock_guard lock(map_mutex_);
    return sessions_.size();
}

}  // namespace robust_search::service
