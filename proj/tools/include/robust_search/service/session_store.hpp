#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "robust_search/cost_model.hpp"
#include "robust_search/stopping_rule.hpp"

namespace robust_search::service {

struct SessionConfig {
    double x0 = 0.0;
    double xbar = 1.0;
    CostModel cost;
    StoppingRule rule;
    nlohmann::json rule_spec;  // as given by the client, kept for display
};

/// Validates and normalizes a client config. Accepts delta/kappa at the top
/// level or under "cost"; "rule" is a family name or a full rule object.
[[nodiscard]] SessionConfig session_config_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json session_config_to_json(const SessionConfig& c);

struct Session {
    std::string id;
    SessionConfig config;
    std::vector<double> offers;
    double y = 0.0;
    double current_p = 0.0;
    std::string created_at;
};

[[nodiscard]] nlohmann::json session_to_json(const Session& s);

struct OfferOutcome {
    Session session;
    bool duplicate = false;  // the offer index was already recorded
};

/// In-memory sessions with an optional append-only JSON-lines log.
/// Mutations of one session are serialized; distinct sessions proceed
/// independently.
class SessionStore {
public:
    /// Opens (and replays) `state_file` when non-empty.
    explicit SessionStore(std::string state_file = {});

    [[nodiscard]] Session create(const nlohmann::json& config);

    /// Appends `value`. When `index` is given it acts as an idempotency key:
    /// a repeat of a recorded index with the same value is a no-op, a
    /// different value or a gap is rejected.
    [[nodiscard]] OfferOutcome offer(const std::string& id, double value,
                                     std::optional<std::size_t> index = std::nullopt);

    [[nodiscard]] std::optional<Session> get(const std::string& id) const;
    [[nodiscard]] std::size_t size() const;

private:
    struct Entry {
        std::mutex mutex;
        Session session;
    };

    [[nodiscard]] std::shared_ptr<Entry> find(const std::string& id) const;
    void append_log(const nlohmann::json& event);
    void replay();
    [[nodiscard]] std::string next_id();

    std::string state_file_;
    mutable std::mutex map_mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::mutex log_mutex_;
    std::ofstream log_;
    std::uint64_t id_key_ = 0;
    std::uint64_t id_counter_ = 0;
};

/// Raised for an unknown session id.
class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an offer index conflicts with the recorded log.
class Conflict : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace robust_search::service
