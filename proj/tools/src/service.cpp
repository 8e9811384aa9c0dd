#include "robust_search/service/service.hpp"

#include <cmath>
#include <vector>

#include "robust_search/error.hpp"
#include "robust_search/json_codec.hpp"
#include "robust_search/service/queries.hpp"

namespace robust_search::service {
namespace {

using nlohmann::json;

Response reply(int status, const json& j) { return {status, j.dump()}; }

Response error(int status, const std::string& message) {
    return reply(status, json{{"error", message}});
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char ch : path) {
        if (ch == '/') {
            if (!cur.empty()) parts.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) parts.push_back(std::move(cur));
    return parts;
}

json parse_body(const std::string& body) {
    if (body.empty()) return json::object();
    try {
        return json::parse(body);
    } catch (const json::parse_error&) {
        throw ValidationError("malformed JSON body");
    }
}

int precision_of(const Params& p) {
    const auto v = find_number(p, "precision");
    return v ? checked_precision(static_cast<int>(*v)) : 17;
}

json rounded(const json& j, int precision) {
    return precision >= 17 ? j : round_json(j, precision);
}

int bounded_int(const Params& p, const char* key, int fallback, int cap) {
    const auto v = find_number(p, key);
    if (!v) return fallback;
    if (!(*v >= 1.0 && *v <= cap) || *v != std::floor(*v)) {
        throw ValidationError(std::string(key) + " must be an integer in [1, " +
                              std::to_string(cap) + "]");
    }
    return static_cast<int>(*v);
}

Response offer(SessionStore& store, const std::string& id, const json& body) {
    if (!body.is_object() || !body.contains("value")) {
        throw ValidationError("offer body needs 'value'");
    }
    const double value = number_from_json(body.at("value"));
    std::optional<std::size_t> index;
    if (body.contains("index")) {
        const auto& i = body.at("index");
        if (!i.is_number_unsigned()) throw ValidationError("index must be a nonnegative integer");
        index = i.get<std::size_t>();
    }
    const OfferOutcome out = store.offer(id, value, index);
    const Session& s = out.session;
    json j = session_to_json(s);
    j["duplicate"] = out.duplicate;
    j["curve"] = curve_snippet(s.config.rule, s.y, s.config.x0, s.config.xbar, s.config.cost);
    return reply(200, j);
}

}  // namespace

Service::Service(std::string state_file) : store_(std::move(state_file)) {}

Response Service::handle(const std::string& method, const std::string& path,
                         const Params& query, const std::string& body) {
    const auto parts = split_path(path);
    try {
        if (parts.size() == 1 && parts[0] == "sessions" && method == "POST") {
            return reply(201, session_to_json(store_.create(parse_body(body))));
        }
        if (parts.size() == 2 && parts[0] == "sessions" && method == "GET") {
            const auto s = store_.get(parts[1]);
            if (!s) return error(404, "unknown session '" + parts[1] + "'");
            return reply(200, session_to_json(*s));
        }
        if (parts.size() == 3 && parts[0] == "sessions" && parts[2] == "offers" &&
            method == "POST") {
            return offer(store_, parts[1], parse_body(body));
        }
        if (parts.size() == 2 && parts[0] == "rules" && parts[1] == "eval" && method == "GET") {
            return reply(200, rounded(rule_eval(query), precision_of(query)));
        }
        if (parts.size() == 1 && parts[0] == "ratio" && method == "POST") {
            const Params p = params_from_json(parse_body(body));
            const GridOptions grid{
                .y_points = bounded_int(p, "y_points", 256, kMaxRatioYPoints),
                .z_per_decade = bounded_int(p, "z_per_decade", 256, kMaxRatioZPerDecade)};
            return reply(200, rounded(report_to_json(ratio_query(p, grid)), precision_of(p)));
        }
        return error(404, "no route for " + method + " " + path);
    } catch (const NotFound& e) {
        return error(404, e.what());
    } catch (const Conflict& e) {
        return error(409, e.what());
    } catch (const Error& e) {
        return error(400, e.what());
    } catch (const nlohmann::json::exception& e) {
        return error(400, e.what());
    }
}

}  // namespace robust_search::service
