#include "robust_search/service/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

#include "robust_search/error.hpp"
#include "robust_search/json_codec.hpp"
#include "robust_search/rules.hpp"
#include "robust_search/service/params.hpp"
#include "robust_search/service/queries.hpp"
#include "robust_search/service/service.hpp"
#include "robust_search/simulator.hpp"

namespace robust_search::service {
namespace {

using nlohmann::json;

struct Fraction {
    const char* label;
    double value;
};

constexpr std::array kTable1 = {
    Fraction{"1/89", 1.0 / 89}, Fraction{"1/20", 1.0 / 20}, Fraction{"1/10", 1.0 / 10},
    Fraction{"1/6", 1.0 / 6},   Fraction{"1/5", 1.0 / 5},   Fraction{"1/4", 1.0 / 4},
    Fraction{"1/3", 1.0 / 3},   Fraction{"1/2", 1.0 / 2}};

const std::vector<double> kTable2Deltas = {0.1, 0.2, 0.3, 0.4, 0.5,  0.6,
                                           0.7, 0.8, 0.9, 0.95, 0.99, 0.999};
const std::vector<double> kTable3Deltas = {0.9, 0.95, 0.99, 0.999};

// Every rule parameter doubles as a flag of the same name.
constexpr std::array<std::string_view, 13> kRuleKeys = {
    "family", "q", "x0", "xbar", "delta", "kappa", "alpha",
    "beta",   "lower", "threshold", "knots", "probs", "class"};

void add_param(CLI::App* app, Params& p, std::string_view key, const std::string& desc) {
    const std::string name(key);
    app->add_option_function<std::string>(
        "--" + name, [&p, name](const std::string& v) { p[name] = v; }, desc);
}

void add_rule_params(CLI::App* app, Params& p, std::initializer_list<std::string_view> skip = {}) {
    for (const auto key : kRuleKeys) {
        if (std::find(skip.begin(), skip.end(), key) != skip.end()) continue;
        add_param(app, p, key, "rule or model parameter");
    }
}

/// Reads `text`, or the file it names when it starts with '@'.
std::string inline_or_file(const std::string& text) {
    if (text.empty() || text.front() != '@') return text;
    std::ifstream in(text.substr(1));
    if (!in) throw ValidationError("cannot read '" + text.substr(1) + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json parse_json_arg(const std::string& text, std::string_view what) {
    try {
        return json::parse(inline_or_file(text));
    } catch (const json::parse_error&) {
        throw ValidationError(std::string(what) + ": malformed JSON");
    }
}

/// Merges a --params JSON object; explicit flags take precedence.
void merge_params(Params& p, const std::string& params_json) {
    if (params_json.empty()) return;
    const json j = parse_json_arg(params_json, "params");
    for (auto& [key, value] : params_from_json(j)) p.try_emplace(key, value);
}

std::uint64_t draw_key(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform draw in [0, 1) for advisor round `round` under `seed`.
double advisor_draw(std::uint64_t seed, std::uint64_t round) {
    return static_cast<double>(draw_key(seed ^ draw_key(round)) >> 11) * 0x1.0p-53;
}

struct Options {
    int precision = 6;
    Params params;
    std::string params_json;
    std::string format = "json";
    bool curve = false;
    bool twopoint = false;
    int y_points = 1024;
    int z_per_decade = 512;
    std::string deltas;
    double r = 0.0;
    int grid = 256;
    double resolution = 1e-4;
    std::string env;
    std::uint64_t n = 10000;
    std::uint64_t seed = 1;
    bool paths_csv = false;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string state_file;
};

std::vector<double> delta_list(const std::string& text, const std::vector<double>& fallback) {
    if (text.empty()) return fallback;
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(parse_number(item, "deltas"));
    return out;
}

void print_json(std::ostream& out, const json& j, int precision) {
    out << round_json(j, precision).dump(2) << '\n';
}

int cmd_rule_eval(const Options& o, std::ostream& out) {
    const json r = rule_eval(o.params);
    out << format_number(r.at("p").get<double>(), o.precision) << '\n';
    return 0;
}

int cmd_ratio(const Options& o, std::ostream& out) {
    if (o.twopoint) {
        const StoppingRule rule = rule_from_params(o.params);
        TwoPointOptions opts;
        opts.grid.y_points = o.y_points;
        opts.grid.z_per_decade = o.z_per_decade;
        const auto rep = twopoint_ratio(rule, require_number(o.params, "x0"),
                                        find_number(o.params, "xbar").value_or(1.0),
                                        cost_from_params(o.params), opts);
        print_json(out, twopoint_to_json(rep), o.precision);
        return 0;
    }
    const GridOptions grid{.y_points = o.y_points, .z_per_decade = o.z_per_decade};
    const RatioReport rep = ratio_query(o.params, grid);
    if (o.format == "csv") {
        write_curve_csv(out, rep, o.precision);
    } else {
        print_json(out, report_to_json(rep, o.curve), o.precision);
    }
    return 0;
}

int cmd_table1(const Options& o, std::ostream& out) {
    out << "x0_over_xbar,rho\n";
    for (const auto& f : kTable1) {
        out << f.label << ',' << format_number(rho(f.value), o.precision) << '\n';
    }
    return 0;
}

int cmd_calibration_table(const Options& o, std::ostream& out, bool linear) {
    const auto deltas = delta_list(o.deltas, linear ? kTable2Deltas : kTable3Deltas);
    out << "delta,param_star,eps_star\n";
    for (const double d : deltas) {
        const CalibrationResult c = linear ? calibrate_linear(d) : calibrate_sqrt(d);
        out << format_number(d, o.precision) << ',' << format_number(c.param, o.precision) << ','
            << format_number(c.loss, o.precision) << '\n';
    }
    return 0;
}

int cmd_derive(const Options& o, std::ostream& out) {
    const double delta = require_number(o.params, "delta");
    DeriveOptions opts;
    opts.grid = o.grid;
    const DerivedRule d = derive_rule(o.r, delta, opts);
    if (o.format == "csv") {
        write_rule_csv(out, d, o.precision);
        return 0;
    }
    print_json(out,
               json{{"target", d.target},
                    {"delta", delta},
                    {"x0", d.x0},
                    {"intervals", d.intervals},
                    {"rule", rule_to_json(d.rule)}},
               o.precision);
    return 0;
}

int cmd_compute_l(const Options& o, std::ostream& out) {
    const double delta = require_number(o.params, "delta");
    LOptions opts;
    opts.resolution = o.resolution;
    const LResult l = compute_L(delta, opts);
    print_json(out, json{{"delta", delta}, {"L", l.L}, {"evaluations", l.evaluations}},
               o.precision);
    return 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    if (o.env.empty()) throw ValidationError("missing --env");
    const Environment env = environment_from_json(parse_json_arg(o.env, "env"));
    const StoppingRule rule = rule_from_params(o.params);
    const CostModel cost = cost_from_params(o.params);
    const double x0 = require_number(o.params, "x0");
    if (o.paths_csv) {
        write_paths_csv(out, simulate_paths(env, rule, x0, cost, o.n, o.seed), o.precision);
        return 0;
    }
    print_json(out, estimate_to_json(estimate_value(env, rule, x0, cost, o.n, o.seed)),
               o.precision);
    return 0;
}

int cmd_advise(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    Params p = o.params;
    p.try_emplace("family", "pstar");
    const double x0 = require_number(p, "x0");
    const double xbar = find_number(p, "xbar").value_or(1.0);
    if (!(x0 > 0.0) || !(xbar >= x0)) throw ValidationError("need 0 < x0 <= xbar");
    p.try_emplace("xbar", format_number(xbar, 17));
    const StoppingRule rule = rule_from_params(p);
    const int digits = o.precision;

    double y = x0;
    std::uint64_t round = 0;
    const auto report = [&] {
        const double prob = rule(y);
        const double u = advisor_draw(o.seed, round);
        out << "round=" << round << " y=" << format_number(y, digits)
            << " p=" << format_number(prob, digits) << " seed=" << o.seed
            << " draw=" << format_number(u, digits)
            << " recommend=" << (u < prob ? "stop" : "continue") << '\n';
        out.flush();
    };
    report();
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == "quit" || line == "stop" || line == "q") break;
        double value = 0.0;
        try {
            value = parse_number(line, "offer");
            if (value < 0.0 || value > xbar) throw ValidationError("offer must lie in [0, xbar]");
        } catch (const ValidationError& e) {
            err << "error: " << e.what() << '\n';
            continue;
        }
        y = std::max(y, value);
        ++round;
        report();
    }
    return 0;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
    Service service(resolve_state_file(o.state_file));
    HttpServer server(service);
    const int port = server.bind(o.host, o.port);
    if (port < 0) {
        err << "error: cannot bind " << o.host << ':' << o.port << '\n';
        return 1;
    }
    out << "listening on http://" << o.host << ':' << port << '\n';
    out.flush();
    return server.listen() ? 0 : 1;
}

std::string one_line(std::string s) {
    for (char& ch : s) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    return s;
}

}  // namespace

std::string resolve_state_file(const std::string& flag) {
    const char* env = std::getenv("ROBUST_SEARCH_STATE");
    return env && *env ? std::string(env) : flag;
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    Options o;
    CLI::App app{"Robust stopping rules for sequential search", "robust-search"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--precision", o.precision, "significant digits in output (1-15)")
        ->default_val(6);

    auto* rule = app.add_subcommand("rule", "evaluate stopping rules");
    rule->require_subcommand(1);
    auto* eval = rule->add_subcommand("eval", "print p(y)");
    add_rule_params(eval, o.params);
    add_param(eval, o.params, "y", "best-so-far value");
    eval->add_option("--params", o.params_json, "rule parameters as a JSON object or @file");

    auto* ratio = app.add_subcommand("ratio", "worst-case performance ratio of a rule");
    add_param(ratio, o.params, "rule", "rule family name or JSON object");
    add_rule_params(ratio, o.params);
    ratio->add_option("--params", o.params_json, "rule parameters as a JSON object or @file");
    ratio->add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    ratio->add_flag("--curve", o.curve, "include the ratio curve in JSON output");
    ratio->add_flag("--twopoint", o.twopoint, "search two-point environments as well");
    ratio->add_option("--y-points", o.y_points, "y grid size")->check(CLI::Range(2, 1 << 20));
    ratio->add_option("--z-per-decade", o.z_per_decade, "z grid density")
        ->check(CLI::Range(8, 1 << 16));

    auto* table1 = app.add_subcommand("table1", "ratio of the bounded-support robust rule");
    auto* table2 = app.add_subcommand("table2", "calibrated linear rules");
    table2->add_option("--deltas", o.deltas, "comma-separated discount factors");
    auto* table3 = app.add_subcommand("table3", "calibrated square-root rules");
    table3->add_option("--deltas", o.deltas, "comma-separated discount factors");

    auto* derive = app.add_subcommand("derive", "derive a rule guaranteeing ratio r");
    derive->add_option("--r", o.r, "target ratio")->required();
    add_param(derive, o.params, "delta", "discount factor");
    derive->add_option("--grid", o.grid, "cells per geometric interval")
        ->check(CLI::Range(2, 1 << 16));
    derive->add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* compute_l = app.add_subcommand("compute-L", "lowest x0 the bounded robust rule serves");
    add_param(compute_l, o.params, "delta", "discount factor");
    compute_l->add_option("--resolution", o.resolution, "bisection resolution")
        ->check(CLI::PositiveNumber);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo value of a rule");
    simulate->add_option("--env", o.env, "environment as JSON or @file")->required();
    add_param(simulate, o.params, "rule", "rule family name or JSON object");
    add_rule_params(simulate, o.params, {"class"});
    simulate->add_option("--params", o.params_json, "rule parameters as a JSON object or @file");
    simulate->add_option("--n", o.n, "number of paths");
    simulate->add_option("--seed", o.seed, "random seed");
    simulate->add_flag("--paths-csv", o.paths_csv, "print every path as CSV");

    auto* advise = app.add_subcommand("advise", "interactive advisor reading offers from stdin");
    add_param(advise, o.params, "rule", "rule family name or JSON object");
    add_rule_params(advise, o.params, {"class"});
    advise->add_option("--seed", o.seed, "random seed for recommendations");

    auto* serve = app.add_subcommand("serve", "run the HTTP service");
    serve->add_option("--host", o.host, "bind address");
    serve->add_option("--port", o.port, "port (0 picks a free one)")->check(CLI::Range(0, 65535));
    serve->add_option("--state-file", o.state_file,
                      "append-only session log (ROBUST_SEARCH_STATE overrides)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return 2;
    }

    try {
        o.precision = checked_precision(o.precision);
        merge_params(o.params, o.params_json);
        if (*eval) return cmd_rule_eval(o, out);
        if (*ratio) return cmd_ratio(o, out);
        if (*table1) return cmd_table1(o, out);
        if (*table2) return cmd_calibration_table(o, out, true);
        if (*table3) return cmd_calibration_table(o, out, false);
        if (*derive) return cmd_derive(o, out);
        if (*compute_l) return cmd_compute_l(o, out);
        if (*simulate) return cmd_simulate(o, out);
        if (*advise) return cmd_advise(o, in, out, err);
        if (*serve) return cmd_serve(o, out, err);
    } catch (const Error& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return 1;
    }
    return 1;
}

}  // namespace robust_search::service
