/*
Copyright 2026 The GECS Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "gecs/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string_view>
#include <thread>

#include "gecs/error.hpp"

namespace gecs {

using nlohmann::json;

namespace {

std::string link_field(std::string_view section, std::size_t l) {
    return std::string(section) + "[" + std::to_string(l) + "] (l" + std::to_string(l + 1) + ")";
}

void expect_object(const json &node, const std::string &where) {
    if (!node.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
}

void expect_keys(const json &node, const std::string &where, std::initializer_list<std::string_view> allowed) {
    expect_object(node, where);
    for (auto it = node.begin(); it != node.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw ValidationError(where + ": unknown key '" + it.key() + "'");
        }
    }
}

double number(const json &node, const std::string &where) {
    if (!node.is_number()) {
        throw ValidationError(where + ": expected a number");
    }
    const double v = node.get<double>();
    if (!std::isfinite(v)) {
        throw ValidationError(where + ": expected a finite number");
    }
    return v;
}

std::uint64_t count(const json &node, const std::string &where) {
    if (!node.is_number_integer() || node.get<long long>() < 0) {
        if (node.is_number_float() && node.get<double>() >= 0.0 &&
            node.get<double>() == std::floor(node.get<double>())) {
            return static_cast<std::uint64_t>(node.get<double>());
        }
        throw ValidationError(where + ": expected a non-negative integer");
    }
    return node.get<std::uint64_t>();
}

std::vector<double> numbers(const json &node, const std::string &where) {
    if (!node.is_array()) {
        throw ValidationError(where + ": expected a list of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(number(node[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::string text(const json &node, const std::string &where) {
    if (!node.is_string()) {
        throw ValidationError(where + ": expected a string");
    }
    return node.get<std::string>();
}

ConflictNetwork parse_network(const json &node) {
    expect_keys(node, "network", {"edges", "vertices", "model", "k", "conflicts"});
    const bool has_edges = node.contains("edges");
    const bool has_conflicts = node.contains("conflicts");
    if (has_edges == has_conflicts) {
        throw ValidationError("network: give exactly one of 'edges' or 'conflicts'");
    }
    if (has_conflicts) {
        for (const char *key : {"vertices", "model", "k"}) {
            if (node.contains(key)) {
                throw ValidationError(std::string("network: '") + key + "' only applies to 'edges'");
            }
        }
        const json &lists = node["conflicts"];
        if (!lists.is_array()) {
            throw ValidationError("network.conflicts: expected a list of lists");
        }
        std::vector<std::vector<LinkId>> sets;
        for (std::size_t l = 0; l < lists.size(); ++l) {
            const std::string where = link_field("network.conflicts", l);
            if (!lists[l].is_array()) {
                throw ValidationError(where + ": expected a list of link indices");
            }
            std::vector<LinkId> set;
            for (const auto &k : lists[l]) {
                set.push_back(count(k, where));
            }
            sets.push_back(std::move(set));
        }
        try {
            return ConflictNetwork::from_conflicts(sets);
        } catch (const ValidationError &e) {
            throw ValidationError(std::string("network.conflicts: ") + e.what());
        }
    }

    const json &edges = node["edges"];
    if (!edges.is_array()) {
        throw ValidationError("network.edges: expected a list of [u, v] pairs");
    }
    Graph graph;
    std::size_t max_vertex = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string where = link_field("network.edges", i);
        if (!edges[i].is_array() || edges[i].size() != 2) {
            throw ValidationError(where + ": expected a [u, v] pair");
        }
        const Edge e{count(edges[i][0], where), count(edges[i][1], where)};
        max_vertex = std::max({max_vertex, e.from, e.to});
        graph.edges.push_back(e);
    }
    graph.num_vertices = node.contains("vertices") ? count(node["vertices"], "network.vertices") : max_vertex + 1;

    InterferenceModel model = InterferenceModel::one_hop();
    const std::string kind = node.contains("model") ? text(node["model"], "network.model") : "one-hop";
    if (kind == "one-hop") {
        if (node.contains("k")) {
            throw ValidationError("network.k: only valid with model 'k-hop'");
        }
    } else if (kind == "k-hop") {
        if (!node.contains("k")) {
            throw ValidationError("network.k: required for model 'k-hop'");
        }
        const auto k = count(node["k"], "network.k");
        if (k < 1) {
            throw ValidationError("network.k: must be >= 1");
        }
        model = InterferenceModel::k_hop(static_cast<unsigned>(k));
    } else {
        throw ValidationError("network.model: expected 'one-hop' or 'k-hop', got '" + kind + "'");
    }
    try {
        return build_conflict_sets(graph, model);
    } catch (const ValidationError &e) {
        throw ValidationError(std::string("network.edges: ") + e.what());
    }
}

LinkRadio parse_radio(const json &node, const std::string &where, std::vector<std::string> &warnings) {
    expect_keys(node, where, {"levels", "awgn", "rates", "table", "p_avg"});
    const int curves = int(node.contains("awgn")) + int(node.contains("rates")) + int(node.contains("table"));
    if (curves != 1) {
        throw ValidationError(where + ": give exactly one of 'awgn', 'rates' or 'table'");
    }
    if (!node.contains("p_avg")) {
        throw ValidationError(where + ".p_avg: required");
    }
    const double p_avg = number(node["p_avg"], where + ".p_avg");

    try {
        std::optional<LinkRadio> radio;
        if (node.contains("awgn")) {
            const json &a = node["awgn"];
            expect_keys(a, where + ".awgn", {"h", "n0w", "w"});
            AwgnParams params;
            if (a.contains("h")) params.gain = number(a["h"], where + ".awgn.h");
            if (a.contains("n0w")) params.noise_power = number(a["n0w"], where + ".awgn.n0w");
            if (a.contains("w")) params.bandwidth = number(a["w"], where + ".awgn.w");
            if (!node.contains("levels")) {
                throw ValidationError(where + ".levels: required with an AWGN curve");
            }
            radio.emplace(RatePowerCurve::awgn(params), numbers(node["levels"], where + ".levels"), p_avg);
        } else if (node.contains("rates")) {
            if (!node.contains("levels")) {
                throw ValidationError(where + ".levels: required with a rate table");
            }
            const auto levels = numbers(node["levels"], where + ".levels");
            const auto rates = numbers(node["rates"], where + ".rates");
            if (levels.size() != rates.size()) {
                throw ValidationError(where + ": 'levels' and 'rates' differ in length");
            }
            std::vector<RatePowerPoint> points;
            for (std::size_t i = 0; i < levels.size(); ++i) {
                points.push_back({levels[i], rates[i]});
            }
            radio.emplace(RatePowerCurve::table(points), p_avg);
        } else {
            const json &t = node["table"];
            if (!t.is_array()) {
                throw ValidationError(where + ".table: expected a list of [power, rate] pairs");
            }
            std::vector<RatePowerPoint> points;
            for (std::size_t i = 0; i < t.size(); ++i) {
                const auto pair = numbers(t[i], where + ".table[" + std::to_string(i) + "]");
                if (pair.size() != 2) {
                    throw ValidationError(where + ".table[" + std::to_string(i) + "]: expected [power, rate]");
                }
                points.push_back({pair[0], pair[1]});
            }
            const auto curve = RatePowerCurve::table(points);
            if (node.contains("levels")) {
                radio.emplace(curve, numbers(node["levels"], where + ".levels"), p_avg);
            } else {
                radio.emplace(curve, p_avg);
            }
        }
        const auto report = validate_convexity(radio->curve(), radio->levels());
        if (!report.ok) {
            throw ValidationError("rate-power curve is not convex: " + report.message);
        }
        if (radio->power_control_vacuous()) {
            warnings.push_back(where + ": p_avg >= peak power, the budget never binds");
        }
        return *radio;
    } catch (const ValidationError &e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) {
            throw;
        }
        throw ValidationError(where + ": " + msg);
    }
}

sim::ArrivalKind parse_arrival_kind(const std::string &kind) {
    if (kind == "poisson") return sim::ArrivalKind::poisson;
    if (kind == "bernoulli_batch") return sim::ArrivalKind::bernoulli_batch;
    if (kind == "periodic") return sim::ArrivalKind::periodic;
    if (kind == "constant") return sim::ArrivalKind::constant;
    throw ValidationError("arrivals.kind: expected poisson, bernoulli_batch, periodic or constant, got '" + kind + "'");
}

ArrivalConfig parse_arrivals(const json &node, std::size_t links) {
    expect_keys(node, "arrivals", {"kind", "batch", "period", "means", "direction"});
    ArrivalConfig cfg;
    if (node.contains("kind")) {
        cfg.kind = parse_arrival_kind(text(node["kind"], "arrivals.kind"));
    }
    if (node.contains("batch")) {
        cfg.batch = number(node["batch"], "arrivals.batch");
        if (!(cfg.batch > 0.0)) {
            throw ValidationError("arrivals.batch: must be positive");
        }
    }
    if (node.contains("period")) {
        cfg.period = count(node["period"], "arrivals.period");
        if (cfg.period < 1) {
            throw ValidationError("arrivals.period: must be >= 1");
        }
    }
    if (node.contains("means") == node.contains("direction")) {
        throw ValidationError("arrivals: give exactly one of 'means' or 'direction'");
    }
    auto check = [&](const std::vector<double> &v, const std::string &where) {
        if (v.size() != links) {
            throw ValidationError(where + ": expected " + std::to_string(links) + " entries, got " +
                                  std::to_string(v.size()));
        }
        for (std::size_t l = 0; l < v.size(); ++l) {
            if (v[l] < 0.0) {
                throw ValidationError(link_field(where, l) + ": must be non-negative");
            }
        }
    };
    if (node.contains("means")) {
        cfg.means = numbers(node["means"], "arrivals.means");
        check(*cfg.means, "arrivals.means");
    } else if (node["direction"].is_string()) {
        if (node["direction"].get<std::string>() != "max_admissible") {
            throw ValidationError("arrivals.direction: expected a list or \"max_admissible\"");
        }
        cfg.direction_is_max_admissible = true;
    } else {
        cfg.direction = numbers(node["direction"], "arrivals.direction");
        check(*cfg.direction, "arrivals.direction");
        if (std::all_of(cfg.direction->begin(), cfg.direction->end(), [](double d) { return d == 0.0; })) {
            throw ValidationError("arrivals.direction: must be nonzero");
        }
    }
    return cfg;
}

ExperimentConfig parse_experiment(const json &node, std::size_t links) {
    ExperimentConfig cfg;
    if (node.is_null()) {
        return cfg;
    }
    expect_keys(node, "experiment",
                {"policies", "rho", "horizon", "seeds", "jobs", "tie_break", "virtual_departures", "stability_window",
                 "stable_slope", "unstable_slope", "power_tol", "trace_stride", "initial", "allocation_cap",
                 "activation_cap"});
    if (node.contains("policies")) {
        const json &p = node["policies"];
        if (!p.is_array() || p.empty()) {
            throw ValidationError("experiment.policies: expected a nonempty list of names");
        }
        cfg.policies.clear();
        for (std::size_t i = 0; i < p.size(); ++i) {
            const std::string name = text(p[i], "experiment.policies[" + std::to_string(i) + "]");
            const auto names = policy_names();
            if (std::find(names.begin(), names.end(), name) == names.end()) {
                throw ValidationError("experiment.policies[" + std::to_string(i) + "]: unknown policy '" + name + "'");
            }
            cfg.policies.push_back(name);
        }
    }
    if (node.contains("rho")) {
        cfg.rho = numbers(node["rho"], "experiment.rho");
        if (cfg.rho.empty() || std::any_of(cfg.rho.begin(), cfg.rho.end(), [](double r) { return r < 0.0; })) {
            throw ValidationError("experiment.rho: expected a nonempty list of non-negative load factors");
        }
    }
    if (node.contains("horizon")) {
        cfg.horizon = count(node["horizon"], "experiment.horizon");
        if (cfg.horizon < 1) {
            throw ValidationError("experiment.horizon: must be >= 1");
        }
    }
    if (node.contains("seeds")) {
        const json &s = node["seeds"];
        if (!s.is_array() || s.empty()) {
            throw ValidationError("experiment.seeds: expected a nonempty list");
        }
        cfg.seeds.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
            cfg.seeds.push_back(count(s[i], "experiment.seeds[" + std::to_string(i) + "]"));
        }
    }
    if (node.contains("jobs")) {
        cfg.jobs = static_cast<unsigned>(std::max<std::uint64_t>(1, count(node["jobs"], "experiment.jobs")));
    }
    if (node.contains("tie_break")) {
        const auto t = text(node["tie_break"], "experiment.tie_break");
        if (t == "random") {
            cfg.ties = TieBreak::random;
        } else if (t == "lowest_index") {
            cfg.ties = TieBreak::lowest_index;
        } else {
            throw ValidationError("experiment.tie_break: expected 'random' or 'lowest_index'");
        }
    }
    if (node.contains("virtual_departures")) {
        const auto v = text(node["virtual_departures"], "experiment.virtual_departures");
        if (v == "constant") {
            cfg.virtual_departures = sim::VirtualDepartures::constant;
        } else if (v == "iid") {
            cfg.virtual_departures = sim::VirtualDepartures::iid;
        } else {
            throw ValidationError("experiment.virtual_departures: expected 'constant' or 'iid'");
        }
    }
    if (node.contains("stability_window")) {
        cfg.stability_window = number(node["stability_window"], "experiment.stability_window");
        if (!(cfg.stability_window > 0.0 && cfg.stability_window < 1.0)) {
            throw ValidationError("experiment.stability_window: must be in (0, 1)");
        }
    }
    if (node.contains("stable_slope")) {
        cfg.thresholds.stable_slope = number(node["stable_slope"], "experiment.stable_slope");
    }
    if (node.contains("unstable_slope")) {
        cfg.thresholds.unstable_slope = number(node["unstable_slope"], "experiment.unstable_slope");
    }
    if (cfg.thresholds.stable_slope > cfg.thresholds.unstable_slope) {
        throw ValidationError("experiment: stable_slope must not exceed unstable_slope");
    }
    if (node.contains("power_tol")) {
        cfg.power_tol = number(node["power_tol"], "experiment.power_tol");
    }
    if (node.contains("trace_stride")) {
        cfg.trace_stride = std::max<std::uint64_t>(1, count(node["trace_stride"], "experiment.trace_stride"));
    }
    if (node.contains("allocation_cap")) {
        cfg.allocation_cap = count(node["allocation_cap"], "experiment.allocation_cap");
    }
    if (node.contains("activation_cap")) {
        cfg.activation_cap = count(node["activation_cap"], "experiment.activation_cap");
    }
    if (node.contains("initial")) {
        const json &init = node["initial"];
        expect_keys(init, "experiment.initial", {"q", "u"});
        cfg.initial = sim::QueueState::zeros(links);
        if (init.contains("q")) cfg.initial.q = numbers(init["q"], "experiment.initial.q");
        if (init.contains("u")) cfg.initial.u = numbers(init["u"], "experiment.initial.u");
        for (const auto *v : {&cfg.initial.q, &cfg.initial.u}) {
            if (v->size() != links || std::any_of(v->begin(), v->end(), [](double x) { return x < 0.0; })) {
                throw ValidationError("experiment.initial: q and u need " + std::to_string(links) +
                                      " non-negative entries");
            }
        }
    }
    return cfg;
}

} // namespace

std::vector<double> Scenario::p_avg() const {
    std::vector<double> out;
    for (const auto &r : radios) {
        out.push_back(r.p_avg());
    }
    return out;
}

Scenario parse_scenario(const json &doc, const std::string &fallback_name) {
    expect_keys(doc, "scenario", {"name", "network", "radio", "radios", "arrivals", "experiment"});
    for (const char *key : {"network", "arrivals"}) {
        if (!doc.contains(key)) {
            throw ValidationError(std::string(key) + ": required section missing");
        }
    }
    const std::string name = doc.contains("name") ? text(doc["name"], "name") : fallback_name;
    ConflictNetwork net = parse_network(doc["network"]);
    const std::size_t n = net.num_links();

    if (!doc.contains("radio") && !doc.contains("radios")) {
        throw ValidationError("radio: give a default 'radio', per-link 'radios', or both");
    }
    const json base = doc.contains("radio") ? doc["radio"] : json::object();
    if (doc.contains("radio")) {
        expect_object(base, "radio");
    }
    json overrides = json::array();
    if (doc.contains("radios")) {
        overrides = doc["radios"];
        if (!overrides.is_array() || overrides.size() != n) {
            throw ValidationError("radios: expected a list with one entry per link (" + std::to_string(n) + ")");
        }
    }
    std::vector<std::string> warnings;
    std::vector<LinkRadio> radios;
    for (std::size_t l = 0; l < n; ++l) {
        json merged = base;
        if (!overrides.empty()) {
            expect_object(overrides[l], link_field("radios", l));
            merged.merge_patch(overrides[l]);
        }
        radios.push_back(parse_radio(merged, link_field("radios", l), warnings));
    }

    ArrivalConfig arrivals = parse_arrivals(doc["arrivals"], n);
    ExperimentConfig experiment = parse_experiment(doc.contains("experiment") ? doc["experiment"] : json(), n);
    return Scenario{name, std::move(net), std::move(radios), std::move(arrivals), std::move(experiment),
                    std::move(warnings)};
}

Scenario load_scenario(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read scenario file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error &e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    return parse_scenario(doc, path.stem().string());
}

std::vector<double> load_direction(const Scenario &scenario, const CapacityRegion &region) {
    if (scenario.arrivals.direction) {
        return *scenario.arrivals.direction;
    }
    if (!scenario.arrivals.direction_is_max_admissible) {
        throw ValidationError("arrivals: scenario uses fixed means, not a load direction");
    }
    std::vector<double> d;
    for (LinkId l = 0; l < scenario.net.num_links(); ++l) {
        d.push_back(region.max_admissible_rate(l));
    }
    return d;
}

std::vector<double> arrival_means(const Scenario &scenario, const CapacityRegion *region, double rho) {
    std::vector<double> means;
    if (scenario.arrivals.means) {
        means = *scenario.arrivals.means;
        for (double &m : means) {
            m *= rho;
        }
        return means;
    }
    if (!region) {
        throw ValidationError("arrivals: a load direction needs the capacity region");
    }
    means = load_direction(scenario, *region);
    const double boundary = region->boundary_scale(means).scale;
    for (double &m : means) {
        m *= rho * boundary;
    }
    return means;
}

std::vector<sim::ArrivalSpec> arrival_specs(const ArrivalConfig &config, const std::vector<double> &means) {
    std::vector<sim::ArrivalSpec> out;
    for (std::size_t l = 0; l < means.size(); ++l) {
        sim::ArrivalSpec spec;
        switch (config.kind) {
        case sim::ArrivalKind::poisson:
            spec = sim::ArrivalSpec::poisson(means[l]);
            break;
        case sim::ArrivalKind::constant:
            spec = sim::ArrivalSpec::constant(means[l]);
            break;
        case sim::ArrivalKind::bernoulli_batch:
            spec = sim::ArrivalSpec::bernoulli_batch(means[l] / config.batch, config.batch);
            break;
        case sim::ArrivalKind::periodic:
            spec = sim::ArrivalSpec::periodic(means[l] * static_cast<double>(config.period), config.period);
            break;
        }
        try {
            spec.validate();
        } catch (const ValidationError &e) {
            throw ValidationError(link_field("arrivals", l) + ": " + e.what());
        }
        out.push_back(spec);
    }
    return out;
}

std::optional<CapacityRegion> region_for(const Scenario &scenario) {
    if (scenario.arrivals.means) {
        return std::nullopt;
    }
    return CapacityRegion(scenario.net, scenario.radios, scenario.experiment.allocation_cap);
}

RunOutput run_point(const Scenario &scenario, const CapacityRegion *region, const RunRequest &request) {
    const auto &exp = scenario.experiment;
    const auto specs = arrival_specs(scenario.arrivals, arrival_means(scenario, region, request.rho));

    sim::RunConfig cfg;
    cfg.horizon = request.horizon.value_or(exp.horizon);
    cfg.seed = request.seed;
    cfg.policy = request.policy;
    cfg.ties = exp.ties;
    cfg.virtual_departures = exp.virtual_departures;
    cfg.initial = exp.initial;
    cfg.trace_stride = exp.trace_stride;
    cfg.slot_log = request.slot_log;

    RunOutput out;
    out.metrics = sim::run(scenario.net, scenario.radios, specs, cfg);
    const auto &m = out.metrics;
    out.row.scenario = scenario.name;
    out.row.policy = request.policy;
    out.row.rho = request.rho;
    out.row.seed = request.seed;
    out.row.horizon = m.horizon;
    out.row.avg_sum_q = m.avg_sum_q;
    out.row.max_u = m.overall_max_u();
    out.row.avg_power = m.avg_power;
    out.row.verdict = m.horizon >= 1000 ? sim::stability_verdict(m, exp.stability_window, exp.thresholds).verdict
                                        : sim::Verdict::inconclusive;
    return out;
}

std::vector<RunRow> sweep(const Scenario &scenario, unsigned jobs, std::optional<std::uint64_t> horizon) {
    const auto &exp = scenario.experiment;
    const auto region = region_for(scenario);
    const CapacityRegion *region_ptr = region ? &*region : nullptr;

    std::vector<RunRequest> grid;
    for (const auto &policy : exp.policies) {
        for (double rho : exp.rho) {
            for (auto seed : exp.seeds) {
                grid.push_back({policy, rho, seed, horizon, false});
            }
        }
    }
    std::vector<RunRow> rows(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                rows[i] = run_point(scenario, region_ptr, grid[i]).row;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(grid.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

void write_csv_header(std::ostream &out, std::size_t links) {
    out << "scenario,policy,rho,seed,T,avg_sum_q,max_u,verdict";
    for (std::size_t l = 0; l < links; ++l) {
        out << ",avg_p_" << l + 1;
    }
    out << '\n';
}

void write_csv_row(std::ostream &out, const RunRow &row) {
    out << row.scenario << ',' << row.policy << ',' << format_number(row.rho) << ',' << row.seed << ','
        << row.horizon << ',' << format_number(row.avg_sum_q) << ',' << format_number(row.max_u) << ','
        << sim::to_string(row.verdict);
    for (double p : row.avg_power) {
        out << ',' << format_number(p);
    }
    out << '\n';
}

void write_trace_csv(std::ostream &out, const sim::RunMetrics &metrics) {
    if (metrics.slots.empty()) {
        throw ValidationError("trace output needs a run with the per-slot log enabled");
    }
    const std::size_t n = metrics.slots.front().q.size();
    out << "t,sum_q,v";
    for (const char *prefix : {"q_", "u_", "p_"}) {
        for (std::size_t l = 0; l < n; ++l) {
            out << ',' << prefix << l + 1;
        }
    }
    out << '\n';
    for (std::size_t t = 0; t < metrics.slots.size(); ++t) {
        const auto &s = metrics.slots[t];
        double sum_q = 0.0;
        double v = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            sum_q += s.q[l];
            v = std::max(v, s.q[l] * s.q[l] + s.u[l] * s.u[l]);
        }
        out << t << ',' << format_number(sum_q) << ',' << format_number(v);
        for (const auto *vec : {&s.q, &s.u, &s.power}) {
            for (double x : *vec) {
                out << ',' << format_number(x);
            }
        }
        out << '\n';
    }
}

} // namespace gecs
