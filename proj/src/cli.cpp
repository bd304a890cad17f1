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

#include "gecs/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gecs/capacity.hpp"
#include "gecs/error.hpp"
#include "gecs/lpf.hpp"
#include "gecs/scenario.hpp"

namespace gecs::cli {

using nlohmann::json;

namespace {

double round9(double v) { return std::round(v * 1e9) / 1e9; }

json allocations_json(const std::vector<WeightedAllocation> &certificate) {
    json out = json::array();
    for (const auto &w : certificate) {
        out.push_back({{"weight", w.weight}, {"power", w.allocation.power}, {"rate", w.allocation.rate}});
    }
    return out;
}

/// Writes to --out when given, otherwise to the command's stream.
class Sink {
  public:
    Sink(std::ostream &fallback, const std::string &path) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw IoError("cannot write " + path);
            }
        }
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : fallback_; }
    void finish(const std::string &path) {
        if (file_.is_open()) {
            file_.close();
            if (!file_) {
                throw IoError("failed writing " + path);
            }
        }
    }

  private:
    std::ostream &fallback_;
    std::ofstream file_;
};

int cmd_validate(const std::string &file, std::ostream &out) {
    const Scenario s = load_scenario(file);
    std::size_t conflicts = 0;
    for (LinkId l = 0; l < s.net.num_links(); ++l) {
        conflicts += s.net.conflicts(l).size();
    }
    out << "ok: " << s.name << ": " << s.net.num_links() << " links, " << conflicts / 2 << " conflicting pairs, "
        << s.experiment.policies.size() << " policies, " << s.experiment.rho.size() << " load points, "
        << s.experiment.seeds.size() << " seeds\n";
    for (const auto &w : s.warnings) {
        out << "warning: " << w << '\n';
    }
    return kOk;
}

int cmd_lpf(const std::string &file, const std::string &out_path, std::ostream &out) {
    const Scenario s = load_scenario(file);
    const LpfResult r = lpf(s.net);
    json activations = json::array();
    for (const auto &a : r.witness.activations) {
        activations.push_back(a.support());
    }
    const json doc = {
        {"scenario", s.name},
        {"links", s.net.num_links()},
        {"subgraphs", r.per_subgraph.size()},
        {"sigma_star", round9(r.sigma_star)},
        {"argmin_subset", r.witness.subset},
        {"activations", activations},
        {"mu_weights", r.witness.mu_weights},
        {"nu_weights", r.witness.nu_weights},
        {"mu", r.witness.mu},
        {"nu", r.witness.nu},
    };
    Sink sink(out, out_path);
    sink.stream() << doc.dump(2) << '\n';
    sink.finish(out_path);
    return kOk;
}

int cmd_capacity(const std::string &file, const std::vector<double> &lambda, const std::vector<double> &direction,
                 const std::string &out_path, std::ostream &out) {
    const Scenario s = load_scenario(file);
    const CapacityRegion region(s.net, s.radios, s.experiment.allocation_cap);
    json doc = {{"scenario", s.name}, {"allocations", region.allocations().size()}};
    std::vector<double> admissible;
    for (LinkId l = 0; l < s.net.num_links(); ++l) {
        admissible.push_back(region.max_admissible_rate(l));
    }
    doc["max_admissible"] = admissible;

    if (!lambda.empty()) {
        const RegionResult r = region.membership(lambda);
        doc["lambda"] = lambda;
        doc["verdict"] = r.inside ? "inside" : "outside";
        if (r.inside) {
            doc["certificate"] = allocations_json(r.certificate);
            doc["served"] = r.served;
            doc["spent"] = r.spent;
        }
    } else {
        std::vector<double> d = direction;
        if (d.empty() && !s.arrivals.means) {
            d = load_direction(s, region);
        }
        if (!d.empty()) {
            const BoundaryResult b = region.boundary_scale(d);
            doc["direction"] = d;
            doc["rho_star"] = b.scale;
            doc["certificate"] = allocations_json(b.certificate);
        }
    }
    Sink sink(out, out_path);
    sink.stream() << doc.dump(2) << '\n';
    sink.finish(out_path);
    return kOk;
}

int cmd_simulate(const std::string &file, const std::string &policy, double rho, std::uint64_t seed,
                 std::optional<std::uint64_t> horizon, const std::string &trace_path, const std::string &out_path,
                 std::ostream &out) {
    const Scenario s = load_scenario(file);
    make_policy(policy, s.net, s.radios); // rejects unknown names before any work
    const auto region = region_for(s);
    const RunOutput r = run_point(s, region ? &*region : nullptr, {policy, rho, seed, horizon, !trace_path.empty()});
    Sink sink(out, out_path);
    write_csv_header(sink.stream(), s.net.num_links());
    write_csv_row(sink.stream(), r.row);
    sink.finish(out_path);
    if (!trace_path.empty()) {
        Sink trace(out, trace_path);
        write_trace_csv(trace.stream(), r.metrics);
        trace.finish(trace_path);
    }
    return kOk;
}

int cmd_sweep(const std::string &file, std::optional<unsigned> jobs, std::optional<std::uint64_t> horizon,
              std::optional<std::uint64_t> seed, const std::string &out_path, std::ostream &out) {
    Scenario s = load_scenario(file);
    if (seed) {
        s.experiment.seeds = {*seed};
    }
    const auto rows = sweep(s, jobs.value_or(s.experiment.jobs), horizon);
    Sink sink(out, out_path);
    write_csv_header(sink.stream(), s.net.num_links());
    for (const auto &row : rows) {
        write_csv_row(sink.stream(), row);
    }
    sink.finish(out_path);
    return kOk;
}

int cmd_compare(const std::string &file, std::optional<unsigned> jobs, std::optional<std::uint64_t> horizon,
                const std::string &out_path, std::ostream &out) {
    Scenario s = load_scenario(file);
    s.experiment.policies = {"gecs", "gmw"};
    const auto rows = sweep(s, jobs.value_or(s.experiment.jobs), horizon);
    std::map<double, std::pair<double, double>> gecs;
    std::map<double, std::pair<double, double>> gmw;
    for (const auto &row : rows) {
        auto &acc = row.policy == "gecs" ? gecs[row.rho] : gmw[row.rho];
        acc.first += row.avg_sum_q;
        acc.second += 1.0;
    }
    Sink sink(out, out_path);
    sink.stream() << "rho,gecs_avg_sum_q,gmw_avg_sum_q,ratio\n";
    for (const auto &[rho, g] : gecs) {
        const double a = g.first / g.second;
        const double b = gmw[rho].first / gmw[rho].second;
        sink.stream() << format_number(rho) << ',' << format_number(a) << ',' << format_number(b) << ','
                      << format_number(b > 0.0 ? a / b : 1.0) << '\n';
    }
    sink.finish(out_path);
    return kOk;
}

} // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Greedy energy-constrained link scheduling: analysis and simulation"};
    app.name("gecs");
    app.require_subcommand(1);

    std::string file;
    std::string out_path;
    std::string trace_path;
    std::string policy = "gecs";
    double rho = 1.0;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::uint64_t> horizon;
    std::optional<unsigned> jobs;
    std::vector<double> lambda;
    std::vector<double> direction;

    auto *validate = app.add_subcommand("validate", "Check a scenario file against the schema and model invariants");
    validate->add_option("file", file, "Scenario file")->required();

    auto *lpf_cmd = app.add_subcommand("lpf", "Local pooling factor of the scenario's conflict network");
    lpf_cmd->add_option("file", file, "Scenario file")->required();
    lpf_cmd->add_option("--out", out_path, "Write the JSON record here");

    auto *capacity = app.add_subcommand("capacity", "Membership and boundary queries on the stability region");
    capacity->add_option("file", file, "Scenario file")->required();
    auto *lambda_opt = capacity->add_option("--lambda", lambda, "Arrival-rate vector to test")->delimiter(',');
    capacity->add_option("--direction", direction, "Direction for the boundary scale")
        ->delimiter(',')
        ->excludes(lambda_opt);
    capacity->add_option("--out", out_path, "Write the JSON record here");

    auto *simulate = app.add_subcommand("simulate", "Run one simulation and print its CSV row");
    simulate->add_option("file", file, "Scenario file")->required();
    simulate->add_option("--policy", policy, "gecs | gmw | maxweight | gms");
    simulate->add_option("--rho", rho, "Load factor");
    simulate->add_option("--seed", seed, "Random seed");
    simulate->add_option("--horizon", horizon, "Slots to simulate");
    simulate->add_option("--trace", trace_path, "Write a per-slot trace CSV here");
    simulate->add_option("--out", out_path, "Write the CSV here");

    auto *sweep_cmd = app.add_subcommand("sweep", "Run the policy x load x seed grid");
    sweep_cmd->add_option("file", file, "Scenario file")->required();
    sweep_cmd->add_option("--jobs", jobs, "Worker threads");
    sweep_cmd->add_option("--horizon", horizon, "Slots per run");
    sweep_cmd->add_option("--seed", seed_override, "Use this single seed instead of the scenario's list");
    sweep_cmd->add_option("--out", out_path, "Write the CSV here");

    auto *compare = app.add_subcommand("compare", "Paired GECS vs GMW summary per load point");
    compare->add_option("file", file, "Scenario file")->required();
    compare->add_option("--jobs", jobs, "Worker threads");
    compare->add_option("--horizon", horizon, "Slots per run");
    compare->add_option("--out", out_path, "Write the CSV here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(file, out);
        }
        if (lpf_cmd->parsed()) {
            return cmd_lpf(file, out_path, out);
        }
        if (capacity->parsed()) {
            return cmd_capacity(file, lambda, direction, out_path, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(file, policy, rho, seed, horizon, trace_path, out_path, out);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(file, jobs, horizon, seed_override, out_path, out);
        }
        if (compare->parsed()) {
            return cmd_compare(file, jobs, horizon, out_path, out);
        }
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const EnumerationLimitError &e) {
        err << "error: " << e.what() << '\n';
        return kEnumerationCap;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kValidation;
}

} // namespace gecs::cli
