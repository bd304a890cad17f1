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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "gecs/capacity.hpp"
#include "gecs/error.hpp"
#include "gecs/sim.hpp"

using namespace gecs;
using namespace gecs::sim;

namespace {

PowerDecision decision(std::vector<double> power, std::vector<double> rate) {
    PowerDecision d;
    d.level.assign(power.size(), 0);
    d.power = std::move(power);
    d.rate = std::move(rate);
    return d;
}

RunMetrics synthetic(std::vector<double> trace) {
    RunMetrics m;
    m.horizon = trace.size();
    m.sum_q_trace = std::move(trace);
    m.avg_arrivals = {1.0};
    return m;
}

RunMetrics single_link_run(const std::string &policy, double p_avg, std::uint64_t horizon) {
    const auto net = fixture::single_link();
    const std::vector<LinkRadio> radios{fixture::two_rate_radio(p_avg)};
    const std::vector<ArrivalSpec> arrivals{ArrivalSpec::periodic(2.0, 2)};
    RunConfig cfg;
    cfg.horizon = horizon;
    cfg.policy = policy;
    return run(net, radios, arrivals, cfg);
}

} // namespace

TEST_CASE("step equations on the documented cases") {
    QueueState s{{5, 1, 0}, {3, 0, 0}};
    const auto d = decision({1, 0, 0}, {2, 2, 0});
    const std::vector<double> a{1, 0, 2};
    const std::vector<double> p_avg{2.75, 1, 1};
    const auto next = step(s, d, a, p_avg);
    CHECK(next.q == std::vector<double>{4, 0, 2});
    CHECK(next.u[0] == doctest::Approx(1.25));
    CHECK(next.u[1] == 0.0);
}

TEST_CASE("step equations on randomized cases") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> small(0, 12);
    std::uniform_real_distribution<double> real(0.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        // Half the cases use integers so that the clamp boundary is hit exactly.
        auto draw = [&] { return trial % 2 ? static_cast<double>(small(rng)) / 2.0 : real(rng); };
        const double q = draw(), u = draw(), s = draw(), a = draw(), p = draw(), budget = draw();
        const auto next = step({{q}, {u}}, decision({p}, {s}), std::vector<double>{a}, std::vector<double>{budget});
        const double q_hand = (q > s ? q - s : 0.0) + a;
        const double u_hand = (u > budget ? u - budget : 0.0) + p;
        CHECK(next.q[0] == q_hand);
        CHECK(next.u[0] == u_hand);
    }
}

TEST_CASE("arrival laws") {
    CHECK(ArrivalSpec::poisson(1.5).mean_rate() == 1.5);
    CHECK(ArrivalSpec::bernoulli_batch(0.25, 4).mean_rate() == 1.0);
    CHECK(ArrivalSpec::periodic(2, 2).mean_rate() == 1.0);
    CHECK_THROWS_AS(ArrivalSpec::bernoulli_batch(1.5, 1).validate(), ValidationError);
    CHECK_THROWS_AS(ArrivalSpec::poisson(-1).validate(), ValidationError);

    ArrivalProcess p({ArrivalSpec::periodic(2, 2), ArrivalSpec::poisson(0.7), ArrivalSpec::bernoulli_batch(0.3, 3)});
    Rng rng(4);
    std::vector<double> out(3);
    std::vector<double> total(3, 0.0);
    const int slots = 200000;
    for (int t = 0; t < slots; ++t) {
        p.draw(static_cast<std::uint64_t>(t), rng, out);
        if (t < 4) {
            CHECK(out[0] == (t % 2 == 0 ? 2.0 : 0.0));
        }
        CHECK((out[2] == 0.0 || out[2] == 3.0));
        for (std::size_t l = 0; l < 3; ++l) {
            total[l] += out[l];
        }
    }
    CHECK(total[0] / slots == 1.0);
    CHECK(total[1] / slots == doctest::Approx(0.7).epsilon(0.02));
    CHECK(total[2] / slots == doctest::Approx(0.9).epsilon(0.02));
}

TEST_CASE("single link at a 0.75 budget: GECS complies, peak power does not") {
    const auto gecs_run = single_link_run("gecs", 0.75, 100000);
    CHECK(gecs_run.avg_power[0] <= 0.75 + 0.01);
    CHECK(gecs_run.avg_sum_q <= 10.0);
    CHECK(stability_verdict(gecs_run, 0.5).verdict == Verdict::stable);

    const auto gms_run = single_link_run("gms", 0.75, 100000);
    CHECK(gms_run.avg_power[0] == doctest::Approx(1.0).epsilon(1e-9));
    const std::vector<double> budget{0.75};
    CHECK_FALSE(power_compliance(gms_run, budget, 0.01).all_ok());
    CHECK(power_compliance(gecs_run, budget, 0.01).all_ok());
}

TEST_CASE("single link at a 0.5 budget grows without bound") {
    const auto net = fixture::single_link();
    const std::vector<LinkRadio> radios{fixture::two_rate_radio(0.5)};
    const std::vector<double> lambda{1.0};
    REQUIRE_FALSE(membership(lambda, net, radios).inside);
    for (const char *policy : {"gecs", "gmw", "maxweight"}) {
        const auto m = single_link_run(policy, 0.5, 20000);
        const auto r = stability_verdict(m, 0.5);
        CHECK(r.slope > 0.0);
        CHECK(r.verdict == Verdict::unstable);
    }
}

TEST_CASE("no arrivals drain the queues") {
    const auto net = fixture::six_cycle();
    const auto radios = fixture::replicate(fixture::unit_radio(0.5), 6);
    const std::vector<ArrivalSpec> none(6, ArrivalSpec::constant(0.0));
    RunConfig cfg;
    cfg.horizon = 2000;
    cfg.initial = {std::vector<double>(6, 5.0), std::vector<double>(6, 0.0)};
    const auto m = run(net, radios, none, cfg);
    CHECK(m.final_q == std::vector<double>(6, 0.0));
    for (double p : m.avg_power) {
        CHECK(p <= 0.02);
    }
    const std::vector<double> budget(6, 0.5);
    CHECK(power_compliance(m, budget, 0.01).all_ok());

    cfg.initial = {};
    const auto idle = run(net, radios, none, cfg);
    CHECK(idle.avg_sum_q == 0.0);
    CHECK(idle.overall_max_u() == 0.0);
}

TEST_CASE("synthetic verdicts") {
    std::vector<double> linear(2000);
    for (std::size_t t = 0; t < linear.size(); ++t) {
        linear[t] = static_cast<double>(t);
    }
    CHECK(stability_verdict(synthetic(linear), 0.5).verdict == Verdict::unstable);
    CHECK(stability_verdict(synthetic(std::vector<double>(2000, 7.0)), 0.5).verdict == Verdict::stable);

    std::vector<double> mild(2000);
    for (std::size_t t = 0; t < mild.size(); ++t) {
        mild[t] = 0.05 * static_cast<double>(t);
    }
    CHECK(stability_verdict(synthetic(mild), 0.5).verdict == Verdict::inconclusive);

    CHECK_THROWS_AS(stability_verdict(synthetic(std::vector<double>(500, 1.0)), 0.5), ValidationError);
    CHECK_THROWS_AS(stability_verdict(synthetic(linear), 1.5), ValidationError);
}

TEST_CASE("work accounting from the slot log") {
    const auto net = fixture::six_cycle();
    std::vector<LinkRadio> radios;
    for (int l = 0; l < 6; ++l) {
        radios.emplace_back(RatePowerCurve::awgn({0.5 + 0.2 * l, 1.0, 1.0}), std::vector<double>{0, 1, 3, 7, 15}, 2.75);
    }
    const std::vector<ArrivalSpec> arrivals(6, ArrivalSpec::poisson(0.6));
    for (const char *policy : {"gecs", "gmw", "gms", "maxweight"}) {
        RunConfig cfg;
        cfg.horizon = 3000;
        cfg.seed = 12;
        cfg.policy = policy;
        cfg.slot_log = true;
        cfg.initial = {{1, 2, 3, 0, 0, 4}, {0, 1, 0, 0, 2, 0}};
        const auto m = run(net, radios, arrivals, cfg);
        REQUIRE(m.slots.size() == 3000);
        double sum_q = 0.0;
        for (std::size_t l = 0; l < 6; ++l) {
            double arrived = 0.0;
            double served = 0.0;
            double power = 0.0;
            for (const auto &s : m.slots) {
                arrived += s.arrivals[l];
                served += s.served[l];
                power += s.power[l];
                CHECK(s.q[l] >= 0.0);
                CHECK(s.u[l] >= 0.0);
            }
            CHECK(m.final_q[l] == doctest::Approx(cfg.initial.q[l] + arrived - served));
            CHECK(m.avg_power[l] == doctest::Approx(power / 3000.0));
            CHECK(m.avg_arrivals[l] == doctest::Approx(arrived / 3000.0));
        }
        for (const auto &s : m.slots) {
            CHECK(is_feasible_power_vector(net, s.power));
        }
        for (std::size_t t = 1; t < m.slots.size(); ++t) {
            for (std::size_t l = 0; l < 6; ++l) {
                sum_q += m.slots[t].q[l];
            }
        }
        for (double q : m.final_q) {
            sum_q += q;
        }
        CHECK(m.avg_sum_q == doctest::Approx(sum_q / 3000.0));
    }
}

TEST_CASE("seed determinism and common arrivals across policies") {
    const auto net = fixture::six_cycle();
    const auto radios = fixture::replicate(fixture::unit_radio(0.8), 6);
    const std::vector<ArrivalSpec> arrivals(6, ArrivalSpec::bernoulli_batch(0.3, 1));
    RunConfig cfg;
    cfg.horizon = 5000;
    cfg.seed = 77;
    const auto a = run(net, radios, arrivals, cfg);
    const auto b = run(net, radios, arrivals, cfg);
    CHECK(a.avg_sum_q == b.avg_sum_q);
    CHECK(a.sum_q_trace == b.sum_q_trace);
    CHECK(a.avg_power == b.avg_power);
    CHECK(a.final_u == b.final_u);

    cfg.policy = "gmw";
    const auto c = run(net, radios, arrivals, cfg);
    CHECK(c.avg_arrivals == a.avg_arrivals);

    cfg.policy = "gecs";
    cfg.seed = 78;
    CHECK(run(net, radios, arrivals, cfg).sum_q_trace != a.sum_q_trace);
}

TEST_CASE("stable runs keep the drift diagnostic flat and the virtual queue bounded") {
    const auto net = fixture::six_cycle();
    std::vector<LinkRadio> radios;
    for (int l = 0; l < 6; ++l) {
        radios.emplace_back(RatePowerCurve::awgn({0.6 + 0.25 * l, 1.0, 1.0}), std::vector<double>{0, 1, 3, 7, 15}, 2.75);
    }
    const CapacityRegion region(net, radios);
    std::vector<double> d(6);
    for (LinkId l = 0; l < 6; ++l) {
        d[l] = region.max_admissible_rate(l);
    }
    const double rho = region.boundary_scale(d).scale;
    std::vector<ArrivalSpec> arrivals;
    for (double x : d) {
        arrivals.push_back(ArrivalSpec::poisson(0.5 * rho * x));
    }
    RunConfig cfg;
    cfg.horizon = 200000;
    cfg.trace_stride = 10;
    cfg.seed = 3;
    const auto m = run(net, radios, arrivals, cfg);
    CHECK(stability_verdict(m, 0.5).verdict == Verdict::stable);
    CHECK(lyapunov_drift_ratio(m) <= 1.05);
    std::vector<double> budget(6, 2.75);
    CHECK(power_compliance(m, budget, 0.01).all_ok());

    cfg.horizon = 400000;
    const auto longer = run(net, radios, arrivals, cfg);
    CHECK(longer.overall_max_u() <= 2.0 * m.overall_max_u() + 15.0);
}

TEST_CASE("run input errors") {
    const auto net = fixture::six_cycle();
    const auto radios = fixture::replicate(fixture::unit_radio(0.5), 6);
    const std::vector<ArrivalSpec> three(3, ArrivalSpec::constant(0.1));
    CHECK_THROWS_AS(run(net, radios, three, {}), ValidationError);
    const std::vector<ArrivalSpec> six(6, ArrivalSpec::constant(0.1));
    RunConfig cfg;
    cfg.horizon = 0;
    CHECK_THROWS_AS(run(net, radios, six, cfg), ValidationError);
    cfg.horizon = 10;
    cfg.policy = "nope";
    CHECK_THROWS_AS(run(net, radios, six, cfg), ValidationError);
}
