#include <doctest.h>

#include "framedvfs/engine.hpp"
#include "framedvfs/workload.hpp"
#include "test_helpers.hpp"

using namespace framedvfs;
using namespace framedvfs::test;

namespace {

// Two deterministic fillers keep one cpu busy while the third task, started
// too late by the reservation-free policy, can overrun the frame.
SystemConfig adversarial_config() {
    SystemConfig cfg = make_config(
        {
            {1, 5, {{{2, 0.5}, {5, 0.5}}}},
            {2, 5, {{{5, 1.0}}}},
            {3, 7, {{{1, 0.5}, {7, 0.5}}}},
        },
        2, 11.5, {0.5, 1.0});
    return cfg;
}

}  // namespace

TEST_CASE("policy names round-trip and junk is rejected") {
    for (PolicyId p : kAllPolicies) CHECK(parse_policy(policy_name(p)) == p);
    CHECK_THROWS_AS(parse_policy("edf"), std::invalid_argument);
}

TEST_CASE("max_freq burns the closed-form worst-case energy on deterministic tasks") {
    SystemConfig cfg =
        make_config({det_task(1, 6), det_task(2, 4), det_task(3, 2)}, 2, 14.0, {0.5, 1.0});
    Simulation sim = Simulation::prepare(cfg, PolicyId::max_freq);
    FrameTrace tr = sim.run_frame(0);
    CHECK(tr.total_energy == doctest::Approx(12.0));  // sum of wcec at f = 1
    CHECK(tr.deadline_met);
    for (const auto& e : tr.events)
        if (e.kind == EventKind::start) CHECK(e.freq == 1.0);
}

TEST_CASE("partitioned policy never migrates and stays on the reservation cpu") {
    WorkloadSpec spec;
    spec.n = 8;
    spec.m = 3;
    spec.freq_count = 3;
    spec.seed = 21;
    SystemConfig cfg = generate(spec);
    Simulation sim = Simulation::prepare(cfg, PolicyId::partitioned_uniproc);

    std::vector<int> home(cfg.tasks.size() + 1, -1);
    for (int p = 0; p < cfg.m; ++p)
        for (int i : sim.partition.assigned[p]) home[i] = p;

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        FrameTrace tr = sim.run_frame(seed);
        CHECK(tr.deadline_met);
        for (const auto& e : tr.events) {
            CHECK(e.kind != EventKind::reservation_move);
            CHECK(e.kind != EventKind::skip);
            if (e.kind == EventKind::start) CHECK(e.cpu == home[e.task]);
        }
    }
}

TEST_CASE("naive policy is safe on a single generously sized processor") {
    SystemConfig cfg = make_config({{1, 4, {{{1, 0.5}, {4, 0.5}}}}, {2, 3, {{{1, 0.5}, {3, 0.5}}}}},
                                   1, 20.0, {0.5, 1.0});
    Simulation sim = Simulation::prepare(cfg, PolicyId::naive_global);
    for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK(sim.run_frame(seed).deadline_met);
}

TEST_CASE("deterministic tasks on dedicated processors cost the same under naive and global") {
    SystemConfig cfg =
        make_config({det_task(1, 6), det_task(2, 4), det_task(3, 2)}, 3, 16.0, {0.5, 1.0});
    Simulation global = Simulation::prepare(cfg, PolicyId::global_stochastic);
    Simulation naive = Simulation::prepare(cfg, PolicyId::naive_global);
    CHECK(global.run_frame(0).total_energy == doctest::Approx(naive.run_frame(0).total_energy));
}

TEST_CASE("the reservation-free policy misses on the adversarial instance, the global one survives") {
    SystemConfig cfg = adversarial_config();
    Simulation naive = Simulation::prepare(cfg, PolicyId::naive_global);
    Simulation global = Simulation::prepare(cfg, PolicyId::global_stochastic);

    auto seeds = seed_range(64);
    Summary naive_summary = naive.run_replications(seeds);
    Summary global_summary = global.run_replications(seeds);
    CHECK(naive_summary.misses >= 1);
    CHECK(global_summary.misses == 0);
    CHECK(global_summary.skips >= 1);  // the global policy reorders instead
}

TEST_CASE("global mean energy never exceeds max_freq on paired seeds") {
    for (std::uint64_t wseed = 0; wseed < 10; ++wseed) {
        WorkloadSpec spec;
        spec.n = 5 + static_cast<int>(wseed % 6);
        spec.m = 2 + static_cast<int>(wseed % 3);
        spec.freq_count = 2 + static_cast<int>(wseed % 4);
        spec.target_utilization = 0.35 + 0.05 * static_cast<double>(wseed % 6);
        spec.shape = static_cast<DistShape>(wseed % 3);
        spec.seed = wseed + 300;
        SystemConfig cfg = generate(spec);

        auto seeds = seed_range(40);
        Summary global =
            Simulation::prepare(cfg, PolicyId::global_stochastic).run_replications(seeds);
        Summary maxf = Simulation::prepare(cfg, PolicyId::max_freq).run_replications(seeds);
        CHECK(global.mean_energy <= maxf.mean_energy + 1e-9);
        CHECK(global.misses == 0);
    }
}
