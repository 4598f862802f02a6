#include <doctest.h>

#include "framedvfs/engine.hpp"
#include "framedvfs/scheduler.hpp"
#include "test_helpers.hpp"

using namespace framedvfs;
using namespace framedvfs::test;

namespace {

SchedulerState state_for(const SystemConfig& cfg) {
    PartitionResult r = static_partition(cfg);
    REQUIRE(r.ok());
    return make_scheduler_state(cfg, *r.partition);
}

}  // namespace

TEST_CASE("move_tasks_out does nothing when space already suffices") {
    SystemConfig cfg = make_config({det_task(1, 3)}, 2, 10.0, {1.0});
    SchedulerState st = state_for(cfg);  // task 1 reserved on cpu 0
    Partition before = st.part;
    move_tasks_out(st, 0, 5.0, 1.9);  // 10 - 5 - 3 = 2 > 1.9
    CHECK(st.part.assigned == before.assigned);
    CHECK(check_scheduler_invariants(st, 5.0).empty());
}

TEST_CASE("move_tasks_out relocates the blocking reservation when a peer has room") {
    SystemConfig cfg = make_config({det_task(1, 3)}, 2, 10.0, {1.0});
    SchedulerState st = state_for(cfg);
    st.worst_avail[1] = 4.0;          // peer busy until 4 in the worst case
    move_tasks_out(st, 0, 5.0, 3.0);  // 10-5-3 = 2 <= 3, peer space 10-0-4 = 6 > 3
    CHECK(st.part.reserved[0] == doctest::Approx(0.0));
    CHECK(st.reservation_owner(1) == 1);
    CHECK(check_scheduler_invariants(st, 5.0).empty());
}

TEST_CASE("move_tasks_out gives up quietly when no peer has room") {
    SystemConfig cfg = make_config({det_task(1, 3), det_task(2, 4)}, 2, 10.0, {1.0});
    SchedulerState st = state_for(cfg);  // task2 (w=4) on cpu 0, task1 (w=3) on cpu 1
    REQUIRE(st.reservation_owner(1) == 1);
    st.worst_avail[0] = 5.0;          // peer busy: 10 - 4 - 5 = 1 < 3, cannot take task1
    move_tasks_out(st, 1, 5.0, 3.0);  // 10 - 5 - 3 = 2 <= 3, but nothing can move
    CHECK(st.reservation_owner(1) == 1);
    CHECK(st.part.reserved[1] == doctest::Approx(3.0));
    CHECK(check_scheduler_invariants(st, 5.0).empty());
}

TEST_CASE("move_task_in with free space is a plain relocation") {
    SystemConfig cfg = make_config({det_task(1, 4)}, 2, 10.0, {1.0});
    SchedulerState st = state_for(cfg);  // reserved on cpu 0
    CHECK(move_task_in(st, 1, 1, 0.0));
    CHECK(st.reservation_owner(1) == 1);
    CHECK(st.part.reserved[0] == doctest::Approx(0.0));
    CHECK(st.part.reserved[1] == doctest::Approx(4.0));
    CHECK(check_scheduler_invariants(st, 0.0).empty());
}

TEST_CASE("move_task_in fails without rollback when the frame is too full") {
    // cpu0 holds an immovable 9-unit reservation; bringing in task 1 (w=8)
    // cannot work and the failed attempt must not lose any reservation
    SystemConfig cfg = make_config({det_task(1, 8), det_task(2, 9)}, 2, 10.0, {1.0});
    SchedulerState st = state_for(cfg);  // task2 on cpu0, task1 on cpu1
    CHECK(!move_task_in(st, 0, 1, 0.0));
    CHECK(st.reservation_owner(1) == 1);
    CHECK(st.reservation_owner(2) == 0);
    CHECK(check_scheduler_invariants(st, 0.0).empty());
}

TEST_CASE("move_task_in frees space by relocating, then imports") {
    // cpu0 holds task1 (w=7); importing task2 (w=5) first pushes task1 to
    // the emptiest peer (cpu2), then succeeds
    SystemConfig cfg = make_config({det_task(1, 7), det_task(2, 5), det_task(3, 2)}, 3, 10.0, {1.0});
    SchedulerState st = state_for(cfg);  // t1->cpu0, t2->cpu1, t3->cpu2
    CHECK(move_task_in(st, 0, 2, 0.0));
    CHECK(st.reservation_owner(2) == 0);
    CHECK(st.reservation_owner(1) == 2);
    CHECK(st.part.reserved[0] == doctest::Approx(5.0));
    CHECK(st.part.reserved[2] == doctest::Approx(9.0));
    CHECK(check_scheduler_invariants(st, 0.0).empty());
}

TEST_CASE("start_task runs the first pending task at the table frequency when it fits") {
    SystemConfig cfg = make_config({det_task(1, 4), det_task(2, 2)}, 2, 10.0, {0.5, 1.0});
    FreqTable table = compute_freq_tables(cfg);
    SchedulerState st = state_for(cfg);
    std::vector<TraceEvent> events;
    st.events = &events;

    StartDecision dec = start_task(st, table, 0.0, 0, 1);
    CHECK(dec.task == 1);
    CHECK(dec.freq.value == 0.5);  // 4/0.5 = 8 fits in the frame alone
    CHECK(dec.worst_end == doctest::Approx(8.0));
    CHECK(st.started[1]);
    CHECK(events.empty());  // no skips, no moves needed
    CHECK(check_scheduler_invariants(st, 0.0).empty());
}

TEST_CASE("start_task raises the frequency when the freed window is too small") {
    // table suggests 0.5 thanks to the huge virtual horizon, but locally only
    // 8 time units remain: 6 cycles need ceil(6/8) -> 0.75
    SystemConfig cfg = make_config({det_task(1, 6), det_task(2, 2)}, 2, 8.0, {0.5, 0.75, 1.0});
    FreqTable table = compute_freq_tables(cfg);
    REQUIRE(table.lookup(1, 16.0).value == 0.5);
    SchedulerState st = state_for(cfg);

    StartDecision dec = start_task(st, table, 0.0, 0, 1);
    CHECK(dec.task == 1);
    CHECK(dec.freq.value == 0.75);
    CHECK(dec.worst_end == doctest::Approx(8.0));
    CHECK(check_scheduler_invariants(st, 0.0).empty());
}

TEST_CASE("start_task skips an unmovable task and starts the next one") {
    SystemConfig cfg = make_config({det_task(1, 8), det_task(2, 9)}, 2, 10.0, {1.0});
    FreqTable table = compute_freq_tables(cfg);
    SchedulerState st = state_for(cfg);  // task2 reserved on cpu0, task1 on cpu1
    REQUIRE(st.reservation_owner(1) == 1);
    std::vector<TraceEvent> events;
    st.events = &events;

    StartDecision dec = start_task(st, table, 0.0, 0, 1);
    CHECK(dec.task == 2);  // task1 could not move onto cpu0
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == EventKind::skip);
    CHECK(events[0].task == 1);
    CHECK(st.pending == std::vector<int>{1});
    CHECK(check_scheduler_invariants(st, 0.0).empty());
}

TEST_CASE("with one processor start_task matches a straightforward uniprocessor policy") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(seed + 500);
        int n = 1 + static_cast<int>(rng.next_u64() % 4);
        std::vector<Task> tasks;
        for (int i = 1; i <= n; ++i) {
            Cycles w = 1 + static_cast<Cycles>(rng.next_u64() % 5);
            if (w > 1 && rng.next_u64() % 2) {
                Cycles lo = 1 + static_cast<Cycles>(rng.next_u64() % (w - 1));
                tasks.push_back({i, w, {{{lo, 0.5}, {w, 0.5}}}});
            } else {
                tasks.push_back(det_task(i, w));
            }
        }
        SystemConfig cfg = make_config(std::move(tasks), 1, 30.0, {0.5, 0.75, 1.0}, 0.1);
        PartitionResult pr = static_partition(cfg);
        REQUIRE(pr.ok());
        FreqTable table = compute_freq_tables(cfg);

        SchedulerState st = make_scheduler_state(cfg, *pr.partition);
        double t = 0.0;
        double reserved_rest = pr.partition->reserved[0];
        Rng cycles_rng(seed * 3 + 1);
        for (int step = 0; step < n; ++step) {
            int i = st.pending.front();
            double w = static_cast<double>(cfg.tasks[i - 1].wcec);

            // reference: remaining time is D - t, clamp by what is left
            // after the other reservations
            reserved_rest -= w;  // f_max = 1
            double f_ref = table.lookup(i, cfg.frame_length - t).value;
            if (cfg.frame_length - t - reserved_rest < w / f_ref)
                f_ref = ceil_freq(w / (cfg.frame_length - reserved_rest - t), cfg.freqs).value;

            StartDecision dec = start_task(st, table, t, 0, i);
            CHECK(dec.task == i);
            CHECK(dec.freq.value == doctest::Approx(f_ref));
            CHECK(check_scheduler_invariants(st, t).empty());

            Cycles x = sample_cycles(cfg.tasks[i - 1].dist, cycles_rng);
            t += static_cast<double>(x) / dec.freq.value;
            st.worst_avail[0] = t;
        }
    }
}
