#include "framedvfs/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>

#include "framedvfs/scheduler.hpp"

namespace framedvfs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Actual completion times may exceed the bookkept worst case by rounding
// noise only; anything past this slack is a real deadline miss.
constexpr double kTimeEps = 1e-9;

}  // namespace

Rng::Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

Rng Rng::for_frame(std::uint64_t seed, std::uint64_t frame_index) {
    return Rng(seed ^ splitmix64(0xd1b54a32d192ed03ULL + frame_index));
}

double Rng::next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

Cycles sample_cycles(const CycleDistribution& dist, Rng& rng) {
    assert(!dist.support.empty());
    double u = rng.next_unit();
    double cum = 0.0;
    for (const CyclePoint& p : dist.support) {
        cum += p.probability;
        if (u < cum) return p.cycles;
    }
    return dist.support.back().cycles;
}

Simulation Simulation::prepare(const SystemConfig& cfg, PolicyId policy) {
    auto diags = validate_config(cfg);
    if (has_errors(diags)) {
        std::string msg = "invalid config";
        for (const auto& d : diags) msg += "\n  " + format_diagnostic(d);
        throw SimulationError(msg);
    }

    Simulation sim;
    sim.cfg = cfg;
    sim.policy = policy;

    PartitionResult pr = static_partition(sim.cfg);
    if (!pr.ok())
        throw PartitionError(
            "static partitioning failed at task " + std::to_string(pr.failed_task), pr.failed_task);
    sim.partition = *pr.partition;

    if (policy == PolicyId::global_stochastic || policy == PolicyId::naive_global)
        sim.table = compute_freq_tables(sim.cfg);

    if (policy == PolicyId::partitioned_uniproc) {
        sim.local_tasks.resize(cfg.m);
        sim.local_cfgs.resize(cfg.m);
        sim.local_parts.resize(cfg.m);
        sim.local_tables.resize(cfg.m);
        for (int p = 0; p < cfg.m; ++p) {
            std::vector<int> own = sim.partition.assigned[p];
            std::sort(own.begin(), own.end());  // frame order
            sim.local_tasks[p] = own;

            SystemConfig sub;
            sub.m = 1;
            sub.frame_length = cfg.frame_length;
            sub.freqs = cfg.freqs;
            sub.grid_step = cfg.grid_step;
            for (std::size_t k = 0; k < own.size(); ++k) {
                Task t = cfg.tasks[own[k] - 1];
                t.index = static_cast<int>(k) + 1;
                sub.tasks.push_back(std::move(t));
            }
            sim.local_parts[p].assigned.assign(1, {});
            sim.local_parts[p].reserved.assign(1, 0.0);
            for (const Task& t : sub.tasks) {
                sim.local_parts[p].assigned[0].push_back(t.index);
                sim.local_parts[p].reserved[0] +=
                    static_cast<double>(t.wcec) / sub.freqs.max().value;
            }
            sim.local_tables[p] =
                build_freq_tables(sub.tasks, sub.freqs, sub.frame_length, sub.grid_step);
            sim.local_cfgs[p] = std::move(sub);
        }
    }
    return sim;
}

namespace {

struct FinishLater {
    bool operator()(const std::pair<double, int>& a, const std::pair<double, int>& b) const {
        return a > b;  // min-heap on (time, cpu)
    }
};

// Mutable per-frame state for the policies that bypass reservations.
struct QueueState {
    std::vector<int> pending;
    std::vector<double> worst_avail;
};

}  // namespace

FrameTrace Simulation::run_frame(std::uint64_t seed) const {
    const int n = cfg.task_count();
    const int m = cfg.m;
    const double D = cfg.frame_length;
    const double f_max = cfg.freqs.max().value;

    FrameTrace tr;
    tr.seed = seed;

    // One draw per task in frame order, before any scheduling: every policy
    // sees the same realization for a given seed.
    Rng rng = Rng::for_frame(seed, 0);
    std::vector<Cycles> sampled(n + 1, 0);
    for (int i = 1; i <= n; ++i) sampled[i] = sample_cycles(cfg.tasks[i - 1].dist, rng);

    SchedulerState sched;
    std::vector<SchedulerState> locals;
    QueueState queue;
    switch (policy) {
        case PolicyId::global_stochastic:
            sched = make_scheduler_state(cfg, partition);
            sched.events = &tr.events;
            break;
        case PolicyId::partitioned_uniproc:
            locals.reserve(m);
            for (int p = 0; p < m; ++p) {
                locals.push_back(make_scheduler_state(local_cfgs[p], local_parts[p]));
                locals.back().events = &tr.events;
            }
            break;
        case PolicyId::max_freq:
        case PolicyId::naive_global:
            queue.pending.resize(n);
            for (int i = 1; i <= n; ++i) queue.pending[i - 1] = i;
            queue.worst_avail.assign(m, 0.0);
            break;
    }

    std::vector<int> running(m, 0);
    std::vector<double> running_freq(m, 1.0);

    // Returns the started task (0 when the cpu has nothing eligible).
    auto try_start = [&](int p, double t) -> int {
        int task = 0;
        double f = f_max;
        switch (policy) {
            case PolicyId::global_stochastic: {
                if (sched.pending.empty()) return 0;
                StartDecision dec = start_task(sched, table, t, p);
                task = dec.task;
                f = dec.freq.value;
                break;
            }
            case PolicyId::partitioned_uniproc: {
                SchedulerState& loc = locals[p];
                if (loc.pending.empty()) return 0;
                std::size_t before = tr.events.size();
                StartDecision dec = start_task(loc, local_tables[p], t, 0);
                for (std::size_t e = before; e < tr.events.size(); ++e) {
                    tr.events[e].task = local_tasks[p][tr.events[e].task - 1];
                    tr.events[e].cpu = p;
                }
                task = local_tasks[p][dec.task - 1];
                f = dec.freq.value;
                break;
            }
            case PolicyId::max_freq: {
                if (queue.pending.empty()) return 0;
                task = queue.pending.front();
                queue.pending.erase(queue.pending.begin());
                f = f_max;
                break;
            }
            case PolicyId::naive_global: {
                if (queue.pending.empty()) return 0;
                task = queue.pending.front();
                queue.pending.erase(queue.pending.begin());
                double others = 0.0;
                for (int q = 0; q < m; ++q)
                    if (q != p) others += std::max(queue.worst_avail[q], t);
                double d = static_cast<double>(m) * D - (t + others);
                f = table.lookup(task, std::max(d, 0.0)).value;
                double w = static_cast<double>(cfg.tasks[task - 1].wcec);
                if (w / f > D - t) {
                    // fit locally if any frequency can; otherwise run flat
                    // out and accept the potential miss
                    if (D - t > 0.0 && w / (D - t) <= f_max + 1e-9)
                        f = ceil_freq(w / (D - t), cfg.freqs).value;
                    else
                        f = f_max;
                }
                queue.worst_avail[p] = t + w / f;
                break;
            }
        }
        if (task == 0) return 0;
        tr.events.push_back({t, EventKind::start, task, p, f, sampled[task]});
        tr.total_energy += energy_of_execution(sampled[task], {f});
        running[p] = task;
        running_freq[p] = f;
        return task;
    };

    std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, FinishLater>
        finishes;

    for (int p = 0; p < m; ++p) {
        int task = try_start(p, 0.0);
        if (task != 0)
            finishes.push({static_cast<double>(sampled[task]) / running_freq[p], p});
    }

    double last_finish = 0.0;
    while (!finishes.empty()) {
        auto [t, p] = finishes.top();
        finishes.pop();
        tr.events.push_back({t, EventKind::finish, running[p], p, running_freq[p],
                             sampled[running[p]]});
        last_finish = std::max(last_finish, t);
        running[p] = 0;

        // idle processors are available from now on
        switch (policy) {
            case PolicyId::global_stochastic: sched.worst_avail[p] = t; break;
            case PolicyId::partitioned_uniproc: locals[p].worst_avail[0] = t; break;
            case PolicyId::max_freq:
            case PolicyId::naive_global: queue.worst_avail[p] = t; break;
        }

        int task = try_start(p, t);
        if (task != 0)
            finishes.push({t + static_cast<double>(sampled[task]) / running_freq[p], p});
    }

    tr.deadline_met = last_finish <= D + kTimeEps;
    for (const auto& e : tr.events)
        if (e.kind == EventKind::skip) ++tr.skip_count;
    return tr;
}

Summary Simulation::run_replications(std::span<const std::uint64_t> seeds,
                                     std::vector<FrameTrace>* traces_out) const {
    std::vector<FrameTrace> traces;
    traces.reserve(seeds.size());
    for (std::uint64_t s : seeds) traces.push_back(run_frame(s));
    Summary sum = summarize(traces);
    if (traces_out) *traces_out = std::move(traces);
    return sum;
}

FrameTrace run_frame(const SystemConfig& cfg, const FreqTable& table, const Partition& part,
                     std::uint64_t seed) {
    Simulation sim;
    sim.cfg = cfg;
    sim.policy = PolicyId::global_stochastic;
    sim.partition = part;
    sim.table = table;
    return sim.run_frame(seed);
}

Summary run_replications(const SystemConfig& cfg, const FreqTable& table, const Partition& part,
                         std::span<const std::uint64_t> seeds,
                         std::vector<FrameTrace>* traces_out) {
    Simulation sim;
    sim.cfg = cfg;
    sim.policy = PolicyId::global_stochastic;
    sim.partition = part;
    sim.table = table;
    return sim.run_replications(seeds, traces_out);
}

}  // namespace framedvfs
