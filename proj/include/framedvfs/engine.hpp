#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "framedvfs/baselines.hpp"
#include "framedvfs/model.hpp"
#include "framedvfs/partition.hpp"
#include "framedvfs/sfunc.hpp"
#include "framedvfs/trace.hpp"

namespace framedvfs {

/// Deterministic random stream: a splitmix64-scrambled seed feeding
/// std::mt19937_64, with uniform doubles taken from the top 53 bits.
/// Identical seeds give identical streams on every platform. Independent
/// per-frame streams come from for_frame, which mixes the frame index
/// into the seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    static Rng for_frame(std::uint64_t seed, std::uint64_t frame_index);

    std::uint64_t next_u64() { return gen_(); }
    double next_unit();  // [0, 1)

private:
    std::mt19937_64 gen_;
};

/// Draws a cycle count from the distribution. The result is always one of
/// the support values, so never above the owning task's wcec.
Cycles sample_cycles(const CycleDistribution& dist, Rng& rng);

class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

/// A prepared simulation pipeline for one instance and policy: the static
/// partition, the frequency tables, and (for the partitioned policy) the
/// per-processor local tables. Frames are then pure functions of the seed,
/// and every policy sees identical sampled cycle counts for a given seed.
struct Simulation {
    SystemConfig cfg;
    PolicyId policy = PolicyId::global_stochastic;
    Partition partition;
    FreqTable table;  // horizon m*D (unused by max_freq)

    // partitioned_uniproc support: per cpu, the owned tasks in frame order
    // plus a reindexed single-processor instance and its table (horizon D)
    std::vector<std::vector<int>> local_tasks;
    std::vector<SystemConfig> local_cfgs;
    std::vector<Partition> local_parts;
    std::vector<FreqTable> local_tables;

    /// Validates, partitions and tabulates. Throws SimulationError when the
    /// config has validation errors, PartitionError via failed() when the
    /// partition heuristic fails.
    static Simulation prepare(const SystemConfig& cfg, PolicyId policy);

    FrameTrace run_frame(std::uint64_t seed) const;
    Summary run_replications(std::span<const std::uint64_t> seeds,
                             std::vector<FrameTrace>* traces_out = nullptr) const;
};

/// Partition heuristic failed while preparing a simulation.
class PartitionError : public std::runtime_error {
public:
    PartitionError(const std::string& what, int task) : std::runtime_error(what), task_index(task) {}
    int task_index;
};

/// One frame under the reservation-based global policy.
FrameTrace run_frame(const SystemConfig& cfg, const FreqTable& table, const Partition& part,
                     std::uint64_t seed);

/// Aggregates independently seeded frames under the global policy.
Summary run_replications(const SystemConfig& cfg, const FreqTable& table, const Partition& part,
                         std::span<const std::uint64_t> seeds,
                         std::vector<FrameTrace>* traces_out = nullptr);

}  // namespace framedvfs
