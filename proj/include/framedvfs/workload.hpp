#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "framedvfs/model.hpp"

namespace framedvfs {

/// Shape of the per-task cycle distributions.
///   uniform    — equal mass on up to four points spread below the worst case
///   bimodal    — 0.8 mass near 0.3*wcec, 0.2 at the worst case
///   decreasing — geometrically decaying mass toward the worst case
enum class DistShape { uniform, bimodal, decreasing };

std::string_view shape_name(DistShape s);
DistShape parse_shape(std::string_view name);

struct WorkloadSpec {
    int n = 0;
    int m = 1;
    double frame_length = 1000.0;
    int freq_count = 2;
    double target_utilization = 0.5;  // sum(wcec/f_max) / (m*D)
    DistShape shape = DistShape::bimodal;
    std::uint64_t seed = 0;
    double grid_step = 0.0;  // 0 -> frame_length/1000
};

/// No partitionable instance found within the rejection budget, which
/// means the requested utilization is too high for the packing heuristic.
class GenerationError : public std::runtime_error {
public:
    explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

/// Draws a random instance with the requested shape: worst-case cycles summing to
/// target_utilization * m * D (UUniFast split, integer-rounded), per-task
/// distributions per the shape, evenly spaced frequencies ending at 1.
/// Resamples until the static partition succeeds, up to 1000 attempts.
/// Deterministic in the seed; the result always passes validate_config.
SystemConfig generate(const WorkloadSpec& spec);

}  // namespace framedvfs
