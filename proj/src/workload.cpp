#include "framedvfs/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "framedvfs/engine.hpp"
#include "framedvfs/partition.hpp"

namespace framedvfs {

std::string_view shape_name(DistShape s) {
    switch (s) {
        case DistShape::uniform: return "uniform";
        case DistShape::bimodal: return "bimodal";
        case DistShape::decreasing: return "decreasing";
    }
    return "?";
}

DistShape parse_shape(std::string_view name) {
    for (DistShape s : {DistShape::uniform, DistShape::bimodal, DistShape::decreasing})
        if (name == shape_name(s)) return s;
    throw std::invalid_argument("unknown distribution shape: " + std::string(name));
}

namespace {

std::vector<Cycles> draw_wcecs(int n, Cycles total, Rng& rng) {
    // UUniFast split of the total, then integer rounding repaired to keep
    // the exact sum and every task at >= 1 cycle.
    std::vector<double> fracs(n);
    double sum = 1.0;
    for (int i = 0; i < n - 1; ++i) {
        double next = sum * std::pow(rng.next_unit(), 1.0 / static_cast<double>(n - 1 - i));
        fracs[i] = sum - next;
        sum = next;
    }
    fracs[n - 1] = sum;

    std::vector<Cycles> w(n);
    Cycles assigned = 0;
    for (int i = 0; i < n; ++i) {
        w[i] = std::max<Cycles>(1, std::llround(fracs[i] * static_cast<double>(total)));
        assigned += w[i];
    }
    Cycles diff = total - assigned;
    for (int i = 0; diff != 0; i = (i + 1) % n) {
        if (diff > 0) {
            ++w[i];
            --diff;
        } else if (w[i] > 1) {
            --w[i];
            ++diff;
        }
    }
    return w;
}

CycleDistribution make_dist(Cycles w, DistShape shape) {
    CycleDistribution d;
    if (w <= 1) {
        d.support = {{w, 1.0}};
        return d;
    }
    switch (shape) {
        case DistShape::bimodal: {
            Cycles lo = std::max<Cycles>(1, std::llround(0.3 * static_cast<double>(w)));
            if (lo >= w) lo = w - 1;
            d.support = {{lo, 0.8}, {w, 0.2}};
            break;
        }
        case DistShape::uniform:
        case DistShape::decreasing: {
            int k = static_cast<int>(std::min<Cycles>(4, w));
            std::vector<Cycles> values;
            for (int j = 1; j <= k; ++j) {
                Cycles v = std::max<Cycles>(
                    1, std::llround(static_cast<double>(w) * j / static_cast<double>(k)));
                if (values.empty() || v > values.back()) values.push_back(v);
            }
            // strictly increasing by construction; the last point is w
            std::size_t cnt = values.size();
            std::vector<double> weight(cnt, 1.0);
            if (shape == DistShape::decreasing)
                for (std::size_t j = 0; j < cnt; ++j)
                    weight[j] = std::pow(2.0, static_cast<double>(cnt - 1 - j));
            double wsum = std::accumulate(weight.begin(), weight.end(), 0.0);

            double acc = 0.0;
            for (std::size_t j = 0; j < cnt; ++j) {
                double prob = (j + 1 == cnt) ? 1.0 - acc : weight[j] / wsum;
                acc += prob;
                d.support.push_back({values[j], prob});
            }
            break;
        }
    }
    return d;
}

}  // namespace

SystemConfig generate(const WorkloadSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
    if (spec.m < 1) throw std::invalid_argument("m must be >= 1");
    if (spec.n < spec.m) throw std::invalid_argument("need n >= m");
    if (!(spec.target_utilization > 0.0 && spec.target_utilization < 1.0))
        throw std::invalid_argument("target utilization must lie in (0, 1)");
    if (spec.freq_count < 1) throw std::invalid_argument("need at least one frequency");
    if (!(spec.frame_length > 0.0)) throw std::invalid_argument("frame length must be > 0");

    Cycles total = std::max<Cycles>(
        spec.n, std::llround(spec.target_utilization * spec.m * spec.frame_length));

    for (int attempt = 0; attempt < 1000; ++attempt) {
        Rng rng = Rng::for_frame(spec.seed, static_cast<std::uint64_t>(attempt));

        SystemConfig cfg;
        cfg.m = spec.m;
        cfg.frame_length = spec.frame_length;
        cfg.grid_step = spec.grid_step > 0.0 ? spec.grid_step : spec.frame_length / 1000.0;

        if (spec.freq_count == 1) {
            cfg.freqs.freqs = {{1.0}};
        } else {
            double f_min = 0.25 + 0.3 * rng.next_unit();
            for (int j = 0; j < spec.freq_count; ++j)
                cfg.freqs.freqs.push_back(
                    {f_min + (1.0 - f_min) * j / static_cast<double>(spec.freq_count - 1)});
            cfg.freqs.freqs.back().value = 1.0;
        }

        std::vector<Cycles> w = draw_wcecs(spec.n, total, rng);
        for (int i = 0; i < spec.n; ++i)
            cfg.tasks.push_back({i + 1, w[i], make_dist(w[i], spec.shape)});

        if (!has_errors(validate_config(cfg)) && static_partition(cfg).ok()) return cfg;
    }
    throw GenerationError("no partitionable instance after 1000 attempts (utilization " +
                          std::to_string(spec.target_utilization) + " too high for n=" +
                          std::to_string(spec.n) + ", m=" + std::to_string(spec.m) + ")");
}

}  // namespace framedvfs
