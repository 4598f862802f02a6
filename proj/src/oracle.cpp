#include "framedvfs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace framedvfs {

namespace {

double quantize(double d, double step) {
    if (d <= 0.0) return 0.0;
    return std::floor(d / step + 1e-6) * step;
}

// Expected cost of starting task i (0-based) with quantized remaining
// time d, choosing frequencies optimally at every reachable state.
double best_cost(const SystemConfig& cfg, const std::vector<double>& tail, std::size_t i,
                 double d) {
    if (i == cfg.tasks.size()) return 0.0;
    const Task& task = cfg.tasks[i];
    double w = static_cast<double>(task.wcec);

    auto cost_at = [&](double f) {
        double c = 0.0;
        for (const CyclePoint& p : task.dist.support) {
            double child = quantize(d - static_cast<double>(p.cycles) / f, cfg.grid_step);
            c += p.probability * (static_cast<double>(p.cycles) * f * f +
                                  best_cost(cfg, tail, i + 1, child));
        }
        return c;
    };

    double best = std::numeric_limits<double>::infinity();
    for (const Frequency& fq : cfg.freqs.freqs)
        if (w / fq.value + tail[i + 1] <= d + 1e-9) best = std::min(best, cost_at(fq.value));
    if (!std::isfinite(best)) best = cost_at(cfg.freqs.max().value);  // forced region
    return best;
}

}  // namespace

double brute_force_expected_energy(const SystemConfig& cfg) {
    if (cfg.tasks.size() > 3) throw OracleRefusal("too many tasks for enumeration");
    if (cfg.freqs.size() > 2) throw OracleRefusal("too many frequencies for enumeration");
    for (const Task& t : cfg.tasks) {
        if (t.dist.support.size() > 3) throw OracleRefusal("support too large for enumeration");
        if (t.wcec > 4) throw OracleRefusal("cycle counts too large for enumeration");
    }
    if (cfg.tasks.empty()) return 0.0;

    std::vector<double> tail(cfg.tasks.size() + 1, 0.0);
    for (std::size_t i = cfg.tasks.size(); i-- > 0;)
        tail[i] = tail[i + 1] + static_cast<double>(cfg.tasks[i].wcec) / cfg.freqs.max().value;

    double horizon = quantize(static_cast<double>(cfg.m) * cfg.frame_length, cfg.grid_step);
    return best_cost(cfg, tail, 0, horizon);
}

double brute_force_min_makespan(const SystemConfig& cfg, const std::vector<Cycles>& cycles) {
    std::size_t n = cfg.tasks.size();
    if (cycles.size() != n) throw std::invalid_argument("need one cycle count per task");
    double combos = std::pow(static_cast<double>(cfg.m), static_cast<double>(n));
    if (combos > static_cast<double>(1 << 22)) throw OracleRefusal("too many assignments");
    if (n == 0) return 0.0;

    double f_max = cfg.freqs.max().value;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> where(n, 0);
    while (true) {
        std::vector<double> load(cfg.m, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            load[where[i]] += static_cast<double>(cycles[i]) / f_max;
        best = std::min(best, *std::max_element(load.begin(), load.end()));

        std::size_t pos = 0;
        while (pos < n && ++where[pos] == cfg.m) where[pos++] = 0;
        if (pos == n) break;
    }
    return best;
}

}  // namespace framedvfs
