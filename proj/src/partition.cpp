#include "framedvfs/partition.hpp"

#include <algorithm>
#include <numeric>

namespace framedvfs {

PartitionResult static_partition(const SystemConfig& cfg) {
    Partition part;
    part.assigned.assign(cfg.m, {});
    part.reserved.assign(cfg.m, 0.0);
    double f_max = cfg.freqs.max().value;

    std::vector<int> order(cfg.tasks.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (cfg.tasks[a].wcec != cfg.tasks[b].wcec) return cfg.tasks[a].wcec > cfg.tasks[b].wcec;
        return a < b;
    });

    for (int ti : order) {
        const Task& task = cfg.tasks[ti];
        double need = static_cast<double>(task.wcec) / f_max;
        int q = 0;
        for (int p = 1; p < cfg.m; ++p)
            if (part.reserved[p] < part.reserved[q]) q = p;
        double room = cfg.frame_length - part.reserved[q];
        bool fits = cfg.allow_exact_fit ? room >= need : room > need;
        if (!fits) return {std::nullopt, task.index};
        part.reserved[q] += need;
        part.assigned[q].push_back(task.index);
    }
    return {std::move(part), 0};
}

}  // namespace framedvfs
