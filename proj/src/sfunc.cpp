#include "framedvfs/sfunc.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "framedvfs/trace.hpp"

namespace framedvfs {

namespace {

// Absolute slack applied to worst-case admissibility comparisons so that
// exact rational boundaries survive binary rounding of grid coordinates.
constexpr double kAdmissibilityEps = 1e-9;

// Floor-to-grid with a nudge covering accumulated division error. Safe for
// grids up to ~2e7 points (enforced in build_freq_tables).
std::size_t floor_grid(double d, double step, std::size_t max_index) {
    if (d <= 0.0) return 0;
    double k = std::floor(d / step + 1e-6);
    if (k >= static_cast<double>(max_index)) return max_index;
    return static_cast<std::size_t>(k);
}

}  // namespace

std::size_t FreqTable::grid_index(double d) const {
    if (grid_points() == 0) throw std::logic_error("grid_index on an empty table");
    return floor_grid(d, grid_step, grid_points() - 1);
}

Frequency FreqTable::lookup(int task_index, double d) const {
    if (d < 0.0) throw std::invalid_argument("lookup with negative remaining time");
    if (task_index < 1 || task_index > static_cast<int>(chosen_freq.size()))
        throw std::invalid_argument("lookup with unknown task index");
    return {chosen_freq[task_index - 1][grid_index(d)]};
}

bool FreqTable::lookup_forced(int task_index, double d) const {
    if (d < 0.0) throw std::invalid_argument("lookup with negative remaining time");
    if (task_index < 1 || task_index > static_cast<int>(forced.size()))
        throw std::invalid_argument("lookup with unknown task index");
    return forced[task_index - 1][grid_index(d)] != 0;
}

FreqTable build_freq_tables(const std::vector<Task>& tasks, const FrequencySet& fs, double horizon,
                            double grid_step) {
    if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be > 0");
    if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");

    double points = std::ceil(horizon / grid_step - 1e-6) + 1.0;
    if (points > 2e7) throw std::invalid_argument("grid too fine: over 2e7 points");
    std::size_t n_points = static_cast<std::size_t>(std::max(points, 1.0));
    std::size_t last = n_points - 1;
    std::size_t n = tasks.size();

    FreqTable table;
    table.grid_step = grid_step;
    table.horizon = horizon;
    table.chosen_freq.assign(n, std::vector<double>(n_points, 0.0));
    table.expected_energy.assign(n, std::vector<double>(n_points, 0.0));
    table.forced.assign(n, std::vector<std::uint8_t>(n_points, 0));

    double f_max = fs.max().value;

    // Worst-case time of everything after task i at f_max.
    std::vector<double> tail(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;)
        tail[i] = tail[i + 1] + static_cast<double>(tasks[i].wcec) / f_max;

    const std::vector<double>* next_energy = nullptr;  // row i+1, null for the last stage

    for (std::size_t i = n; i-- > 0;) {
        const Task& task = tasks[i];
        double w = static_cast<double>(task.wcec);

        auto cost_at = [&](double d, double f) {
            double c = 0.0;
            for (const CyclePoint& p : task.dist.support) {
                double run = static_cast<double>(p.cycles) / f;
                double future = 0.0;
                if (next_energy)
                    future = (*next_energy)[floor_grid(d - run, grid_step, last)];
                c += p.probability * (static_cast<double>(p.cycles) * f * f + future);
            }
            return c;
        };

        for (std::size_t k = 0; k < n_points; ++k) {
            double d = static_cast<double>(k) * grid_step;
            double best_cost = std::numeric_limits<double>::infinity();
            double best_f = 0.0;
            for (const Frequency& fq : fs.freqs) {
                double f = fq.value;
                if (w / f + tail[i + 1] > d + kAdmissibilityEps) continue;
                double c = cost_at(d, f);
                // ties go to the lower frequency (frequencies scan ascending)
                if (best_f == 0.0 || c < best_cost - 1e-12 * std::max(1.0, best_cost)) {
                    best_cost = c;
                    best_f = f;
                }
            }
            if (best_f == 0.0) {
                table.forced[i][k] = 1;
                best_f = f_max;
                best_cost = cost_at(d, f_max);
            }
            table.chosen_freq[i][k] = best_f;
            table.expected_energy[i][k] = best_cost;
        }
        next_energy = &table.expected_energy[i];
    }
    return table;
}

FreqTable compute_freq_tables(const SystemConfig& cfg) {
    return build_freq_tables(cfg.tasks, cfg.freqs, static_cast<double>(cfg.m) * cfg.frame_length,
                             cfg.grid_step);
}

void write_freq_table_csv(std::ostream& os, const FreqTable& table) {
    os << "task_index,d,freq,expected_energy,forced_flag\n";
    for (std::size_t i = 0; i < table.chosen_freq.size(); ++i) {
        for (std::size_t k = 0; k < table.grid_points(); ++k) {
            os << (i + 1) << ',' << fmt_double(static_cast<double>(k) * table.grid_step) << ','
               << fmt_double(table.chosen_freq[i][k]) << ','
               << fmt_double(table.expected_energy[i][k]) << ',' << int(table.forced[i][k])
               << '\n';
        }
    }
}

}  // namespace framedvfs
