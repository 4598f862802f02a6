#include "framedvfs/model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>

namespace framedvfs {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

double CycleDistribution::expected_cycles() const {
    double e = 0.0;
    for (const auto& p : support) e += static_cast<double>(p.cycles) * p.probability;
    return e;
}

double SystemConfig::total_worst_time() const {
    if (freqs.freqs.empty()) return 0.0;
    double f_max = freqs.max().value;
    double total = 0.0;
    for (const auto& t : tasks) total += static_cast<double>(t.wcec) / f_max;
    return total;
}

std::vector<Diagnostic> validate_config(const SystemConfig& cfg) {
    std::vector<Diagnostic> out;
    auto err = [&](std::string field, std::string msg) {
        out.push_back({Severity::error, std::move(field), std::move(msg)});
    };

    if (cfg.m < 1) err("m", "processor count must be >= 1");
    if (!(cfg.frame_length > 0.0)) err("frame_length", "frame length D must be > 0");
    if (!(cfg.grid_step > 0.0)) err("grid_step", "grid step must be > 0");

    bool freqs_ok = true;
    if (cfg.freqs.freqs.empty()) {
        err("freqs", "frequency set must be non-empty");
        freqs_ok = false;
    } else {
        double prev = 0.0;
        for (std::size_t i = 0; i < cfg.freqs.freqs.size(); ++i) {
            double f = cfg.freqs.freqs[i].value;
            if (!(f > 0.0) || f > 1.0 + 1e-9) {
                err("freqs[" + std::to_string(i) + "]", "frequency must lie in (0, 1]");
                freqs_ok = false;
            }
            if (i > 0 && !(f > prev)) {
                err("freqs", "frequencies must be strictly increasing");
                freqs_ok = false;
            }
            prev = f;
        }
        if (std::abs(cfg.freqs.freqs.back().value - 1.0) > 1e-9) {
            err("freqs", "maximum frequency must be normalized to 1");
            freqs_ok = false;
        }
    }

    for (std::size_t j = 0; j < cfg.tasks.size(); ++j) {
        const Task& t = cfg.tasks[j];
        std::string base = "tasks[" + std::to_string(j) + "]";
        if (t.index != static_cast<int>(j) + 1)
            err(base + ".index", "index must equal 1-based frame position " + std::to_string(j + 1));
        if (t.wcec <= 0) err(base + ".wcec", "wcec must be a positive cycle count");

        if (t.dist.support.empty()) {
            err(base + ".dist", "distribution support must be non-empty");
            continue;
        }
        double psum = 0.0;
        Cycles prev_c = 0;
        bool increasing = true;
        for (const auto& p : t.dist.support) {
            psum += p.probability;
            if (!(p.probability > 0.0) || p.probability > 1.0 + 1e-12)
                err(base + ".dist", "probability " + fmt(p.probability) + " outside (0, 1]");
            if (p.cycles <= 0) err(base + ".dist", "cycle values must be positive");
            if (p.cycles <= prev_c) increasing = false;
            prev_c = p.cycles;
        }
        if (!increasing) err(base + ".dist", "cycle values must be strictly increasing");
        if (std::abs(psum - 1.0) > 1e-9)
            err(base + ".dist", "probabilities sum to " + fmt(psum));
        if (t.wcec > 0 && t.dist.max_cycles() != t.wcec)
            err(base + ".wcec", "wcec mismatch: wcec is " + std::to_string(t.wcec) +
                                    " but distribution max is " + std::to_string(t.dist.max_cycles()));
    }

    // Necessary (not sufficient) feasibility condition; partitioning decides.
    if (freqs_ok && cfg.m >= 1 && cfg.frame_length > 0.0 && !cfg.tasks.empty()) {
        double demand = cfg.total_worst_time();
        double capacity = static_cast<double>(cfg.m) * cfg.frame_length;
        if (demand > capacity + 1e-9)
            out.push_back({Severity::warning, "tasks",
                           "total worst-case demand " + fmt(demand) + " exceeds m*D = " + fmt(capacity)});
    }
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string s = d.severity == Severity::error ? "error: " : "warning: ";
    s += d.field;
    s += ": ";
    s += d.message;
    return s;
}

Frequency ceil_freq(double f_req, const FrequencySet& fs) {
    assert(!fs.freqs.empty());
    double f_max = fs.max().value;
    if (f_req > f_max + 1e-9)
        throw InfeasibleFrequencyError("required frequency " + fmt(f_req) + " exceeds maximum " +
                                       fmt(f_max));
    for (const Frequency& f : fs.freqs)
        if (f.value >= f_req) return f;
    return fs.max();  // f_req within the rounding guard above f_max
}

double energy_of_execution(Cycles x, Frequency f) {
    assert(x >= 0);
    return static_cast<double>(x) * f.value * f.value;
}

}  // namespace framedvfs
