#include "framedvfs/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "framedvfs/partition.hpp"

namespace framedvfs {

std::string_view event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::start: return "start";
        case EventKind::finish: return "finish";
        case EventKind::skip: return "skip";
        case EventKind::reservation_move: return "reservation_move";
    }
    return "?";
}

double FrameTrace::last_finish_time() const {
    double last = 0.0;
    for (const auto& e : events)
        if (e.kind == EventKind::finish) last = std::max(last, e.time);
    return last;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Summary summarize(std::span<const FrameTrace> traces) {
    Summary s;
    s.frames = static_cast<long long>(traces.size());
    if (traces.empty()) return s;
    double sum = 0.0;
    for (const auto& t : traces) {
        sum += t.total_energy;
        if (!t.deadline_met) ++s.misses;
        s.skips += t.skip_count;
    }
    s.mean_energy = sum / static_cast<double>(traces.size());
    if (traces.size() > 1) {
        double sq = 0.0;
        for (const auto& t : traces) {
            double d = t.total_energy - s.mean_energy;
            sq += d * d;
        }
        double sd = std::sqrt(sq / static_cast<double>(traces.size() - 1));
        s.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(traces.size()));
    }
    return s;
}

void write_trace_csv(std::ostream& os, std::string_view policy, const Partition* partition,
                     std::span<const FrameTrace> traces) {
    os << "# framedvfs trace v1\n";
    os << "# policy=" << policy << "\n";
    os << "# seeds=";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        if (i) os << ',';
        os << traces[i].seed;
    }
    os << "\n";
    if (partition) {
        for (std::size_t p = 0; p < partition->assigned.size(); ++p) {
            os << "# partition: cpu=" << (p + 1)
               << " reserved=" << fmt_double(partition->reserved[p]) << " tasks=";
            for (std::size_t i = 0; i < partition->assigned[p].size(); ++i) {
                if (i) os << ',';
                os << partition->assigned[p][i];
            }
            os << "\n";
        }
    }
    os << "frame,time,kind,task,cpu,freq,cycles\n";
    for (std::size_t fi = 0; fi < traces.size(); ++fi) {
        for (const auto& e : traces[fi].events) {
            os << fi << ',' << fmt_double(e.time) << ',' << event_kind_name(e.kind) << ','
               << e.task << ',' << (e.cpu + 1) << ',';
            bool has_run_info = e.kind == EventKind::start || e.kind == EventKind::finish;
            if (has_run_info) os << fmt_double(e.freq);
            os << ',';
            if (has_run_info) os << e.cycles;
            os << '\n';
        }
    }
}

std::string summary_to_json(const Summary& s) {
    nlohmann::ordered_json j;
    j["mean_energy"] = s.mean_energy;
    j["ci95"] = s.ci95;
    j["misses"] = s.misses;
    j["skips"] = s.skips;
    j["frames"] = s.frames;
    return j.dump(2) + "\n";
}

}  // namespace framedvfs
