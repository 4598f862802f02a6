#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "framedvfs/config_io.hpp"
#include "framedvfs/engine.hpp"
#include "framedvfs/oracle.hpp"
#include "framedvfs/scheduler.hpp"
#include "framedvfs/workload.hpp"

namespace py = pybind11;
using namespace framedvfs;

namespace {

CycleDistribution dist_from_pairs(const std::vector<std::pair<Cycles, double>>& pts) {
    CycleDistribution d;
    for (const auto& [c, p] : pts) d.support.push_back({c, p});
    return d;
}

std::vector<std::pair<Cycles, double>> dist_to_pairs(const CycleDistribution& d) {
    std::vector<std::pair<Cycles, double>> out;
    for (const auto& p : d.support) out.emplace_back(p.cycles, p.probability);
    return out;
}

FrequencySet freqs_from_values(const std::vector<double>& values) {
    FrequencySet fs;
    for (double v : values) fs.freqs.push_back({v});
    return fs;
}

std::vector<double> freqs_to_values(const FrequencySet& fs) {
    std::vector<double> out;
    for (const auto& f : fs.freqs) out.push_back(f.value);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete-event simulator for reservation-based global scheduling "
              "on frame-based multiprocessor DVFS systems";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
    py::register_exception<PartitionError>(m, "PartitionError", PyExc_RuntimeError);
    py::register_exception<OracleRefusal>(m, "OracleRefusal", PyExc_ValueError);
    py::register_exception<LivenessError>(m, "LivenessError", PyExc_RuntimeError);
    py::register_exception<InfeasibleFrequencyError>(m, "InfeasibleFrequencyError",
                                                     PyExc_ValueError);

    py::class_<Task>(m, "Task")
        .def(py::init([](int index, Cycles wcec, const std::vector<std::pair<Cycles, double>>& dist) {
                 return Task{index, wcec, dist_from_pairs(dist)};
             }),
             py::arg("index"), py::arg("wcec"), py::arg("dist"))
        .def_readwrite("index", &Task::index)
        .def_readwrite("wcec", &Task::wcec)
        .def_property(
            "dist", [](const Task& t) { return dist_to_pairs(t.dist); },
            [](Task& t, const std::vector<std::pair<Cycles, double>>& pts) {
                t.dist = dist_from_pairs(pts);
            })
        .def("expected_cycles", [](const Task& t) { return t.dist.expected_cycles(); });

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init([](std::vector<Task> tasks, int m_, double D, std::vector<double> freqs,
                         double grid_step, bool allow_exact_fit) {
                 SystemConfig cfg;
                 cfg.tasks = std::move(tasks);
                 cfg.m = m_;
                 cfg.frame_length = D;
                 cfg.freqs = freqs_from_values(freqs);
                 cfg.grid_step = grid_step > 0.0 ? grid_step : D / 1000.0;
                 cfg.allow_exact_fit = allow_exact_fit;
                 return cfg;
             }),
             py::arg("tasks"), py::arg("m"), py::arg("frame_length"), py::arg("freqs"),
             py::arg("grid_step") = 0.0, py::arg("allow_exact_fit") = false)
        .def_readwrite("tasks", &SystemConfig::tasks)
        .def_readwrite("m", &SystemConfig::m)
        .def_readwrite("frame_length", &SystemConfig::frame_length)
        .def_property(
            "freqs", [](const SystemConfig& c) { return freqs_to_values(c.freqs); },
            [](SystemConfig& c, const std::vector<double>& v) { c.freqs = freqs_from_values(v); })
        .def_readwrite("grid_step", &SystemConfig::grid_step)
        .def_readwrite("allow_exact_fit", &SystemConfig::allow_exact_fit)
        .def("total_worst_time", &SystemConfig::total_worst_time);

    m.def("validate_config", [](const SystemConfig& cfg) {
        std::vector<std::string> out;
        for (const auto& d : validate_config(cfg)) out.push_back(format_diagnostic(d));
        return out;
    });
    m.def("ceil_freq", [](double f_req, const std::vector<double>& freqs) {
        return ceil_freq(f_req, freqs_from_values(freqs)).value;
    });
    m.def("energy_of_execution",
          [](Cycles x, double f) { return energy_of_execution(x, {f}); });

    m.def("parse_config", &parse_config_json, py::arg("json_text"));
    m.def("load_config_file", &load_config_file, py::arg("path"));
    m.def("config_to_json", &config_to_json);
    m.def("save_config_file", &save_config_file, py::arg("cfg"), py::arg("path"));

    py::class_<FreqTable>(m, "FreqTable")
        .def_readonly("grid_step", &FreqTable::grid_step)
        .def_readonly("horizon", &FreqTable::horizon)
        .def("grid_points", &FreqTable::grid_points)
        .def("lookup",
             [](const FreqTable& t, int task, double d) { return t.lookup(task, d).value; },
             py::arg("task_index"), py::arg("d"))
        .def("lookup_forced", &FreqTable::lookup_forced, py::arg("task_index"), py::arg("d"))
        .def("expected_energy",
             [](const FreqTable& t, int task, double d) {
                 return t.expected_energy[task - 1][t.grid_index(d)];
             },
             py::arg("task_index"), py::arg("d"))
        .def("to_csv", [](const FreqTable& t) {
            std::ostringstream ss;
            write_freq_table_csv(ss, t);
            return ss.str();
        });

    m.def("compute_freq_tables", &compute_freq_tables);

    py::class_<Partition>(m, "Partition")
        .def_readonly("assigned", &Partition::assigned)
        .def_readonly("reserved", &Partition::reserved);

    py::class_<PartitionResult>(m, "PartitionResult")
        .def("ok", &PartitionResult::ok)
        .def_readonly("failed_task", &PartitionResult::failed_task)
        .def_property_readonly("partition", [](const PartitionResult& r) {
            return r.partition ? py::cast(*r.partition) : py::none().cast<py::object>();
        });

    m.def("static_partition", &static_partition);

    py::enum_<PolicyId>(m, "PolicyId")
        .value("global_stochastic", PolicyId::global_stochastic)
        .value("max_freq", PolicyId::max_freq)
        .value("partitioned_uniproc", PolicyId::partitioned_uniproc)
        .value("naive_global", PolicyId::naive_global);
    m.def("parse_policy", [](const std::string& s) { return parse_policy(s); });
    m.def("policy_name", [](PolicyId p) { return std::string(policy_name(p)); });

    py::enum_<DistShape>(m, "DistShape")
        .value("uniform", DistShape::uniform)
        .value("bimodal", DistShape::bimodal)
        .value("decreasing", DistShape::decreasing);

    py::class_<TraceEvent>(m, "TraceEvent")
        .def_readonly("time", &TraceEvent::time)
        .def_property_readonly(
            "kind", [](const TraceEvent& e) { return std::string(event_kind_name(e.kind)); })
        .def_readonly("task", &TraceEvent::task)
        .def_readonly("cpu", &TraceEvent::cpu)
        .def_readonly("freq", &TraceEvent::freq)
        .def_readonly("cycles", &TraceEvent::cycles);

    py::class_<FrameTrace>(m, "FrameTrace")
        .def_readonly("seed", &FrameTrace::seed)
        .def_readonly("events", &FrameTrace::events)
        .def_readonly("total_energy", &FrameTrace::total_energy)
        .def_readonly("deadline_met", &FrameTrace::deadline_met)
        .def_readonly("skip_count", &FrameTrace::skip_count);

    py::class_<Summary>(m, "Summary")
        .def_readonly("mean_energy", &Summary::mean_energy)
        .def_readonly("ci95", &Summary::ci95)
        .def_readonly("misses", &Summary::misses)
        .def_readonly("skips", &Summary::skips)
        .def_readonly("frames", &Summary::frames)
        .def("to_json", &summary_to_json);

    py::class_<Simulation>(m, "Simulation")
        .def_static("prepare", &Simulation::prepare, py::arg("cfg"), py::arg("policy"))
        .def_readonly("partition", &Simulation::partition)
        .def_readonly("table", &Simulation::table)
        .def("run_frame", &Simulation::run_frame, py::arg("seed"))
        .def("run_frames",
             [](const Simulation& sim, const std::vector<std::uint64_t>& seeds) {
                 std::vector<FrameTrace> traces;
                 sim.run_replications(seeds, &traces);
                 return traces;
             },
             py::arg("seeds"))
        .def("run_replications",
             [](const Simulation& sim, const std::vector<std::uint64_t>& seeds) {
                 return sim.run_replications(seeds);
             },
             py::arg("seeds"));

    m.def("trace_to_csv",
          [](const std::string& policy, const Partition* partition,
             const std::vector<FrameTrace>& traces) {
              std::ostringstream ss;
              write_trace_csv(ss, policy, partition, traces);
              return ss.str();
          },
          py::arg("policy"), py::arg("partition"), py::arg("traces"));

    py::class_<WorkloadSpec>(m, "WorkloadSpec")
        .def(py::init([](int n, int m_, double D, int freq_count, double u, DistShape shape,
                         std::uint64_t seed, double grid_step) {
                 return WorkloadSpec{n, m_, D, freq_count, u, shape, seed, grid_step};
             }),
             py::arg("n"), py::arg("m"), py::arg("frame_length") = 1000.0,
             py::arg("freq_count") = 2, py::arg("target_utilization") = 0.5,
             py::arg("shape") = DistShape::bimodal, py::arg("seed") = 0,
             py::arg("grid_step") = 0.0)
        .def_readwrite("n", &WorkloadSpec::n)
        .def_readwrite("m", &WorkloadSpec::m)
        .def_readwrite("frame_length", &WorkloadSpec::frame_length)
        .def_readwrite("freq_count", &WorkloadSpec::freq_count)
        .def_readwrite("target_utilization", &WorkloadSpec::target_utilization)
        .def_readwrite("shape", &WorkloadSpec::shape)
        .def_readwrite("seed", &WorkloadSpec::seed)
        .def_readwrite("grid_step", &WorkloadSpec::grid_step);

    m.def("generate", &generate, py::arg("spec"));

    m.def("brute_force_expected_energy", &brute_force_expected_energy);
    m.def("brute_force_min_makespan", &brute_force_min_makespan, py::arg("cfg"),
          py::arg("cycles"));
}
