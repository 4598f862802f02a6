#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "framedvfs/config_io.hpp"
#include "framedvfs/engine.hpp"
#include "framedvfs/oracle.hpp"
#include "framedvfs/sfunc.hpp"
#include "framedvfs/workload.hpp"

namespace fs = std::filesystem;
using namespace framedvfs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitPartitionFailed = 3;

// "N" -> seeds 0..N-1; "a,b,c" -> that list; "42," -> just seed 42.
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
    std::vector<std::uint64_t> seeds;
    if (spec.find(',') == std::string::npos) {
        std::size_t used = 0;
        long long n = std::stoll(spec, &used);
        if (used != spec.size() || n < 1)
            throw std::invalid_argument("--seeds count must be a positive integer");
        for (long long i = 0; i < n; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
        return seeds;
    }
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t next = spec.find(',', pos);
        if (next == std::string::npos) next = spec.size();
        std::string item = spec.substr(pos, next - pos);
        if (!item.empty()) seeds.push_back(std::stoull(item));
        pos = next + 1;
    }
    if (seeds.empty()) throw std::invalid_argument("--seeds list is empty");
    return seeds;
}

// Loads and validates; returns false (after printing) on hard errors.
bool load_validated(const std::string& path, double grid_step_override, bool allow_exact_fit,
                    SystemConfig& out) {
    out = load_config_file(path);
    if (grid_step_override > 0.0) out.grid_step = grid_step_override;
    if (allow_exact_fit) out.allow_exact_fit = true;
    auto diags = validate_config(out);
    for (const auto& d : diags) std::cerr << format_diagnostic(d) << "\n";
    return !has_errors(diags);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int cmd_sfunc(const std::string& config_path, const std::string& out_dir, double grid_step) {
    SystemConfig cfg;
    if (!load_validated(config_path, grid_step, false, cfg)) return kExitInvalidInput;

    FreqTable table = compute_freq_tables(cfg);
    fs::create_directories(out_dir);
    std::ofstream csv(fs::path(out_dir) / "stable.csv", std::ios::binary);
    write_freq_table_csv(csv, table);

    for (std::size_t i = 0; i < table.chosen_freq.size(); ++i) {
        std::size_t k = 0;
        while (k < table.grid_points() && table.forced[i][k]) ++k;
        std::cout << "task " << (i + 1) << ": ";
        if (k == 0)
            std::cout << "never forced\n";
        else if (k == table.grid_points())
            std::cout << "forced everywhere\n";
        else
            std::cout << "forced below d=" << fmt_double(static_cast<double>(k) * table.grid_step)
                      << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& policy_name,
                 const std::string& seeds_spec, const std::string& out_dir, double grid_step,
                 bool allow_exact_fit) {
    SystemConfig cfg;
    if (!load_validated(config_path, grid_step, allow_exact_fit, cfg)) return kExitInvalidInput;
    PolicyId policy = parse_policy(policy_name);
    std::vector<std::uint64_t> seeds = parse_seeds(seeds_spec);

    Simulation sim = Simulation::prepare(cfg, policy);
    std::vector<FrameTrace> traces;
    Summary summary = sim.run_replications(seeds, &traces);

    fs::create_directories(out_dir);
    std::ofstream trace_csv(fs::path(out_dir) / "trace.csv", std::ios::binary);
    write_trace_csv(trace_csv, policy_name, &sim.partition, traces);
    write_file(fs::path(out_dir) / "summary.json", summary_to_json(summary));
    std::cout << summary_to_json(summary);
    return kExitOk;  // deadline misses are results, not failures
}

int cmd_bench(const std::string& config_path, const std::string& policies_spec,
              const std::string& seeds_spec, const std::string& out_dir, double grid_step,
              bool allow_exact_fit) {
    SystemConfig cfg;
    if (!load_validated(config_path, grid_step, allow_exact_fit, cfg)) return kExitInvalidInput;
    std::vector<std::uint64_t> seeds = parse_seeds(seeds_spec);

    std::vector<PolicyId> policies;
    std::size_t pos = 0;
    while (pos <= policies_spec.size()) {
        std::size_t next = policies_spec.find(',', pos);
        if (next == std::string::npos) next = policies_spec.size();
        std::string item = policies_spec.substr(pos, next - pos);
        if (!item.empty()) policies.push_back(parse_policy(item));
        pos = next + 1;
    }
    if (policies.empty()) throw std::invalid_argument("no policies given");

    std::string csv = "policy,mean_energy,ci95,misses,skips\n";
    for (PolicyId p : policies) {
        Simulation sim = Simulation::prepare(cfg, p);
        Summary s = sim.run_replications(seeds);
        csv += std::string(policy_name(p)) + "," + fmt_double(s.mean_energy) + ",";
        if (seeds.size() > 1) csv += fmt_double(s.ci95);
        csv += "," + std::to_string(s.misses) + "," + std::to_string(s.skips) + "\n";
    }
    std::cout << csv;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "bench.csv", csv);
    }
    return kExitOk;
}

int cmd_gen(const WorkloadSpec& spec, const std::string& out_file) {
    SystemConfig cfg = generate(spec);
    std::string json = config_to_json(cfg);
    if (out_file.empty())
        std::cout << json;
    else
        write_file(out_file, json);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frame-based multiprocessor DVFS scheduling simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", policy = "global_stochastic", seeds = "1";
    double grid_step = 0.0;
    bool allow_exact_fit = false;

    auto* sc_sfunc = app.add_subcommand("sfunc", "Tabulate the offline frequency schedules");
    sc_sfunc->add_option("--config", config_path, "instance JSON")->required();
    sc_sfunc->add_option("--out", out_dir, "output directory");
    sc_sfunc->add_option("--grid-step", grid_step, "override the table grid step");

    auto* sc_sim = app.add_subcommand("simulate", "Run seeded frames and write trace + summary");
    sc_sim->add_option("--config", config_path, "instance JSON")->required();
    sc_sim->add_option("--policy", policy, "scheduling policy");
    sc_sim->add_option("--seeds", seeds, "frame count N, or comma-separated seed list");
    sc_sim->add_option("--out", out_dir, "output directory");
    sc_sim->add_option("--grid-step", grid_step, "override the table grid step");
    sc_sim->add_flag("--allow-exact-fit", allow_exact_fit, "let reservations fill a frame exactly");

    std::string bench_policies =
        "global_stochastic,max_freq,partitioned_uniproc,naive_global";
    std::string bench_out;
    auto* sc_bench = app.add_subcommand("bench", "Compare policies on identical seeds");
    sc_bench->add_option("--config", config_path, "instance JSON")->required();
    sc_bench->add_option("--policy", bench_policies, "comma-separated policy list");
    sc_bench->add_option("--seeds", seeds, "frame count N, or comma-separated seed list");
    sc_bench->add_option("--out", bench_out, "directory for bench.csv (default stdout only)");
    sc_bench->add_option("--grid-step", grid_step, "override the table grid step");
    sc_bench->add_flag("--allow-exact-fit", allow_exact_fit, "let reservations fill a frame exactly");

    WorkloadSpec spec;
    std::string shape = "bimodal", gen_out;
    auto* sc_gen = app.add_subcommand("gen", "Generate a random instance");
    sc_gen->add_option("--n", spec.n, "task count")->required();
    sc_gen->add_option("--m", spec.m, "processor count")->required();
    sc_gen->add_option("--freqs", spec.freq_count, "number of available frequencies");
    sc_gen->add_option("--u", spec.target_utilization, "target worst-case utilization");
    sc_gen->add_option("--shape", shape, "uniform | bimodal | decreasing");
    sc_gen->add_option("--seed", spec.seed, "generator seed");
    sc_gen->add_option("--frame-length", spec.frame_length, "frame length D");
    sc_gen->add_option("--grid-step", spec.grid_step, "table grid step (default D/1000)");
    sc_gen->add_option("--out", gen_out, "output config path (default stdout)");

    try {
        app.parse(argc, argv);
        if (sc_sfunc->parsed()) return cmd_sfunc(config_path, out_dir, grid_step);
        if (sc_sim->parsed())
            return cmd_simulate(config_path, policy, seeds, out_dir, grid_step, allow_exact_fit);
        if (sc_bench->parsed())
            return cmd_bench(config_path, bench_policies, seeds, bench_out, grid_step,
                             allow_exact_fit);
        if (sc_gen->parsed()) {
            spec.shape = parse_shape(shape);
            return cmd_gen(spec, gen_out);
        }
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalidInput;
    } catch (const PartitionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartitionFailed;
    } catch (const GenerationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartitionFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
