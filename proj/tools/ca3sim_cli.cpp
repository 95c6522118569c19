#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ca3sim/harness/experiment.hpp"
#include "ca3sim/harness/report.hpp"
#include "ca3sim/harness/svg.hpp"
#include "ca3sim/memory/calibration.hpp"

namespace fs = std::filesystem;
using namespace ca3sim;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

fs::path resolve_spec(const std::string& arg) {
    if (fs::exists(arg)) return arg;
    std::vector<fs::path> roots;
    if (const char* env = std::getenv("CA3SIM_SPEC_DIR")) roots.emplace_back(env);
    roots.emplace_back("specs");
    for (const auto& root : roots) {
        fs::path candidate = root / (arg + ".json");
        if (fs::exists(candidate)) return candidate;
        candidate = root / arg;
        if (fs::exists(candidate)) return candidate;
    }
    throw std::invalid_argument("spec not found: " + arg);
}

fs::path output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("CA3SIM_OUTPUT_DIR")) return env;
    return ".";
}

int cmd_run(const std::string& spec_arg, const std::string& out_flag, bool no_svg) {
    ExperimentSpec spec;
    ExperimentReport report;
    try {
        spec = load_spec_file(resolve_spec(spec_arg).string());
        report = run_experiment(spec);
    } catch (const std::exception& e) {
        // Validation precedes any output, so a bad spec leaves no partial files.
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    const fs::path dir = output_dir(out_flag);
    fs::create_directories(dir);
    write_file(dir / (spec.name + ".report.txt"), report_to_text(report));
    write_file(dir / (spec.name + ".report.json"), report_to_json(report));
    write_file(dir / (spec.name + ".spikes.csv"), report.recall_record.to_csv());
    if (report.learning_record.total_spikes() > 0)
        write_file(dir / (spec.name + ".learning_spikes.csv"), report.learning_record.to_csv());
    write_file(dir / (spec.name + ".weights.csv"), weights_to_csv(report.weights));
    if (!no_svg) {
        double duration = 0.0;
        for (const auto& [pop, train] : report.recall_record.trains())
            for (const auto& e : train) duration = std::max(duration, e.step * 1.0);
        std::vector<std::string> pops = {"DG", "PC"};
        std::vector<std::uint32_t> sizes = {spec.n(), spec.n()};
        write_file(dir / (spec.name + ".raster.svg"),
                   raster_svg(report.recall_record, pops, sizes, report.slot_annotations,
                              duration + 2.0));
    }
    std::cout << report_to_text(report);
    return report.pass ? kExitPass : kExitMismatch;
}

int cmd_calibrate(std::uint32_t n, const std::string& workload_path, double lo, double hi,
                  double step, const std::string& out_flag) {
    CalibrationWorkload workload;
    RegulatedConfig base;
    try {
        nlohmann::json j = nlohmann::json::parse(slurp(workload_path));
        base.n = j.contains("n") ? j["n"].get<std::uint32_t>() : n;
        if (n != 0) base.n = n;
        for (const auto& parr : j.at("patterns")) {
            Pattern p;
            p.n = base.n;
            for (const auto& v : parr) p.active.insert(v.get<std::uint32_t>());
            workload.patterns.push_back(p);
        }
        for (const auto& tj : j.at("targets")) {
            CalibrationTarget t;
            for (const auto& v : tj.at("cue")) t.cue.active.insert(v.get<std::uint32_t>());
            for (const auto& v : tj.at("expected")) t.expected.insert(v.get<std::uint32_t>());
            if (tj.contains("presentations")) t.presentations = tj["presentations"].get<int>();
            workload.targets.push_back(t);
        }
        if (j.contains("overrides")) {
            const auto& o = j["overrides"];
            if (o.contains("w_inh_pc")) base.w_inh_pc = o["w_inh_pc"].get<double>();
            if (o.contains("w_max")) base.stdp.w_max = o["w_max"].get<double>();
        }
        if (!(lo <= hi)) throw std::invalid_argument("empty calibration bounds");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CalibrationResult result;
    try {
        result = calibrate_inhibition(base, workload, lo, hi, step);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cout << "candidate_w_pc_pc_inh,spurious,missing,perfect\n";
    for (const auto& s : result.scores)
        std::cout << s.weight << "," << s.spurious << "," << s.missing << ","
                  << (s.perfect() ? "yes" : "no") << "\n";
    if (!result.success) {
        std::cerr << "calibration failed: no candidate achieved perfect recall\n";
        return kExitMismatch;
    }
    std::cout << "w_pc_pc_inh=" << result.w_pc_pc_inh << "\n";
    const fs::path dir = output_dir(out_flag);
    fs::create_directories(dir);
    nlohmann::json frag;
    frag["w_pc_pc_inh"] = result.w_pc_pc_inh;
    frag["n"] = base.n;
    write_file(dir / "calibrated_inhibition.json", frag.dump(2) + "\n");
    return kExitPass;
}

int cmd_resources(const std::string& kind_str, std::uint32_t n, bool csv) {
    ModelKind kind;
    ResourceCounts r;
    try {
        kind = model_kind_from_string(kind_str);
        r = count_resources(kind, n);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (csv) {
        std::cout << "kind,n,neurons,static_synapses,stdp_synapses,recurrent_inhibitory,"
                     "full_static_synapses,learning_ms,recall_ms\n";
        std::cout << to_string(kind) << "," << n << "," << r.neurons << "," << r.static_synapses
                  << "," << r.stdp_synapses << "," << r.recurrent_inhibitory_synapses << ","
                  << r.full_static_synapses << "," << r.learning_latency_ms << ","
                  << r.recall_latency_ms << "\n";
    } else {
        std::cout << "model:                 " << to_string(kind) << " (n=" << n << ")\n"
                  << "neurons:               " << r.neurons << "\n"
                  << "static synapses:       " << r.static_synapses << " (headline convention)\n"
                  << "stdp synapses:         " << r.stdp_synapses << "\n"
                  << "recurrent inhibitory:  " << r.recurrent_inhibitory_synapses << "\n"
                  << "full static count:     " << r.full_static_synapses << "\n"
                  << "learning latency (ms): " << r.learning_latency_ms << "\n"
                  << "recall latency (ms):   " << r.recall_latency_ms << "\n";
    }
    return kExitPass;
}

int cmd_export(const std::string& spikes_csv, const std::string& svg_out, std::uint32_t n) {
    try {
        SpikeRecord record(1.0);
        std::istringstream in(slurp(spikes_csv));
        std::string line;
        if (!std::getline(in, line) || line != "population,neuron,time_ms")
            throw std::invalid_argument("bad spike CSV header");
        struct Row {
            std::string pop;
            std::uint32_t neuron;
            double t;
        };
        std::vector<Row> rows;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw std::invalid_argument("bad spike CSV row: " + line);
            rows.push_back(Row{line.substr(0, c1),
                               static_cast<std::uint32_t>(std::stoul(line.substr(c1 + 1, c2 - c1 - 1))),
                               std::stod(line.substr(c2 + 1))});
        }
        std::stable_sort(rows.begin(), rows.end(),
                         [](const Row& a, const Row& b) { return a.t < b.t; });
        double duration = 0.0;
        std::uint32_t max_neuron = 0;
        for (const auto& r : rows) {
            record.add(r.pop, r.neuron, static_cast<std::uint32_t>(std::llround(r.t)));
            duration = std::max(duration, r.t);
            max_neuron = std::max(max_neuron, r.neuron);
        }
        const std::uint32_t size = n ? n : max_neuron + 1;
        write_file(svg_out, raster_svg(record, {"DG", "PC"}, {size, size}, {}, duration + 2.0));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spiking DG-CA3 associative memory simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment spec and write its artifacts");
    std::string spec_arg, run_out;
    bool no_svg = false, run_all = false;
    run->add_option("spec", spec_arg, "Spec file path or bundled spec name");
    run->add_flag("--all", run_all, "Run every bundled spec in the spec directory");
    run->add_option("--out", run_out, "Output directory (default: CA3SIM_OUTPUT_DIR or .)");
    run->add_flag("--no-svg", no_svg, "Skip the raster SVG");

    auto* calibrate = app.add_subcommand("calibrate", "Search the regulated lateral inhibition");
    std::uint32_t cal_n = 0;
    std::string workload_path, cal_out;
    double lo = 0.0, hi = 0.0, step = 0.25;
    calibrate->add_option("--n", cal_n, "PC count (overrides the workload file)");
    calibrate->add_option("workload", workload_path, "Workload JSON")->required();
    calibrate->add_option("--lo", lo, "Lower bound (nA)")->required();
    calibrate->add_option("--hi", hi, "Upper bound (nA)")->required();
    calibrate->add_option("--step", step, "Grid step (nA)");
    calibrate->add_option("--out", cal_out, "Output directory for the config fragment");

    auto* resources = app.add_subcommand("resources", "Print model resource counts");
    std::string kind_str;
    std::uint32_t res_n = 0;
    bool csv = false;
    resources->add_option("kind", kind_str, "oscillatory | regulated")->required();
    resources->add_option("n", res_n, "Memory size (PC count)")->required();
    resources->add_flag("--csv", csv, "Machine-readable output");

    auto* exp = app.add_subcommand("export", "Render a raster SVG from a spike CSV");
    std::string spikes_csv, svg_out;
    std::uint32_t exp_n = 0;
    exp->add_option("spikes", spikes_csv, "Spike CSV (population,neuron,time_ms)")->required();
    exp->add_option("svg", svg_out, "Output SVG path")->required();
    exp->add_option("--n", exp_n, "Population size for panel height");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (run->parsed()) {
        if (run_all) {
            std::vector<fs::path> roots;
            if (const char* env = std::getenv("CA3SIM_SPEC_DIR")) roots.emplace_back(env);
            roots.emplace_back("specs");
            for (const auto& root : roots) {
                if (!fs::is_directory(root)) continue;
                std::vector<fs::path> specs;
                for (const auto& entry : fs::directory_iterator(root))
                    if (entry.path().extension() == ".json") specs.push_back(entry.path());
                std::sort(specs.begin(), specs.end());
                int worst = kExitPass;
                for (const auto& s : specs) {
                    std::cout << "=== " << s.filename().string() << " ===\n";
                    worst = std::max(worst, cmd_run(s.string(), run_out, no_svg));
                }
                return worst;
            }
            std::cerr << "error: no spec directory found\n";
            return kExitUsage;
        }
        if (spec_arg.empty()) {
            std::cerr << "error: spec name required (or --all)\n";
            return kExitUsage;
        }
        return cmd_run(spec_arg, run_out, no_svg);
    }
    if (calibrate->parsed()) return cmd_calibrate(cal_n, workload_path, lo, hi, step, cal_out);
    if (resources->parsed()) return cmd_resources(kind_str, res_n, csv);
    if (exp->parsed()) return cmd_export(spikes_csv, svg_out, exp_n);
    return kExitUsage;
}
