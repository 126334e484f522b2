#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sfplan/pipeline.hpp"

namespace fs = std::filesystem;
using namespace sfplan;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    int threads = 1;
    std::string scale = "desk";
};

ScenarioConfig resolve_config(const GlobalOpts& opts) {
    ScenarioConfig cfg;
    if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    return cfg;
}

ScoredSelection select_base(const ScenarioSpec& spec) {
    const PositionSet formation{spec.formation};
    const LaplacianMatrix L =
        laplacian(build_complete_graph(formation, spec.weight_mode));
    const int k = edges_per_drone(spec.n, spec.connection_rate);
    return solve_ga(L, formation, k, spec.metric, spec.ga);
}

void print_base(std::ostream& out, const BaseSetSelection& sel) {
    for (std::size_t i = 0; i < sel.indices.size(); ++i) {
        out << (i ? " " : "") << sel.indices[i] + 1;  // 1-based externally
    }
    out << "\n";
}

int cmd_select(const GlobalOpts& opts) {
    const ScenarioConfig cfg = resolve_config(opts);
    const ScenarioSpec spec = generate_scenario(cfg, cfg.seed);
    const ScoredSelection sel = select_base(spec);
    fs::create_directories(opts.out_dir);
    std::ofstream file(fs::path(opts.out_dir) / "base_set.txt");
    print_base(file, sel.selection);
    print_base(std::cout, sel.selection);
    std::cerr << "metric " << metric_name(sel.metric) << " score " << sel.value
              << "\n";
    return 0;
}

int cmd_sparsify(const GlobalOpts& opts) {
    const ScenarioConfig cfg = resolve_config(opts);
    const ScenarioSpec spec = generate_scenario(cfg, cfg.seed);
    const ScoredSelection sel = select_base(spec);
    const FormationGraph graph = build_sparse_graph(
        PositionSet{spec.formation}, sel.selection, spec.weight_mode);

    fs::create_directories(opts.out_dir);
    std::ofstream file(fs::path(opts.out_dir) / "edges.tsv");
    file << "from\tto\tweight\n";
    for (const auto& e : graph.directed_edges()) {
        file << e.from + 1 << '\t' << e.to + 1 << '\t' << graph.weight(e.from, e.to)
             << "\n";
    }
    std::cout << graph.directed_edge_count() << " directed edges, rigidity rank "
              << rigidity_rank(graph) << "/" << full_rigidity_rank(spec.n) << "\n";
    return 0;
}

int cmd_plan(const GlobalOpts& opts, const std::string& method) {
    const ScenarioConfig cfg = resolve_config(opts);
    const ScenarioSpec spec = generate_scenario(cfg, cfg.seed);
    const PipelineResult result = run_pipeline(spec, method, spec.ga);
    if (result.row.failed) {
        std::cerr << "planning failed: " << result.row.note << "\n";
        return 1;
    }
    fs::create_directories(opts.out_dir);
    const fs::path traj_path = fs::path(opts.out_dir) / "trajectory.tsv";
    write_trajectory(traj_path.string(), result.trajectory);
    write_report_csv((fs::path(opts.out_dir) / "plan_report.csv").string(),
                     {result.row});
    std::cout << "wrote " << traj_path.string() << " (" << result.row.iterations
              << " iterations, t_cpu " << result.row.t_cpu_s << " s, e_bar "
              << result.row.e_bar_dist << ")\n";
    return 0;
}

int cmd_evaluate(const GlobalOpts& opts, const std::string& traj_path) {
    const ScenarioConfig cfg = resolve_config(opts);
    const ScenarioSpec spec = generate_scenario(cfg, cfg.seed);
    const SwarmTrajectory traj = read_trajectory_file(traj_path);
    const ErrorReport report = average_formation_error(traj, spec.formation);

    fs::create_directories(opts.out_dir);
    std::ofstream file(fs::path(opts.out_dir) / "error_report.csv");
    file << "sample,time_s,e_dist\n";
    for (std::size_t k = 0; k < report.e_dist_series.size(); ++k) {
        file << k << ',' << k * traj.dt << ',' << report.e_dist_series[k] << "\n";
    }
    std::cout << "e_bar_dist " << report.e_bar_dist << "\nl_fma_max "
              << report.l_fma_max << "\nl_trj " << report.l_trj << "\nconverged_at ";
    if (report.converged_at) {
        std::cout << *report.converged_at << " s\n";
    } else {
        std::cout << "never\n";
    }
    return 0;
}

int cmd_bench(const GlobalOpts& opts, int repeats) {
    const ScenarioConfig cfg = resolve_config(opts);
    BenchmarkReport all;
    for (int rep = 0; rep < repeats; ++rep) {
        const ScenarioSpec spec = generate_scenario(cfg, cfg.seed + rep);
        BenchmarkReport rows = run_bench(
            spec, {"complete", "ours", "ours-wo-opt", "random", "nearest"},
            opts.threads);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    fs::create_directories(opts.out_dir);
    const fs::path path = fs::path(opts.out_dir) / "report.csv";
    write_report_csv(path.string(), all);
    write_report_csv(std::cout, all);
    std::cerr << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_reproduce(const GlobalOpts& opts, const std::string& study) {
    const ScenarioConfig cfg = resolve_config(opts);
    const StudyScale scale =
        opts.scale == "paper" ? StudyScale::Paper : StudyScale::Desk;
    const BenchmarkReport report =
        reproduce(study, scale, opts.out_dir, opts.threads, cfg);
    std::cout << report.size() << " runs written to " << opts.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse formation graph construction and trajectory planning"};
    app.require_subcommand(1);

    GlobalOpts opts;
    app.add_option("--config", opts.config_path, "Scenario config file");
    app.add_option("--seed", opts.seed, "Override the scenario seed");
    app.add_option("--out", opts.out_dir, "Output directory");
    app.add_option("--threads", opts.threads, "Worker pool width");
    app.add_option("--scale", opts.scale, "Study scale: desk or paper")
        ->check(CLI::IsMember({"desk", "paper"}));

    auto* select = app.add_subcommand("select", "Choose a base set (1-based indices)");
    auto* sparsify = app.add_subcommand("sparsify", "Emit the sparse graph edge list");
    auto* plan_cmd = app.add_subcommand("plan", "Plan a formation trajectory");
    std::string method = "ours";
    plan_cmd->add_option("--method", method,
                         "ours|complete|random|nearest|ours-wo-opt");
    auto* evaluate = app.add_subcommand("evaluate", "Score a trajectory file");
    std::string traj_path;
    evaluate->add_option("--trajectory", traj_path, "Trajectory file")->required();
    auto* bench = app.add_subcommand("bench", "Run all methods on the scenario");
    int repeats = 5;
    bench->add_option("--repeats", repeats, "Scenario seeds to run");
    auto* repro = app.add_subcommand("reproduce", "Run a named study");
    std::string study;
    repro->add_option("study", study,
                      "metric-comparison|efficiency-sweep|benchmark-error|"
                      "recovery|ablation")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (select->parsed()) return cmd_select(opts);
        if (sparsify->parsed()) return cmd_sparsify(opts);
        if (plan_cmd->parsed()) return cmd_plan(opts, method);
        if (evaluate->parsed()) return cmd_evaluate(opts, traj_path);
        if (bench->parsed()) return cmd_bench(opts, repeats);
        if (repro->parsed()) return cmd_reproduce(opts, study);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
