#include "sfplan/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace sfplan {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& tag) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h ^ seed;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Base-pattern edges without validity checks; the ablation study uses this
// to construct graphs from a deliberately coplanar base.
FormationGraph build_base_pattern_graph(const PositionSet& positions,
                                        const std::vector<int>& base,
                                        EdgeWeightMode mode) {
    const int n = positions.size();
    std::vector<bool> in_base(n, false);
    for (int b : base) in_base[b] = true;
    std::vector<DirectedEdge> edges;
    for (int b1 : base) {
        for (int b2 : base) {
            if (b1 != b2) edges.push_back({b1, b2});
        }
    }
    for (int v = 0; v < n; ++v) {
        if (in_base[v]) continue;
        for (int b : base) edges.push_back({v, b});
    }
    return FormationGraph(positions, edges, mode);
}

FormationGraph construct_graph(const ScenarioSpec& scenario, const std::string& method,
                               const GaConfig& ga) {
    const PositionSet formation{scenario.formation};
    const int n = scenario.n;

    if (method == "complete") {
        return build_complete_graph(formation, scenario.weight_mode);
    }
    const int k = edges_per_drone(n, scenario.connection_rate);
    if (method == "ours") {
        const LaplacianMatrix L = laplacian(
            build_complete_graph(formation, scenario.weight_mode));
        ScoredSelection sel = solve_ga(L, formation, k, scenario.metric, ga);
        if (!sel.selection.noncoplanar) {
            sel.selection = repair_coplanar_base(formation, sel.selection);
        }
        return build_sparse_graph(formation, sel.selection, scenario.weight_mode);
    }
    if (method == "ours-wo-opt" || method == "random" || method == "nearest") {
        const int per_drone = method == "ours-wo-opt" ? k : std::min(k, n - 1);
        return baseline_graph(parse_baseline(method), formation, per_drone,
                              mix_seed(scenario.seed, method), scenario.weight_mode);
    }
    throw invalid_input_error("unknown method: " + method);
}

}  // namespace

PipelineResult run_pipeline(const ScenarioSpec& scenario, const std::string& method,
                            const GaConfig& ga) {
    PipelineResult res;
    BenchmarkRow& row = res.row;
    row.method = method;
    row.n = scenario.n;
    row.rate = method == "complete" ? 1.0 : scenario.connection_rate;
    row.seed = scenario.seed;

    try {
        const auto t_build = Clock::now();
        res.graph = construct_graph(scenario, method, ga);
        row.construction_time_s = seconds_since(t_build);
        row.rigidity_ok = rigidity_rank(res.graph) == full_rigidity_rank(scenario.n);

        PlanningProblem problem;
        problem.formation = FormationCostModel(res.graph);
        problem.map = scenario.map;
        problem.velocity_limit = scenario.velocity_limit;
        problem.drone_clearance = scenario.drone_clearance;

        PlanStats stats;
        res.trajectory = plan(scenario.start, scenario.goal, problem,
                              scenario.weights, scenario.plan_cfg, &stats);
        row.t_cpu_s = std::max(stats.wall_time_s, 1e-9);
        row.iterations = stats.iterations;

        const ErrorSeries series =
            instantaneous_error_series(res.trajectory, scenario.formation);
        row.converged_at = series.converged_at;
        try {
            row.e_bar_dist =
                average_formation_error(res.trajectory, scenario.formation).e_bar_dist;
            row.b_c = tradeoff_score(row.t_cpu_s, row.e_bar_dist);
        } catch (const undefined_value_error&) {
            // In-place recovery: the centroid never moves, so the averaged
            // error has no defined value. The series above still does.
        }
    } catch (const std::exception& e) {
        row.failed = true;
        row.note = e.what();
    }
    return res;
}

BenchmarkReport run_bench(const ScenarioSpec& scenario,
                          const std::vector<std::string>& methods, int threads) {
    BenchmarkRow reference = run_pipeline(scenario, "complete", scenario.ga).row;
    reference.r_e = 1.0;

    std::vector<std::string> rest;
    for (const auto& m : methods) {
        if (m != "complete") rest.push_back(m);
    }
    std::vector<BenchmarkRow> rows(rest.size());
    std::vector<std::function<void()>> tasks;
    tasks.reserve(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) {
        tasks.push_back([&, i] {
            rows[i] = run_pipeline(scenario, rest[i], scenario.ga).row;
            if (!rows[i].failed && !reference.failed && reference.e_bar_dist > 0.0) {
                rows[i].r_e = relative_error(rows[i].e_bar_dist, reference.e_bar_dist);
            }
        });
    }
    run_parallel(tasks, threads);

    BenchmarkReport report;
    const bool want_complete =
        std::find(methods.begin(), methods.end(), "complete") != methods.end();
    if (want_complete) report.push_back(reference);
    report.insert(report.end(), rows.begin(), rows.end());
    return report;
}

std::string report_csv_header() {
    return "method,n,rate,seed,t_cpu_s,e_bar_dist,r_e,b_c,converged_at_s,rigidity_ok";
}

void write_report_csv(std::ostream& out, const BenchmarkReport& report) {
    out << report_csv_header() << "\n";
    for (const auto& row : report) {
        out << row.method << ',' << row.n << ',' << fmt(row.rate) << ','
            << row.seed << ',' << fmt(row.t_cpu_s) << ',' << fmt(row.e_bar_dist)
            << ',' << fmt(row.r_e) << ',' << fmt(row.b_c) << ','
            << (row.converged_at ? fmt(*row.converged_at) : "nan") << ','
            << (row.rigidity_ok ? 1 : 0) << "\n";
    }
}

void write_report_csv(const std::string& path, const BenchmarkReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    write_report_csv(out, report);
}

void write_trajectory(std::ostream& out, const SwarmTrajectory& traj) {
    out << "time\tdrone_id\tx\ty\tz\n";
    for (int k = 0; k < traj.samples; ++k) {
        const double t = k * traj.dt;
        for (int i = 0; i < traj.drones; ++i) {
            const Eigen::Vector3d p = traj.position(i, k);
            out << fmt(t) << '\t' << (i + 1) << '\t' << fmt(p.x()) << '\t'
                << fmt(p.y()) << '\t' << fmt(p.z()) << "\n";
        }
    }
}

void write_trajectory(const std::string& path, const SwarmTrajectory& traj) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trajectory: " + path);
    write_trajectory(out, traj);
}

SwarmTrajectory read_trajectory(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header != "time\tdrone_id\tx\ty\tz") {
        throw invalid_input_error("bad trajectory header");
    }
    struct Entry {
        double t;
        int id;
        Eigen::Vector3d p;
    };
    std::vector<Entry> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        Entry e;
        if (!(row >> e.t >> e.id >> e.p.x() >> e.p.y() >> e.p.z())) {
            throw invalid_input_error("bad trajectory row: " + line);
        }
        entries.push_back(e);
    }
    if (entries.empty()) throw invalid_input_error("empty trajectory file");

    std::vector<double> times;
    int max_id = 0;
    for (const auto& e : entries) {
        times.push_back(e.t);
        max_id = std::max(max_id, e.id);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                times.end());
    if (times.size() < 2 || max_id < 1) {
        throw invalid_input_error("trajectory needs >= 2 samples");
    }
    const double dt = times[1] - times[0];
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (std::abs(times[k] - times[k - 1] - dt) > 1e-6) {
            throw invalid_input_error("trajectory timestamps are not uniform");
        }
    }

    SwarmTrajectory traj = SwarmTrajectory::zeros(max_id, static_cast<int>(times.size()), dt);
    Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(max_id, static_cast<int>(times.size()));
    for (const auto& e : entries) {
        const auto it = std::lower_bound(times.begin(), times.end(), e.t - 1e-9);
        const int k = static_cast<int>(it - times.begin());
        traj.set_position(e.id - 1, k, e.p);
        seen(e.id - 1, k) = 1;
    }
    if (seen.sum() != max_id * static_cast<int>(times.size())) {
        throw invalid_input_error("trajectory is missing (time, drone) rows");
    }
    return traj;
}

SwarmTrajectory read_trajectory_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory: " + path);
    return read_trajectory(in);
}

void run_parallel(const std::vector<std::function<void()>>& tasks, int threads) {
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
    if (workers == 1) {
        for (const auto& task : tasks) task();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                tasks[i]();
            }
        });
    }
    for (auto& t : pool) t.join();
}

namespace {

namespace fs = std::filesystem;

struct StudyCommon {
    fs::path out;
    int threads = 1;
    StudyScale scale = StudyScale::Desk;
    ScenarioConfig base;
};

void append_rows(BenchmarkReport& into, const BenchmarkReport& rows,
                 std::mutex& mtx) {
    std::lock_guard lock(mtx);
    into.insert(into.end(), rows.begin(), rows.end());
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& l : lines) out << l << "\n";
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// -------------------------------------------------------------------------
// metric-comparison: per-shape, per-metric formation error of ours-graphs.
BenchmarkReport study_metric_comparison(const StudyCommon& c) {
    const bool paper = c.scale == StudyScale::Paper;
    const std::vector<FormationShape> shapes = {
        FormationShape::Cube, FormationShape::TriangularPrism,
        FormationShape::Octahedron};
    const std::vector<MetricKind> metrics = {
        MetricKind::MinCond, MetricKind::MaxLogDet,
        MetricKind::MaxMinEigenValue, MetricKind::MaxTrace};
    const std::vector<int> counts = paper ? std::vector<int>{24, 36, 48}
                                          : std::vector<int>{16};
    const int reps = paper ? 20 : 5;

    BenchmarkReport report;
    std::mutex mtx;
    std::vector<std::string> plot = {"shape,metric,n,seed,e_bar_dist,t_cpu_s"};
    std::vector<std::function<void()>> tasks;
    for (FormationShape shape : shapes) {
        for (int n : counts) {
            for (MetricKind metric : metrics) {
                for (int rep = 0; rep < reps; ++rep) {
                    tasks.push_back([&, shape, n, metric, rep] {
                        ScenarioConfig cfg = c.base;
                        cfg.formation_shape = shape;
                        cfg.swarm_n = n;
                        cfg.select_metric = metric;
                        if (paper) {
                            cfg.select_population = 6000;
                            cfg.select_generations = 100;
                        }
                        const std::uint64_t seed =
                            mix_seed(cfg.seed + rep, shape_name(shape));
                        ScenarioSpec spec = generate_scenario(cfg, seed);
                        BenchmarkRow row =
                            run_pipeline(spec, "ours", spec.ga).row;
                        row.method = metric_name(metric);
                        std::lock_guard lock(mtx);
                        report.push_back(row);
                        plot.push_back(shape_name(shape) + "," + metric_name(metric) +
                                       "," + std::to_string(n) + "," +
                                       std::to_string(seed) + "," +
                                       fmt(row.e_bar_dist) + "," + fmt(row.t_cpu_s));
                    });
                }
            }
        }
    }
    run_parallel(tasks, c.threads);
    write_lines(c.out / "metric_comparison.csv", plot);
    return report;
}

// -------------------------------------------------------------------------
// efficiency-sweep: gradient timing and full runs across connection rates.
BenchmarkReport study_efficiency_sweep(const StudyCommon& c) {
    const bool paper = c.scale == StudyScale::Paper;
    const std::vector<int> counts = paper ? std::vector<int>{48, 60, 72}
                                          : std::vector<int>{48};
    std::vector<double> rates;
    if (paper) {
        for (double r = 0.15; r <= 0.501; r += 0.05) rates.push_back(r);
    } else {
        rates = {0.2, 0.3, 0.4, 0.5};
    }
    const int reps = paper ? 20 : 3;

    BenchmarkReport report;
    std::mutex mtx;
    std::vector<std::string> plot = {
        "n,rate,seed,grad_eval_s,grad_speedup,t_cpu_s,e_bar_dist,r_e,b_c"};

    for (int n : counts) {
        // Per-sample formation-gradient timing, ours vs complete.
        ScenarioConfig cfg = c.base;
        cfg.swarm_n = n;
        ScenarioSpec spec = generate_scenario(cfg, cfg.seed);
        const PositionSet formation{spec.formation};
        const FormationCostModel complete_model(
            build_complete_graph(formation, spec.weight_mode));
        const Eigen::Matrix3Xd sample =
            spec.formation + 0.05 * Eigen::Matrix3Xd::Random(3, n);

        const int evals = 1000;
        auto time_model = [&](const FormationCostModel& m) {
            double sink = 0.0;
            const auto t0 = Clock::now();
            for (int e = 0; e < evals; ++e) sink += m.gradient(sample).sum();
            const double elapsed = seconds_since(t0) / evals;
            volatile double keep = sink;
            (void)keep;
            return elapsed;
        };
        const double complete_time = time_model(complete_model);

        std::vector<std::string> cfgs_plot;
        for (double rate : rates) {
            cfg.swarm_connection_rate = rate;
            ScenarioSpec rate_spec = generate_scenario(cfg, cfg.seed);
            const int k = edges_per_drone(n, rate);
            const LaplacianMatrix L = laplacian(
                build_complete_graph(formation, rate_spec.weight_mode));
            ScoredSelection sel = solve_ga(L, formation, k, rate_spec.metric,
                                           rate_spec.ga);
            const FormationCostModel sparse_model(build_sparse_graph(
                formation, sel.selection, rate_spec.weight_mode));
            const double sparse_time = time_model(sparse_model);

            for (int rep = 0; rep < reps; ++rep) {
                const std::uint64_t seed = cfg.seed + 100 + rep;
                ScenarioSpec run_spec = generate_scenario(cfg, seed);
                BenchmarkReport rows =
                    run_bench(run_spec, {"complete", "ours"}, c.threads);
                std::lock_guard lock(mtx);
                for (const auto& row : rows) {
                    report.push_back(row);
                    if (row.method == "ours") {
                        plot.push_back(std::to_string(n) + "," + fmt(rate) + "," +
                                       std::to_string(seed) + "," + fmt(sparse_time) +
                                       "," + fmt(complete_time / sparse_time) + "," +
                                       fmt(row.t_cpu_s) + "," + fmt(row.e_bar_dist) +
                                       "," + fmt(row.r_e) + "," + fmt(row.b_c));
                    }
                }
            }
        }
        (void)cfgs_plot;
    }
    write_lines(c.out / "efficiency_sweep.csv", plot);

    // Trade-off samples (rate, mean t_cpu, mean error, B_c of the means).
    std::map<double, std::pair<std::vector<double>, std::vector<double>>> by_rate;
    for (const auto& row : report) {
        if (row.method == "ours" && !row.failed) {
            by_rate[row.rate].first.push_back(row.t_cpu_s);
            by_rate[row.rate].second.push_back(row.e_bar_dist);
        }
    }
    std::vector<std::string> bc = {"rate,mean_t_cpu_s,mean_e_bar_dist,b_c"};
    for (const auto& [rate, samples] : by_rate) {
        const double t = mean_of(samples.first);
        const double e = mean_of(samples.second);
        bc.push_back(fmt(rate) + "," + fmt(t) + "," + fmt(e) + "," +
                     fmt(tradeoff_score(t, e)));
    }
    write_lines(c.out / "bc_tradeoff.csv", bc);
    return report;
}

// -------------------------------------------------------------------------
// benchmark-error: all construction methods on the same cluttered scenarios.
BenchmarkReport study_benchmark_error(const StudyCommon& c) {
    const bool paper = c.scale == StudyScale::Paper;
    const int n = paper ? 48 : 16;
    const int reps = paper ? 80 : 20;

    BenchmarkReport report;
    std::mutex mtx;
    std::vector<std::function<void()>> tasks;
    for (int rep = 0; rep < reps; ++rep) {
        tasks.push_back([&, rep] {
            ScenarioConfig cfg = c.base;
            cfg.swarm_n = n;
            cfg.swarm_connection_rate = 0.3;
            if (paper) {
                cfg.select_population = 6000;
                cfg.select_generations = 100;
            }
            ScenarioSpec spec = generate_scenario(cfg, cfg.seed + rep);
            BenchmarkReport rows = run_bench(
                spec, {"complete", "ours", "ours-wo-opt", "random", "nearest"}, 1);
            append_rows(report, rows, mtx);
        });
    }
    run_parallel(tasks, c.threads);

    std::map<std::string, std::vector<double>> by_method;
    for (const auto& row : report) {
        if (!row.failed) by_method[row.method].push_back(row.e_bar_dist);
    }
    std::vector<std::string> summary = {"method,mean_e_bar_dist,stddev,runs"};
    for (const auto& [method, values] : by_method) {
        const double mean = mean_of(values);
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        var = values.size() > 1 ? var / (static_cast<double>(values.size()) - 1) : 0.0;
        summary.push_back(method + "," + fmt(mean) + "," + fmt(std::sqrt(var)) + "," +
                          std::to_string(values.size()));
    }
    write_lines(c.out / "benchmark_summary.csv", summary);
    return report;
}

// -------------------------------------------------------------------------
// recovery: scattered start to shape, no obstacles, ours vs complete.
BenchmarkReport study_recovery(const StudyCommon& c) {
    const bool paper = c.scale == StudyScale::Paper;
    const std::vector<int> counts = paper ? std::vector<int>{48}
                                          : std::vector<int>{8, 16};
    const int reps = paper ? 10 : 5;

    BenchmarkReport report;
    std::mutex mtx;
    std::vector<std::string> plot = {
        "n,method,seed,converged_at_s,iterations,t_cpu_s,e_final"};
    std::vector<std::function<void()>> tasks;
    for (int n : counts) {
        for (int rep = 0; rep < reps; ++rep) {
            tasks.push_back([&, n, rep] {
                ScenarioConfig cfg = c.base;
                cfg.swarm_n = n;
                cfg.swarm_connection_rate = 0.3;
                cfg.map_obstacle_count = 0;
                cfg.weight_collision = 0.0;
                const double scatter = 1.5 * cfg.formation_spacing_m;
                ScenarioSpec spec =
                    generate_recovery_scenario(cfg, cfg.seed + rep, scatter);
                BenchmarkReport rows =
                    run_bench(spec, {"complete", "ours"}, 1);
                std::lock_guard lock(mtx);
                for (const auto& row : rows) {
                    report.push_back(row);
                    plot.push_back(std::to_string(n) + "," + row.method + "," +
                                   std::to_string(row.seed) + "," +
                                   (row.converged_at ? fmt(*row.converged_at) : "nan") +
                                   "," + std::to_string(row.iterations) + "," +
                                   fmt(row.t_cpu_s) + "," + fmt(row.e_bar_dist));
                }
            });
        }
    }
    run_parallel(tasks, c.threads);
    write_lines(c.out / "recovery.csv", plot);
    return report;
}

// -------------------------------------------------------------------------
// ablation: coplanar base (repair disabled) against the repaired base.
BenchmarkReport study_ablation(const StudyCommon& c) {
    const bool paper = c.scale == StudyScale::Paper;
    const int n = paper ? 48 : 16;
    const int reps = 20;

    BenchmarkReport report;
    std::mutex mtx;
    std::vector<std::string> plot = {
        "variant,seed,converged,rigidity_ok,e_final,min_e_dist"};
    std::vector<std::function<void()>> tasks;
    for (int rep = 0; rep < reps; ++rep) {
        for (const bool repaired : {false, true}) {
            tasks.push_back([&, rep, repaired] {
                ScenarioConfig cfg = c.base;
                cfg.formation_shape = FormationShape::Octahedron;
                cfg.swarm_n = n;
                cfg.map_obstacle_count = 0;
                cfg.weight_collision = 0.0;
                const double r = cfg.formation_spacing_m / std::sqrt(2.0);
                ScenarioSpec spec =
                    generate_recovery_scenario(cfg, cfg.seed + rep, 2.5 * r);

                // Equatorial square of the octahedron: exactly coplanar.
                std::vector<int> base = {0, 1, 3, 4};
                const PositionSet formation{spec.formation};
                BenchmarkRow row;
                row.method = repaired ? "ours-repaired" : "ours-coplanar";
                row.n = n;
                row.rate = spec.connection_rate;
                row.seed = spec.seed;
                try {
                    FormationGraph graph;
                    if (repaired) {
                        BaseSetSelection fixed = repair_coplanar_base(
                            formation, BaseSetSelection{base, false, 0.0});
                        graph = build_sparse_graph(formation, fixed,
                                                   spec.weight_mode);
                    } else {
                        graph = build_base_pattern_graph(formation, base,
                                                         spec.weight_mode);
                    }
                    row.rigidity_ok =
                        rigidity_rank(graph) == full_rigidity_rank(n);

                    PlanningProblem problem;
                    problem.formation = FormationCostModel(graph);
                    problem.map = spec.map;
                    problem.velocity_limit = spec.velocity_limit;
                    problem.drone_clearance = spec.drone_clearance;
                    PlanStats stats;
                    SwarmTrajectory traj = plan(spec.start, spec.goal, problem,
                                                spec.weights, spec.plan_cfg, &stats);
                    row.t_cpu_s = std::max(stats.wall_time_s, 1e-9);
                    row.iterations = stats.iterations;
                    const ErrorSeries err =
                        instantaneous_error_series(traj, spec.formation);
                    row.converged_at = err.converged_at;

                    const double min_e =
                        *std::min_element(err.e_dist.begin(), err.e_dist.end());
                    std::lock_guard lock(mtx);
                    report.push_back(row);
                    plot.push_back(row.method + "," + std::to_string(row.seed) + "," +
                                   (row.converged_at ? "1" : "0") + "," +
                                   (row.rigidity_ok ? "1" : "0") + "," +
                                   fmt(err.e_dist.back()) + "," + fmt(min_e));
                } catch (const std::exception& e) {
                    row.failed = true;
                    row.note = e.what();
                    std::lock_guard lock(mtx);
                    report.push_back(row);
                }
            });
        }
    }
    run_parallel(tasks, c.threads);
    write_lines(c.out / "ablation.csv", plot);
    return report;
}

}  // namespace

BenchmarkReport reproduce(const std::string& study, StudyScale scale,
                          const std::string& out_dir, int threads,
                          const ScenarioConfig& base_cfg) {
    StudyCommon c;
    c.out = out_dir;
    c.threads = threads;
    c.scale = scale;
    c.base = base_cfg;
    fs::create_directories(c.out);

    if (scale == StudyScale::Paper) {
        std::cerr << "note: paper scale runs full-size swarms and GA populations; "
                     "expect hours of compute on desktop hardware\n";
    }

    BenchmarkReport report;
    if (study == "metric-comparison") report = study_metric_comparison(c);
    else if (study == "efficiency-sweep") report = study_efficiency_sweep(c);
    else if (study == "benchmark-error") report = study_benchmark_error(c);
    else if (study == "recovery") report = study_recovery(c);
    else if (study == "ablation") report = study_ablation(c);
    else throw invalid_input_error("unknown study: " + study);

    write_report_csv((c.out / (study + "_report.csv")).string(), report);
    return report;
}

}  // namespace sfplan
