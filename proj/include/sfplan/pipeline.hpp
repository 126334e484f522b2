#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "sfplan/scenario.hpp"

namespace sfplan {

/// One benchmark result. The CSV schema is fixed:
/// method,n,rate,seed,t_cpu_s,e_bar_dist,r_e,b_c,converged_at_s,rigidity_ok
struct BenchmarkRow {
    std::string method;
    int n = 0;
    double rate = 1.0;
    std::uint64_t seed = 0;
    double t_cpu_s = 0.0;  // planner wall time only
    double e_bar_dist = std::numeric_limits<double>::quiet_NaN();
    double r_e = std::numeric_limits<double>::quiet_NaN();
    double b_c = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> converged_at;
    bool rigidity_ok = false;

    // Not part of the CSV schema.
    double construction_time_s = 0.0;  // selection + graph build, offline
    int iterations = 0;
    bool failed = false;
    std::string note;
};

using BenchmarkReport = std::vector<BenchmarkRow>;

struct PipelineResult {
    BenchmarkRow row;
    SwarmTrajectory trajectory;
    FormationGraph graph;
};

/// Builds the graph for `method` ("ours", "complete", "random", "nearest",
/// "ours-wo-opt"), plans, evaluates, and fills one report row. Planner wall
/// time lands in t_cpu_s; graph construction is timed separately since
/// selection runs offline. Failures are recorded in the row, not thrown.
PipelineResult run_pipeline(const ScenarioSpec& scenario, const std::string& method,
                            const GaConfig& ga);

/// Runs `complete` first as the reference, then the requested methods with
/// r_e filled in against the complete-graph error.
BenchmarkReport run_bench(const ScenarioSpec& scenario,
                          const std::vector<std::string>& methods, int threads);

void write_report_csv(std::ostream& out, const BenchmarkReport& report);
void write_report_csv(const std::string& path, const BenchmarkReport& report);
std::string report_csv_header();

/// Tab-separated trajectory rows (time, drone_id, x, y, z) with a header
/// line and 9 significant digits; drone ids are 1-based.
void write_trajectory(std::ostream& out, const SwarmTrajectory& traj);
void write_trajectory(const std::string& path, const SwarmTrajectory& traj);
SwarmTrajectory read_trajectory(std::istream& in);
SwarmTrajectory read_trajectory_file(const std::string& path);

enum class StudyScale { Desk, Paper };

/// Named reproduction studies: metric-comparison, efficiency-sweep,
/// benchmark-error, recovery, ablation. Writes the report plus per-study
/// plot-data files into out_dir and returns the report rows.
BenchmarkReport reproduce(const std::string& study, StudyScale scale,
                          const std::string& out_dir, int threads,
                          const ScenarioConfig& base_cfg);

/// Runs tasks on `threads` workers; results land at their task's index.
void run_parallel(const std::vector<std::function<void()>>& tasks, int threads);

}  // namespace sfplan
