#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "sfplan/evaluation.hpp"
#include "sfplan/selector.hpp"

namespace sfplan {

enum class FormationShape { Cube, TriangularPrism, Octahedron, Custom };

/// Flat mirror of the scenario config file. Key names match the file keys
/// one to one; see parse_config for the list.
struct ScenarioConfig {
    double map_size_x = 60.0;
    double map_size_y = 20.0;
    double map_size_z = 5.0;
    int map_obstacle_count = 20;
    double map_obstacle_radius_min = 0.5;
    double map_obstacle_radius_max = 1.0;

    FormationShape formation_shape = FormationShape::Octahedron;
    std::string custom_shape_path;  // set for formation.shape = custom:<path>
    double formation_spacing_m = 2.0;

    int swarm_n = 8;
    double swarm_connection_rate = 0.3;
    double swarm_velocity_limit_mps = 2.0;

    MetricKind select_metric = MetricKind::MaxTrace;
    int select_population = 200;
    int select_generations = 60;
    double select_crossover_prob = 0.4;
    double select_mutation_prob = 0.4;
    std::uint64_t select_seed = 1;

    int plan_max_iters = 5000;
    double plan_grad_tol = 1e-6;
    double plan_dt_s = 0.5;
    int plan_waypoints = 30;

    double weight_formation = 1.0;
    double weight_smooth = 1.0;
    double weight_collision = 10.0;
    double weight_feasibility = 1.0;

    std::uint64_t seed = 1;

    GaConfig ga_config() const;
    PlanConfig plan_config() const;
    CostWeights cost_weights() const;
};

/// `key = value` lines, one per line, `#` comments. Unknown keys are
/// rejected so typos surface instead of silently using defaults.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

std::string shape_name(FormationShape shape);

/// N formation positions (meters, centered on the origin) for the named
/// shape at the given vertex spacing. For N beyond the canonical vertex
/// count, extra drones are distributed evenly along the shape's wireframe
/// edges; for smaller N a non-coplanar prefix of the vertices is used.
Eigen::Matrix3Xd formation_shape_positions(FormationShape shape, int n,
                                           double spacing);
Eigen::Matrix3Xd load_custom_formation(const std::string& path);

/// Fully resolved experiment instance.
struct ScenarioSpec {
    ObstacleMap map;
    Eigen::Matrix3Xd formation;            // desired shape at the origin
    Eigen::Matrix3Xd start;                // start waypoints, fixed
    std::optional<Eigen::Matrix3Xd> goal;  // fixed final waypoints when set
    int n = 0;
    double connection_rate = 0.3;
    double velocity_limit = 2.0;
    double drone_clearance = 0.3;
    std::uint64_t seed = 0;
    MetricKind metric = MetricKind::MaxTrace;
    GaConfig ga;
    PlanConfig plan_cfg;
    CostWeights weights;
    EdgeWeightMode weight_mode = EdgeWeightMode::Distance;
};

/// Deterministic scenario from (template, seed): obstacles sampled
/// uniformly inside the bounds, rejecting placements that intrude on the
/// start or goal regions. Start and goal centers sit at 1/30 and 29/30 of
/// the map length. Throws scenario_generation_error when the requested
/// obstacle count cannot be placed with clearance.
ScenarioSpec generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

/// Obstacle-free recovery instance: the swarm starts scattered (desired
/// formation plus a seeded uniform perturbation) and has no goal placement,
/// so the formation cost alone drives the shape.
ScenarioSpec generate_recovery_scenario(const ScenarioConfig& cfg,
                                        std::uint64_t seed,
                                        double scatter_magnitude);

}  // namespace sfplan
