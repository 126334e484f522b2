#include "sfplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace sfplan {

GaConfig ScenarioConfig::ga_config() const {
    GaConfig cfg;
    cfg.population_size = select_population;
    cfg.generations = select_generations;
    cfg.crossover_prob = select_crossover_prob;
    cfg.mutation_prob = select_mutation_prob;
    cfg.seed = select_seed;
    return cfg;
}

PlanConfig ScenarioConfig::plan_config() const {
    PlanConfig cfg;
    cfg.max_iterations = plan_max_iters;
    cfg.grad_tolerance = plan_grad_tol;
    cfg.dt = plan_dt_s;
    cfg.waypoints = plan_waypoints;
    return cfg;
}

CostWeights ScenarioConfig::cost_weights() const {
    CostWeights w;
    w.formation = weight_formation;
    w.smoothness = weight_smooth;
    w.collision = weight_collision;
    w.feasibility = weight_feasibility;
    w.time = 0.0;
    return w;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("invalid number for " + key + ": " + value);
    }
}

int to_int(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v != std::floor(v)) throw config_error("expected integer for " + key);
    return static_cast<int>(v);
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const auto v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("invalid seed for " + key + ": " + value);
    }
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(line_no) +
                               ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "map.size_x") cfg.map_size_x = to_double(key, value);
        else if (key == "map.size_y") cfg.map_size_y = to_double(key, value);
        else if (key == "map.size_z") cfg.map_size_z = to_double(key, value);
        else if (key == "map.obstacle_count") cfg.map_obstacle_count = to_int(key, value);
        else if (key == "map.obstacle_radius_min") cfg.map_obstacle_radius_min = to_double(key, value);
        else if (key == "map.obstacle_radius_max") cfg.map_obstacle_radius_max = to_double(key, value);
        else if (key == "formation.shape") {
            if (value == "cube") cfg.formation_shape = FormationShape::Cube;
            else if (value == "triangular-prism") cfg.formation_shape = FormationShape::TriangularPrism;
            else if (value == "octahedron") cfg.formation_shape = FormationShape::Octahedron;
            else if (value.rfind("custom:", 0) == 0) {
                cfg.formation_shape = FormationShape::Custom;
                cfg.custom_shape_path = value.substr(7);
            } else {
                throw config_error("unknown formation.shape: " + value);
            }
        }
        else if (key == "formation.spacing_m") cfg.formation_spacing_m = to_double(key, value);
        else if (key == "swarm.n") cfg.swarm_n = to_int(key, value);
        else if (key == "swarm.connection_rate") cfg.swarm_connection_rate = to_double(key, value);
        else if (key == "swarm.velocity_limit_mps") cfg.swarm_velocity_limit_mps = to_double(key, value);
        else if (key == "select.metric") cfg.select_metric = parse_metric(value);
        else if (key == "select.population") cfg.select_population = to_int(key, value);
        else if (key == "select.generations") cfg.select_generations = to_int(key, value);
        else if (key == "select.crossover_prob") cfg.select_crossover_prob = to_double(key, value);
        else if (key == "select.mutation_prob") cfg.select_mutation_prob = to_double(key, value);
        else if (key == "select.seed") cfg.select_seed = to_u64(key, value);
        else if (key == "plan.max_iters") cfg.plan_max_iters = to_int(key, value);
        else if (key == "plan.grad_tol") cfg.plan_grad_tol = to_double(key, value);
        else if (key == "plan.dt_s") cfg.plan_dt_s = to_double(key, value);
        else if (key == "plan.waypoints") cfg.plan_waypoints = to_int(key, value);
        else if (key == "weights.formation") cfg.weight_formation = to_double(key, value);
        else if (key == "weights.smooth") cfg.weight_smooth = to_double(key, value);
        else if (key == "weights.collision") cfg.weight_collision = to_double(key, value);
        else if (key == "weights.feasibility") cfg.weight_feasibility = to_double(key, value);
        else if (key == "seed") cfg.seed = to_u64(key, value);
        else throw config_error("unknown config key: " + key);
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    return parse_config(in);
}

std::string shape_name(FormationShape shape) {
    switch (shape) {
        case FormationShape::Cube: return "cube";
        case FormationShape::TriangularPrism: return "triangular-prism";
        case FormationShape::Octahedron: return "octahedron";
        case FormationShape::Custom: return "custom";
    }
    return "custom";
}

namespace {

struct Wireframe {
    Eigen::Matrix3Xd vertices;          // ordered so any prefix >= 4 spans 3D
    std::vector<DirectedEdge> edges;    // undirected skeleton, from < to
};

Wireframe shape_wireframe(FormationShape shape, double spacing) {
    Wireframe wf;
    switch (shape) {
        case FormationShape::Cube: {
            const double h = spacing / 2.0;
            // Corners ordered so the first four form a tetrahedron.
            const double signs[8][3] = {{-1, -1, -1}, {1, 1, -1}, {1, -1, 1},
                                        {-1, 1, 1},   {1, -1, -1}, {-1, 1, -1},
                                        {-1, -1, 1},  {1, 1, 1}};
            wf.vertices.resize(3, 8);
            for (int i = 0; i < 8; ++i) {
                wf.vertices.col(i) =
                    Eigen::Vector3d(signs[i][0] * h, signs[i][1] * h, signs[i][2] * h);
            }
            for (int i = 0; i < 8; ++i) {
                for (int j = i + 1; j < 8; ++j) {
                    int differ = 0;
                    for (int c = 0; c < 3; ++c) {
                        if (signs[i][c] != signs[j][c]) ++differ;
                    }
                    if (differ == 1) wf.edges.push_back({i, j});
                }
            }
            break;
        }
        case FormationShape::Octahedron: {
            const double r = spacing / std::sqrt(2.0);
            wf.vertices.resize(3, 6);
            wf.vertices.col(0) = Eigen::Vector3d(r, 0, 0);
            wf.vertices.col(1) = Eigen::Vector3d(0, r, 0);
            wf.vertices.col(2) = Eigen::Vector3d(0, 0, r);
            wf.vertices.col(3) = Eigen::Vector3d(-r, 0, 0);
            wf.vertices.col(4) = Eigen::Vector3d(0, -r, 0);
            wf.vertices.col(5) = Eigen::Vector3d(0, 0, -r);
            for (int i = 0; i < 6; ++i) {
                for (int j = i + 1; j < 6; ++j) {
                    if (j - i == 3) continue;  // antipodal pair
                    wf.edges.push_back({i, j});
                }
            }
            break;
        }
        case FormationShape::TriangularPrism: {
            const double s = spacing;
            Eigen::Matrix3Xd v(3, 6);
            v.col(0) = Eigen::Vector3d(0, 0, 0);
            v.col(1) = Eigen::Vector3d(s, 0, 0);
            v.col(2) = Eigen::Vector3d(s / 2.0, s * std::sqrt(3.0) / 2.0, 0);
            v.col(3) = v.col(0) + Eigen::Vector3d(0, 0, s);
            v.col(4) = v.col(1) + Eigen::Vector3d(0, 0, s);
            v.col(5) = v.col(2) + Eigen::Vector3d(0, 0, s);
            const Eigen::Vector3d centroid = v.rowwise().mean();
            wf.vertices = v.colwise() - centroid;
            wf.edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5},
                        {4, 5}, {0, 3}, {1, 4}, {2, 5}};
            break;
        }
        case FormationShape::Custom:
            throw invalid_input_error("custom shapes need an explicit point list");
    }
    return wf;
}

}  // namespace

Eigen::Matrix3Xd formation_shape_positions(FormationShape shape, int n,
                                           double spacing) {
    if (n < 4) throw invalid_input_error("formation needs at least 4 drones");
    if (spacing <= 0.0) throw invalid_input_error("spacing must be positive");
    const Wireframe wf = shape_wireframe(shape, spacing);
    const int v = static_cast<int>(wf.vertices.cols());

    if (n <= v) return wf.vertices.leftCols(n);

    Eigen::Matrix3Xd out(3, n);
    out.leftCols(v) = wf.vertices;

    // Distribute the extras along the wireframe edges as evenly as possible.
    const int extra = n - v;
    const int e_count = static_cast<int>(wf.edges.size());
    int col = v;
    for (int e = 0; e < e_count && col < n; ++e) {
        const int on_edge = extra / e_count + (e < extra % e_count ? 1 : 0);
        const Eigen::Vector3d a = wf.vertices.col(wf.edges[e].from);
        const Eigen::Vector3d b = wf.vertices.col(wf.edges[e].to);
        for (int i = 1; i <= on_edge && col < n; ++i) {
            const double f = static_cast<double>(i) / (on_edge + 1);
            out.col(col++) = a + f * (b - a);
        }
    }
    return out;
}

Eigen::Matrix3Xd load_custom_formation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open formation file: " + path);
    std::vector<Eigen::Vector3d> pts;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        Eigen::Vector3d p;
        if (!(row >> p.x() >> p.y() >> p.z())) {
            throw config_error("bad formation row: " + line);
        }
        pts.push_back(p);
    }
    if (pts.size() < 4) throw config_error("formation file needs >= 4 points");
    Eigen::Matrix3Xd out(3, pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out.col(static_cast<int>(i)) = pts[i];
    return out;
}

namespace {

Eigen::Matrix3Xd resolve_formation(const ScenarioConfig& cfg) {
    if (cfg.formation_shape == FormationShape::Custom) {
        Eigen::Matrix3Xd pts = load_custom_formation(cfg.custom_shape_path);
        if (pts.cols() != cfg.swarm_n) {
            throw config_error("custom formation size does not match swarm.n");
        }
        const Eigen::Vector3d centroid = pts.rowwise().mean();
        return pts.colwise() - centroid;
    }
    return formation_shape_positions(cfg.formation_shape, cfg.swarm_n,
                                     cfg.formation_spacing_m);
}

ScenarioSpec base_spec(const ScenarioConfig& cfg, std::uint64_t seed) {
    ScenarioSpec spec;
    spec.n = cfg.swarm_n;
    spec.connection_rate = cfg.swarm_connection_rate;
    spec.velocity_limit = cfg.swarm_velocity_limit_mps;
    spec.seed = seed;
    spec.metric = cfg.select_metric;
    spec.ga = cfg.ga_config();
    spec.plan_cfg = cfg.plan_config();
    spec.weights = cfg.cost_weights();
    spec.formation = resolve_formation(cfg);
    return spec;
}

double formation_radius(const Eigen::Matrix3Xd& pts) {
    double r = 0.0;
    for (int i = 0; i < pts.cols(); ++i) r = std::max(r, pts.col(i).norm());
    return r;
}

}  // namespace

ScenarioSpec generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
    if (cfg.swarm_n < 4) throw invalid_input_error("swarm.n must be >= 4");
    if (cfg.map_obstacle_radius_min > cfg.map_obstacle_radius_max ||
        cfg.map_obstacle_radius_min <= 0.0) {
        throw config_error("invalid obstacle radius range");
    }
    ScenarioSpec spec = base_spec(cfg, seed);

    spec.map.lo = Eigen::Vector3d(0.0, -cfg.map_size_y / 2.0, 0.0);
    spec.map.hi = Eigen::Vector3d(cfg.map_size_x, cfg.map_size_y / 2.0, cfg.map_size_z);

    const double radius = formation_radius(spec.formation);
    const double start_x = cfg.map_size_x / 30.0;
    const double goal_x = cfg.map_size_x * (1.0 - 1.0 / 30.0);
    const double z_mid = cfg.map_size_z / 2.0;
    const Eigen::Vector3d start_center(start_x, 0.0, z_mid);
    const Eigen::Vector3d goal_center(goal_x, 0.0, z_mid);

    spec.start = spec.formation.colwise() + start_center;
    spec.goal = spec.formation.colwise() + goal_center;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, cfg.map_size_x);
    std::uniform_real_distribution<double> uy(-cfg.map_size_y / 2.0,
                                              cfg.map_size_y / 2.0);
    std::uniform_real_distribution<double> ur(cfg.map_obstacle_radius_min,
                                              cfg.map_obstacle_radius_max);
    const double clearance = radius + spec.map.inflation + 0.5;
    const int max_attempts = 200 * std::max(cfg.map_obstacle_count, 1);
    int attempts = 0;
    while (static_cast<int>(spec.map.cylinders.size()) < cfg.map_obstacle_count) {
        if (++attempts > max_attempts) {
            throw scenario_generation_error(
                "could not place obstacles with start/goal clearance");
        }
        Cylinder c{ux(rng), uy(rng), ur(rng)};
        const Eigen::Vector2d center(c.cx, c.cy);
        const Eigen::Vector2d s2(start_center.x(), start_center.y());
        const Eigen::Vector2d g2(goal_center.x(), goal_center.y());
        if ((center - s2).norm() < c.radius + clearance) continue;
        if ((center - g2).norm() < c.radius + clearance) continue;
        spec.map.cylinders.push_back(c);
    }
    return spec;
}

ScenarioSpec generate_recovery_scenario(const ScenarioConfig& cfg,
                                        std::uint64_t seed,
                                        double scatter_magnitude) {
    ScenarioSpec spec = base_spec(cfg, seed);
    spec.map.lo = Eigen::Vector3d(-30.0, -30.0, -30.0);
    spec.map.hi = Eigen::Vector3d(30.0, 30.0, 30.0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scatter_magnitude, scatter_magnitude);
    spec.start = spec.formation;
    for (int i = 0; i < spec.start.cols(); ++i) {
        spec.start.col(i) += Eigen::Vector3d(u(rng), u(rng), u(rng));
    }
    spec.goal.reset();
    return spec;
}

}  // namespace sfplan
