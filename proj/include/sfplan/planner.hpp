#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sfplan/formation_graph.hpp"
#include "sfplan/sparsifier.hpp"

namespace sfplan {

/// Per-drone waypoint sequences at a uniform time step. Column k of `data`
/// stacks all drone positions at sample k. The start column is always held
/// fixed by the optimizer; the final column is fixed when `goal_fixed`.
struct SwarmTrajectory {
    int drones = 0;
    int samples = 0;
    double dt = 0.1;
    bool goal_fixed = false;
    Eigen::MatrixXd data;  // 3*drones x samples

    static SwarmTrajectory zeros(int drones, int samples, double dt);

    Eigen::Vector3d position(int drone, int k) const {
        return data.block<3, 1>(3 * drone, k);
    }
    void set_position(int drone, int k, const Eigen::Vector3d& p) {
        data.block<3, 1>(3 * drone, k) = p;
    }
    Eigen::Matrix3Xd sample(int k) const;
    double duration() const { return (samples - 1) * dt; }
};

struct CostWeights {
    double formation = 1.0;
    double smoothness = 1.0;
    double time = 0.0;
    double collision = 1.0;
    double feasibility = 1.0;
};

struct Cylinder {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 1.0;
};

/// Axis-aligned bounds with vertical cylindrical obstacles of infinite
/// height, plus an inflation margin added to every obstacle radius.
struct ObstacleMap {
    Eigen::Vector3d lo = Eigen::Vector3d::Zero();
    Eigen::Vector3d hi = Eigen::Vector3d::Zero();
    std::vector<Cylinder> cylinders;
    double inflation = 0.3;
};

inline constexpr double kCoincidenceEps = 1e-6;

/// Formation-similarity cost ||L - L_des||_F^2 over a fixed edge set, with
/// the gradient assembled drone by drone through the weight-vector chain
/// rule. Each drone's gradient evaluation is self-contained: it reads only
/// that drone's neighborhood (and its neighbors' rows), so evaluations are
/// independent and the work per sample scales with the square of the
/// per-drone edge count rather than the swarm size.
class FormationCostModel {
  public:
    FormationCostModel() = default;
    /// Edge set and desired weights taken from the desired-formation graph.
    explicit FormationCostModel(const FormationGraph& desired);
    /// Explicit edge set with desired weights given per directed edge.
    FormationCostModel(int n, const std::vector<DirectedEdge>& edges,
                       const Eigen::MatrixXd& desired_weights, EdgeWeightMode mode);

    int size() const { return n_; }
    EdgeWeightMode weight_mode() const { return mode_; }

    double cost(const Eigen::Matrix3Xd& sample) const;
    /// d cost / d p_i for one drone; throws singular_gradient_error when an
    /// adjacent pair is closer than kCoincidenceEps.
    Eigen::Vector3d drone_gradient(const Eigen::Matrix3Xd& sample, int i) const;
    Eigen::Matrix3Xd gradient(const Eigen::Matrix3Xd& sample) const;

  private:
    struct OutEdge {
        int to;
        double w_des;
    };
    struct Neighbor {
        int j;
        bool out;      // edge (i, j) exists
        bool in;       // edge (j, i) exists
        double w_des_out;
        double w_des_in;
    };

    double row_diff(const Eigen::Matrix3Xd& sample, int i) const;

    int n_ = 0;
    EdgeWeightMode mode_ = EdgeWeightMode::Distance;
    std::vector<std::vector<OutEdge>> out_;
    std::vector<std::vector<Neighbor>> nbr_;
};

/// Edge set derived from the plan, desired weights read off L_des. Throws
/// edge_set_mismatch_error when the support of L_des does not match the
/// plan's edge set.
double formation_cost(const Eigen::Matrix3Xd& sample, const LaplacianMatrix& L_des,
                      const SparseGraphPlan& plan,
                      EdgeWeightMode mode = EdgeWeightMode::Distance);
Eigen::Matrix3Xd formation_gradient(const Eigen::Matrix3Xd& sample,
                                    const LaplacianMatrix& L_des,
                                    const SparseGraphPlan& plan,
                                    EdgeWeightMode mode = EdgeWeightMode::Distance);

/// Everything the optimizer needs to score a trajectory.
struct PlanningProblem {
    FormationCostModel formation;
    ObstacleMap map;
    double velocity_limit = 2.0;   // m/s
    double drone_clearance = 0.3;  // m
};

/// Total cost and its gradient over all free waypoints. Fixed columns of
/// the trajectory get a zero gradient. The flight-time term is constant for
/// fixed sample count and step, so it contributes no gradient.
std::pair<double, Eigen::MatrixXd> total_cost_and_gradient(
    const SwarmTrajectory& traj, const PlanningProblem& problem,
    const CostWeights& weights);

double total_cost(const SwarmTrajectory& traj, const PlanningProblem& problem,
                  const CostWeights& weights);

struct PlanConfig {
    int max_iterations = 5000;
    double grad_tolerance = 1e-6;  // infinity norm
    int waypoints = 30;
    double dt = 0.5;
    double initial_step = 1.0;
};

struct PlanStats {
    int iterations = 0;
    double wall_time_s = 0.0;
    double initial_cost = 0.0;
    double final_cost = 0.0;
    double grad_inf_norm = 0.0;
    bool converged = false;
    bool warning = false;  // hit iteration cap or stalled line search
};

/// Gradient descent with backtracking line search from a straight-line
/// initial guess (start to goal when a goal is given, otherwise constant at
/// the start). Accepted iterations never increase the cost. On
/// non-convergence the best trajectory so far is returned with
/// stats.warning set.
SwarmTrajectory plan(const Eigen::Matrix3Xd& start,
                     const std::optional<Eigen::Matrix3Xd>& goal,
                     const PlanningProblem& problem, const CostWeights& weights,
                     const PlanConfig& cfg, PlanStats* stats = nullptr);

}  // namespace sfplan
