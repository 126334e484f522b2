#include "sfplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace sfplan {

SwarmTrajectory SwarmTrajectory::zeros(int drones, int samples, double dt) {
    SwarmTrajectory traj;
    traj.drones = drones;
    traj.samples = samples;
    traj.dt = dt;
    traj.data = Eigen::MatrixXd::Zero(3 * drones, samples);
    return traj;
}

Eigen::Matrix3Xd SwarmTrajectory::sample(int k) const {
    Eigen::Matrix3Xd out(3, drones);
    for (int i = 0; i < drones; ++i) out.col(i) = position(i, k);
    return out;
}

FormationCostModel::FormationCostModel(const FormationGraph& desired)
    : FormationCostModel(desired.size(), desired.directed_edges(),
                         desired.adjacency(), desired.weight_mode()) {}

FormationCostModel::FormationCostModel(int n,
                                       const std::vector<DirectedEdge>& edges,
                                       const Eigen::MatrixXd& desired_weights,
                                       EdgeWeightMode mode)
    : n_(n), mode_(mode) {
    out_.resize(n_);
    std::vector<std::vector<int>> in(n_);
    for (const auto& e : edges) {
        out_[e.from].push_back({e.to, desired_weights(e.from, e.to)});
        in[e.to].push_back(e.from);
    }
    for (auto& lst : out_) {
        std::sort(lst.begin(), lst.end(),
                  [](const OutEdge& a, const OutEdge& b) { return a.to < b.to; });
    }
    nbr_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        std::vector<int> joined;
        for (const auto& e : out_[i]) joined.push_back(e.to);
        joined.insert(joined.end(), in[i].begin(), in[i].end());
        std::sort(joined.begin(), joined.end());
        joined.erase(std::unique(joined.begin(), joined.end()), joined.end());
        for (int j : joined) {
            Neighbor nb;
            nb.j = j;
            auto it = std::lower_bound(
                out_[i].begin(), out_[i].end(), j,
                [](const OutEdge& e, int v) { return e.to < v; });
            nb.out = it != out_[i].end() && it->to == j;
            nb.w_des_out = nb.out ? it->w_des : 0.0;
            auto jt = std::lower_bound(
                out_[j].begin(), out_[j].end(), i,
                [](const OutEdge& e, int v) { return e.to < v; });
            nb.in = jt != out_[j].end() && jt->to == i;
            nb.w_des_in = nb.in ? jt->w_des : 0.0;
            nbr_[i].push_back(nb);
        }
    }
}

double FormationCostModel::row_diff(const Eigen::Matrix3Xd& sample, int i) const {
    double diff = 0.0;
    for (const auto& e : out_[i]) {
        diff += edge_weight(sample.col(i), sample.col(e.to), mode_) - e.w_des;
    }
    return diff;
}

double FormationCostModel::cost(const Eigen::Matrix3Xd& sample) const {
    double total = 0.0;
    for (int i = 0; i < n_; ++i) {
        double row = 0.0;
        for (const auto& e : out_[i]) {
            const double dw =
                edge_weight(sample.col(i), sample.col(e.to), mode_) - e.w_des;
            row += dw;
            total += dw * dw;  // off-diagonal entry (i, e.to)
        }
        total += row * row;  // diagonal entry (i, i)
    }
    return total;
}

Eigen::Vector3d FormationCostModel::drone_gradient(const Eigen::Matrix3Xd& sample,
                                                   int i) const {
    // d F / d w for the edge (u, v) is 2 * (delta_uu - delta_uv), with
    // delta_uu the row-sum difference and delta_uv = w_des - w. Both the
    // out-edge (i, j) and the in-edge (j, i) weights depend on p_i.
    const double row_i = row_diff(sample, i);
    Eigen::Vector3d grad = Eigen::Vector3d::Zero();
    for (const auto& nb : nbr_[i]) {
        const Eigen::Vector3d delta = sample.col(i) - sample.col(nb.j);
        const double dist = delta.norm();
        if (dist < kCoincidenceEps) {
            throw singular_gradient_error(
                "coincident adjacent drones; formation gradient undefined");
        }
        const double w = mode_ == EdgeWeightMode::Distance ? dist : dist * dist;
        double coeff = 0.0;
        if (nb.out) coeff += 2.0 * (row_i + (w - nb.w_des_out));
        if (nb.in) coeff += 2.0 * (row_diff(sample, nb.j) + (w - nb.w_des_in));
        if (mode_ == EdgeWeightMode::Distance) {
            grad += (coeff / dist) * delta;
        } else {
            grad += (2.0 * coeff) * delta;
        }
    }
    return grad;
}

Eigen::Matrix3Xd FormationCostModel::gradient(const Eigen::Matrix3Xd& sample) const {
    Eigen::Matrix3Xd grad(3, n_);
    for (int i = 0; i < n_; ++i) grad.col(i) = drone_gradient(sample, i);
    return grad;
}

namespace {

std::vector<DirectedEdge> plan_edges(const SparseGraphPlan& plan) {
    std::vector<DirectedEdge> edges;
    for (int b1 : plan.base.indices) {
        for (int b2 : plan.base.indices) {
            if (b1 != b2) edges.push_back({b1, b2});
        }
    }
    for (int r : plan.remaining) {
        for (int b : plan.base.indices) edges.push_back({r, b});
    }
    return edges;
}

FormationCostModel model_from_plan(int n, const LaplacianMatrix& L_des,
                                   const SparseGraphPlan& plan,
                                   EdgeWeightMode mode) {
    if (L_des.size() != n) {
        throw edge_set_mismatch_error("Laplacian size does not match the sample");
    }
    const auto edges = plan_edges(plan);
    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd support = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : edges) {
        weights(e.from, e.to) = -L_des.entries(e.from, e.to);
        support(e.from, e.to) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (L_des.entries(i, j) != 0.0 && support(i, j) == 0.0) {
                throw edge_set_mismatch_error(
                    "desired Laplacian has support outside the plan's edge set");
            }
        }
    }
    return FormationCostModel(n, edges, weights, mode);
}

}  // namespace

double formation_cost(const Eigen::Matrix3Xd& sample, const LaplacianMatrix& L_des,
                      const SparseGraphPlan& plan, EdgeWeightMode mode) {
    const int n = static_cast<int>(sample.cols());
    return model_from_plan(n, L_des, plan, mode).cost(sample);
}

Eigen::Matrix3Xd formation_gradient(const Eigen::Matrix3Xd& sample,
                                    const LaplacianMatrix& L_des,
                                    const SparseGraphPlan& plan,
                                    EdgeWeightMode mode) {
    const int n = static_cast<int>(sample.cols());
    return model_from_plan(n, L_des, plan, mode).gradient(sample);
}

namespace {

double hinge(double x) { return x > 0.0 ? x : 0.0; }

struct TermAccumulator {
    const SwarmTrajectory& traj;
    const PlanningProblem& prob;
    const CostWeights& w;
    Eigen::MatrixXd* grad;  // null for cost-only evaluation

    void add(int drone, int k, const Eigen::Vector3d& g) const {
        if (grad) grad->block<3, 1>(3 * drone, k) += g;
    }

    double formation() const {
        if (w.formation == 0.0 || prob.formation.size() == 0) return 0.0;
        double cost = 0.0;
        for (int k = 0; k < traj.samples; ++k) {
            const Eigen::Matrix3Xd s = traj.sample(k);
            cost += prob.formation.cost(s);
            if (grad) {
                const Eigen::Matrix3Xd g = prob.formation.gradient(s);
                for (int i = 0; i < traj.drones; ++i) {
                    add(i, k, w.formation * g.col(i));
                }
            }
        }
        return w.formation * cost;
    }

    double smoothness() const {
        if (w.smoothness == 0.0) return 0.0;
        double cost = 0.0;
        for (int i = 0; i < traj.drones; ++i) {
            for (int k = 1; k + 1 < traj.samples; ++k) {
                const Eigen::Vector3d acc = traj.position(i, k + 1) -
                                            2.0 * traj.position(i, k) +
                                            traj.position(i, k - 1);
                cost += acc.squaredNorm();
                if (grad) {
                    add(i, k + 1, w.smoothness * 2.0 * acc);
                    add(i, k, w.smoothness * (-4.0) * acc);
                    add(i, k - 1, w.smoothness * 2.0 * acc);
                }
            }
        }
        return w.smoothness * cost;
    }

    double collision() const {
        if (w.collision == 0.0) return 0.0;
        double cost = 0.0;
        for (int k = 0; k < traj.samples; ++k) {
            for (int i = 0; i < traj.drones; ++i) {
                const Eigen::Vector3d p = traj.position(i, k);
                for (const auto& cyl : prob.map.cylinders) {
                    const Eigen::Vector2d d(p.x() - cyl.cx, p.y() - cyl.cy);
                    const double dist = d.norm();
                    const double pen =
                        hinge(cyl.radius + prob.map.inflation - dist);
                    if (pen > 0.0) {
                        cost += pen * pen;
                        if (grad && dist > 1e-12) {
                            const Eigen::Vector3d g(-2.0 * pen * d.x() / dist,
                                                    -2.0 * pen * d.y() / dist, 0.0);
                            add(i, k, w.collision * g);
                        }
                    }
                }
                for (int j = i + 1; j < traj.drones; ++j) {
                    const Eigen::Vector3d d = p - traj.position(j, k);
                    const double dist = d.norm();
                    const double pen = hinge(prob.drone_clearance - dist);
                    if (pen > 0.0 && dist > 1e-12) {
                        cost += pen * pen;
                        if (grad) {
                            const Eigen::Vector3d g = (-2.0 * pen / dist) * d;
                            add(i, k, w.collision * g);
                            add(j, k, w.collision * (-g));
                        }
                    }
                }
            }
        }
        return w.collision * cost;
    }

    double feasibility() const {
        if (w.feasibility == 0.0) return 0.0;
        double cost = 0.0;
        for (int i = 0; i < traj.drones; ++i) {
            for (int k = 0; k + 1 < traj.samples; ++k) {
                const Eigen::Vector3d d = traj.position(i, k + 1) - traj.position(i, k);
                const double dist = d.norm();
                const double speed = dist / traj.dt;
                const double over = hinge(speed - prob.velocity_limit);
                if (over > 0.0 && dist > 1e-12) {
                    cost += over * over;
                    if (grad) {
                        const Eigen::Vector3d g = (2.0 * over / (traj.dt * dist)) * d;
                        add(i, k + 1, w.feasibility * g);
                        add(i, k, w.feasibility * (-g));
                    }
                }
            }
        }
        return w.feasibility * cost;
    }

    double run() const {
        double cost = formation() + smoothness() + collision() + feasibility();
        cost += w.time * traj.duration();
        if (grad) {
            grad->col(0).setZero();
            if (traj.goal_fixed) grad->col(traj.samples - 1).setZero();
        }
        return cost;
    }
};

}  // namespace

std::pair<double, Eigen::MatrixXd> total_cost_and_gradient(
    const SwarmTrajectory& traj, const PlanningProblem& problem,
    const CostWeights& weights) {
    if (problem.formation.size() != 0 && problem.formation.size() != traj.drones) {
        throw invalid_input_error("trajectory size does not match the formation model");
    }
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(traj.data.rows(), traj.data.cols());
    TermAccumulator acc{traj, problem, weights, &grad};
    const double cost = acc.run();
    return {cost, std::move(grad)};
}

double total_cost(const SwarmTrajectory& traj, const PlanningProblem& problem,
                  const CostWeights& weights) {
    TermAccumulator acc{traj, problem, weights, nullptr};
    return acc.run();
}

SwarmTrajectory plan(const Eigen::Matrix3Xd& start,
                     const std::optional<Eigen::Matrix3Xd>& goal,
                     const PlanningProblem& problem, const CostWeights& weights,
                     const PlanConfig& cfg, PlanStats* stats) {
    const int n = static_cast<int>(start.cols());
    if (goal && goal->cols() != n) {
        throw invalid_input_error("start and goal drone counts differ");
    }
    if (cfg.waypoints < 2) throw invalid_input_error("need at least 2 waypoints");

    SwarmTrajectory traj = SwarmTrajectory::zeros(n, cfg.waypoints, cfg.dt);
    traj.goal_fixed = goal.has_value();
    for (int k = 0; k < cfg.waypoints; ++k) {
        const double a = static_cast<double>(k) / (cfg.waypoints - 1);
        for (int i = 0; i < n; ++i) {
            const Eigen::Vector3d p =
                goal ? ((1.0 - a) * start.col(i) + a * goal->col(i)).eval()
                     : start.col(i).eval();
            traj.set_position(i, k, p);
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    PlanStats st;
    auto [cost, grad] = total_cost_and_gradient(traj, problem, weights);
    st.initial_cost = cost;
    double step = cfg.initial_step;

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        st.grad_inf_norm = grad.lpNorm<Eigen::Infinity>();
        if (st.grad_inf_norm < cfg.grad_tolerance) {
            st.converged = true;
            break;
        }
        const double gnorm2 = grad.squaredNorm();
        double alpha = step;
        bool accepted = false;
        SwarmTrajectory trial = traj;
        double trial_cost = cost;
        while (alpha > 1e-16) {
            trial.data = traj.data - alpha * grad;
            trial_cost = total_cost(trial, problem, weights);
            if (trial_cost <= cost - 1e-4 * alpha * gnorm2) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            st.warning = true;  // stalled line search
            break;
        }
        traj.data = trial.data;
        cost = trial_cost;
        grad = total_cost_and_gradient(traj, problem, weights).second;
        step = std::min(alpha * 2.0, 1e6);
        st.iterations = iter + 1;
    }
    if (!st.converged && st.iterations >= cfg.max_iterations) st.warning = true;

    st.final_cost = cost;
    st.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (stats) *stats = st;
    return traj;
}

}  // namespace sfplan
