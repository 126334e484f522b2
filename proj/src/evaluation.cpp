#include "sfplan/evaluation.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace sfplan {

namespace {

double sum_of_norms(const Eigen::Matrix3Xd& actual, const Eigen::Matrix3Xd& desired,
                    const SimilarityTransform& xf) {
    double total = 0.0;
    for (int i = 0; i < actual.cols(); ++i) {
        total += (desired.col(i) - xf.apply(actual.col(i))).norm();
    }
    return total;
}

// Weighted closed-form similarity registration (sum of squared norms).
SimilarityTransform weighted_umeyama(const Eigen::Matrix3Xd& actual,
                                     const Eigen::Matrix3Xd& desired,
                                     const Eigen::VectorXd& w) {
    const double wsum = w.sum();
    const Eigen::Vector3d a_bar = (actual * w) / wsum;
    const Eigen::Vector3d d_bar = (desired * w) / wsum;

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    double var_a = 0.0;
    for (int i = 0; i < actual.cols(); ++i) {
        const Eigen::Vector3d a = actual.col(i) - a_bar;
        const Eigen::Vector3d d = desired.col(i) - d_bar;
        cov += w(i) * d * a.transpose();
        var_a += w(i) * a.squaredNorm();
    }
    cov /= wsum;
    var_a /= wsum;

    SimilarityTransform xf;
    if (var_a <= 1e-24) {  // actual set collapsed to one point
        xf.translation = d_bar - a_bar;
        return xf;
    }

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Vector3d sign = Eigen::Vector3d::Ones();
    if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) {
        sign(2) = -1.0;  // reflection correction
    }
    xf.rotation = svd.matrixU() * sign.asDiagonal() * svd.matrixV().transpose();
    const double trace_ds = svd.singularValues().dot(sign);
    xf.scale = std::max(trace_ds / var_a, 1e-12);
    xf.translation = d_bar - xf.scale * (xf.rotation * a_bar);
    return xf;
}

}  // namespace

AlignmentResult align_similarity(const Eigen::Matrix3Xd& actual,
                                 const Eigen::Matrix3Xd& desired,
                                 int irls_iterations) {
    const int n = static_cast<int>(actual.cols());
    if (n != desired.cols()) {
        throw invalid_input_error("actual and desired drone counts differ");
    }
    if (n < 3) {
        throw degenerate_alignment_error("alignment needs at least 3 points");
    }
    Eigen::Matrix3Xd centered = desired.colwise() - desired.rowwise().mean();
    Eigen::JacobiSVD<Eigen::Matrix3Xd> svd(centered);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(1) <= 1e-9 * sv(0)) {
        throw degenerate_alignment_error("desired formation is collinear");
    }

    Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
    AlignmentResult best;
    best.transform = weighted_umeyama(actual, desired, w);
    best.residual = sum_of_norms(actual, desired, best.transform);

    const double eps = 1e-12 * std::max(1.0, sv(0));
    SimilarityTransform xf = best.transform;
    for (int it = 0; it < irls_iterations; ++it) {
        bool all_tiny = true;
        for (int i = 0; i < n; ++i) {
            const double r = (desired.col(i) - xf.apply(actual.col(i))).norm();
            w(i) = 1.0 / std::max(r, eps);
            if (r > eps) all_tiny = false;
        }
        if (all_tiny) break;  // exact registration already
        xf = weighted_umeyama(actual, desired, w);
        const double res = sum_of_norms(actual, desired, xf);
        if (res < best.residual) {
            best.transform = xf;
            best.residual = res;
        }
    }
    return best;
}

namespace {

double max_pairwise_distance(const Eigen::Matrix3Xd& pts) {
    double best = 0.0;
    for (int i = 0; i < pts.cols(); ++i) {
        for (int j = i + 1; j < pts.cols(); ++j) {
            best = std::max(best, (pts.col(i) - pts.col(j)).norm());
        }
    }
    return best;
}

}  // namespace

double instantaneous_error(const Eigen::Matrix3Xd& sample,
                           const Eigen::Matrix3Xd& desired) {
    const double l_max = max_pairwise_distance(desired);
    if (l_max <= 0.0) {
        throw degenerate_alignment_error("desired formation has zero extent");
    }
    return align_similarity(sample, desired).residual / l_max;
}

ErrorSeries instantaneous_error_series(const SwarmTrajectory& traj,
                                       const Eigen::Matrix3Xd& desired) {
    if (traj.samples < 1) throw invalid_input_error("empty trajectory");
    const double l_max = max_pairwise_distance(desired);
    if (l_max <= 0.0) {
        throw degenerate_alignment_error("desired formation has zero extent");
    }
    ErrorSeries series;
    series.e_dist.resize(traj.samples);
    for (int k = 0; k < traj.samples; ++k) {
        series.e_dist[k] = align_similarity(traj.sample(k), desired).residual / l_max;
    }
    // Earliest sample from which the error stays at or below the threshold.
    int first = traj.samples;
    for (int k = traj.samples - 1; k >= 0; --k) {
        if (series.e_dist[k] <= kConvergenceThreshold) {
            first = k;
        } else {
            break;
        }
    }
    if (first < traj.samples) series.converged_at = first * traj.dt;
    return series;
}

ErrorReport average_formation_error(const SwarmTrajectory& traj,
                                    const Eigen::Matrix3Xd& desired) {
    if (traj.samples < 2) {
        throw invalid_input_error("trajectory needs at least 2 samples");
    }
    ErrorReport report;
    report.l_fma_max = max_pairwise_distance(desired);
    if (report.l_fma_max <= 0.0) {
        throw degenerate_alignment_error("desired formation has zero extent");
    }

    ErrorSeries series = instantaneous_error_series(traj, desired);
    std::vector<Eigen::Vector3d> centroids(traj.samples);
    for (int k = 0; k < traj.samples; ++k) {
        centroids[k] = traj.sample(k).rowwise().mean();
    }
    double integral = 0.0;
    for (int k = 0; k + 1 < traj.samples; ++k) {
        const double dl = (centroids[k + 1] - centroids[k]).norm();
        report.l_trj += dl;
        integral += series.e_dist[k] * report.l_fma_max * dl;
    }
    if (report.l_trj <= 1e-12) {
        throw undefined_value_error("zero-length trajectory; average error undefined");
    }
    report.e_bar_dist = integral / (report.l_fma_max * report.l_trj);
    report.e_dist_series = std::move(series.e_dist);
    report.converged_at = series.converged_at;
    return report;
}

double relative_error(double e_sparse, double e_complete) {
    if (!(e_complete > 0.0)) {
        throw undefined_value_error("complete-graph error must be positive");
    }
    return 1.0 - (e_sparse - e_complete) / e_complete;
}

double tradeoff_score(double t_cpu, double e_dist, double alpha, double beta,
                      double kappa) {
    if (t_cpu < 0.0 || e_dist < 0.0) {
        throw invalid_input_error("tradeoff_score needs nonnegative inputs");
    }
    return std::pow(t_cpu, alpha) - kappa * std::pow(e_dist, beta);
}

std::string baseline_name(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::Random: return "random";
        case BaselineKind::Nearest: return "nearest";
        case BaselineKind::OursWithoutOpt: return "ours-wo-opt";
        case BaselineKind::Complete: return "complete";
    }
    return "complete";
}

BaselineKind parse_baseline(const std::string& name) {
    if (name == "random") return BaselineKind::Random;
    if (name == "nearest") return BaselineKind::Nearest;
    if (name == "ours-wo-opt") return BaselineKind::OursWithoutOpt;
    if (name == "complete") return BaselineKind::Complete;
    throw invalid_input_error("unknown baseline kind: " + name);
}

FormationGraph baseline_graph(BaselineKind kind, const PositionSet& positions,
                              int k, std::uint64_t seed, EdgeWeightMode mode) {
    const int n = positions.size();
    std::mt19937_64 rng(seed);

    switch (kind) {
        case BaselineKind::Complete:
            return build_complete_graph(positions, mode);

        case BaselineKind::Random: {
            if (k < 1 || k > n - 1) {
                throw invalid_input_error("random baseline needs 1 <= k <= N-1");
            }
            std::vector<DirectedEdge> edges;
            std::vector<int> others(n - 1);
            for (int i = 0; i < n; ++i) {
                int idx = 0;
                for (int j = 0; j < n; ++j) {
                    if (j != i) others[idx++] = j;
                }
                for (int t = 0; t < k; ++t) {
                    std::uniform_int_distribution<int> pick(t, n - 2);
                    std::swap(others[t], others[pick(rng)]);
                    edges.push_back({i, others[t]});
                }
            }
            return FormationGraph(positions, edges, mode);
        }

        case BaselineKind::Nearest: {
            if (k < 1 || k > n - 1) {
                throw invalid_input_error("nearest baseline needs 1 <= k <= N-1");
            }
            std::vector<DirectedEdge> edges;
            for (int i = 0; i < n; ++i) {
                std::vector<std::pair<double, int>> by_dist;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    by_dist.emplace_back(
                        (positions.at(i) - positions.at(j)).norm(), j);
                }
                std::sort(by_dist.begin(), by_dist.end());
                for (int t = 0; t < k; ++t) edges.push_back({i, by_dist[t].second});
            }
            return FormationGraph(positions, edges, mode);
        }

        case BaselineKind::OursWithoutOpt: {
            if (k < 4 || k > n) {
                throw invalid_input_error("base-set baseline needs 4 <= k <= N");
            }
            for (int attempt = 0; attempt < 1000; ++attempt) {
                BaseSetSelection base;
                std::vector<int> pool(n);
                std::iota(pool.begin(), pool.end(), 0);
                for (int t = 0; t < k; ++t) {
                    std::uniform_int_distribution<int> pick(t, n - 1);
                    std::swap(pool[t], pool[pick(rng)]);
                }
                base.indices.assign(pool.begin(), pool.begin() + k);
                std::sort(base.indices.begin(), base.indices.end());
                if (coplanarity_check(positions, base.indices)) continue;
                base.noncoplanar = true;
                return build_sparse_graph(positions, base, mode);
            }
            throw infeasible_selection_error(
                "could not sample a non-coplanar base set");
        }
    }
    throw invalid_input_error("unhandled baseline kind");
}

}  // namespace sfplan
