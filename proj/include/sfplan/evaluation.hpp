#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfplan/planner.hpp"

namespace sfplan {

/// p -> s * R * p + t with R a proper rotation and s > 0.
struct SimilarityTransform {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
    double scale = 1.0;

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
        return scale * (rotation * p) + translation;
    }
};

struct AlignmentResult {
    SimilarityTransform transform;  // maps actual onto desired
    double residual = 0.0;          // sum of per-drone norms at the transform
};

/// Optimal similarity registration of `actual` onto `desired`. The
/// closed-form centered-covariance SVD solve (with reflection correction)
/// minimizes the sum of squared norms; an IRLS refinement pass then walks
/// the transform toward the sum-of-norms optimum, which is the residual
/// reported. Throws degenerate_alignment_error for collinear desired sets.
AlignmentResult align_similarity(const Eigen::Matrix3Xd& actual,
                                 const Eigen::Matrix3Xd& desired,
                                 int irls_iterations = 20);

inline constexpr double kConvergenceThreshold = 0.65;

struct ErrorReport {
    double e_bar_dist = 0.0;
    std::vector<double> e_dist_series;  // instantaneous error per sample
    double l_fma_max = 0.0;             // max pairwise distance in the formation
    double l_trj = 0.0;                 // centroid path length
    std::optional<double> converged_at; // seconds; unset if never converged
};

/// Aligned residual divided by the formation's maximum diagonal length.
double instantaneous_error(const Eigen::Matrix3Xd& sample,
                           const Eigen::Matrix3Xd& desired);

struct ErrorSeries {
    std::vector<double> e_dist;         // per-sample instantaneous errors
    std::optional<double> converged_at; // earliest time the error stays <= 0.65
};

/// Instantaneous error per sample; well-defined even for trajectories whose
/// centroid never moves (where the averaged error is not).
ErrorSeries instantaneous_error_series(const SwarmTrajectory& traj,
                                       const Eigen::Matrix3Xd& desired);

/// Normalized line integral of the aligned residual along the swarm
/// centroid path: sum_k residual(k) * dl_k / (L_fma_max * L_trj).
/// Throws undefined_value_error when the centroid path has zero length.
ErrorReport average_formation_error(const SwarmTrajectory& traj,
                                    const Eigen::Matrix3Xd& desired);

/// R_e = 1 - (e_sparse - e_complete) / e_complete; equals 1 when the sparse
/// error matches the complete-graph baseline.
double relative_error(double e_sparse, double e_complete);

/// B_c = t_cpu^alpha - kappa * e_dist^beta.
double tradeoff_score(double t_cpu, double e_dist, double alpha = 4.0,
                      double beta = 1.75, double kappa = 8e-6);

enum class BaselineKind { Random, Nearest, OursWithoutOpt, Complete };

std::string baseline_name(BaselineKind kind);
BaselineKind parse_baseline(const std::string& name);

/// Benchmark graph constructions. Random and nearest connect each drone to
/// k others (uniformly random / nearest by distance) and may well be
/// non-rigid; ours-wo-opt runs the base-set construction with a uniformly
/// random non-coplanar base.
FormationGraph baseline_graph(BaselineKind kind, const PositionSet& positions,
                              int k, std::uint64_t seed,
                              EdgeWeightMode mode = EdgeWeightMode::Distance);

}  // namespace sfplan
