#pragma once

#include <string>
#include <vector>

#include "sfplan/formation_graph.hpp"
#include "sfplan/sparsifier.hpp"

namespace sfplan {

/// Scoring metrics for base-set candidates. The four matrix-revealing
/// metrics rank the selected submatrix; SpectralGap is the spectral-norm
/// objective ||L - L_[H]||_2 itself.
enum class MetricKind { MinCond, MaxLogDet, MaxMinEigenValue, MaxTrace, SpectralGap };

/// MinCond and SpectralGap are minimized, the rest maximized.
bool metric_is_minimized(MetricKind metric);

/// Config-file names: min-cond, max-logdet, max-min-eig, max-trace, p2-spectral.
std::string metric_name(MetricKind metric);
MetricKind parse_metric(const std::string& name);

struct ScoredSelection {
    BaseSetSelection selection;
    MetricKind metric = MetricKind::MaxTrace;
    double value = 0.0;
};

/// N x N matrix equal to L on the columns in H and zero elsewhere.
LaplacianMatrix column_selected_matrix(const LaplacianMatrix& L,
                                       const std::vector<int>& H);

/// Spectral norm (largest singular value) of L - L_[H].
double p2_objective(const LaplacianMatrix& L, const std::vector<int>& H);

/// Metric value for selection H. MaxTrace and SpectralGap use the
/// column-selection form; the spectral metrics are evaluated on the k x k
/// principal submatrix L[H,H], which is positive definite for connected
/// graphs. A singular L[H,H] scores the worst-possible sentinel
/// (-inf for MaxLogDet, +inf for MinCond) instead of being rejected.
double score(const LaplacianMatrix& L, const std::vector<int>& H, MetricKind metric);

inline double score(const LaplacianMatrix& L, const BaseSetSelection& sel,
                    MetricKind metric) {
    return score(L, sel.indices, metric);
}

}  // namespace sfplan
