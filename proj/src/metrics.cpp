#include "sfplan/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace sfplan {

bool metric_is_minimized(MetricKind metric) {
    return metric == MetricKind::MinCond || metric == MetricKind::SpectralGap;
}

std::string metric_name(MetricKind metric) {
    switch (metric) {
        case MetricKind::MinCond: return "min-cond";
        case MetricKind::MaxLogDet: return "max-logdet";
        case MetricKind::MaxMinEigenValue: return "max-min-eig";
        case MetricKind::MaxTrace: return "max-trace";
        case MetricKind::SpectralGap: return "p2-spectral";
    }
    return "max-trace";
}

MetricKind parse_metric(const std::string& name) {
    if (name == "min-cond") return MetricKind::MinCond;
    if (name == "max-logdet") return MetricKind::MaxLogDet;
    if (name == "max-min-eig") return MetricKind::MaxMinEigenValue;
    if (name == "max-trace") return MetricKind::MaxTrace;
    if (name == "p2-spectral") return MetricKind::SpectralGap;
    throw invalid_input_error("unknown metric name: " + name);
}

namespace {

void validate_selection(int n, const std::vector<int>& H) {
    std::vector<bool> seen(n, false);
    for (int idx : H) {
        if (idx < 0 || idx >= n) throw invalid_input_error("selection index out of range");
        if (seen[idx]) throw invalid_input_error("selection indices must be distinct");
        seen[idx] = true;
    }
}

Eigen::MatrixXd principal_submatrix(const Eigen::MatrixXd& L, const std::vector<int>& H) {
    const int k = static_cast<int>(H.size());
    Eigen::MatrixXd sub(k, k);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) sub(r, c) = L(H[r], H[c]);
    }
    return sub;
}

}  // namespace

LaplacianMatrix column_selected_matrix(const LaplacianMatrix& L,
                                       const std::vector<int>& H) {
    const int n = L.size();
    validate_selection(n, H);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int idx : H) out.col(idx) = L.entries.col(idx);
    return LaplacianMatrix{std::move(out), LaplacianMode::ColumnSelected};
}

double p2_objective(const LaplacianMatrix& L, const std::vector<int>& H) {
    const LaplacianMatrix selected = column_selected_matrix(L, H);
    const Eigen::MatrixXd residual = L.entries - selected.entries;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

double score(const LaplacianMatrix& L, const std::vector<int>& H, MetricKind metric) {
    validate_selection(L.size(), H);
    constexpr double inf = std::numeric_limits<double>::infinity();

    switch (metric) {
        case MetricKind::MaxTrace: {
            double trace = 0.0;
            for (int idx : H) trace += L.entries(idx, idx);
            return trace;
        }
        case MetricKind::SpectralGap:
            return p2_objective(L, H);
        default:
            break;
    }

    const Eigen::MatrixXd sub = principal_submatrix(L.entries, H);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sub, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = eig.eigenvalues();  // ascending
    const double lambda_min = ev(0);
    const double lambda_max = ev(ev.size() - 1);
    const double singular_tol = 1e-12 * std::max(1.0, std::abs(lambda_max));

    switch (metric) {
        case MetricKind::MaxMinEigenValue:
            return lambda_min;
        case MetricKind::MaxLogDet: {
            if (lambda_min <= singular_tol) return -inf;
            double logdet = 0.0;
            for (int i = 0; i < ev.size(); ++i) logdet += std::log(ev(i));
            return logdet;
        }
        case MetricKind::MinCond: {
            if (lambda_min <= singular_tol) return inf;
            return lambda_max / lambda_min;
        }
        default:
            throw invalid_input_error("unhandled metric kind");
    }
}

}  // namespace sfplan
