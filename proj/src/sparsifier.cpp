#include "sfplan/sparsifier.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>

namespace sfplan {

int edges_per_drone(int n, double rate) {
    if (n < 4) {
        throw invalid_input_error("edges_per_drone needs at least 4 vertices");
    }
    if (!(rate > 0.0) || rate > 1.0) {
        throw invalid_input_error("connection rate must lie in (0, 1]");
    }
    const int k = static_cast<int>(std::ceil(rate * n - 1e-12));
    return std::clamp(k, 4, n);
}

namespace {

void validate_base(int n, const BaseSetSelection& base) {
    if (base.size() < 4) {
        throw invalid_input_error("base set must contain at least 4 vertices");
    }
    std::set<int> seen;
    for (int idx : base.indices) {
        if (idx < 0 || idx >= n) {
            throw invalid_input_error("base index out of range");
        }
        if (!seen.insert(idx).second) {
            throw invalid_input_error("base indices must be distinct");
        }
    }
}

}  // namespace

SparseGraphPlan make_sparse_plan(int n, BaseSetSelection base, double rate) {
    validate_base(n, base);
    std::sort(base.indices.begin(), base.indices.end());
    SparseGraphPlan plan;
    plan.connection_rate = rate;
    for (int v = 0; v < n; ++v) {
        if (!std::binary_search(base.indices.begin(), base.indices.end(), v)) {
            plan.remaining.push_back(v);
        }
    }
    plan.base = std::move(base);
    return plan;
}

FormationGraph build_sparse_graph(const PositionSet& positions,
                                  const BaseSetSelection& base,
                                  EdgeWeightMode mode) {
    const int n = positions.size();
    validate_base(n, base);
    if (coplanarity_check(positions, base.indices)) {
        throw invalid_input_error(
            "base set is coplanar; repair it before graph construction");
    }
    std::vector<int> sorted = base.indices;
    std::sort(sorted.begin(), sorted.end());

    std::vector<DirectedEdge> edges;
    for (int b1 : sorted) {
        for (int b2 : sorted) {
            if (b1 != b2) edges.push_back({b1, b2});
        }
    }
    for (int v = 0; v < n; ++v) {
        if (std::binary_search(sorted.begin(), sorted.end(), v)) continue;
        for (int b : sorted) edges.push_back({v, b});
    }
    return FormationGraph(positions, edges, mode);
}

BaseSetSelection repair_coplanar_base(const PositionSet& positions,
                                      const BaseSetSelection& base,
                                      double tol) {
    const int n = positions.size();
    validate_base(n, base);
    BaseSetSelection repaired = base;
    std::sort(repaired.indices.begin(), repaired.indices.end());

    while (coplanarity_check(positions, repaired.indices, tol)) {
        if (repaired.size() == n) {
            throw unrepairable_base_error("all vertices are coplanar");
        }
        // Best-fit plane of the current base: centroid plus the direction of
        // least variance of the centered coordinates.
        Eigen::Matrix3Xd sub(3, repaired.size());
        for (int c = 0; c < repaired.size(); ++c) {
            sub.col(c) = positions.at(repaired.indices[c]);
        }
        const Eigen::Vector3d centroid = sub.rowwise().mean();
        Eigen::JacobiSVD<Eigen::Matrix3Xd> svd(sub.colwise() - centroid,
                                               Eigen::ComputeFullU);
        const Eigen::Vector3d normal = svd.matrixU().col(2);

        int best = -1;
        double best_dist = -1.0;
        for (int v = 0; v < n; ++v) {
            if (std::binary_search(repaired.indices.begin(), repaired.indices.end(), v)) {
                continue;
            }
            const double dist = std::abs(normal.dot(positions.at(v) - centroid));
            if (dist > best_dist) {
                best_dist = dist;
                best = v;
            }
        }
        if (best < 0) {
            throw unrepairable_base_error("no candidate vertex left to add");
        }
        repaired.indices.insert(
            std::upper_bound(repaired.indices.begin(), repaired.indices.end(), best),
            best);
    }
    repaired.noncoplanar = true;
    return repaired;
}

}  // namespace sfplan
