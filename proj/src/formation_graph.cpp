#include "sfplan/formation_graph.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace sfplan {

FormationGraph::FormationGraph(PositionSet positions,
                               const std::vector<DirectedEdge>& edges,
                               EdgeWeightMode mode)
    : positions_(std::move(positions)), mode_(mode) {
    const int n = positions_.size();
    if (!positions_.all_finite()) {
        throw invalid_input_error("formation graph requires finite positions");
    }
    out_.assign(n, {});
    nbr_.assign(n, {});
    adjacency_ = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : edges) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
            throw invalid_input_error("edge endpoint out of range");
        }
        if (e.from == e.to) {
            throw invalid_input_error("self loops are not allowed");
        }
        if (adjacency_(e.from, e.to) != 0.0 ||
            std::binary_search(out_[e.from].begin(), out_[e.from].end(), e.to)) {
            continue;  // duplicate edge
        }
        out_[e.from].push_back(e.to);
        adjacency_(e.from, e.to) =
            edge_weight(positions_.at(e.from), positions_.at(e.to), mode_);
        ++edge_count_;
    }
    for (auto& lst : out_) std::sort(lst.begin(), lst.end());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && (!out_[i].empty() || !out_[j].empty())) {
                if (std::binary_search(out_[i].begin(), out_[i].end(), j) ||
                    std::binary_search(out_[j].begin(), out_[j].end(), i)) {
                    nbr_[i].push_back(j);
                }
            }
        }
    }
    degree_ = adjacency_.rowwise().sum().asDiagonal();
    laplacian_ = degree_ - adjacency_;
}

bool FormationGraph::has_edge(int from, int to) const {
    return std::binary_search(out_[from].begin(), out_[from].end(), to);
}

std::vector<DirectedEdge> FormationGraph::directed_edges() const {
    std::vector<DirectedEdge> edges;
    edges.reserve(edge_count_);
    for (int i = 0; i < size(); ++i) {
        for (int j : out_[i]) edges.push_back({i, j});
    }
    return edges;
}

std::vector<DirectedEdge> FormationGraph::undirected_edges() const {
    std::vector<DirectedEdge> edges;
    for (int i = 0; i < size(); ++i) {
        for (int j : out_[i]) {
            if (i < j || !has_edge(j, i)) {
                edges.push_back({std::min(i, j), std::max(i, j)});
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const auto& a, const auto& b) {
                                return a.from == b.from && a.to == b.to;
                            }),
                edges.end());
    return edges;
}

FormationGraph build_complete_graph(const PositionSet& positions,
                                    EdgeWeightMode mode) {
    const int n = positions.size();
    if (n < 2) {
        throw invalid_input_error("complete graph needs at least 2 vertices");
    }
    std::vector<DirectedEdge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) edges.push_back({i, j});
        }
    }
    return FormationGraph(positions, edges, mode);
}

LaplacianMatrix laplacian(const FormationGraph& graph) {
    return LaplacianMatrix{graph.laplacian_matrix(), LaplacianMode::Complete};
}

bool coplanarity_check(const PositionSet& points, double tol) {
    const int n = points.size();
    if (n < 4) {
        throw invalid_input_error("coplanarity check needs at least 4 points");
    }
    Eigen::Matrix3Xd centered = points.points.colwise() - points.points.rowwise().mean();
    Eigen::JacobiSVD<Eigen::Matrix3Xd> svd(centered);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) return true;  // all points coincident
    return sv(2) <= tol * sv(0);
}

bool coplanarity_check(const PositionSet& points, const std::vector<int>& subset,
                       double tol) {
    Eigen::Matrix3Xd sub(3, subset.size());
    for (std::size_t c = 0; c < subset.size(); ++c) {
        sub.col(static_cast<int>(c)) = points.at(subset[c]);
    }
    return coplanarity_check(PositionSet{std::move(sub)}, tol);
}

int rigidity_rank(const FormationGraph& graph) {
    const auto edges = graph.undirected_edges();
    const int n = graph.size();
    Eigen::MatrixXd rig = Eigen::MatrixXd::Zero(static_cast<int>(edges.size()), 3 * n);
    for (std::size_t r = 0; r < edges.size(); ++r) {
        const auto [i, j] = edges[r];
        const Eigen::Vector3d d = graph.positions().at(i) - graph.positions().at(j);
        rig.block<1, 3>(static_cast<int>(r), 3 * i) = d.transpose();
        rig.block<1, 3>(static_cast<int>(r), 3 * j) = -d.transpose();
    }
    if (rig.rows() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rig);
    const auto& sv = svd.singularValues();
    const double thresh = 1e-8 * sv(0);
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k) {
        if (sv(k) > thresh) ++rank;
    }
    return rank;
}

}  // namespace sfplan
