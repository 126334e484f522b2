#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sfplan/errors.hpp"

namespace sfplan {

/// Ordered set of N drone positions, one 3D point (meters) per column.
struct PositionSet {
    Eigen::Matrix3Xd points;  // 3 x N

    PositionSet() = default;
    explicit PositionSet(Eigen::Matrix3Xd pts) : points(std::move(pts)) {}

    int size() const { return static_cast<int>(points.cols()); }
    Eigen::Vector3d at(int i) const { return points.col(i); }
    bool all_finite() const { return points.allFinite(); }
};

/// Edge weight convention. Distance is the plain Euclidean distance; the
/// squared variant is kept selectable for planner lineages that use it.
enum class EdgeWeightMode { Distance, SquaredDistance };

inline double edge_weight(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                          EdgeWeightMode mode) {
    const double d = (a - b).norm();
    return mode == EdgeWeightMode::Distance ? d : d * d;
}

struct DirectedEdge {
    int from = 0;
    int to = 0;
};

/// Directed weighted formation graph over drone positions. Immutable after
/// construction; adjacency/degree/Laplacian matrices are built eagerly so
/// instances can be shared across threads without synchronization.
class FormationGraph {
  public:
    FormationGraph() = default;

    /// `edges` are directed (from, to) pairs, 0-based, no self loops.
    FormationGraph(PositionSet positions, const std::vector<DirectedEdge>& edges,
                   EdgeWeightMode mode = EdgeWeightMode::Distance);

    int size() const { return static_cast<int>(positions_.size()); }
    const PositionSet& positions() const { return positions_; }
    EdgeWeightMode weight_mode() const { return mode_; }

    bool has_edge(int from, int to) const;
    double weight(int from, int to) const { return adjacency_(from, to); }

    /// Out-neighbors of vertex i (targets of directed edges from i), sorted.
    const std::vector<int>& out_neighbors(int i) const { return out_[i]; }
    /// Union of out- and in-neighbors of vertex i, sorted.
    const std::vector<int>& neighbors(int i) const { return nbr_[i]; }

    std::size_t directed_edge_count() const { return edge_count_; }
    std::size_t undirected_edge_count() const { return undirected_edges().size(); }
    /// Deduplicated undirected skeleton, each pair with from < to.
    std::vector<DirectedEdge> undirected_edges() const;
    std::vector<DirectedEdge> directed_edges() const;

    const Eigen::MatrixXd& adjacency() const { return adjacency_; }
    const Eigen::MatrixXd& degree() const { return degree_; }
    const Eigen::MatrixXd& laplacian_matrix() const { return laplacian_; }

  private:
    PositionSet positions_;
    EdgeWeightMode mode_ = EdgeWeightMode::Distance;
    std::vector<std::vector<int>> out_;   // out-adjacency, sorted
    std::vector<std::vector<int>> nbr_;   // union adjacency, sorted
    std::size_t edge_count_ = 0;
    Eigen::MatrixXd adjacency_;  // A(i,j) = w_ij if edge (i,j), else 0
    Eigen::MatrixXd degree_;     // diagonal of row sums of A
    Eigen::MatrixXd laplacian_;  // L = D - A
};

enum class LaplacianMode { Complete, ColumnSelected };

/// N x N Laplacian with a tag recording how it was constructed: entrywise
/// from a graph (Complete) or by zeroing unselected columns (ColumnSelected).
struct LaplacianMatrix {
    Eigen::MatrixXd entries;
    LaplacianMode mode = LaplacianMode::Complete;

    int size() const { return static_cast<int>(entries.rows()); }
};

/// Every ordered pair (i, j), i != j, becomes an edge weighted by the
/// pairwise distance. Throws invalid_input_error for fewer than 2 vertices
/// or non-finite coordinates.
FormationGraph build_complete_graph(const PositionSet& positions,
                                    EdgeWeightMode mode = EdgeWeightMode::Distance);

/// L = D - A of the graph.
LaplacianMatrix laplacian(const FormationGraph& graph);

inline constexpr double kCoplanarityTol = 1e-6;

/// True iff the points lie within tolerance of a common plane: smallest
/// singular value of the centered coordinate matrix <= tol * largest.
/// Requires at least 4 points; 3 points are always coplanar.
bool coplanarity_check(const PositionSet& points, double tol = kCoplanarityTol);
bool coplanarity_check(const PositionSet& points, const std::vector<int>& subset,
                       double tol = kCoplanarityTol);

/// Rank of the standard rigidity matrix (one row per undirected edge,
/// +-(p_i - p_j) in the endpoint column blocks). An infinitesimally rigid
/// 3D framework on generic positions has rank 3N - 6.
int rigidity_rank(const FormationGraph& graph);

inline int full_rigidity_rank(int n) { return 3 * n - 6; }

}  // namespace sfplan
