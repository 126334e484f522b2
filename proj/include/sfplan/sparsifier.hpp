#pragma once

#include <vector>

#include "sfplan/formation_graph.hpp"

namespace sfplan {

/// A candidate base set H^clm: ordered subset of vertex indices (0-based
/// internally) with its validity flags and metric score.
struct BaseSetSelection {
    std::vector<int> indices;  // distinct, sorted ascending
    bool noncoplanar = false;
    double score = 0.0;

    int size() const { return static_cast<int>(indices.size()); }
};

/// Base/remaining split plus the connection rate that produced it.
struct SparseGraphPlan {
    BaseSetSelection base;
    std::vector<int> remaining;
    double connection_rate = 1.0;
};

/// Per-drone edge count k = ceil(rate * N) clamped to [4, N]. rate = 1
/// reproduces the complete graph. N = 48, rate = 0.30 gives 15.
int edges_per_drone(int n, double rate);

/// Splits {0..N-1} into the given base and its complement.
SparseGraphPlan make_sparse_plan(int n, BaseSetSelection base, double rate);

/// Builds the sparse graph of the base-set construction: the base vertices
/// form a complete subgraph with edges both ways, every remaining vertex
/// gets directed edges to all base vertices, and remaining vertices are not
/// connected with each other. The undirected skeleton is globally rigid for
/// any non-coplanar base of size >= 4.
FormationGraph build_sparse_graph(const PositionSet& positions,
                                  const BaseSetSelection& base,
                                  EdgeWeightMode mode = EdgeWeightMode::Distance);

/// Grows a coplanar base by repeatedly adding the vertex farthest from the
/// base's best-fit plane until the coplanarity check passes. Deterministic.
/// Throws unrepairable_base_error when all N vertices are coplanar.
BaseSetSelection repair_coplanar_base(const PositionSet& positions,
                                      const BaseSetSelection& base,
                                      double tol = kCoplanarityTol);

}  // namespace sfplan
