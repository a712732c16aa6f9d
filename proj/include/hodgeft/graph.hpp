#pragma once

#include <string>
#include <vector>

#include "hodgeft/algebra.hpp"
#include "hodgeft/potential.hpp"
#include "hodgeft/prng.hpp"

namespace hodgeft {

struct GraphLeaf {
    int vertex = 0;
    int label = 0; // 0-based; leaves stored in label order
    int d = 0;     // psi power
};

/// Stable decorated graph: per-vertex empty-loop counts g(v), heavy edges
/// (self-pairs allowed), labeled psi-decorated leaves. Genus is
/// sum g(v) + b1 of the heavy subgraph; every vertex has
/// 2 g(v) + m(v) + l(v) >= 3.
struct DecoratedGraph {
    std::vector<int> loops;
    std::vector<std::pair<int, int>> edges; // u <= v, sorted
    std::vector<GraphLeaf> leaves;

    int n_vertices() const { return static_cast<int>(loops.size()); }
    int b1_heavy() const { return static_cast<int>(edges.size()) - n_vertices() + 1; }
    int genus() const;
    int heavy_degree(int v) const; // self-pairs count twice
    std::string encode() const;
};

/// Complete duplicate-free list (up to isomorphism of labeled-leaf graphs)
/// of stable genus-g graphs with leaves decorated by the given psi powers
/// and exactly 3g-3+n-sum(d) heavy edges; deterministic order. Empty when
/// sum(d) exceeds 3g-3+n. Throws std::domain_error when 2g-2+n <= 0.
std::vector<DecoratedGraph> enumerate_graphs(int g, const std::vector<int>& psi_degrees);

/// Order of the automorphism group of the labeled graph (empty-loop flips
/// and permutations included).
long aut_order(const DecoratedGraph& gr);

/// A = prod_v 2^g(v) g(v)! / |aut|.
Rat a_coefficient(const DecoratedGraph& gr);

/// P = prod_v <tau_{d...} tau_0^{m(v)}>_{g(v)}.
Rat p_coefficient(const DecoratedGraph& gr);

/// Cut-edge marks: ids of heavy edges in the complement of a spanning tree
/// (all empty loops and heavy self-pairs are implicitly marked as well).
std::vector<int> default_marks(const DecoratedGraph& gr);
std::vector<int> random_marks(const DecoratedGraph& gr, Prng& rng);
bool valid_marks(const DecoratedGraph& gr, const std::vector<int>& marks);

/// Full tensor contraction T: vertex forms int(a_1...a_k), heavy edges
/// carrying [heavy_op] (default G-G+), empty loops carrying [Id], with the
/// sign operator J inserted on all cut edges. Leaf vectors must be
/// parity-homogeneous. Throws std::logic_error if an odd-parity contraction
/// comes out nonzero (sign-bug detector).
Rat t_contraction(const DecoratedGraph& gr, const HodgeAlgebra& alg,
                  const std::vector<Vec>& leaf_vectors, const std::vector<int>* marks = nullptr,
                  const Mat* heavy_op = nullptr);

/// Full graph-sum potential over the H0 slice of the basis.
LogPotential graph_sum_potential(const HodgeAlgebra& alg, const TruncationWindow& w, int jobs = 1);

/// The two smallest graph identities behind (G- z)^ Z = 0: the genus-0
/// four-leaf sum (7 graphs) and the genus-1 one-leaf sum (2 graphs). They
/// vanish identically exactly when the 7-term relation resp. the 1/12
/// supertrace identity holds.
Rat seven_graph_sum(const HodgeAlgebra& alg, int a, int b, int c, int d);
Rat two_graph_sum(const HodgeAlgebra& alg, int v);

} // namespace hodgeft
