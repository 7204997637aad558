#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "core/fusion_ring.hpp"

namespace bnet {

// One step of a path: an edge source -> target labelled by a simple, with
// slot splitting multiplicity (repeated labels in X stack onto slots).
struct GraphEdge {
  int source = 0, target = 0, label = 0, slot = 0;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Fusion graph of a ring acting by a chosen object X (a multiset of
// simples, default one of each). Vertices are the simples; the adjacency
// count A[target][source] is the number of parallel edges.
struct FusionGraph {
  std::shared_ptr<const FusionRing> ring;
  std::vector<int> X;
  std::vector<std::vector<GraphEdge>> out;  // per source, (target,label,slot) order
  std::vector<std::vector<Int>> A;
  Num d_X;  // sum of dims over X, Markov normalizer
  Num D_X;  // sum of squared dims over X, canonical-state normalizer
};

FusionGraph build_fusion_graph(std::shared_ptr<const FusionRing> ring,
                               std::vector<int> X = {});

// Paths of a fixed length from the unit vertex, in depth-first
// lexicographic order; children of one path are contiguous.
struct PathLevel {
  std::vector<int> parent;     // index at the previous level
  std::vector<int> edge;       // index into out[source vertex]
  std::vector<int> vertex;     // range of the path
  std::vector<long long> child_off;  // first child at the next level
  long long size() const { return static_cast<long long>(vertex.size()); }
};

class PathAlgebra {
 public:
  PathAlgebra(FusionGraph g, int level_cap);
  const FusionGraph& graph() const { return g_; }
  const FusionRing& ring() const { return *g_.ring; }
  int cap() const { return cap_; }

  // Exact per-vertex dimension vector A^n e_unit; no enumeration involved.
  std::vector<Int> level_dims(int n) const;
  Int level_count(int n) const;

  const PathLevel& level(int n);     // enumerates lazily, resource-guarded
  long long child(int n, long long path, int edge_idx);

  int path_range(int n, long long idx);
  std::vector<int> path_labels(int n, long long idx);
  std::vector<GraphEdge> path_edges(int n, long long idx);
  Num path_weight(int n, long long idx);  // product of label dimensions
  std::string path_str(int n, long long idx);
  // Resolve a path given per-step (target,label,slot); validation errors
  // name the failing step.
  long long path_index(int n, const std::vector<GraphEdge>& steps);
  // Multiplicity-free pointed shortcut: labels determine the path.
  long long path_index_by_labels(int n, const std::vector<int>& labels);

 private:
  void check_level(int n) const;
  FusionGraph g_;
  int cap_;
  std::vector<PathLevel> levels_;
};

// Finite linear combination of matrix units E_{ket,bra} between paths of
// one level with a common range vertex.
struct PathPairOperator {
  int level = 0;
  std::map<std::pair<long long, long long>, Cplx> terms;

  bool is_zero() const { return terms.empty(); }
  void add_term(long long ket, long long bra, const Cplx& c);
  void prune();
};

PathPairOperator matrix_unit(PathAlgebra& alg, int n, long long ket, long long bra);
PathPairOperator identity_op(PathAlgebra& alg, int n);
PathPairOperator label_projector(PathAlgebra& alg, int n,
                                 const std::vector<int>& labels);
PathPairOperator multiply(PathAlgebra& alg, const PathPairOperator& x,
                          const PathPairOperator& y);
PathPairOperator adjoint(const PathPairOperator& x);
PathPairOperator add(const PathPairOperator& x, const PathPairOperator& y);
PathPairOperator scale(const Cplx& c, const PathPairOperator& x);
// Inclusion into the next level: E_{xi,eta} -> sum over extending edges.
PathPairOperator include(PathAlgebra& alg, const PathPairOperator& x);
// Categorical trace sum_xi coeff(xi,xi) d_{range}.
Cplx trace_cat(PathAlgebra& alg, const PathPairOperator& x);

// States. canonical_state is the faithful state with matrix-unit weights
// D_X^{-n} w(ket) d_range; the projector form recomputes it through label
// projectors and the categorical trace as an independent cross-check.
Cplx canonical_state(PathAlgebra& alg, const PathPairOperator& x);
Cplx canonical_state_projector_form(PathAlgebra& alg, const PathPairOperator& x);
Cplx markov_trace(PathAlgebra& alg, const PathPairOperator& x);
Cplx unit_state(PathAlgebra& alg, const PathPairOperator& x);
Cplx regular_q_state(PathAlgebra& alg, const PathPairOperator& x);  // pointed only

// Modular data of the canonical state. Imaginary time i*beta scales
// E_{ket,bra} by (w(bra)/w(ket))^beta and stays exact for integer beta on
// exact weights; real time rotates phases and promotes to float.
PathPairOperator modular_flow_imag(PathAlgebra& alg, const PathPairOperator& x,
                                   const Num& beta);
PathPairOperator modular_flow_real(PathAlgebra& alg, const PathPairOperator& x,
                                   const Num& t);
Real kms_defect(PathAlgebra& alg, const PathPairOperator& x,
                const PathPairOperator& y, const Num& beta);

struct SweepResult {
  Real max_defect;
  long long pairs = 0;
  // arg max, as matrix-unit index quadruples (ket1,bra1,ket2,bra2)
  std::array<long long, 4> worst{0, 0, 0, 0};
};
// Exhaustive over matrix-unit pairs with a nonzero product on either side;
// all other pairs have defect zero identically.
SweepResult kms_sweep(PathAlgebra& alg, int n, const Num& beta);
SweepResult traciality_sweep(PathAlgebra& alg, int n);

// Operator document I/O. Terms are {"ket": [[step,target,label,slot]...],
// "bra": [...], "re": ..., "im": ...}; scalars may be integers, "p/q", or
// decimal strings.
PathPairOperator op_from_json(PathAlgebra& alg, const std::string& text);
std::string op_to_json(PathAlgebra& alg, const PathPairOperator& x);

}  // namespace bnet
