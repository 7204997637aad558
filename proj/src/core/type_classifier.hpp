#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "core/fusion_ring.hpp"

namespace bnet {

// Boundary weighted graph: one vertex per simple with weight d_c, and for
// every pair (a,b) an edge class c1 -> c2 of multiplicity
// sum_e N_{a c1}^e N_{e b}^{c2}, each edge weighing d_a d_b.
struct EdgeClass {
  int c1, c2, a, b;
  long long count;
};

struct WeightedGraph {
  std::shared_ptr<const FusionRing> ring;
  std::vector<EdgeClass> edges;  // count > 0, lex by (c1,c2,a,b)
  Num delta;                     // squared global dimension
};

WeightedGraph build_weighted_graph(std::shared_ptr<const FusionRing> ring);

// Per-vertex defect of sum over edge classes at v of
// count * d_a d_b * d_{other end} minus delta * d_v; all zero for a valid
// ring (exactly so when dimensions are exact).
std::vector<Num> weight_condition_residuals(const WeightedGraph& g);

// Deduplicated spectral ratios d_a d_b / d_c over admissible triples,
// each with the first triple realizing it. Ratios are always >= 1.
struct RatioGen {
  Num ratio;
  std::array<int, 3> triple;
};
std::vector<RatioGen> ratio_generators(const FusionRing& ring);

// Murray-von Neumann type of the boundary factor read off the ratio
// group: trivial group II_1, cyclic group III_lambda, dense group III_1.
struct TypeReport {
  std::string type;  // "II_1" | "III_lambda" | "III_1" | "inconclusive"
  bool has_lambda = false;
  Num lambda;        // in (0,1) when present
  bool exact = false;
  std::string method;
  unsigned precision_digits = 0;
  std::vector<RatioGen> generators;
  std::vector<Int> exponents;  // ratio_i = lambda^{-Z_i}, gcd of nonzero = 1
};

TypeReport classify_type(std::shared_ptr<const FusionRing> ring);

// Classification driver on a bare ratio set (ratios >= 1, exact flag says
// whether they are exact rationals). classify_type delegates here.
TypeReport classify_ratio_set(const std::vector<Num>& ratios, bool exact);

std::string type_report_json(const FusionRing& ring, const TypeReport& rep);

}  // namespace bnet
