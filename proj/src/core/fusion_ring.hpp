#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/num.hpp"

namespace bnet {

// Fusion ring: finitely many simple objects with non-negative integer
// structure constants N[a][b][c] = multiplicity of c in a*b. Index 0 is
// always the unit; dual is the rigidity involution.
struct FusionRing {
  std::string name;  // builtin name, or "custom" for loaded documents
  std::vector<std::string> simples;
  std::vector<int> dual;
  std::vector<std::vector<std::vector<long long>>> N;

  // Frobenius-Perron dimensions, filled by fp_dimensions(). When every
  // dimension certifies as an integer the entries are exact rationals.
  std::vector<Num> dims;
  bool dims_exact = false;

  int rank() const { return static_cast<int>(simples.size()); }
  long long n(int a, int b, int c) const { return N[a][b][c]; }
  bool has_dims() const { return !dims.empty(); }

  Num global_dimension() const;  // sum of d_c^2
  bool pointed() const;          // all dimensions exactly 1
};

// Checks every ring axiom; throws Error(Validation) naming the first
// violated identity and the indices involved.
void validate_ring(const FusionRing& ring);

// Power iteration on the total fusion matrix, Rayleigh refinement per
// simple, then exact integer certification when all dimensions are within
// 1e-10 of integers. Idempotent.
void fp_dimensions(FusionRing& ring);
inline void ensure_dims(FusionRing& ring) {
  if (!ring.has_dims()) fp_dimensions(ring);
}

std::vector<std::string> builtin_ring_names();
FusionRing builtin_ring(const std::string& name);

// Document form: {"simples": [...], "dual": [...], "N": [[a,b,c,mult],...]}
// with omitted entries zero. Loading validates; serialization is canonical
// (entries sorted, zero entries dropped) so round trips are byte-identical.
FusionRing ring_from_json(const std::string& text);
std::string ring_to_json(const FusionRing& ring);

// All (a,b,c) with N[a][b][c] > 0, lexicographic.
std::vector<std::array<int, 3>> admissible_triples(const FusionRing& ring);

}  // namespace bnet
