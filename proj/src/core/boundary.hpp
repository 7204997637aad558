#pragma once

#include "core/num.hpp"
#include "core/path_net.hpp"
#include "core/toric.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bnet {

// Abstract boundary algebra on an interval with n+1 sites: 2n+1 self-adjoint
// unitary generators x_0..x_n, y_0..y_{n-1} where y_j anticommutes with x_j
// and x_{j+1} and everything else commutes. Elements are canonical monomials
// i^phase x^a y^b (the BoundaryMonomial of toric.hpp) and their spans. The
// rough and smooth interval algebras share these relations, so the monomial
// arithmetic below is independent of the kind tag.

BoundaryMonomial boundary_identity(int sites, EdgeKind kind);
BoundaryMonomial boundary_x(int sites, EdgeKind kind, int t);
BoundaryMonomial boundary_y(int sites, EdgeKind kind, int t);

BoundaryMonomial boundary_mul(const BoundaryMonomial& a, const BoundaryMonomial& b);
BoundaryMonomial boundary_adjoint(const BoundaryMonomial& a);
bool boundary_commute(const BoundaryMonomial& a, const BoundaryMonomial& b);
bool boundary_hermitian(const BoundaryMonomial& a);

// "i^k x0 x2 y1" with factors ascending; "1" for the scalar unit.
std::string boundary_str(const BoundaryMonomial& m);

// Concrete realization on a chain of `sites` qubits. Rough intervals map
// x_t to X_t and y_t to Z_t Z_{t+1}; smooth intervals map x_t to Z_t and
// y_t to X_t X_{t+1}. Normal form i^phase X^xs Z^zs.
struct ChainPauli {
    int sites = 0;
    int phase = 0;
    std::uint64_t xs = 0, zs = 0;

    bool is_identity() const { return phase == 0 && xs == 0 && zs == 0; }
    friend bool operator==(const ChainPauli&, const ChainPauli&) = default;
};

ChainPauli chain_mul(const ChainPauli& a, const ChainPauli& b);
ChainPauli chain_adjoint(const ChainPauli& a);
bool chain_commute(const ChainPauli& a, const ChainPauli& b);
bool chain_hermitian(const ChainPauli& a);
std::string chain_str(const ChainPauli& p);

ChainPauli chain_rep(const BoundaryMonomial& m);

// Linear combination of canonical monomials; coefficients carry the i^phase.
struct BoundaryElement {
    int sites = 0;
    EdgeKind kind = EdgeKind::Rough;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Cplx> terms;

    bool is_zero() const { return terms.empty(); }
};

BoundaryElement be_zero(int sites, EdgeKind kind);
BoundaryElement be_monomial(const BoundaryMonomial& m);
void be_accumulate(BoundaryElement& e, const BoundaryMonomial& m, const Cplx& c);
BoundaryElement be_add(const BoundaryElement& a, const BoundaryElement& b);
BoundaryElement be_scale(const Cplx& c, const BoundaryElement& a);
BoundaryElement be_mul(const BoundaryElement& a, const BoundaryElement& b);
BoundaryElement be_adjoint(const BoundaryElement& a);
std::string be_str(const BoundaryElement& e);

// Boundary states. psi_B reads off the identity coefficient and is the
// normalized trace; phi_Z kills every monomial with sigma^X letters and
// phi_X every monomial with sigma^Z letters (which letters those are
// depends on the interval kind).
Cplx boundary_state(const BoundaryElement& e);
Cplx product_state_z(const BoundaryElement& e);
Cplx product_state_x(const BoundaryElement& e);

// The boundary channel: reduce each monomial of a linear combination against
// the outer region's stabilizers; non-commuting monomials contribute zero.
struct WeightedPauli {
    Cplx coeff;
    PauliMonomial op;
};

BoundaryElement boundary_channel(const Window& win, const std::vector<WeightedPauli>& x,
                                 const LatticeRegion& inner, const LatticeRegion& outer);

// Structure report for the algebra on n+1 sites: dimension 2^{2n+1}, center
// spanned by 1 and the x-parity element, two blocks of side 2^n.
struct BoundaryAlgebraInfo {
    int sites = 0;
    EdgeKind kind = EdgeKind::Rough;
    Int dimension;                       // 2^{2n+1}
    std::vector<BoundaryMonomial> basis; // canonical monomials, (a,b) ascending
    int center_dim = 0;                  // always 2
    BoundaryMonomial central;            // product of all x generators
    Int block_side;                      // 2^n, two blocks M_{2^n} + M_{2^n}
};

BoundaryAlgebraInfo boundary_algebra(int sites, EdgeKind kind);

// Explicit isomorphism onto the Hilb(Z/2) path-pair algebra at level n+1,
// which sits inside the qubit chain as the endpoint-parity-even subalgebra.
// The image of i^p x^a y^b is i^p sum_t (-1)^{a.t} E_{path(t), path(t+w)}
// over label strings t, with w = b xor (b<<1); the abstract relations do
// not see the interval kind, so one formula serves rough and smooth.
PathPairOperator iso_image(PathAlgebra& alg, const BoundaryMonomial& m);

struct FusionNetIsoReport {
    int sites = 0;
    EdgeKind kind = EdgeKind::Rough;
    Int dimension;              // 2^{2n+1}
    Int ambient;                // 4^{n+1}
    std::vector<Int> block_dims; // path-net level dimensions, (2^n, 2^n)
    bool relations_ok = false;  // generator images are self-adjoint unitaries
                                // with the interleaved anticommutation pattern
    bool table_ok = false;      // full multiplication-table match
    bool parity_ok = false;     // images preserve the endpoint parity blocks
    bool injective_ok = false;  // distinct monomials map to distinct operators
    bool markov_matches_state = false;    // psi_B = Markov trace of the image
    bool canonical_matches_state = false; // and the canonical state agrees
    bool unit_state_matches = false;      // phi_X (rough) / phi_Z (smooth)
    bool regular_state_matches = false;   // phi_Z (rough) / phi_X (smooth)

    bool all_ok() const {
        return relations_ok && table_ok && parity_ok && injective_ok &&
               markov_matches_state && canonical_matches_state && unit_state_matches &&
               regular_state_matches;
    }
};

FusionNetIsoReport fusion_net_iso(int sites, EdgeKind kind);

// Diagonal (45-degree) interval generators: alternating two-site ZZ / XX
// words on a qubit chain; offset selects which parity starts with Z. Only
// the generator listing and its relations are provided.
struct DiagonalNetReport {
    int sites = 0;
    int offset = 0;
    std::vector<ChainPauli> gens;
    bool relations_ok = false; // involutive, hermitian, adjacent pairs anticommute
    Int span_dim;              // 2^(sites-1)
};

DiagonalNetReport diagonal_net(int sites, int offset);

} // namespace bnet
