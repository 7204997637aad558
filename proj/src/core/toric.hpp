#pragma once

#include "core/num.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bnet {

// Finite window of the edge lattice. Vertices live at (x,y) with
// 0 <= x < W, 0 <= y < H. Qubits sit on edges:
//   E-edge (x,y)-(x+1,y), 0 <= x < W-1, 0 <= y < H
//   N-edge (x,y)-(x,y+1), 0 <= x < W,   0 <= y < H-1
// Indexing is row-major E-edges first, then N-edges.
struct Window {
    int W = 0;
    int H = 0;

    int e_count() const { return (W - 1) * H; }
    int n_count() const { return W * (H - 1); }
    int edge_count() const { return e_count() + n_count(); }

    bool e_in(int x, int y) const { return x >= 0 && x < W - 1 && y >= 0 && y < H; }
    bool n_in(int x, int y) const { return x >= 0 && x < W && y >= 0 && y < H - 1; }

    int e_index(int x, int y) const;
    int n_index(int x, int y) const;

    // inverse of the indexing; returns (is_east, x, y)
    struct EdgeCoord {
        bool east = true;
        int x = 0;
        int y = 0;
    };
    EdgeCoord edge_coord(int idx) const;
};

Window make_window(int w, int h);

// Dense bit vector used for edge supports and F2 linear algebra.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int bits);

    int size() const { return bits_; }
    bool get(int i) const;
    void set(int i, bool v);
    void flip(int i);
    void clear();

    BitVec& operator^=(const BitVec& o);
    BitVec& operator&=(const BitVec& o);
    BitVec& operator|=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

    bool any() const;
    int count() const;
    // parity of popcount(*this & o)
    bool parity_and(const BitVec& o) const;
    bool is_subset_of(const BitVec& o) const;
    std::vector<int> ones() const;

    friend bool operator==(const BitVec& a, const BitVec& b);
    friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }

private:
    int bits_ = 0;
    std::vector<std::uint64_t> w_;
};

// Pauli word in normal form i^phase * X^xs * Z^zs over the window's edges.
struct PauliMonomial {
    int phase = 0; // exponent of i, mod 4
    BitVec xs;
    BitVec zs;

    static PauliMonomial identity(int nbits);
    BitVec support() const { return xs | zs; }
    bool is_identity() const { return phase == 0 && !xs.any() && !zs.any(); }
};

PauliMonomial pauli_mul(const PauliMonomial& a, const PauliMonomial& b);
PauliMonomial pauli_adjoint(const PauliMonomial& a);
bool pauli_commute(const PauliMonomial& a, const PauliMonomial& b);
bool pauli_hermitian(const PauliMonomial& a);

// Text form: optional "i^k" prefix followed by factors "X@(x,y,e)" / "Z@(x,y,n)",
// multiplied left to right. "1" denotes the identity.
PauliMonomial pauli_parse(const Window& win, const std::string& text);
std::string pauli_str(const Window& win, const PauliMonomial& p);

enum class Side { West = 0, East = 1, South = 2, North = 3 };
enum class EdgeKind { Rough, Smooth };

Side opposite(Side s);
const char* side_name(Side s);

// Rectangle of vertices [x0,x1] x [y0,y1] with a boundary kind per side.
// A rough side contributes the dangling edges that poke one step outward.
struct LatticeRegion {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    std::array<EdgeKind, 4> kind{EdgeKind::Smooth, EdgeKind::Smooth,
                                 EdgeKind::Smooth, EdgeKind::Smooth};

    EdgeKind side_kind(Side s) const { return kind[static_cast<int>(s)]; }
    void set_kind(Side s, EdgeKind k) { kind[static_cast<int>(s)] = k; }
};

// "rect x0 y0 x1 y1 [west east south north]" with kinds "rough" or "smooth";
// all four kinds or none (none = all rough).
LatticeRegion region_parse(const std::string& text);
std::string region_str(const LatticeRegion& r);

void validate_region(const Window& win, const LatticeRegion& r);

// All edges of the region: core edges of the vertex rectangle plus the
// dangling edges of each rough side.
BitVec region_edges(const Window& win, const LatticeRegion& r);
std::vector<int> region_edge_list(const Window& win, const LatticeRegion& r);

std::array<int, 4> star_edges(const Window& win, int x, int y);
std::array<int, 4> plaquette_edges(const Window& win, int x, int y);
PauliMonomial star_op(const Window& win, int x, int y);
PauliMonomial plaquette_op(const Window& win, int x, int y);

struct Stabilizer {
    PauliMonomial op;
    bool star = true; // star (X type) vs plaquette (Z type)
    int x = 0;        // star vertex, or SW corner of the plaquette cell
    int y = 0;
};

// Every star and plaquette whose full edge set lies inside the region,
// stars first, row-major.
std::vector<Stabilizer> stabilizer_generators(const Window& win, const LatticeRegion& r);

// Shared boundary interval of a surrounded-with-boundary pair. For an
// east/west side the interval runs over vertex rows [lo,hi] of the shared
// column `coord`; for north/south over vertex columns. A rough interval has
// hi-lo+1 sites (danglings), a smooth one hi-lo sites (boundary edges).
struct BoundaryInterval {
    Side side = Side::East;
    EdgeKind kind = EdgeKind::Rough;
    int coord = 0;
    int lo = 0, hi = 0;

    int sites() const { return kind == EdgeKind::Rough ? hi - lo + 1 : hi - lo; }
};

enum class SurroundRel { None, CompletelySurrounds, SurroundsWithBoundary };

struct SurroundInfo {
    SurroundRel rel = SurroundRel::None;
    bool contained = false;       // inner edge set subset of outer edge set
    std::array<int, 4> margin{};  // outer minus inner, per side
    int shared_sides = 0;         // sides with margin 0
    bool kinds_match = true;      // inner/outer kinds agree on shared sides
    bool margins_ok = false;      // every nonzero margin >= s
    std::optional<BoundaryInterval> interval;
};

// Classifies inner against outer: no shared side and all margins >= s is
// "completely surrounds"; exactly one shared side (kinds agreeing, other
// margins >= s) is "surrounds with boundary" and reports the interval,
// which is inner's full side. Anything else is None, but the geometric
// fields are still filled in for diagnostics.
SurroundInfo region_relation(const Window& win, const LatticeRegion& inner,
                             const LatticeRegion& outer, int s);

// Canonical monomial x_0^{a_0}..x_n^{a_n} y_0^{b_0}..y_{n-1}^{b_{n-1}} of the
// boundary algebra on an interval with n+1 sites, times i^phase. Bit t of
// `a` is the exponent of x_t, bit t of `b` that of y_t. sites == 0 encodes a
// scalar i^phase.
struct BoundaryMonomial {
    int sites = 0;
    EdgeKind kind = EdgeKind::Rough;
    int phase = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;

    bool is_scalar() const { return a == 0 && b == 0; }
};

// Concrete window realizations of the boundary generators on an interval.
// Rough: x_t = X on the t-th dangling, y_t = Z on danglings t, t+1 and the
// boundary edge between them. Smooth: x_t = Z on the t-th boundary edge,
// y_t = X on boundary edges t, t+1 and the inward rung between them.
PauliMonomial embedded_x_generator(const Window& win, const BoundaryInterval& iv, int t);
PauliMonomial embedded_y_generator(const Window& win, const BoundaryInterval& iv, int t);
PauliMonomial embedded_boundary_monomial(const Window& win, const BoundaryInterval& iv,
                                         const BoundaryMonomial& m);

struct ReduceResult {
    bool commutes = true;
    std::optional<Stabilizer> witness;  // an anti-commuting outer stabilizer
    std::vector<Stabilizer> factors;    // stabilizers inside the inner region
    BoundaryMonomial boundary;
    std::optional<BoundaryInterval> interval;
    bool strict = false; // the s=2 surround relation held exactly

    // Contract when commutes: P * factors[0] * ... * factors[m-1] equals
    // i^{boundary.phase} * (embedded canonical monomial); the embedded part
    // is the identity when boundary.sites == 0 or boundary is scalar.
};

// The reduction algorithm. Peels the inner region side by side, cancelling
// rough danglings with stars and smooth boundary edges with plaquettes, and
// reads the residue off the shared interval. Requires supp(P) inside the
// inner region and inner contained in outer with at most one shared side;
// margins below 2 are accepted when every stabilizer the peel relies on is
// still available, otherwise a Validation error explains which edge could
// not be pinned.
ReduceResult pauli_reduce(const Window& win, const PauliMonomial& p,
                          const LatticeRegion& inner, const LatticeRegion& outer);

// F2 basis of the Pauli words supported on inner that commute with every
// stabilizer generator of outer (phases 0).
std::vector<PauliMonomial> commutant_basis(const Window& win, const LatticeRegion& inner,
                                           const LatticeRegion& outer);

// Lattice re-indexing E(x,y) -> N(x+1,y), N(x,y) -> E(x,y+1) combined with
// the X/Z swap; sends the star at (x,y) to the plaquette at (x,y) and the
// plaquette at (x,y) to the star at (x+1,y+1).
PauliMonomial half_translate(const Window& win, const PauliMonomial& p);

} // namespace bnet
