#pragma once

#include "core/boundary.hpp"
#include "core/toric.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace bnet {

// Brute-force corroboration layer: state vectors over the edges of a small
// region, Pauli words acting as signed permutations of basis states, ground
// state projectors applied factor by factor. Everything here is hardware
// floats and explicit actions; no symplectic phase bookkeeping is reused, so
// agreement with toric.cpp is a genuine cross-check.

// Edge budget for dense windows. Default 20 (16 MiB state vectors).
int oracle_edge_cap();
void set_oracle_edge_cap(int cap);

using OracleVec = std::vector<std::complex<double>>;

// A region's edges renumbered as qubits 0..E-1 of a 2^E space.
struct DenseWindow {
    Window win;
    std::vector<int> edge_ids; // window edge index per qubit
    std::vector<int> qubit_of; // window edge index -> qubit, or -1

    int qubits() const { return static_cast<int>(edge_ids.size()); }
    std::size_t dim() const { return std::size_t(1) << qubits(); }
};

DenseWindow make_dense_window(const Window& win, const LatticeRegion& space);

// Pauli word restricted to the dense window's qubits. Acts on a basis state
// |m> as i^phase (-1)^{popcount(zs & m)} |m xor xs>.
struct DensePauli {
    std::uint32_t xs = 0;
    std::uint32_t zs = 0;
    int phase = 0;
};

DensePauli project_pauli(const DenseWindow& dw, const PauliMonomial& p);
std::vector<DensePauli> dense_stabilizers(const DenseWindow& dw, const LatticeRegion& region);

OracleVec apply_pauli(const DenseWindow& dw, const DensePauli& p, const OracleVec& v);
// v <- prod (1 + g)/2 v, factors applied right to left
void apply_projector(const DenseWindow& dw, const std::vector<DensePauli>& gens, OracleVec& v);
// exact trace of the projector = ground space dimension (group-sum formula,
// each group word evaluated through its action)
double projector_trace(const DenseWindow& dw, const std::vector<DensePauli>& gens);
// partial trace of the projector onto a subset of qubits, as a dense matrix
// in row-major order over the subset's basis
std::vector<std::complex<double>> projector_partial_trace(const DenseWindow& dw,
                                                          const std::vector<DensePauli>& gens,
                                                          std::uint32_t keep_mask);

struct ProjectorReport {
    int qubits = 0;
    int generators = 0;
    double trace = 0;           // ground space dimension
    double idempotency = 0;     // max ||p(pv) - pv|| over probes
    double self_adjointness = 0; // max |<u,pv> - <pu,v>| over probe pairs
};

ProjectorReport oracle_projector_report(const Window& win, const LatticeRegion& region,
                                        int probes, unsigned seed);

// Compression of every single-edge Pauli of the inner region by the outer
// ground projector, against an exact orthonormal basis of the ground space.
struct Lto1Report {
    int qubits = 0;
    int ground_dim = 0;
    int checked = 0;             // single-edge Paulis on the inner region
    double max_deviation = 0;    // ||Q* x Q - c I||_F after the scalar fit
    double stab_absorption = 0;  // max ||Q* g Q - I||_F over outer stabilizers
    double channel_mismatch = 0; // max |c - boundary channel scalar|
    bool strict = false;         // the margin-2 relation held exactly
};

Lto1Report verify_lto1(const Window& win, const LatticeRegion& inner,
                       const LatticeRegion& outer);

// Span of the compressed inner algebra against the embedded boundary
// algebra, enlargement of the outer region, and injectivity of e -> e p.
struct Lto234Report {
    int qubits = 0;         // dense space of the larger outer region
    int interval_sites = 0; // n+1
    Int expected_span;      // 2^{2n+1}
    int span_small = 0;     // rank of {p1 x p1 : x over all inner monomials}
    int span_small_embedded = 0; // rank after adjoining {e p1}
    int span_large = 0;     // same ranks on the enlarged outer region
    int span_large_embedded = 0;
    double dropped_norm = 0;       // max ||p x p r|| over annihilated monomials
    double net_order_residual = 0; // ||p2 p1 v - p2 v|| and mirror
    int injectivity_rank = 0;      // rank of {e p2} over the boundary basis
    double min_injection_norm = 0; // min ||e p2 r||/||p2 r|| over random e
    bool channel_agrees = false;   // reduction values match across the outers
    bool strict = false;
};

Lto234Report verify_lto234(const Window& win, const LatticeRegion& inner,
                           const LatticeRegion& outer1, const LatticeRegion& outer2,
                           unsigned seed);

// Inner-region enlargement: the compressed span of the smaller algebra sits
// inside the compressed span of the larger one; random words outside the
// commutant are annihilated by the compression.
struct Lto3Report {
    int qubits = 0;
    int sites_small = 0, sites_large = 0;
    Int expected_small, expected_large;
    int span_small = 0;
    int span_large = 0;
    int span_union = 0;
    int samples = 0;                   // random non-commutant words probed
    double max_noncommutant_norm = 0;  // their largest compressed norm
    bool strict = false;
};

Lto3Report verify_lto3(const Window& win, const LatticeRegion& inner_small,
                       const LatticeRegion& inner_large, const LatticeRegion& outer,
                       int samples, unsigned seed);

// TQO sweep: compressions of random inner words fit a scalar, the scalar
// matches the boundary channel, and the reduced density matrices of nested
// ground projectors on the inner region are proportional.
struct StateUniquenessReport {
    int qubits = 0; // dense space of the largest region
    int samples = 0;
    double max_scalar_deviation = 0;   // ||p x p r - c p r||
    double max_channel_mismatch = 0;   // |c - channel scalar|
    bool psi_one = false;              // identity fits c = 1
    double trace_proportionality = 0;  // normalized reduced matrices differ by
    double net_order_residual = 0;
};

StateUniquenessReport verify_state_uniqueness(const Window& win, const LatticeRegion& lambda,
                                              const LatticeRegion& delta,
                                              const LatticeRegion& gamma, int samples,
                                              unsigned seed);

} // namespace bnet
