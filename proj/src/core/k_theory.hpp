#pragma once

#include "core/fusion_ring.hpp"
#include "core/num.hpp"

#include <string>
#include <vector>

namespace bnet {

// Stationary AF dimension data: one integer matrix repeated along the
// diagram, an initial class, and the left eigenvector that induces the
// trace on K0. tau is exact (rational) whenever the ring behind it has
// certified integer dimensions.
struct StationaryAFData {
    int k = 0;
    std::vector<std::vector<Int>> A; // k x k inclusion matrix
    std::vector<Int> e;              // class of the unit at level 0
    std::vector<Num> tau;            // normalized so tau . e == 1
    Num lambda;                      // tau A = lambda tau
    bool primitive = false;          // some power of A strictly positive
};

// Validates shapes, positivity of tau, and the eigenvector identity;
// normalizes tau . e = 1 and fills lambda and the primitivity flag.
StationaryAFData make_stationary(std::vector<std::vector<Int>> A, std::vector<Int> e,
                                 std::vector<Num> tau);

// Tensoring by the multiset X of simples: A[i][j] = sum over x in X of the
// multiplicity of i in x * j.
// tau is the Frobenius-Perron dimension vector; e the unit class.
StationaryAFData stationary_tensor(const FusionRing& ring, const std::vector<int>& X);
// Two-sided tensoring by the sum of all simples on both sides:
// A[i][j] = number of (g, h, c) with j h = c + ... and g c = i + ...
StationaryAFData stationary_two_sided(const FusionRing& ring);

// e, Ae, ..., A^n e. n <= 40; entries are big integers.
std::vector<std::vector<Int>> dimension_sequence(const StationaryAFData& d, int n);

// tau . v, exact when tau is rational.
Num trace_pairing(const StationaryAFData& d, const std::vector<Int>& v);

// Search for an integer v, 0 < ||v||_inf <= bound, with tau.v = 0 that stays
// nonzero in the limit group. Certificates: "determinant" (A invertible over
// Q, so no power kills anything), or "power" (A^m v != 0 checked for m up to
// 2k; kernels of integer matrix powers stabilize by step k, so this is
// complete). A candidate killed by some power is skipped. When no witness
// survives the result carries certificate "annihilated" and the largest
// power that was needed.
struct InfinitesimalResult {
    bool found = false;
    std::vector<Int> witness;
    std::string certificate;
    int power_checked = 0;
};

InfinitesimalResult find_infinitesimal(const StationaryAFData& d, int bound);

// Rank-1 stationary matrices scale the whole diagram by a fixed integer q
// per level; the limit is then the UHF algebra of the supernatural number
// q^inf, canonically labeled by the radical of q.
struct UhfReport {
    bool rank_one = false;
    Int q;
    Int base;
    std::string label; // "M_{6^inf}", or "not rank-1"
};

UhfReport uhf_report(const StationaryAFData& d);

} // namespace bnet
