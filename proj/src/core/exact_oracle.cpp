#include "core/exact_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

namespace bnet {

namespace {

int g_edge_cap = 20;

std::complex<double> i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

double vec_norm(const OracleVec& v) {
    double s = 0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

std::complex<double> vec_dot(const OracleVec& a, const OracleVec& b) {
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

OracleVec random_state(std::mt19937& rng, std::size_t dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    OracleVec v(dim);
    for (auto& c : v) c = {g(rng), g(rng)};
    double n = vec_norm(v);
    for (auto& c : v) c /= n;
    return v;
}

// Modified Gram-Schmidt insert (two passes). Appends the normalized residual
// when it exceeds tol and returns the residual norm either way.
double gs_insert(std::vector<OracleVec>& basis, OracleVec v, double tol) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) {
            auto c = vec_dot(q, v);
            if (c == std::complex<double>(0, 0)) continue;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
        }
    }
    double n = vec_norm(v);
    if (n > tol) {
        for (auto& c : v) c /= n;
        basis.push_back(std::move(v));
    }
    return n;
}

// scatter/gather of a compressed index through a qubit mask
std::uint32_t mask_deposit(std::uint32_t s, std::uint32_t mask) {
    std::uint32_t out = 0;
    int b = 0;
    for (int q = 0; (mask >> q) != 0; ++q) {
        if ((mask >> q) & 1u) {
            if ((s >> b) & 1u) out |= (1u << q);
            ++b;
        }
    }
    return out;
}

std::uint32_t mask_extract(std::uint32_t m, std::uint32_t mask) {
    std::uint32_t out = 0;
    int b = 0;
    for (int q = 0; (mask >> q) != 0; ++q) {
        if ((mask >> q) & 1u) {
            if ((m >> q) & 1u) out |= (1u << b);
            ++b;
        }
    }
    return out;
}

// amplitude <m ^ xor(xs)| g_{i_r} ... g_{i_1} |m> with the factors of `which`
// applied in ascending index order; the basis index evolves by xor
std::complex<double> word_amplitude(const std::vector<DensePauli>& gens, std::uint32_t which,
                                    std::uint32_t m) {
    std::complex<double> amp{1.0, 0.0};
    std::uint32_t idx = m;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!((which >> i) & 1u)) continue;
        amp *= i_power(gens[i].phase);
        if (std::popcount(gens[i].zs & idx) & 1) amp = -amp;
        idx ^= gens[i].xs;
    }
    return amp;
}

DensePauli dense_from_masks(std::uint32_t xs, std::uint32_t zs, int phase = 0) {
    DensePauli p;
    p.xs = xs;
    p.zs = zs;
    p.phase = phase;
    return p;
}

std::complex<double> cplx_to_double(const Cplx& c) {
    return {c.re.to_real().convert_to<double>(), c.im.to_real().convert_to<double>()};
}

// boundary channel of a single word, demanded to be scalar
std::complex<double> channel_scalar(const Window& win, const PauliMonomial& p,
                                    const LatticeRegion& inner, const LatticeRegion& outer) {
    BoundaryElement el = boundary_channel(win, {{Cplx(Num(1)), p}}, inner, outer);
    if (el.is_zero()) return {0.0, 0.0};
    if (el.terms.size() != 1 ||
        el.terms.begin()->first != std::pair<std::uint64_t, std::uint64_t>(0, 0))
        fail(Errc::Validation, "word does not compress to a scalar on this region pair");
    return cplx_to_double(el.terms.begin()->second);
}

PauliMonomial window_word(const Window& win, const std::vector<int>& edges, std::uint32_t xm,
                          std::uint32_t zm, int phase) {
    PauliMonomial p = PauliMonomial::identity(win.edge_count());
    p.phase = phase & 3;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if ((xm >> i) & 1u) p.xs.set(edges[i], true);
        if ((zm >> i) & 1u) p.zs.set(edges[i], true);
    }
    return p;
}

std::uint32_t qubit_mask(const DenseWindow& dw, const std::vector<int>& edges) {
    std::uint32_t m = 0;
    for (int e : edges) {
        int q = dw.qubit_of[e];
        if (q < 0) fail(Errc::Validation, "edge set leaves the dense window");
        m |= (1u << q);
    }
    return m;
}

bool be_equal(const BoundaryElement& a, const BoundaryElement& b) {
    return a.sites == b.sites && a.kind == b.kind && a.terms == b.terms;
}

// M[i*g+j] = <q_i, x q_j> for an orthonormal family Q
std::vector<std::complex<double>> compress_matrix(const DenseWindow& dw,
                                                  const std::vector<OracleVec>& Q,
                                                  const DensePauli& x) {
    const std::size_t g = Q.size();
    std::vector<std::complex<double>> M(g * g);
    for (std::size_t j = 0; j < g; ++j) {
        OracleVec xq = apply_pauli(dw, x, Q[j]);
        for (std::size_t i = 0; i < g; ++i) M[i * g + j] = vec_dot(Q[i], xq);
    }
    return M;
}

// Frobenius distance of M from the closest scalar multiple of the identity,
// and that scalar
std::pair<std::complex<double>, double> scalar_fit(const std::vector<std::complex<double>>& M,
                                                   std::size_t g) {
    std::complex<double> c = 0;
    for (std::size_t i = 0; i < g; ++i) c += M[i * g + i];
    c /= double(g);
    double dev2 = 0;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            std::complex<double> want = (i == j) ? c : std::complex<double>(0, 0);
            dev2 += std::norm(M[i * g + j] - want);
        }
    return {c, std::sqrt(dev2)};
}

std::vector<OracleVec> ground_basis(const DenseWindow& dw, const std::vector<DensePauli>& stabs,
                                    int g, std::mt19937& rng) {
    std::vector<OracleVec> Q;
    Q.reserve(std::size_t(g));
    int attempts = 0;
    while (static_cast<int>(Q.size()) < g && attempts < 4 * g + 64) {
        OracleVec v = random_state(rng, dw.dim());
        apply_projector(dw, stabs, v);
        gs_insert(Q, std::move(v), 1e-8);
        ++attempts;
    }
    if (static_cast<int>(Q.size()) != g)
        fail(Errc::Internal, "ground basis extraction did not reach the trace dimension");
    return Q;
}

struct IntervalPair {
    BoundaryInterval iv;
    bool strict = false;
};

IntervalPair shared_interval(const Window& win, const LatticeRegion& inner,
                             const LatticeRegion& outer) {
    SurroundInfo info = region_relation(win, inner, outer, 2);
    if (!info.interval)
        fail(Errc::Validation, "inner region shares no usable boundary interval with the outer one");
    return {*info.interval, info.rel == SurroundRel::SurroundsWithBoundary};
}

std::vector<PauliMonomial> boundary_basis_words(const Window& win, const BoundaryInterval& iv) {
    const int n = iv.sites();
    std::vector<PauliMonomial> out;
    out.reserve(std::size_t(1) << (2 * n - 1));
    for (std::uint64_t a = 0; a < (std::uint64_t(1) << n); ++a)
        for (std::uint64_t b = 0; b < (std::uint64_t(1) << (n - 1)); ++b) {
            BoundaryMonomial m;
            m.sites = n;
            m.kind = iv.kind;
            m.a = a;
            m.b = b;
            out.push_back(embedded_boundary_monomial(win, iv, m));
        }
    return out;
}

} // namespace

int oracle_edge_cap() { return g_edge_cap; }

void set_oracle_edge_cap(int cap) {
    if (cap < 1 || cap > 26) fail(Errc::Validation, "oracle edge cap must be between 1 and 26");
    g_edge_cap = cap;
}

DenseWindow make_dense_window(const Window& win, const LatticeRegion& space) {
    validate_region(win, space);
    DenseWindow dw;
    dw.win = win;
    dw.edge_ids = region_edge_list(win, space);
    if (static_cast<int>(dw.edge_ids.size()) > g_edge_cap) {
        std::ostringstream os;
        os << "region has " << dw.edge_ids.size() << " edges, above the dense cap of "
           << g_edge_cap;
        fail(Errc::Resource, os.str());
    }
    dw.qubit_of.assign(std::size_t(win.edge_count()), -1);
    for (std::size_t q = 0; q < dw.edge_ids.size(); ++q)
        dw.qubit_of[std::size_t(dw.edge_ids[q])] = static_cast<int>(q);
    return dw;
}

DensePauli project_pauli(const DenseWindow& dw, const PauliMonomial& p) {
    DensePauli out;
    out.phase = ((p.phase % 4) + 4) % 4;
    for (int e : p.xs.ones()) {
        int q = dw.qubit_of[std::size_t(e)];
        if (q < 0) fail(Errc::Validation, "word support leaves the dense window");
        out.xs |= (1u << q);
    }
    for (int e : p.zs.ones()) {
        int q = dw.qubit_of[std::size_t(e)];
        if (q < 0) fail(Errc::Validation, "word support leaves the dense window");
        out.zs |= (1u << q);
    }
    return out;
}

std::vector<DensePauli> dense_stabilizers(const DenseWindow& dw, const LatticeRegion& region) {
    std::vector<DensePauli> out;
    for (const Stabilizer& st : stabilizer_generators(dw.win, region))
        out.push_back(project_pauli(dw, st.op));
    return out;
}

OracleVec apply_pauli(const DenseWindow& dw, const DensePauli& p, const OracleVec& v) {
    if (v.size() != dw.dim()) fail(Errc::Internal, "state vector does not match the window");
    OracleVec out(v.size());
    const std::complex<double> ph = i_power(p.phase);
    for (std::uint32_t m = 0; m < v.size(); ++m) {
        std::complex<double> amp = ph * v[m];
        if (std::popcount(p.zs & m) & 1) amp = -amp;
        out[m ^ p.xs] = amp;
    }
    return out;
}

void apply_projector(const DenseWindow& dw, const std::vector<DensePauli>& gens, OracleVec& v) {
    for (const DensePauli& g : gens) {
        OracleVec gv = apply_pauli(dw, g, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (v[i] + gv[i]);
    }
}

double projector_trace(const DenseWindow& dw, const std::vector<DensePauli>& gens) {
    const std::size_t k = gens.size();
    if (k > 22) fail(Errc::Resource, "too many generators for the group-sum trace");
    const std::size_t dim = dw.dim();
    double total = 0;
    for (std::uint32_t which = 0; which < (std::uint32_t(1) << k); ++which) {
        std::uint32_t xs_tot = 0;
        for (std::size_t i = 0; i < k; ++i)
            if ((which >> i) & 1u) xs_tot ^= gens[i].xs;
        if (xs_tot != 0) continue; // off-diagonal word, traceless
        std::complex<double> sum = 0;
        for (std::uint32_t m = 0; m < dim; ++m) sum += word_amplitude(gens, which, m);
        total += sum.real();
    }
    return total / double(std::size_t(1) << k);
}

std::vector<std::complex<double>> projector_partial_trace(const DenseWindow& dw,
                                                          const std::vector<DensePauli>& gens,
                                                          std::uint32_t keep_mask) {
    const std::size_t k = gens.size();
    if (k > 22) fail(Errc::Resource, "too many generators for the group-sum trace");
    const int kept = std::popcount(keep_mask);
    if (kept > 12) fail(Errc::Resource, "partial trace target too large");
    const std::uint32_t full = static_cast<std::uint32_t>(dw.dim() - 1);
    if ((keep_mask & ~full) != 0) fail(Errc::Validation, "keep mask leaves the dense window");
    const std::uint32_t S = 1u << kept;
    std::vector<std::complex<double>> rho(std::size_t(S) * S, 0.0);
    const double scale =
        double(std::size_t(1) << (dw.qubits() - kept)) / double(std::size_t(1) << k);
    for (std::uint32_t which = 0; which < (std::uint32_t(1) << k); ++which) {
        std::uint32_t xs_tot = 0, zs_tot = 0;
        for (std::size_t i = 0; i < k; ++i)
            if ((which >> i) & 1u) {
                xs_tot ^= gens[i].xs;
                zs_tot ^= gens[i].zs;
            }
        if (((xs_tot | zs_tot) & ~keep_mask) != 0) continue; // traced out
        for (std::uint32_t s = 0; s < S; ++s) {
            std::uint32_t m = mask_deposit(s, keep_mask);
            std::complex<double> amp = word_amplitude(gens, which, m);
            std::uint32_t s2 = mask_extract(m ^ xs_tot, keep_mask);
            rho[std::size_t(s2) * S + s] += scale * amp;
        }
    }
    return rho;
}

ProjectorReport oracle_projector_report(const Window& win, const LatticeRegion& region,
                                        int probes, unsigned seed) {
    if (probes < 1) fail(Errc::Validation, "need at least one probe vector");
    DenseWindow dw = make_dense_window(win, region);
    std::vector<DensePauli> stabs = dense_stabilizers(dw, region);
    ProjectorReport rep;
    rep.qubits = dw.qubits();
    rep.generators = static_cast<int>(stabs.size());
    rep.trace = projector_trace(dw, stabs);
    std::mt19937 rng(seed);
    OracleVec prev;
    for (int j = 0; j < probes; ++j) {
        OracleVec r = random_state(rng, dw.dim());
        OracleVec pr = r;
        apply_projector(dw, stabs, pr);
        OracleVec ppr = pr;
        apply_projector(dw, stabs, ppr);
        double d = 0;
        for (std::size_t i = 0; i < pr.size(); ++i) d += std::norm(ppr[i] - pr[i]);
        rep.idempotency = std::max(rep.idempotency, std::sqrt(d));
        if (!prev.empty()) {
            // <u, p v> vs <p u, v> with u the previous raw probe
            OracleVec pu = prev;
            apply_projector(dw, stabs, pu);
            std::complex<double> lhs = vec_dot(prev, pr);
            std::complex<double> rhs = vec_dot(pu, r);
            rep.self_adjointness = std::max(rep.self_adjointness, std::abs(lhs - rhs));
        }
        prev = r;
    }
    return rep;
}

Lto1Report verify_lto1(const Window& win, const LatticeRegion& inner,
                       const LatticeRegion& outer) {
    validate_region(win, inner);
    validate_region(win, outer);
    DenseWindow dw = make_dense_window(win, outer);
    std::vector<DensePauli> stabs = dense_stabilizers(dw, outer);

    Lto1Report rep;
    rep.qubits = dw.qubits();
    double tr = projector_trace(dw, stabs);
    long g = std::lround(tr);
    if (std::abs(tr - double(g)) > 1e-6)
        fail(Errc::Internal, "projector trace is not an integer");
    if (g > 4096) fail(Errc::Resource, "ground space too large for an exact basis");
    rep.ground_dim = static_cast<int>(g);

    std::mt19937 rng(0x1709u);
    std::vector<OracleVec> Q = ground_basis(dw, stabs, rep.ground_dim, rng);

    for (const DensePauli& st : stabs) {
        auto M = compress_matrix(dw, Q, st);
        double dev2 = 0;
        for (long i = 0; i < g; ++i)
            for (long j = 0; j < g; ++j) {
                std::complex<double> want = (i == j) ? 1.0 : 0.0;
                dev2 += std::norm(M[std::size_t(i) * std::size_t(g) + std::size_t(j)] - want);
            }
        rep.stab_absorption = std::max(rep.stab_absorption, std::sqrt(dev2));
    }

    std::vector<int> edges = region_edge_list(win, inner);
    for (int e : edges) {
        int q = dw.qubit_of[std::size_t(e)];
        if (q < 0) fail(Errc::Validation, "inner region is not contained in the outer one");
        for (int t = 0; t < 2; ++t) {
            DensePauli x =
                t == 0 ? dense_from_masks(1u << q, 0) : dense_from_masks(0, 1u << q);
            auto M = compress_matrix(dw, Q, x);
            auto [c, dev] = scalar_fit(M, std::size_t(g));
            rep.max_deviation = std::max(rep.max_deviation, dev);

            PauliMonomial p = PauliMonomial::identity(win.edge_count());
            if (t == 0)
                p.xs.set(e, true);
            else
                p.zs.set(e, true);
            std::complex<double> want = channel_scalar(win, p, inner, outer);
            rep.channel_mismatch = std::max(rep.channel_mismatch, std::abs(c - want));
            ++rep.checked;
        }
    }
    rep.strict = region_relation(win, inner, outer, 2).rel == SurroundRel::CompletelySurrounds;
    return rep;
}

Lto234Report verify_lto234(const Window& win, const LatticeRegion& inner,
                           const LatticeRegion& outer1, const LatticeRegion& outer2,
                           unsigned seed) {
    validate_region(win, inner);
    validate_region(win, outer1);
    validate_region(win, outer2);
    if (!region_edges(win, outer1).is_subset_of(region_edges(win, outer2)))
        fail(Errc::Validation, "outer regions are not nested");

    IntervalPair ip1 = shared_interval(win, inner, outer1);
    IntervalPair ip2 = shared_interval(win, inner, outer2);
    const BoundaryInterval& iv = ip1.iv;
    if (ip2.iv.side != iv.side || ip2.iv.kind != iv.kind || ip2.iv.coord != iv.coord ||
        ip2.iv.lo != iv.lo || ip2.iv.hi != iv.hi)
        fail(Errc::Validation, "the two outer regions expose different intervals");

    Lto234Report rep;
    rep.interval_sites = iv.sites();
    rep.expected_span = Int(1) << (2 * rep.interval_sites - 1);
    rep.strict = ip1.strict && ip2.strict;

    std::vector<int> edges = region_edge_list(win, inner);
    if (edges.size() > 8) fail(Errc::Resource, "inner monomial sweep too large");
    std::vector<PauliMonomial> embedded = boundary_basis_words(win, iv);

    std::mt19937 rng(seed);

    // one pass per outer region: compress every inner monomial against a
    // random probe, then adjoin the embedded boundary words
    auto span_pass = [&](const LatticeRegion& outer, int& span, int& span_embedded) {
        DenseWindow dw = make_dense_window(win, outer);
        std::vector<DensePauli> stabs = dense_stabilizers(dw, outer);
        OracleVec pr = random_state(rng, dw.dim());
        apply_projector(dw, stabs, pr);
        std::uint32_t qm = qubit_mask(dw, edges);
        (void)qm;
        std::vector<OracleVec> basis;
        for (std::uint32_t xm = 0; xm < (1u << edges.size()); ++xm)
            for (std::uint32_t zm = 0; zm < (1u << edges.size()); ++zm) {
                PauliMonomial p = window_word(win, edges, xm, zm, 0);
                OracleVec v = apply_pauli(dw, project_pauli(dw, p), pr);
                apply_projector(dw, stabs, v);
                double pre = vec_norm(v);
                double res = gs_insert(basis, std::move(v), 1e-6);
                if (res <= 1e-6 && pre <= 1e-6)
                    rep.dropped_norm = std::max(rep.dropped_norm, pre);
            }
        span = static_cast<int>(basis.size());
        for (const PauliMonomial& e : embedded) {
            OracleVec v = apply_pauli(dw, project_pauli(dw, e), pr);
            apply_projector(dw, stabs, v);
            gs_insert(basis, std::move(v), 1e-6);
        }
        span_embedded = static_cast<int>(basis.size());
    };
    span_pass(outer1, rep.span_small, rep.span_small_embedded);
    span_pass(outer2, rep.span_large, rep.span_large_embedded);

    // projector net order and injectivity on the enlarged region
    DenseWindow dw2 = make_dense_window(win, outer2);
    std::vector<DensePauli> stabs2 = dense_stabilizers(dw2, outer2);
    std::vector<DensePauli> stabs1 = dense_stabilizers(dw2, outer1);
    rep.qubits = dw2.qubits();
    {
        OracleVec r = random_state(rng, dw2.dim());
        OracleVec p2r = r;
        apply_projector(dw2, stabs2, p2r);
        OracleVec w = p2r;
        apply_projector(dw2, stabs1, w); // p1 p2 r
        double d = 0;
        for (std::size_t i = 0; i < w.size(); ++i) d += std::norm(w[i] - p2r[i]);
        rep.net_order_residual = std::sqrt(d);
        OracleVec u = r;
        apply_projector(dw2, stabs1, u);
        apply_projector(dw2, stabs2, u); // p2 p1 r
        d = 0;
        for (std::size_t i = 0; i < u.size(); ++i) d += std::norm(u[i] - p2r[i]);
        rep.net_order_residual = std::max(rep.net_order_residual, std::sqrt(d));
    }
    {
        OracleVec r = random_state(rng, dw2.dim());
        OracleVec p2r = r;
        apply_projector(dw2, stabs2, p2r);
        double prn = vec_norm(p2r);
        std::vector<OracleVec> images;
        images.reserve(embedded.size());
        for (const PauliMonomial& e : embedded)
            images.push_back(apply_pauli(dw2, project_pauli(dw2, e), p2r));
        std::vector<OracleVec> basis;
        for (const OracleVec& v : images) gs_insert(basis, v, 1e-6);
        rep.injectivity_rank = static_cast<int>(basis.size());

        std::normal_distribution<double> gauss(0.0, 1.0);
        rep.min_injection_norm = -1;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::complex<double>> coeff(images.size());
            double cn = 0;
            for (auto& c : coeff) {
                c = {gauss(rng), gauss(rng)};
                cn += std::norm(c);
            }
            cn = std::sqrt(cn);
            OracleVec v(dw2.dim(), 0.0);
            for (std::size_t b = 0; b < images.size(); ++b)
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += coeff[b] * images[b][i];
            double ratio = vec_norm(v) / (cn * prn);
            if (rep.min_injection_norm < 0 || ratio < rep.min_injection_norm)
                rep.min_injection_norm = ratio;
        }
    }

    // the reduction values must not depend on which outer region was used
    rep.channel_agrees = true;
    for (std::uint32_t xm = 0; xm < (1u << edges.size()); ++xm)
        for (std::uint32_t zm = 0; zm < (1u << edges.size()); ++zm) {
            PauliMonomial p = window_word(win, edges, xm, zm, 0);
            std::vector<WeightedPauli> one = {{Cplx(Num(1)), p}};
            BoundaryElement a = boundary_channel(win, one, inner, outer1);
            BoundaryElement b = boundary_channel(win, one, inner, outer2);
            if (!be_equal(a, b)) rep.channel_agrees = false;
        }
    return rep;
}

Lto3Report verify_lto3(const Window& win, const LatticeRegion& inner_small,
                       const LatticeRegion& inner_large, const LatticeRegion& outer,
                       int samples, unsigned seed) {
    validate_region(win, inner_small);
    validate_region(win, inner_large);
    validate_region(win, outer);
    if (!region_edges(win, inner_small).is_subset_of(region_edges(win, inner_large)))
        fail(Errc::Validation, "inner regions are not nested");

    IntervalPair ips = shared_interval(win, inner_small, outer);
    IntervalPair ipl = shared_interval(win, inner_large, outer);

    Lto3Report rep;
    rep.sites_small = ips.iv.sites();
    rep.sites_large = ipl.iv.sites();
    rep.expected_small = Int(1) << (2 * rep.sites_small - 1);
    rep.expected_large = Int(1) << (2 * rep.sites_large - 1);
    rep.strict = ips.strict && ipl.strict;

    DenseWindow dw = make_dense_window(win, outer);
    std::vector<DensePauli> stabs = dense_stabilizers(dw, outer);
    rep.qubits = dw.qubits();

    std::mt19937 rng(seed);
    OracleVec pr = random_state(rng, dw.dim());
    apply_projector(dw, stabs, pr);

    auto compress_word = [&](const PauliMonomial& p) {
        OracleVec v = apply_pauli(dw, project_pauli(dw, p), pr);
        apply_projector(dw, stabs, v);
        return v;
    };

    auto group_images = [&](const LatticeRegion& inner) {
        std::vector<PauliMonomial> cb = commutant_basis(win, inner, outer);
        if (cb.size() > 12) fail(Errc::Resource, "commutant group too large for the dense sweep");
        std::vector<OracleVec> images;
        for (std::uint32_t which = 0; which < (1u << cb.size()); ++which) {
            PauliMonomial p = PauliMonomial::identity(win.edge_count());
            for (std::size_t i = 0; i < cb.size(); ++i)
                if ((which >> i) & 1u) p = pauli_mul(p, cb[i]);
            images.push_back(compress_word(p));
        }
        return images;
    };

    std::vector<OracleVec> small_images = group_images(inner_small);
    {
        std::vector<OracleVec> basis;
        for (const OracleVec& v : small_images) gs_insert(basis, v, 1e-6);
        rep.span_small = static_cast<int>(basis.size());
    }
    std::vector<OracleVec> basis; // large span, then the union grows on top
    for (const OracleVec& v : group_images(inner_large)) gs_insert(basis, v, 1e-6);
    rep.span_large = static_cast<int>(basis.size());
    for (OracleVec& v : small_images) gs_insert(basis, std::move(v), 1e-6);

    // random words on the large region: commutant words may not grow the
    // union, anything else must be annihilated by the compression
    std::vector<Stabilizer> win_stabs = stabilizer_generators(win, outer);
    std::vector<int> edges = region_edge_list(win, inner_large);
    if (edges.size() > 31) fail(Errc::Resource, "inner region too large for the random sweep");
    std::uniform_int_distribution<std::uint32_t> bits(0, (1u << edges.size()) - 1);
    rep.samples = samples;
    for (int s = 0; s < samples; ++s) {
        PauliMonomial p = window_word(win, edges, bits(rng), bits(rng), 0);
        bool commutes = true;
        for (const Stabilizer& st : win_stabs)
            if (!pauli_commute(p, st.op)) {
                commutes = false;
                break;
            }
        OracleVec v = compress_word(p);
        if (commutes) {
            gs_insert(basis, std::move(v), 1e-6);
        } else {
            rep.max_noncommutant_norm = std::max(rep.max_noncommutant_norm, vec_norm(v));
        }
    }
    rep.span_union = static_cast<int>(basis.size());
    return rep;
}

StateUniquenessReport verify_state_uniqueness(const Window& win, const LatticeRegion& lambda,
                                              const LatticeRegion& delta,
                                              const LatticeRegion& gamma, int samples,
                                              unsigned seed) {
    validate_region(win, lambda);
    validate_region(win, delta);
    validate_region(win, gamma);
    if (!region_edges(win, lambda).is_subset_of(region_edges(win, delta)) ||
        !region_edges(win, delta).is_subset_of(region_edges(win, gamma)))
        fail(Errc::Validation, "regions are not nested");
    if (samples < 1) fail(Errc::Validation, "need at least one sample");

    DenseWindow dwG = make_dense_window(win, gamma);
    std::vector<DensePauli> stabsG = dense_stabilizers(dwG, gamma);
    std::vector<DensePauli> stabsD_inG = dense_stabilizers(dwG, delta);

    StateUniquenessReport rep;
    rep.qubits = dwG.qubits();
    rep.samples = samples;

    std::mt19937 rng(seed);

    // net order: the bigger region's projector is absorbed by the smaller's
    {
        OracleVec r = random_state(rng, dwG.dim());
        OracleVec pGr = r;
        apply_projector(dwG, stabsG, pGr);
        OracleVec w = pGr;
        apply_projector(dwG, stabsD_inG, w);
        double d = 0;
        for (std::size_t i = 0; i < w.size(); ++i) d += std::norm(w[i] - pGr[i]);
        rep.net_order_residual = std::sqrt(d);
        OracleVec u = r;
        apply_projector(dwG, stabsD_inG, u);
        apply_projector(dwG, stabsG, u);
        d = 0;
        for (std::size_t i = 0; i < u.size(); ++i) d += std::norm(u[i] - pGr[i]);
        rep.net_order_residual = std::max(rep.net_order_residual, std::sqrt(d));
    }

    // scalar sweep over random inner words, cross-checked against the channel
    const int kProbes = 4;
    std::vector<OracleVec> probes;
    double norm2_sum = 0;
    for (int j = 0; j < kProbes; ++j) {
        OracleVec r = random_state(rng, dwG.dim());
        apply_projector(dwG, stabsG, r);
        norm2_sum += vec_norm(r) * vec_norm(r);
        probes.push_back(std::move(r));
    }
    std::vector<int> lam_edges = region_edge_list(win, lambda);
    if (lam_edges.empty()) fail(Errc::Validation, "inner region carries no edges");
    if (lam_edges.size() > 16) fail(Errc::Resource, "inner region too large for the sweep");
    std::uniform_int_distribution<std::uint32_t> bits(0, (1u << lam_edges.size()) - 1);
    std::uniform_int_distribution<int> phase_draw(0, 3);
    for (int s = 0; s < samples; ++s) {
        std::uint32_t xm = s == 0 ? 0 : bits(rng);
        std::uint32_t zm = s == 0 ? 0 : bits(rng);
        int ph = s == 0 ? 0 : phase_draw(rng);
        PauliMonomial p = window_word(win, lam_edges, xm, zm, ph);
        DensePauli x = project_pauli(dwG, p);
        std::vector<OracleVec> imgs;
        std::complex<double> acc = 0;
        for (const OracleVec& pr : probes) {
            OracleVec v = apply_pauli(dwG, x, pr);
            apply_projector(dwG, stabsG, v);
            acc += vec_dot(pr, v);
            imgs.push_back(std::move(v));
        }
        std::complex<double> c = acc / norm2_sum;
        for (int j = 0; j < kProbes; ++j) {
            double d = 0;
            for (std::size_t i = 0; i < imgs[std::size_t(j)].size(); ++i)
                d += std::norm(imgs[std::size_t(j)][i] - c * probes[std::size_t(j)][i]);
            rep.max_scalar_deviation = std::max(rep.max_scalar_deviation, std::sqrt(d));
        }
        std::complex<double> want = channel_scalar(win, p, lambda, gamma);
        rep.max_channel_mismatch = std::max(rep.max_channel_mismatch, std::abs(c - want));
        if (s == 0) rep.psi_one = std::abs(c - std::complex<double>(1, 0)) < 1e-10;
    }

    // reduced density matrices of the two projectors on the inner edges
    {
        DenseWindow dwD = make_dense_window(win, delta);
        std::vector<DensePauli> stabsD = dense_stabilizers(dwD, delta);
        std::uint32_t maskD = qubit_mask(dwD, lam_edges);
        std::uint32_t maskG = qubit_mask(dwG, lam_edges);
        auto rhoD = projector_partial_trace(dwD, stabsD, maskD);
        auto rhoG = projector_partial_trace(dwG, stabsG, maskG);
        const std::uint32_t S = 1u << lam_edges.size();
        double trD = 0, trG = 0;
        for (std::uint32_t i = 0; i < S; ++i) {
            trD += rhoD[std::size_t(i) * S + i].real();
            trG += rhoG[std::size_t(i) * S + i].real();
        }
        if (trD <= 0 || trG <= 0) fail(Errc::Internal, "reduced matrices lost their trace");
        double d = 0;
        for (std::size_t i = 0; i < rhoD.size(); ++i)
            d += std::norm(rhoD[i] / trD - rhoG[i] / trG);
        rep.trace_proportionality = std::sqrt(d);
    }
    return rep;
}

} // namespace bnet
