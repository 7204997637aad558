#include "core/boundary.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace bnet {

namespace {

bool parity64(std::uint64_t v) { return std::popcount(v) & 1; }

// Anticommuting generator pairs between x^a and y^b: y_j touches x_j, x_{j+1}.
int sym_count(std::uint64_t a, std::uint64_t b) {
    return std::popcount(a & b) + std::popcount(a & (b << 1));
}

void check_sites(int sites) {
    if (sites < 0 || sites > 63)
        fail(Errc::Validation, "boundary site count out of range (0..63)");
}

void check_monomial(const BoundaryMonomial& m) {
    check_sites(m.sites);
    std::uint64_t amask = m.sites == 0 ? 0 : (1ull << m.sites) - 1;
    std::uint64_t bmask = m.sites == 0 ? 0 : (1ull << (m.sites - 1)) - 1;
    if ((m.a & ~amask) != 0 || (m.b & ~bmask) != 0)
        fail(Errc::Validation, "boundary monomial exponents exceed the interval");
}

void check_compatible(const BoundaryMonomial& a, const BoundaryMonomial& b) {
    check_monomial(a);
    check_monomial(b);
    if (a.sites != b.sites || a.kind != b.kind)
        fail(Errc::Validation, "boundary monomials live on different intervals");
}

Cplx i_pow(int k) { return Cplx(Num(1)).times_i_pow(k); }

} // namespace

BoundaryMonomial boundary_identity(int sites, EdgeKind kind) {
    check_sites(sites);
    return {sites, kind, 0, 0, 0};
}

BoundaryMonomial boundary_x(int sites, EdgeKind kind, int t) {
    check_sites(sites);
    if (t < 0 || t >= sites) fail(Errc::Validation, "x generator index out of range");
    return {sites, kind, 0, 1ull << t, 0};
}

BoundaryMonomial boundary_y(int sites, EdgeKind kind, int t) {
    check_sites(sites);
    if (t < 0 || t + 1 >= sites) fail(Errc::Validation, "y generator index out of range");
    return {sites, kind, 0, 0, 1ull << t};
}

BoundaryMonomial boundary_mul(const BoundaryMonomial& a, const BoundaryMonomial& b) {
    check_compatible(a, b);
    BoundaryMonomial out;
    out.sites = a.sites;
    out.kind = a.kind;
    // move y^{b_1} through x^{a_2}; everything else commutes
    out.phase = (a.phase + b.phase + 2 * (sym_count(b.a, a.b) & 1)) & 3;
    out.a = a.a ^ b.a;
    out.b = a.b ^ b.b;
    return out;
}

BoundaryMonomial boundary_adjoint(const BoundaryMonomial& a) {
    check_monomial(a);
    BoundaryMonomial out = a;
    out.phase = (4 - (a.phase & 3) + 2 * (sym_count(a.a, a.b) & 1)) & 3;
    return out;
}

bool boundary_commute(const BoundaryMonomial& a, const BoundaryMonomial& b) {
    check_compatible(a, b);
    return (sym_count(a.a, b.b) & 1) == (sym_count(b.a, a.b) & 1);
}

bool boundary_hermitian(const BoundaryMonomial& a) {
    check_monomial(a);
    return (a.phase & 1) == (sym_count(a.a, a.b) & 1);
}

std::string boundary_str(const BoundaryMonomial& m) {
    check_monomial(m);
    std::string out;
    if (m.phase & 3) out = "i^" + std::to_string(m.phase & 3);
    auto append = [&out](char letter, int t) {
        if (!out.empty()) out += ' ';
        out += letter;
        out += std::to_string(t);
    };
    for (int t = 0; t < m.sites; ++t)
        if ((m.a >> t) & 1) append('x', t);
    for (int t = 0; t + 1 < m.sites; ++t)
        if ((m.b >> t) & 1) append('y', t);
    return out.empty() ? "1" : out;
}

ChainPauli chain_mul(const ChainPauli& a, const ChainPauli& b) {
    if (a.sites != b.sites) fail(Errc::Validation, "chain words live on different chains");
    ChainPauli out;
    out.sites = a.sites;
    out.phase = (a.phase + b.phase + 2 * parity64(a.zs & b.xs)) & 3;
    out.xs = a.xs ^ b.xs;
    out.zs = a.zs ^ b.zs;
    return out;
}

ChainPauli chain_adjoint(const ChainPauli& a) {
    ChainPauli out = a;
    out.phase = (4 - (a.phase & 3) + 2 * parity64(a.xs & a.zs)) & 3;
    return out;
}

bool chain_commute(const ChainPauli& a, const ChainPauli& b) {
    if (a.sites != b.sites) fail(Errc::Validation, "chain words live on different chains");
    return parity64(a.xs & b.zs) == parity64(a.zs & b.xs);
}

bool chain_hermitian(const ChainPauli& a) {
    return (a.phase & 1) == (parity64(a.xs & a.zs) ? 1 : 0);
}

std::string chain_str(const ChainPauli& p) {
    std::string out;
    if (p.phase & 3) out = "i^" + std::to_string(p.phase & 3);
    auto append = [&out](char letter, int t) {
        if (!out.empty()) out += ' ';
        out += letter;
        out += std::to_string(t);
    };
    for (int t = 0; t < p.sites; ++t)
        if ((p.xs >> t) & 1) append('X', t);
    for (int t = 0; t < p.sites; ++t)
        if ((p.zs >> t) & 1) append('Z', t);
    return out.empty() ? "1" : out;
}

ChainPauli chain_rep(const BoundaryMonomial& m) {
    check_monomial(m);
    std::uint64_t w = m.b ^ (m.b << 1); // y_j expands to adjacent letters j, j+1
    ChainPauli out;
    out.sites = m.sites;
    if (m.kind == EdgeKind::Rough) {
        out.phase = m.phase & 3;
        out.xs = m.a;
        out.zs = w;
    } else {
        // smooth swaps the letter types, so Z^a has to pass through X^w
        out.phase = (m.phase + 2 * parity64(m.a & w)) & 3;
        out.xs = w;
        out.zs = m.a;
    }
    return out;
}

BoundaryElement be_zero(int sites, EdgeKind kind) {
    check_sites(sites);
    BoundaryElement e;
    e.sites = sites;
    e.kind = kind;
    return e;
}

BoundaryElement be_monomial(const BoundaryMonomial& m) {
    BoundaryElement e = be_zero(m.sites, m.kind);
    be_accumulate(e, m, Cplx(Num(1)));
    return e;
}

void be_accumulate(BoundaryElement& e, const BoundaryMonomial& m, const Cplx& c) {
    check_monomial(m);
    if (m.sites != e.sites || m.kind != e.kind)
        fail(Errc::Validation, "boundary monomial does not match the element's interval");
    if (c.is_zero()) return;
    auto key = std::make_pair(m.a, m.b);
    Cplx& slot = e.terms[key];
    slot += c.times_i_pow(m.phase);
    if (slot.is_zero()) e.terms.erase(key);
}

BoundaryElement be_add(const BoundaryElement& a, const BoundaryElement& b) {
    if (a.sites != b.sites || a.kind != b.kind)
        fail(Errc::Validation, "boundary elements live on different intervals");
    BoundaryElement out = a;
    for (const auto& [key, c] : b.terms) {
        Cplx& slot = out.terms[key];
        slot += c;
        if (slot.is_zero()) out.terms.erase(key);
    }
    return out;
}

BoundaryElement be_scale(const Cplx& c, const BoundaryElement& a) {
    BoundaryElement out = be_zero(a.sites, a.kind);
    if (c.is_zero()) return out;
    for (const auto& [key, v] : a.terms) out.terms[key] = c * v;
    return out;
}

BoundaryElement be_mul(const BoundaryElement& a, const BoundaryElement& b) {
    if (a.sites != b.sites || a.kind != b.kind)
        fail(Errc::Validation, "boundary elements live on different intervals");
    BoundaryElement out = be_zero(a.sites, a.kind);
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            BoundaryMonomial m1{a.sites, a.kind, 0, ka.first, ka.second};
            BoundaryMonomial m2{a.sites, a.kind, 0, kb.first, kb.second};
            be_accumulate(out, boundary_mul(m1, m2), ca * cb);
        }
    return out;
}

BoundaryElement be_adjoint(const BoundaryElement& a) {
    BoundaryElement out = be_zero(a.sites, a.kind);
    for (const auto& [key, c] : a.terms) {
        BoundaryMonomial m{a.sites, a.kind, 0, key.first, key.second};
        be_accumulate(out, boundary_adjoint(m), c.conj());
    }
    return out;
}

std::string be_str(const BoundaryElement& e) {
    if (e.terms.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : e.terms) {
        if (!out.empty()) out += " + ";
        std::string coeff =
            c.is_real() ? c.re.str() : "(" + c.re.str() + ", " + c.im.str() + ")";
        BoundaryMonomial m{e.sites, e.kind, 0, key.first, key.second};
        std::string mon = boundary_str(m);
        out += mon == "1" ? coeff : coeff + " * " + mon;
    }
    return out;
}

Cplx boundary_state(const BoundaryElement& e) {
    auto it = e.terms.find({0, 0});
    return it == e.terms.end() ? Cplx() : it->second;
}

Cplx product_state_z(const BoundaryElement& e) {
    // survives iff the chain word has no sigma^X letters
    Cplx s;
    for (const auto& [key, c] : e.terms) {
        bool keeps = e.kind == EdgeKind::Rough ? key.first == 0 : key.second == 0;
        if (keeps) s += c;
    }
    return s;
}

Cplx product_state_x(const BoundaryElement& e) {
    Cplx s;
    for (const auto& [key, c] : e.terms) {
        bool keeps = e.kind == EdgeKind::Rough ? key.second == 0 : key.first == 0;
        if (keeps) s += c;
    }
    return s;
}

BoundaryElement boundary_channel(const Window& win, const std::vector<WeightedPauli>& x,
                                 const LatticeRegion& inner, const LatticeRegion& outer) {
    // probe with the identity to learn the interval geometry (and surface any
    // Validation error even for an empty input)
    ReduceResult probe =
        pauli_reduce(win, PauliMonomial::identity(win.edge_count()), inner, outer);
    BoundaryElement out = be_zero(probe.boundary.sites, probe.boundary.kind);
    for (const auto& wp : x) {
        ReduceResult r = pauli_reduce(win, wp.op, inner, outer);
        if (!r.commutes) continue; // annihilated by the conditional expectation
        if (r.boundary.sites != out.sites || r.boundary.kind != out.kind)
            fail(Errc::Internal, "reduction reported inconsistent interval data");
        be_accumulate(out, r.boundary, wp.coeff);
    }
    return out;
}

BoundaryAlgebraInfo boundary_algebra(int sites, EdgeKind kind) {
    if (sites < 1 || sites > 8)
        fail(Errc::Validation, "boundary algebra site count out of range (1..8)");
    BoundaryAlgebraInfo info;
    info.sites = sites;
    info.kind = kind;
    info.dimension = Int(1) << (2 * sites - 1);
    info.block_side = Int(1) << (sites - 1);

    std::uint64_t na = 1ull << sites, nb = 1ull << (sites - 1);
    info.basis.reserve(std::size_t(na * nb));
    for (std::uint64_t a = 0; a < na; ++a)
        for (std::uint64_t b = 0; b < nb; ++b)
            info.basis.push_back({sites, kind, 0, a, b});

    std::vector<BoundaryMonomial> gens;
    for (int t = 0; t < sites; ++t) gens.push_back(boundary_x(sites, kind, t));
    for (int t = 0; t + 1 < sites; ++t) gens.push_back(boundary_y(sites, kind, t));

    std::vector<BoundaryMonomial> central;
    for (const auto& m : info.basis) {
        bool commutes_all = true;
        for (const auto& g : gens)
            if (!boundary_commute(m, g)) {
                commutes_all = false;
                break;
            }
        if (commutes_all) central.push_back(m);
    }
    info.center_dim = static_cast<int>(central.size());
    if (info.center_dim != 2 || !central[0].is_scalar())
        fail(Errc::Internal, "center scan disagrees with the two-block structure");
    info.central = central[1]; // the x-parity element
    return info;
}

namespace {

// path index per label bitstring; bit k of t is the step-k label
std::vector<long long> z2_path_table(PathAlgebra& alg, int n) {
    if (alg.ring().rank() != 2)
        fail(Errc::Validation, "interval isomorphism needs the Z/2 path net");
    std::vector<long long> idx(std::size_t(1) << n);
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (std::uint64_t t = 0; t < idx.size(); ++t) {
        for (int k = 0; k < n; ++k) labels[std::size_t(k)] = int((t >> k) & 1);
        idx[t] = alg.path_index_by_labels(n, labels);
    }
    return idx;
}

std::string op_key(const PathPairOperator& op) {
    std::ostringstream os;
    for (const auto& [kb, c] : op.terms) {
        if (c.is_zero()) continue;
        os << kb.first << ':' << kb.second << ':' << c.re.str() << ':' << c.im.str() << ';';
    }
    return os.str();
}

bool op_equal(const PathPairOperator& x, const PathPairOperator& y) {
    return x.level == y.level && op_key(x) == op_key(y);
}

} // namespace

PathPairOperator iso_image(PathAlgebra& alg, const BoundaryMonomial& m) {
    check_monomial(m);
    if (m.sites < 1) fail(Errc::Validation, "interval isomorphism needs at least one site");
    auto paths = z2_path_table(alg, m.sites);
    std::uint64_t w = m.b ^ (m.b << 1);
    PathPairOperator out;
    out.level = m.sites;
    for (std::uint64_t t = 0; t < (1ull << m.sites); ++t) {
        Cplx c = i_pow(m.phase);
        if (parity64(m.a & t)) c = -c;
        out.add_term(paths[t], paths[t ^ w], c);
    }
    return out;
}

FusionNetIsoReport fusion_net_iso(int sites, EdgeKind kind) {
    if (sites < 1 || sites > 4)
        fail(Errc::Validation, "interval isomorphism site count out of range (1..4)");
    auto ring = std::make_shared<FusionRing>(builtin_ring("hilb_z2"));
    fp_dimensions(*ring);
    PathAlgebra alg(build_fusion_graph(ring, {}), sites);

    FusionNetIsoReport rep;
    rep.sites = sites;
    rep.kind = kind;
    rep.dimension = Int(1) << (2 * sites - 1);
    rep.ambient = Int(1) << (2 * sites);
    rep.block_dims = alg.level_dims(sites);

    BoundaryAlgebraInfo info = boundary_algebra(sites, kind);
    std::vector<PathPairOperator> img;
    img.reserve(info.basis.size());
    for (const auto& m : info.basis) img.push_back(iso_image(alg, m));

    PathPairOperator one = identity_op(alg, sites);

    // generator dictionary: self-adjoint involutions, y_j anticommutes with
    // exactly x_j and x_{j+1}, all other pairs commute
    std::vector<BoundaryMonomial> gens;
    for (int t = 0; t < sites; ++t) gens.push_back(boundary_x(sites, kind, t));
    for (int t = 0; t + 1 < sites; ++t) gens.push_back(boundary_y(sites, kind, t));
    rep.relations_ok = true;
    std::vector<PathPairOperator> gimg;
    for (const auto& g : gens) {
        PathPairOperator og = iso_image(alg, g);
        rep.relations_ok = rep.relations_ok && op_equal(adjoint(og), og) &&
                           op_equal(multiply(alg, og, og), one);
        gimg.push_back(std::move(og));
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            bool ix = i < std::size_t(sites); // x generators come first
            bool jx = j < std::size_t(sites);
            int xi = ix ? int(i) : int(j);
            int yj = ix ? int(j) - sites : int(i) - sites;
            bool anti = (ix != jx) && (xi == yj || xi == yj + 1);
            PathPairOperator lhs = multiply(alg, gimg[i], gimg[j]);
            PathPairOperator rhs = multiply(alg, gimg[j], gimg[i]);
            if (anti) rhs = scale(Cplx(Num(-1)), rhs);
            rep.relations_ok = rep.relations_ok && op_equal(lhs, rhs);
        }

    rep.table_ok = true;
    for (std::size_t i = 0; i < info.basis.size() && rep.table_ok; ++i)
        for (std::size_t j = 0; j < info.basis.size(); ++j) {
            PathPairOperator lhs = multiply(alg, img[i], img[j]);
            PathPairOperator rhs = iso_image(alg, boundary_mul(info.basis[i], info.basis[j]));
            if (!op_equal(lhs, rhs)) {
                rep.table_ok = false;
                break;
            }
        }

    rep.parity_ok = true;
    for (const auto& op : img)
        for (const auto& [kb, c] : op.terms)
            if (alg.path_range(sites, kb.first) != alg.path_range(sites, kb.second))
                rep.parity_ok = false;

    std::set<std::string> keys;
    for (const auto& op : img) keys.insert(op_key(op));
    rep.injective_ok = keys.size() == img.size();

    rep.markov_matches_state = true;
    rep.canonical_matches_state = true;
    rep.unit_state_matches = true;
    rep.regular_state_matches = true;
    for (std::size_t i = 0; i < info.basis.size(); ++i) {
        BoundaryElement e = be_monomial(info.basis[i]);
        Cplx psi = boundary_state(e);
        Cplx phi_z = product_state_z(e);
        Cplx phi_x = product_state_x(e);
        rep.markov_matches_state =
            rep.markov_matches_state && markov_trace(alg, img[i]) == psi;
        rep.canonical_matches_state =
            rep.canonical_matches_state && canonical_state(alg, img[i]) == psi;
        // the unit-label state keeps exactly the y-free monomials, which is
        // phi_X on a rough interval and phi_Z on a smooth one
        Cplx unit_expect = kind == EdgeKind::Rough ? phi_x : phi_z;
        Cplx reg_expect = kind == EdgeKind::Rough ? phi_z : phi_x;
        rep.unit_state_matches =
            rep.unit_state_matches && unit_state(alg, img[i]) == unit_expect;
        rep.regular_state_matches =
            rep.regular_state_matches && regular_q_state(alg, img[i]) == reg_expect;
    }
    return rep;
}

DiagonalNetReport diagonal_net(int sites, int offset) {
    if (sites < 2 || sites > 63)
        fail(Errc::Validation, "diagonal net site count out of range (2..63)");
    DiagonalNetReport rep;
    rep.sites = sites;
    rep.offset = offset;
    for (int k = 0; k + 1 < sites; ++k) {
        std::uint64_t mask = (1ull << k) | (1ull << (k + 1));
        bool ztype = (((k - offset) % 2) + 2) % 2 == 0;
        ChainPauli g;
        g.sites = sites;
        (ztype ? g.zs : g.xs) = mask;
        rep.gens.push_back(g);
    }

    rep.relations_ok = true;
    for (std::size_t i = 0; i < rep.gens.size(); ++i) {
        const ChainPauli& g = rep.gens[i];
        rep.relations_ok =
            rep.relations_ok && chain_hermitian(g) && chain_mul(g, g).is_identity();
        for (std::size_t j = i + 1; j < rep.gens.size(); ++j) {
            bool comm = chain_commute(rep.gens[i], rep.gens[j]);
            rep.relations_ok = rep.relations_ok && (j - i == 1 ? !comm : comm);
        }
    }

    // F2 span of the (xs, zs) rows
    std::map<int, std::pair<std::uint64_t, std::uint64_t>> pivots;
    auto lead = [](std::pair<std::uint64_t, std::uint64_t> r) -> int {
        if (r.first) return 64 + std::bit_width(r.first) - 1;
        if (r.second) return std::bit_width(r.second) - 1;
        return -1;
    };
    int rank = 0;
    for (const auto& g : rep.gens) {
        std::pair<std::uint64_t, std::uint64_t> row{g.xs, g.zs};
        while (true) {
            int l = lead(row);
            if (l < 0) break;
            auto it = pivots.find(l);
            if (it == pivots.end()) {
                pivots.emplace(l, row);
                ++rank;
                break;
            }
            row.first ^= it->second.first;
            row.second ^= it->second.second;
        }
    }
    rep.span_dim = Int(1) << rank;
    return rep;
}

} // namespace bnet
