#include "core/toric.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace bnet {

namespace {

[[noreturn]] void bad_edge(const char* what, int x, int y) {
    fail(Errc::Validation, std::string(what) + " edge (" + std::to_string(x) + "," +
                               std::to_string(y) + ") outside the window");
}

} // namespace

int Window::e_index(int x, int y) const {
    if (!e_in(x, y)) bad_edge("east", x, y);
    return y * (W - 1) + x;
}

int Window::n_index(int x, int y) const {
    if (!n_in(x, y)) bad_edge("north", x, y);
    return e_count() + y * W + x;
}

Window::EdgeCoord Window::edge_coord(int idx) const {
    if (idx < 0 || idx >= edge_count()) fail(Errc::Validation, "edge index out of range");
    if (idx < e_count()) return {true, idx % (W - 1), idx / (W - 1)};
    int k = idx - e_count();
    return {false, k % W, k / W};
}

Window make_window(int w, int h) {
    if (w < 2 || h < 2 || w > 4096 || h > 4096)
        fail(Errc::Validation, "window dimensions must lie in [2, 4096]");
    return Window{w, h};
}

BitVec::BitVec(int bits) : bits_(bits), w_((bits + 63) / 64, 0) {
    if (bits < 0) fail(Errc::Validation, "negative bit vector size");
}

bool BitVec::get(int i) const {
    if (i < 0 || i >= bits_) fail(Errc::Internal, "bit index out of range");
    return (w_[i >> 6] >> (i & 63)) & 1u;
}

void BitVec::set(int i, bool v) {
    if (i < 0 || i >= bits_) fail(Errc::Internal, "bit index out of range");
    std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
        w_[i >> 6] |= m;
    else
        w_[i >> 6] &= ~m;
}

void BitVec::flip(int i) { set(i, !get(i)); }

void BitVec::clear() { std::fill(w_.begin(), w_.end(), 0); }

static void check_same_size(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) fail(Errc::Internal, "bit vector size mismatch");
}

BitVec& BitVec::operator^=(const BitVec& o) {
    check_same_size(*this, o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
    check_same_size(*this, o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

BitVec& BitVec::operator|=(const BitVec& o) {
    check_same_size(*this, o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
}

bool BitVec::any() const {
    for (auto w : w_)
        if (w) return true;
    return false;
}

int BitVec::count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
}

bool BitVec::parity_and(const BitVec& o) const {
    check_same_size(*this, o);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) acc ^= (w_[i] & o.w_[i]);
    return std::popcount(acc) & 1;
}

bool BitVec::is_subset_of(const BitVec& o) const {
    check_same_size(*this, o);
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

std::vector<int> BitVec::ones() const {
    std::vector<int> out;
    for (int i = 0; i < bits_; ++i)
        if (get(i)) out.push_back(i);
    return out;
}

bool operator==(const BitVec& a, const BitVec& b) {
    return a.bits_ == b.bits_ && a.w_ == b.w_;
}

PauliMonomial PauliMonomial::identity(int nbits) {
    PauliMonomial p;
    p.xs = BitVec(nbits);
    p.zs = BitVec(nbits);
    return p;
}

PauliMonomial pauli_mul(const PauliMonomial& a, const PauliMonomial& b) {
    // (X^a1 Z^b1)(X^a2 Z^b2) = (-1)^{b1.a2} X^{a1+a2} Z^{b1+b2}
    PauliMonomial r;
    r.phase = (a.phase + b.phase + 2 * (a.zs.parity_and(b.xs) ? 1 : 0)) & 3;
    r.xs = a.xs ^ b.xs;
    r.zs = a.zs ^ b.zs;
    return r;
}

PauliMonomial pauli_adjoint(const PauliMonomial& a) {
    PauliMonomial r = a;
    r.phase = ((4 - a.phase) + 2 * (a.xs.parity_and(a.zs) ? 1 : 0)) & 3;
    return r;
}

bool pauli_commute(const PauliMonomial& a, const PauliMonomial& b) {
    return a.xs.parity_and(b.zs) == a.zs.parity_and(b.xs);
}

bool pauli_hermitian(const PauliMonomial& a) {
    // P† = i^{-p}(-1)^{xs.zs} X^{xs} Z^{zs}, so P is hermitian iff p = xs.zs mod 2
    return (a.phase & 1) == (a.xs.parity_and(a.zs) ? 1 : 0);
}

PauliMonomial pauli_parse(const Window& win, const std::string& text) {
    PauliMonomial acc = PauliMonomial::identity(win.edge_count());
    std::istringstream in(text);
    std::string tok;
    bool saw_any = false;
    while (in >> tok) {
        saw_any = true;
        if (tok == "1") continue;
        if (tok.rfind("i^", 0) == 0) {
            if (tok.size() != 3 || tok[2] < '0' || tok[2] > '3')
                fail(Errc::Parse, "phase token must be i^k with k in 0..3: " + tok);
            PauliMonomial ph = PauliMonomial::identity(win.edge_count());
            ph.phase = tok[2] - '0';
            acc = pauli_mul(acc, ph);
            continue;
        }
        char kind = tok[0];
        if ((kind != 'X' && kind != 'Z') || tok.size() < 8 || tok[1] != '@' || tok[2] != '(' ||
            tok.back() != ')')
            fail(Errc::Parse, "bad Pauli factor: " + tok);
        std::string body = tok.substr(3, tok.size() - 4);
        int x = 0, y = 0;
        char dir = 0, c1 = 0, c2 = 0;
        std::istringstream bs(body);
        if (!(bs >> x >> c1 >> y >> c2 >> dir) || c1 != ',' || c2 != ',' ||
            (dir != 'e' && dir != 'n') || (bs >> tok))
            fail(Errc::Parse, "bad Pauli factor: " + std::string(1, kind) + "@(" + body + ")");
        int e;
        if (dir == 'e') {
            if (!win.e_in(x, y)) fail(Errc::Validation, "factor references an edge outside the window");
            e = win.e_index(x, y);
        } else {
            if (!win.n_in(x, y)) fail(Errc::Validation, "factor references an edge outside the window");
            e = win.n_index(x, y);
        }
        PauliMonomial f = PauliMonomial::identity(win.edge_count());
        (kind == 'X' ? f.xs : f.zs).set(e, true);
        acc = pauli_mul(acc, f);
    }
    if (!saw_any) fail(Errc::Parse, "empty Pauli monomial");
    return acc;
}

std::string pauli_str(const Window& win, const PauliMonomial& p) {
    std::string out;
    if (p.phase != 0) out = "i^" + std::to_string(p.phase);
    auto emit = [&](const BitVec& bits, char kind) {
        for (int e : bits.ones()) {
            auto c = win.edge_coord(e);
            if (!out.empty()) out += ' ';
            out += kind;
            out += "@(" + std::to_string(c.x) + "," + std::to_string(c.y) + "," +
                   (c.east ? "e" : "n") + ")";
        }
    };
    emit(p.xs, 'X');
    emit(p.zs, 'Z');
    if (out.empty()) out = "1";
    return out;
}

Side opposite(Side s) {
    switch (s) {
        case Side::West: return Side::East;
        case Side::East: return Side::West;
        case Side::South: return Side::North;
        case Side::North: return Side::South;
    }
    fail(Errc::Internal, "bad side");
}

const char* side_name(Side s) {
    switch (s) {
        case Side::West: return "west";
        case Side::East: return "east";
        case Side::South: return "south";
        case Side::North: return "north";
    }
    fail(Errc::Internal, "bad side");
}

LatticeRegion region_parse(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    if (!(in >> word) || word != "rect") fail(Errc::Parse, "region must start with 'rect'");
    LatticeRegion r;
    if (!(in >> r.x0 >> r.y0 >> r.x1 >> r.y1)) fail(Errc::Parse, "region needs four integer bounds");
    std::vector<std::string> kinds;
    while (in >> word) kinds.push_back(word);
    if (kinds.empty()) {
        r.kind = {EdgeKind::Rough, EdgeKind::Rough, EdgeKind::Rough, EdgeKind::Rough};
    } else if (kinds.size() == 4) {
        for (int i = 0; i < 4; ++i) {
            if (kinds[i] == "rough")
                r.kind[i] = EdgeKind::Rough;
            else if (kinds[i] == "smooth")
                r.kind[i] = EdgeKind::Smooth;
            else
                fail(Errc::Parse, "side kind must be rough or smooth: " + kinds[i]);
        }
    } else {
        fail(Errc::Parse, "region takes zero or four side kinds (west east south north)");
    }
    return r;
}

std::string region_str(const LatticeRegion& r) {
    std::string out = "rect " + std::to_string(r.x0) + " " + std::to_string(r.y0) + " " +
                      std::to_string(r.x1) + " " + std::to_string(r.y1);
    for (int i = 0; i < 4; ++i)
        out += std::string(" ") + (r.kind[i] == EdgeKind::Rough ? "rough" : "smooth");
    return out;
}

void validate_region(const Window& win, const LatticeRegion& r) {
    if (r.x0 > r.x1 || r.y0 > r.y1) fail(Errc::Validation, "region rectangle is inverted");
    if (r.x0 < 0 || r.y0 < 0 || r.x1 >= win.W || r.y1 >= win.H)
        fail(Errc::Validation, "region vertices fall outside the window");
    if (r.side_kind(Side::West) == EdgeKind::Rough && r.x0 - 1 < 0)
        fail(Errc::Validation, "west danglings fall outside the window");
    if (r.side_kind(Side::East) == EdgeKind::Rough && r.x1 > win.W - 2)
        fail(Errc::Validation, "east danglings fall outside the window");
    if (r.side_kind(Side::South) == EdgeKind::Rough && r.y0 - 1 < 0)
        fail(Errc::Validation, "south danglings fall outside the window");
    if (r.side_kind(Side::North) == EdgeKind::Rough && r.y1 > win.H - 2)
        fail(Errc::Validation, "north danglings fall outside the window");
}

BitVec region_edges(const Window& win, const LatticeRegion& r) {
    validate_region(win, r);
    BitVec out(win.edge_count());
    for (int y = r.y0; y <= r.y1; ++y)
        for (int x = r.x0; x < r.x1; ++x) out.set(win.e_index(x, y), true);
    for (int y = r.y0; y < r.y1; ++y)
        for (int x = r.x0; x <= r.x1; ++x) out.set(win.n_index(x, y), true);
    if (r.side_kind(Side::West) == EdgeKind::Rough)
        for (int y = r.y0; y <= r.y1; ++y) out.set(win.e_index(r.x0 - 1, y), true);
    if (r.side_kind(Side::East) == EdgeKind::Rough)
        for (int y = r.y0; y <= r.y1; ++y) out.set(win.e_index(r.x1, y), true);
    if (r.side_kind(Side::South) == EdgeKind::Rough)
        for (int x = r.x0; x <= r.x1; ++x) out.set(win.n_index(x, r.y0 - 1), true);
    if (r.side_kind(Side::North) == EdgeKind::Rough)
        for (int x = r.x0; x <= r.x1; ++x) out.set(win.n_index(x, r.y1), true);
    return out;
}

std::vector<int> region_edge_list(const Window& win, const LatticeRegion& r) {
    return region_edges(win, r).ones();
}

std::array<int, 4> star_edges(const Window& win, int x, int y) {
    if (x < 1 || x > win.W - 2 || y < 1 || y > win.H - 2)
        fail(Errc::Validation, "star vertex must be interior to the window");
    return {win.e_index(x - 1, y), win.e_index(x, y), win.n_index(x, y - 1), win.n_index(x, y)};
}

std::array<int, 4> plaquette_edges(const Window& win, int x, int y) {
    if (x < 0 || x > win.W - 2 || y < 0 || y > win.H - 2)
        fail(Errc::Validation, "plaquette cell must lie inside the window");
    return {win.e_index(x, y), win.e_index(x, y + 1), win.n_index(x, y), win.n_index(x + 1, y)};
}

PauliMonomial star_op(const Window& win, int x, int y) {
    PauliMonomial p = PauliMonomial::identity(win.edge_count());
    for (int e : star_edges(win, x, y)) p.xs.set(e, true);
    return p;
}

PauliMonomial plaquette_op(const Window& win, int x, int y) {
    PauliMonomial p = PauliMonomial::identity(win.edge_count());
    for (int e : plaquette_edges(win, x, y)) p.zs.set(e, true);
    return p;
}

std::vector<Stabilizer> stabilizer_generators(const Window& win, const LatticeRegion& r) {
    BitVec edges = region_edges(win, r);
    std::vector<Stabilizer> out;
    for (int y = 1; y <= win.H - 2; ++y)
        for (int x = 1; x <= win.W - 2; ++x) {
            auto es = star_edges(win, x, y);
            if (std::all_of(es.begin(), es.end(), [&](int e) { return edges.get(e); }))
                out.push_back({star_op(win, x, y), true, x, y});
        }
    for (int y = 0; y <= win.H - 2; ++y)
        for (int x = 0; x <= win.W - 2; ++x) {
            auto es = plaquette_edges(win, x, y);
            if (std::all_of(es.begin(), es.end(), [&](int e) { return edges.get(e); }))
                out.push_back({plaquette_op(win, x, y), false, x, y});
        }
    return out;
}

SurroundInfo region_relation(const Window& win, const LatticeRegion& inner,
                             const LatticeRegion& outer, int s) {
    validate_region(win, inner);
    validate_region(win, outer);
    if (s < 1) fail(Errc::Validation, "surround constant must be positive");
    SurroundInfo info;
    info.margin[static_cast<int>(Side::West)] = inner.x0 - outer.x0;
    info.margin[static_cast<int>(Side::East)] = outer.x1 - inner.x1;
    info.margin[static_cast<int>(Side::South)] = inner.y0 - outer.y0;
    info.margin[static_cast<int>(Side::North)] = outer.y1 - inner.y1;
    info.contained = region_edges(win, inner).is_subset_of(region_edges(win, outer));

    bool nonneg = true;
    info.margins_ok = true;
    for (int i = 0; i < 4; ++i) {
        if (info.margin[i] < 0) nonneg = false;
        if (info.margin[i] == 0) {
            ++info.shared_sides;
            if (inner.kind[i] != outer.kind[i]) info.kinds_match = false;
        } else if (info.margin[i] < s) {
            info.margins_ok = false;
        }
    }
    if (!nonneg) {
        info.margins_ok = false;
        return info;
    }

    if (info.shared_sides == 1 && info.kinds_match && info.contained) {
        Side shared = Side::West;
        for (int i = 0; i < 4; ++i)
            if (info.margin[i] == 0) shared = static_cast<Side>(i);
        BoundaryInterval iv;
        iv.side = shared;
        iv.kind = inner.side_kind(shared);
        switch (shared) {
            case Side::West: iv.coord = inner.x0; iv.lo = inner.y0; iv.hi = inner.y1; break;
            case Side::East: iv.coord = inner.x1; iv.lo = inner.y0; iv.hi = inner.y1; break;
            case Side::South: iv.coord = inner.y0; iv.lo = inner.x0; iv.hi = inner.x1; break;
            case Side::North: iv.coord = inner.y1; iv.lo = inner.x0; iv.hi = inner.x1; break;
        }
        if (iv.sites() >= 1) info.interval = iv;
    }

    if (info.contained && info.kinds_match && info.margins_ok) {
        if (info.shared_sides == 0)
            info.rel = SurroundRel::CompletelySurrounds;
        else if (info.shared_sides == 1 && info.interval)
            info.rel = SurroundRel::SurroundsWithBoundary;
    }
    return info;
}

namespace {

// Interval site geometry. A rough interval's sites are its dangling edges
// with "mid" edges between consecutive sites; a smooth interval's sites are
// the boundary edges along the side with "rung" edges pointing inward, one
// per vertex of the side.
int iv_site_edge(const Window& win, const BoundaryInterval& iv, int t) {
    if (t < 0 || t >= iv.sites()) fail(Errc::Internal, "interval site out of range");
    if (iv.kind == EdgeKind::Rough) {
        switch (iv.side) {
            case Side::East: return win.e_index(iv.coord, iv.lo + t);
            case Side::West: return win.e_index(iv.coord - 1, iv.lo + t);
            case Side::North: return win.n_index(iv.lo + t, iv.coord);
            case Side::South: return win.n_index(iv.lo + t, iv.coord - 1);
        }
    } else {
        switch (iv.side) {
            case Side::East:
            case Side::West: return win.n_index(iv.coord, iv.lo + t);
            case Side::North:
            case Side::South: return win.e_index(iv.lo + t, iv.coord);
        }
    }
    fail(Errc::Internal, "bad side");
}

int iv_mid_edge(const Window& win, const BoundaryInterval& iv, int t) {
    if (iv.kind != EdgeKind::Rough || t < 0 || t >= iv.sites() - 1)
        fail(Errc::Internal, "interval mid edge out of range");
    switch (iv.side) {
        case Side::East:
        case Side::West: return win.n_index(iv.coord, iv.lo + t);
        case Side::North:
        case Side::South: return win.e_index(iv.lo + t, iv.coord);
    }
    fail(Errc::Internal, "bad side");
}

int iv_rung_edge(const Window& win, const BoundaryInterval& iv, int u) {
    if (iv.kind != EdgeKind::Smooth || u < 0 || u > iv.sites())
        fail(Errc::Internal, "interval rung out of range");
    switch (iv.side) {
        case Side::East: return win.e_index(iv.coord - 1, iv.lo + u);
        case Side::West: return win.e_index(iv.coord, iv.lo + u);
        case Side::North: return win.n_index(iv.lo + u, iv.coord - 1);
        case Side::South: return win.n_index(iv.lo + u, iv.coord);
    }
    fail(Errc::Internal, "bad side");
}

} // namespace

PauliMonomial embedded_x_generator(const Window& win, const BoundaryInterval& iv, int t) {
    if (t < 0 || t >= iv.sites()) fail(Errc::Validation, "x generator index out of range");
    PauliMonomial p = PauliMonomial::identity(win.edge_count());
    int e = iv_site_edge(win, iv, t);
    (iv.kind == EdgeKind::Rough ? p.xs : p.zs).set(e, true);
    return p;
}

PauliMonomial embedded_y_generator(const Window& win, const BoundaryInterval& iv, int t) {
    if (t < 0 || t >= iv.sites() - 1) fail(Errc::Validation, "y generator index out of range");
    PauliMonomial p = PauliMonomial::identity(win.edge_count());
    if (iv.kind == EdgeKind::Rough) {
        p.zs.set(iv_site_edge(win, iv, t), true);
        p.zs.set(iv_site_edge(win, iv, t + 1), true);
        p.zs.set(iv_mid_edge(win, iv, t), true);
    } else {
        p.xs.set(iv_site_edge(win, iv, t), true);
        p.xs.set(iv_site_edge(win, iv, t + 1), true);
        p.xs.set(iv_rung_edge(win, iv, t + 1), true);
    }
    return p;
}

PauliMonomial embedded_boundary_monomial(const Window& win, const BoundaryInterval& iv,
                                         const BoundaryMonomial& m) {
    if (m.sites != 0 && m.sites != iv.sites())
        fail(Errc::Validation, "boundary monomial does not match the interval");
    PauliMonomial p = PauliMonomial::identity(win.edge_count());
    p.phase = m.phase & 3;
    for (int t = 0; t < m.sites; ++t)
        if ((m.a >> t) & 1) p = pauli_mul(p, embedded_x_generator(win, iv, t));
    for (int t = 0; t + 1 < m.sites; ++t)
        if ((m.b >> t) & 1) p = pauli_mul(p, embedded_y_generator(win, iv, t));
    return p;
}

namespace {

struct Reducer {
    const Window& win;
    BitVec outer_edges;
    PauliMonomial cur;
    LatticeRegion R;
    std::vector<Stabilizer> factors;

    BitVec universe() const { return region_edges(win, R); }

    bool stab_in_outer(const PauliMonomial& op) const {
        return op.support().is_subset_of(outer_edges);
    }

    // A plaquette of the outer region meeting supp(cur) within {e} pins the
    // Pauli at e to {1, Z}; a star pins it to {1, X}.
    bool x_excluded(int e) const { return pin_search(e, false); }
    bool z_excluded(int e) const { return pin_search(e, true); }

    bool pin_search(int e, bool star) const {
        auto c = win.edge_coord(e);
        BitVec supp = cur.support();
        auto try_pin = [&](int px, int py) {
            PauliMonomial op;
            if (star) {
                if (px < 1 || px > win.W - 2 || py < 1 || py > win.H - 2) return false;
                op = star_op(win, px, py);
            } else {
                if (px < 0 || px > win.W - 2 || py < 0 || py > win.H - 2) return false;
                op = plaquette_op(win, px, py);
            }
            if (!stab_in_outer(op)) return false;
            BitVec overlap = op.support() & supp;
            if (overlap.get(e)) overlap.set(e, false);
            return !overlap.any();
        };
        if (star) {
            // stars at the edge's endpoints
            if (c.east) return try_pin(c.x, c.y) || try_pin(c.x + 1, c.y);
            return try_pin(c.x, c.y) || try_pin(c.x, c.y + 1);
        }
        // plaquettes of the two cells adjacent to the edge
        if (c.east) return try_pin(c.x, c.y - 1) || try_pin(c.x, c.y);
        return try_pin(c.x - 1, c.y) || try_pin(c.x, c.y);
    }

    [[noreturn]] void stray(const char* what, int e, bool pinned) const {
        auto c = win.edge_coord(e);
        std::string where = std::string("(") + std::to_string(c.x) + "," + std::to_string(c.y) +
                            "," + (c.east ? "e" : "n") + ")";
        if (pinned)
            fail(Errc::Internal, std::string(what) + " at " + where +
                                     " contradicts the commutation precheck");
        fail(Errc::Validation, std::string(what) + " at " + where +
                                   " cannot be pinned by an outer stabilizer; enlarge the margins");
    }

    void require_no_z(int e, const char* what) {
        if (cur.zs.get(e)) stray(what, e, z_excluded(e));
    }
    void require_no_x(int e, const char* what) {
        if (cur.xs.get(e)) stray(what, e, x_excluded(e));
    }
    void require_clear(int e, const char* what) {
        require_no_z(e, what);
        require_no_x(e, what);
    }

    void mul_star(int x, int y) {
        Stabilizer s{star_op(win, x, y), true, x, y};
        cur = pauli_mul(cur, s.op);
        factors.push_back(std::move(s));
    }

    void mul_plaquette(int x, int y) {
        Stabilizer s{plaquette_op(win, x, y), false, x, y};
        cur = pauli_mul(cur, s.op);
        factors.push_back(std::move(s));
    }

    bool star_inside(int x, int y) const {
        if (x < 1 || x > win.W - 2 || y < 1 || y > win.H - 2) return false;
        return star_op(win, x, y).support().is_subset_of(universe());
    }

    // Clears the dangling edges of a rough side and flips it smooth. A Z part
    // on a dangling is impossible for commuting input; an X part is cancelled
    // with the star at the attachment vertex when that star sits inside the
    // region, and is otherwise pinned away by an outer plaquette (the corner
    // exception).
    void rough_peel(Side s) {
        auto handle = [&](int ex, int ey, bool east_edge, int vx, int vy) {
            int e = east_edge ? win.e_index(ex, ey) : win.n_index(ex, ey);
            require_no_z(e, "Z part on a dangling edge");
            if (cur.xs.get(e)) {
                if (star_inside(vx, vy))
                    mul_star(vx, vy);
                else
                    stray("X part on a corner dangling", e, x_excluded(e));
            }
        };
        switch (s) {
            case Side::West:
                for (int y = R.y0; y <= R.y1; ++y) handle(R.x0 - 1, y, true, R.x0, y);
                break;
            case Side::East:
                for (int y = R.y0; y <= R.y1; ++y) handle(R.x1, y, true, R.x1, y);
                break;
            case Side::South:
                for (int x = R.x0; x <= R.x1; ++x) handle(x, R.y0 - 1, false, x, R.y0);
                break;
            case Side::North:
                for (int x = R.x0; x <= R.x1; ++x) handle(x, R.y1, false, x, R.y1);
                break;
        }
        R.set_kind(s, EdgeKind::Smooth);
    }

    // Clears the boundary edges of a smooth side with the plaquettes one cell
    // inward, then shrinks the rectangle one line; the side flips rough since
    // the next line's outward edges remain. Dangling edges of perpendicular
    // rough sides at the vanishing line cannot be cancelled from inside, so
    // they must be pinned clear.
    void smooth_peel(Side s) {
        switch (s) {
            case Side::West:
            case Side::East: {
                int bx = (s == Side::West) ? R.x0 : R.x1;
                int cx = (s == Side::West) ? R.x0 : R.x1 - 1;
                for (int y = R.y0; y < R.y1; ++y) {
                    int e = win.n_index(bx, y);
                    require_no_x(e, "X part on a smooth boundary edge");
                    if (cur.zs.get(e)) mul_plaquette(cx, y);
                }
                if (R.side_kind(Side::South) == EdgeKind::Rough)
                    require_clear(win.n_index(bx, R.y0 - 1), "support on a corner dangling");
                if (R.side_kind(Side::North) == EdgeKind::Rough)
                    require_clear(win.n_index(bx, R.y1), "support on a corner dangling");
                if (s == Side::West)
                    ++R.x0;
                else
                    --R.x1;
                break;
            }
            case Side::South:
            case Side::North: {
                int by = (s == Side::South) ? R.y0 : R.y1;
                int cy = (s == Side::South) ? R.y0 : R.y1 - 1;
                for (int x = R.x0; x < R.x1; ++x) {
                    int e = win.e_index(x, by);
                    require_no_x(e, "X part on a smooth boundary edge");
                    if (cur.zs.get(e)) mul_plaquette(x, cy);
                }
                if (R.side_kind(Side::West) == EdgeKind::Rough)
                    require_clear(win.e_index(R.x0 - 1, by), "support on a corner dangling");
                if (R.side_kind(Side::East) == EdgeKind::Rough)
                    require_clear(win.e_index(R.x1, by), "support on a corner dangling");
                if (s == Side::South)
                    ++R.y0;
                else
                    --R.y1;
                break;
            }
        }
        R.set_kind(s, EdgeKind::Rough);
        if (!cur.support().is_subset_of(universe()))
            fail(Errc::Internal, "support escaped the peeled region");
    }

    bool shrinkable(Side s) const {
        if (s == Side::West || s == Side::East) return R.x0 < R.x1;
        return R.y0 < R.y1;
    }
};

BitVec jtilde_edges(const Window& win, const BoundaryInterval& iv) {
    BitVec out(win.edge_count());
    int n1 = iv.sites();
    for (int t = 0; t < n1; ++t) out.set(iv_site_edge(win, iv, t), true);
    if (iv.kind == EdgeKind::Rough) {
        for (int t = 0; t + 1 < n1; ++t) out.set(iv_mid_edge(win, iv, t), true);
    } else {
        for (int u = 0; u <= n1; ++u) out.set(iv_rung_edge(win, iv, u), true);
    }
    return out;
}

// Reads the boundary element off a residue supported in the interval
// neighborhood: mid/rung parts become y generators, site parts become x
// generators, anything else contradicts the precheck or the window is too
// small to pin it.
BoundaryMonomial extract_boundary(Reducer& rd, const BoundaryInterval& iv) {
    const Window& win = rd.win;
    BoundaryMonomial out;
    out.sites = iv.sites();
    out.kind = iv.kind;
    if (iv.kind == EdgeKind::Rough) {
        for (int t = 0; t + 1 < out.sites; ++t) {
            int m = iv_mid_edge(win, iv, t);
            rd.require_no_x(m, "X part on an interval boundary edge");
            if (rd.cur.zs.get(m)) {
                out.b |= std::uint64_t{1} << t;
                rd.cur = pauli_mul(rd.cur, embedded_y_generator(win, iv, t));
            }
        }
        for (int t = 0; t < out.sites; ++t) {
            int e = iv_site_edge(win, iv, t);
            rd.require_no_z(e, "Z part on an interval site");
            if (rd.cur.xs.get(e)) {
                out.a |= std::uint64_t{1} << t;
                rd.cur = pauli_mul(rd.cur, embedded_x_generator(win, iv, t));
            }
        }
    } else {
        for (int u = 0; u <= out.sites; ++u)
            rd.require_no_z(iv_rung_edge(win, iv, u), "Z part on an interval rung");
        rd.require_no_x(iv_rung_edge(win, iv, 0), "X part on an extremal rung");
        rd.require_no_x(iv_rung_edge(win, iv, out.sites), "X part on an extremal rung");
        for (int u = 1; u < out.sites; ++u) {
            int r = iv_rung_edge(win, iv, u);
            if (rd.cur.xs.get(r)) {
                out.b |= std::uint64_t{1} << (u - 1);
                rd.cur = pauli_mul(rd.cur, embedded_y_generator(win, iv, u - 1));
            }
        }
        for (int t = 0; t < out.sites; ++t) {
            int e = iv_site_edge(win, iv, t);
            rd.require_no_x(e, "X part on an interval site");
            if (rd.cur.zs.get(e)) {
                out.a |= std::uint64_t{1} << t;
                rd.cur = pauli_mul(rd.cur, embedded_x_generator(win, iv, t));
            }
        }
    }
    if (rd.cur.support().any()) fail(Errc::Internal, "interval extraction left a residue");
    out.phase = rd.cur.phase & 3;
    return out;
}

} // namespace

ReduceResult pauli_reduce(const Window& win, const PauliMonomial& p,
                          const LatticeRegion& inner, const LatticeRegion& outer) {
    if (!p.support().is_subset_of(region_edges(win, inner)))
        fail(Errc::Validation, "operator support escapes the inner region");
    SurroundInfo info = region_relation(win, inner, outer, 2);
    if (!info.contained) fail(Errc::Validation, "inner region is not contained in the outer one");
    if (info.shared_sides > 1)
        fail(Errc::Validation, "regions share more than one boundary side");
    if (info.shared_sides == 1 && !info.kinds_match)
        fail(Errc::Validation, "shared boundary side has mismatched kinds");

    ReduceResult res;
    res.strict = info.rel != SurroundRel::None;
    res.interval = info.interval;

    std::vector<Stabilizer> outer_stabs = stabilizer_generators(win, outer);
    for (const auto& g : outer_stabs) {
        if (!pauli_commute(p, g.op)) {
            res.commutes = false;
            res.witness = g;
            return res;
        }
    }

    Reducer rd{win, region_edges(win, outer), p, inner, {}};
    std::optional<Side> jside;
    BitVec jt;
    if (res.interval) {
        jside = res.interval->side;
        jt = jtilde_edges(win, *res.interval);
    }

    int guard = 4 * (win.W + win.H) + 16;
    while (true) {
        if (!rd.cur.support().any()) {
            res.boundary.sites = res.interval ? res.interval->sites() : 0;
            res.boundary.kind = res.interval ? res.interval->kind : EdgeKind::Rough;
            res.boundary.phase = rd.cur.phase & 3;
            res.factors = std::move(rd.factors);
            return res;
        }
        if (res.interval && rd.cur.support().is_subset_of(jt)) {
            res.boundary = extract_boundary(rd, *res.interval);
            res.factors = std::move(rd.factors);
            return res;
        }
        bool progressed = false;
        for (Side s : {Side::West, Side::East, Side::South, Side::North}) {
            if (jside && s == *jside) continue;
            if (rd.R.side_kind(s) == EdgeKind::Rough) {
                rd.rough_peel(s);
                progressed = true;
            } else if ((!jside || s == opposite(*jside)) && rd.shrinkable(s)) {
                rd.smooth_peel(s);
                progressed = true;
            }
        }
        if (!progressed && rd.cur.support().any())
            fail(Errc::Validation,
                 "reduction stalled with support remaining; enlarge the window margins");
        if (--guard < 0) fail(Errc::Internal, "reduction did not terminate");
    }
}

std::vector<PauliMonomial> commutant_basis(const Window& win, const LatticeRegion& inner,
                                           const LatticeRegion& outer) {
    std::vector<int> edges = region_edge_list(win, inner);
    const int L = static_cast<int>(edges.size());
    const int vars = 2 * L; // x parts then z parts over the inner edge list
    std::vector<Stabilizer> stabs = stabilizer_generators(win, outer);

    std::vector<BitVec> rows;
    for (const auto& g : stabs) {
        BitVec row(vars);
        for (int i = 0; i < L; ++i) {
            if (g.op.zs.get(edges[i])) row.set(i, true);
            if (g.op.xs.get(edges[i])) row.set(L + i, true);
        }
        if (row.any()) rows.push_back(std::move(row));
    }

    // F2 row echelon; free columns parameterize the commutant
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < vars && rank < static_cast<int>(rows.size()); ++c) {
        int sel = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r].get(c)) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[rank], rows[sel]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
        pivot_col.push_back(c);
        ++rank;
    }

    std::vector<bool> is_pivot(vars, false);
    for (int c : pivot_col) is_pivot[c] = true;

    std::vector<PauliMonomial> basis;
    for (int f = 0; f < vars; ++f) {
        if (is_pivot[f]) continue;
        BitVec v(vars);
        v.set(f, true);
        for (int r = 0; r < rank; ++r)
            if (rows[r].get(f)) v.set(pivot_col[r], true);
        PauliMonomial m = PauliMonomial::identity(win.edge_count());
        for (int i = 0; i < L; ++i) {
            if (v.get(i)) m.xs.set(edges[i], true);
            if (v.get(L + i)) m.zs.set(edges[i], true);
        }
        basis.push_back(std::move(m));
    }
    return basis;
}

PauliMonomial half_translate(const Window& win, const PauliMonomial& p) {
    PauliMonomial out = PauliMonomial::identity(win.edge_count());
    out.phase = p.phase;
    auto map_edge = [&](int e) {
        auto c = win.edge_coord(e);
        if (c.east) {
            if (!win.n_in(c.x + 1, c.y))
                fail(Errc::Validation, "half translation maps an edge outside the window");
            return win.n_index(c.x + 1, c.y);
        }
        if (!win.e_in(c.x, c.y + 1))
            fail(Errc::Validation, "half translation maps an edge outside the window");
        return win.e_index(c.x, c.y + 1);
    };
    for (int e : p.xs.ones()) out.zs.set(map_edge(e), true);
    for (int e : p.zs.ones()) out.xs.set(map_edge(e), true);
    return out;
}

} // namespace bnet
