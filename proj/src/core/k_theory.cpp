#include "core/k_theory.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace bnet {

namespace {

void check_matrix(const std::vector<std::vector<Int>>& A) {
    const std::size_t k = A.size();
    if (k == 0) fail(Errc::Validation, "stationary data needs at least one vertex");
    for (const auto& row : A) {
        if (row.size() != k) fail(Errc::Validation, "inclusion matrix is not square");
        for (const Int& x : row)
            if (x < 0) fail(Errc::Validation, "inclusion matrix entries must be non-negative");
    }
}

std::vector<Int> matvec(const std::vector<std::vector<Int>>& A, const std::vector<Int>& v) {
    const std::size_t k = A.size();
    std::vector<Int> out(k, Int(0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out[i] += A[i][j] * v[j];
    return out;
}

bool zero_vec(const std::vector<Int>& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

// Wielandt: a non-negative k x k matrix is primitive iff its boolean power
// at exponent (k-1)^2 + 1 is strictly positive.
bool primitive_matrix(const std::vector<std::vector<Int>>& A) {
    const int k = static_cast<int>(A.size());
    std::vector<std::vector<char>> B(std::size_t(k), std::vector<char>(std::size_t(k), 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) B[std::size_t(i)][std::size_t(j)] = A[std::size_t(i)][std::size_t(j)] > 0;
    auto all_pos = [&](const std::vector<std::vector<char>>& M) {
        for (const auto& row : M)
            for (char c : row)
                if (!c) return false;
        return true;
    };
    auto bool_mul = [&](const std::vector<std::vector<char>>& X,
                        const std::vector<std::vector<char>>& Y) {
        std::vector<std::vector<char>> Z(std::size_t(k), std::vector<char>(std::size_t(k), 0));
        for (int i = 0; i < k; ++i)
            for (int l = 0; l < k; ++l)
                if (X[std::size_t(i)][std::size_t(l)])
                    for (int j = 0; j < k; ++j)
                        if (Y[std::size_t(l)][std::size_t(j)]) Z[std::size_t(i)][std::size_t(j)] = 1;
        return Z;
    };
    const int limit = (k - 1) * (k - 1) + 1;
    std::vector<std::vector<char>> P = B;
    for (int m = 1; m < limit; ++m) {
        if (all_pos(P)) return true;
        P = bool_mul(P, B);
    }
    return all_pos(P);
}

int rat_rank(const std::vector<std::vector<Int>>& A) {
    const std::size_t k = A.size();
    std::vector<std::vector<Rat>> M(k, std::vector<Rat>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) M[i][j] = Rat(A[i][j]);
    int rank = 0;
    for (std::size_t c = 0; c < k && std::size_t(rank) < k; ++c) {
        std::size_t sel = k;
        for (std::size_t i = std::size_t(rank); i < k; ++i)
            if (M[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel == k) continue;
        std::swap(M[std::size_t(rank)], M[sel]);
        for (std::size_t i = 0; i < k; ++i) {
            if (i == std::size_t(rank) || M[i][c] == 0) continue;
            Rat f = M[i][c] / M[std::size_t(rank)][c];
            for (std::size_t j = c; j < k; ++j) M[i][j] -= f * M[std::size_t(rank)][j];
        }
        ++rank;
    }
    return rank;
}

Int radical(Int q) {
    Int base = 1;
    for (Int p = 2; p * p <= q; ++p) {
        if (q % p == 0) {
            base *= p;
            while (q % p == 0) q /= p;
        }
    }
    if (q > 1) base *= q;
    return base;
}

void check_near_zero(const Num& diff, const char* what) {
    if (diff.exact()) {
        if (!diff.is_zero()) fail(Errc::Validation, what);
    } else if (diff.abs().to_real() > default_tolerance()) {
        fail(Errc::Validation, what);
    }
}

} // namespace

StationaryAFData make_stationary(std::vector<std::vector<Int>> A, std::vector<Int> e,
                                 std::vector<Num> tau) {
    check_matrix(A);
    const std::size_t k = A.size();
    if (e.size() != k || tau.size() != k)
        fail(Errc::Validation, "initial class and trace must match the matrix size");
    bool any = false;
    for (const Int& x : e) {
        if (x < 0) fail(Errc::Validation, "initial class entries must be non-negative");
        if (x > 0) any = true;
    }
    if (!any) fail(Errc::Validation, "initial class is zero");
    for (const Num& t : tau)
        if (t.sign() <= 0) fail(Errc::Validation, "trace vector must be strictly positive");

    StationaryAFData d;
    d.k = static_cast<int>(k);
    d.A = std::move(A);
    d.e = std::move(e);

    Num dot(0);
    for (std::size_t i = 0; i < k; ++i) dot += tau[i] * Num(d.e[i]);
    for (std::size_t i = 0; i < k; ++i) tau[i] /= dot;
    d.tau = std::move(tau);

    // tau A = lambda tau, with lambda read off the first column
    std::vector<Num> w(k, Num(0));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) w[j] += d.tau[i] * Num(d.A[i][j]);
    d.lambda = w[0] / d.tau[0];
    for (std::size_t j = 0; j < k; ++j)
        check_near_zero(w[j] - d.lambda * d.tau[j], "trace vector is not a left eigenvector");

    d.primitive = primitive_matrix(d.A);
    return d;
}

StationaryAFData stationary_tensor(const FusionRing& ring, const std::vector<int>& X) {
    if (X.empty()) fail(Errc::Validation, "tensor multiset is empty");
    const int k = ring.rank();
    for (int x : X)
        if (x < 0 || x >= k) fail(Errc::Validation, "tensor object index out of range");
    FusionRing r = ring;
    ensure_dims(r);
    std::vector<std::vector<Int>> A(std::size_t(k), std::vector<Int>(std::size_t(k), Int(0)));
    for (int x : X)
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < k; ++i) A[std::size_t(i)][std::size_t(j)] += Int(r.n(x, j, i));
    std::vector<Int> e(std::size_t(k), Int(0));
    e[0] = 1;
    return make_stationary(std::move(A), std::move(e), r.dims);
}

StationaryAFData stationary_two_sided(const FusionRing& ring) {
    const int k = ring.rank();
    FusionRing r = ring;
    ensure_dims(r);
    std::vector<std::vector<Int>> A(std::size_t(k), std::vector<Int>(std::size_t(k), Int(0)));
    for (int j = 0; j < k; ++j)
        for (int g = 0; g < k; ++g)
            for (int c = 0; c < k; ++c) {
                long long left = r.n(g, j, c);
                if (left == 0) continue;
                for (int h = 0; h < k; ++h)
                    for (int i = 0; i < k; ++i)
                        A[std::size_t(i)][std::size_t(j)] += Int(left) * Int(r.n(c, h, i));
            }
    std::vector<Int> e(std::size_t(k), Int(0));
    e[0] = 1;
    return make_stationary(std::move(A), std::move(e), r.dims);
}

std::vector<std::vector<Int>> dimension_sequence(const StationaryAFData& d, int n) {
    if (n < 0 || n > 40) fail(Errc::Validation, "level count must lie in [0, 40]");
    std::vector<std::vector<Int>> out;
    out.reserve(std::size_t(n) + 1);
    out.push_back(d.e);
    for (int m = 0; m < n; ++m) out.push_back(matvec(d.A, out.back()));
    return out;
}

Num trace_pairing(const StationaryAFData& d, const std::vector<Int>& v) {
    if (v.size() != d.tau.size())
        fail(Errc::Validation, "class vector length does not match the diagram");
    Num dot(0);
    for (std::size_t i = 0; i < v.size(); ++i) dot += d.tau[i] * Num(v[i]);
    return dot;
}

InfinitesimalResult find_infinitesimal(const StationaryAFData& d, int bound) {
    if (bound < 1) fail(Errc::Validation, "search bound must be at least 1");
    for (const Num& t : d.tau)
        if (!t.exact())
            fail(Errc::Validation, "witness search needs a rational trace vector");
    const int k = d.k;
    double combos = std::pow(2.0 * bound + 1, k);
    if (combos > 2e7) fail(Errc::Resource, "witness search space too large");

    const bool invertible = rat_rank(d.A) == k;
    InfinitesimalResult res;

    std::vector<long long> v(std::size_t(k), -bound);
    bool done = false;
    while (!done) {
        bool nonzero = false;
        for (long long x : v)
            if (x != 0) nonzero = true;
        if (nonzero) {
            Rat dot(0);
            for (int i = 0; i < k; ++i) dot += d.tau[std::size_t(i)].rat() * Rat(v[std::size_t(i)]);
            if (dot == 0) {
                if (invertible) {
                    res.found = true;
                    res.witness.assign(v.begin(), v.end());
                    res.certificate = "determinant";
                    return res;
                }
                std::vector<Int> w(v.begin(), v.end());
                bool died = false;
                for (int m = 1; m <= 2 * k; ++m) {
                    w = matvec(d.A, w);
                    if (zero_vec(w)) {
                        died = true;
                        res.power_checked = std::max(res.power_checked, m);
                        break;
                    }
                }
                if (!died) {
                    res.found = true;
                    res.witness.assign(v.begin(), v.end());
                    res.certificate = "power";
                    res.power_checked = 2 * k;
                    return res;
                }
            }
        }
        // lexicographic odometer, last coordinate fastest
        int pos = k - 1;
        while (pos >= 0) {
            if (v[std::size_t(pos)] < bound) {
                ++v[std::size_t(pos)];
                break;
            }
            v[std::size_t(pos)] = -bound;
            --pos;
        }
        if (pos < 0) done = true;
    }
    res.found = false;
    res.certificate = "annihilated";
    return res;
}

UhfReport uhf_report(const StationaryAFData& d) {
    UhfReport rep;
    rep.rank_one = rat_rank(d.A) == 1;
    if (!rep.rank_one) {
        rep.label = "not rank-1";
        return rep;
    }
    // rank-1 matrices square to trace(A) times themselves
    Int q = 0;
    for (int i = 0; i < d.k; ++i) q += d.A[std::size_t(i)][std::size_t(i)];
    const std::size_t k = std::size_t(d.k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Int acc = 0;
            for (std::size_t l = 0; l < k; ++l) acc += d.A[i][l] * d.A[l][j];
            if (acc != q * d.A[i][j]) fail(Errc::Internal, "rank-1 scaling check failed");
        }
    if (q < 1) {
        rep.rank_one = false;
        rep.label = "not rank-1";
        return rep;
    }
    rep.q = q;
    rep.base = radical(q);
    std::ostringstream os;
    os << "M_{" << rep.base.str() << "^inf}";
    rep.label = os.str();
    return rep;
}

} // namespace bnet
