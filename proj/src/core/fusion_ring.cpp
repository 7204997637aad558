#include "core/fusion_ring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "core/json_io.hpp"

namespace bnet {

namespace {

std::string triple_str(const FusionRing& r, int a, int b, int c) {
  std::ostringstream os;
  os << "(" << r.simples[a] << "," << r.simples[b] << "," << r.simples[c] << ")";
  return os.str();
}

std::vector<std::vector<std::vector<long long>>> zero_tensor(int rank) {
  return std::vector<std::vector<std::vector<long long>>>(
      rank, std::vector<std::vector<long long>>(rank, std::vector<long long>(rank, 0)));
}

}  // namespace

Num FusionRing::global_dimension() const {
  if (!has_dims()) fail(Errc::Internal, "dimensions not computed");
  Num total(0);
  for (const Num& d : dims) total += d * d;
  return total;
}

bool FusionRing::pointed() const {
  if (!has_dims()) fail(Errc::Internal, "dimensions not computed");
  if (!dims_exact) return false;
  for (const Num& d : dims)
    if (d != Num(1)) return false;
  return true;
}

void validate_ring(const FusionRing& ring) {
  const int r = ring.rank();
  if (r < 1) fail(Errc::Validation, "ring needs at least the unit simple");
  {
    std::set<std::string> seen;
    for (const auto& s : ring.simples) {
      if (s.empty()) fail(Errc::Validation, "simple names must be non-empty");
      if (!seen.insert(s).second)
        fail(Errc::Validation, "duplicate simple name: " + s);
    }
  }
  if (static_cast<int>(ring.dual.size()) != r)
    fail(Errc::Validation, "dual involution must list every simple");
  for (int a = 0; a < r; ++a) {
    int d = ring.dual[a];
    if (d < 0 || d >= r)
      fail(Errc::Validation, "dual index out of range for " + ring.simples[a]);
    if (ring.dual[d] != a)
      fail(Errc::Validation, "dual is not an involution at " + ring.simples[a]);
  }
  if (ring.dual[0] != 0) fail(Errc::Validation, "unit must be self-dual");

  if (static_cast<int>(ring.N.size()) != r)
    fail(Errc::Internal, "structure tensor has wrong shape");
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        if (ring.n(a, b, c) < 0)
          fail(Errc::Validation,
               "negative multiplicity at " + triple_str(ring, a, b, c));

  // Unit law pins index 0 as the unit.
  for (int b = 0; b < r; ++b)
    for (int c = 0; c < r; ++c) {
      if (ring.n(0, b, c) != (b == c ? 1 : 0))
        fail(Errc::Validation,
             "index 0 does not act as left unit at " + triple_str(ring, 0, b, c));
      if (ring.n(b, 0, c) != (b == c ? 1 : 0))
        fail(Errc::Validation,
             "index 0 does not act as right unit at " + triple_str(ring, b, 0, c));
    }

  // Duality: the unit appears in a*b exactly when b is the dual of a.
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      long long want = (b == ring.dual[a]) ? 1 : 0;
      if (ring.n(a, b, 0) != want)
        fail(Errc::Validation,
             "duality violated at " + triple_str(ring, a, b, 0));
    }

  // Dual symmetry N_{ab}^c = N_{(dual b)(dual a)}^{dual c}.
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        if (ring.n(a, b, c) != ring.n(ring.dual[b], ring.dual[a], ring.dual[c]))
          fail(Errc::Validation,
               "dual symmetry violated at " + triple_str(ring, a, b, c));

  // Associativity of the product.
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        for (int d = 0; d < r; ++d) {
          long long lhs = 0, rhs = 0;
          for (int e = 0; e < r; ++e) lhs += ring.n(a, b, e) * ring.n(e, c, d);
          for (int f = 0; f < r; ++f) rhs += ring.n(b, c, f) * ring.n(a, f, d);
          if (lhs != rhs) {
            std::ostringstream os;
            os << "associativity violated at (" << ring.simples[a] << ","
               << ring.simples[b] << "," << ring.simples[c] << ") -> "
               << ring.simples[d];
            fail(Errc::Validation, os.str());
          }
        }
}

void fp_dimensions(FusionRing& ring) {
  if (ring.has_dims()) return;
  const int r = ring.rank();
  const unsigned W = working_digits();

  // Total fusion matrix T[c][b] = sum_a N_{ab}^c. Its diagonal is >= 1
  // (the unit term), so the iteration cannot oscillate.
  std::vector<std::vector<Real>> T(r, std::vector<Real>(r, Real(0)));
  for (int c = 0; c < r; ++c)
    for (int b = 0; b < r; ++b) {
      long long t = 0;
      for (int a = 0; a < r; ++a) t += ring.n(a, b, c);
      T[c][b] = Real(t);
    }

  std::vector<Real> v(r, Real(1)), w(r);
  const Real stop = pow10(-(long)W + 5);
  bool converged = false;
  for (int iter = 0; iter < 10000; ++iter) {
    for (int c = 0; c < r; ++c) {
      Real acc(0);
      for (int b = 0; b < r; ++b) acc += T[c][b] * v[b];
      w[c] = acc;
    }
    if (w[0] <= 0)
      fail(Errc::Inconclusive, "dimension iteration degenerated");
    Real inv = Real(1) / w[0];
    Real delta(0);
    for (int c = 0; c < r; ++c) {
      w[c] *= inv;
      Real d = boost::multiprecision::abs(w[c] - v[c]);
      if (d > delta) delta = d;
      v[c] = w[c];
    }
    if (delta < stop) {
      converged = true;
      break;
    }
  }
  if (!converged)
    fail(Errc::Inconclusive, "dimension iteration did not converge");

  // Rayleigh refinement per simple: error is quadratic in the eigenvector
  // error, so these are good to well past the residual gate below.
  Real vv(0);
  for (int c = 0; c < r; ++c) vv += v[c] * v[c];
  std::vector<Real> d(r);
  for (int a = 0; a < r; ++a) {
    Real acc(0);
    for (int c = 0; c < r; ++c) {
      Real row(0);
      for (int b = 0; b < r; ++b)
        if (ring.n(a, b, c)) row += Real(ring.n(a, b, c)) * v[b];
      acc += v[c] * row;
    }
    d[a] = acc / vv;
  }

  // Integer certification: if every dimension sits within 1e-10 of an
  // integer, the character identity is checked exactly and the exact
  // values are kept.
  bool near_integers = true;
  std::vector<Int> m(r);
  for (int a = 0; a < r; ++a) {
    Real rounded = boost::multiprecision::floor(d[a] + Real(1) / 2);
    if (boost::multiprecision::abs(d[a] - rounded) >= pow10(-10)) {
      near_integers = false;
      break;
    }
    m[a] = rounded.convert_to<Int>();
  }
  if (near_integers) {
    bool ok = m[0] == 1;
    for (int a = 0; ok && a < r; ++a)
      ok = m[a] >= 1 && m[ring.dual[a]] == m[a];
    for (int a = 0; ok && a < r; ++a)
      for (int b = 0; ok && b < r; ++b) {
        Int rhs = 0;
        for (int c = 0; c < r; ++c) rhs += Int(ring.n(a, b, c)) * m[c];
        ok = (m[a] * m[b] == rhs);
      }
    if (ok) {
      ring.dims.reserve(r);
      for (int a = 0; a < r; ++a) ring.dims.emplace_back(m[a]);
      ring.dims_exact = true;
      return;
    }
  }

  // Float branch: gate on the exact character identity residual.
  const Real tol = pow10(-(long)W + 10);
  for (int a = 0; a < r; ++a) {
    if (d[a] < Real(1) - tol)
      fail(Errc::Inconclusive, "dimension below 1 for " + ring.simples[a]);
    if (boost::multiprecision::abs(d[a] - d[ring.dual[a]]) > tol)
      fail(Errc::Inconclusive, "dual dimensions disagree at " + ring.simples[a]);
  }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      Real rhs(0);
      for (int c = 0; c < r; ++c)
        if (ring.n(a, b, c)) rhs += Real(ring.n(a, b, c)) * d[c];
      if (boost::multiprecision::abs(d[a] * d[b] - rhs) > tol)
        fail(Errc::Inconclusive,
             "character identity residual too large at " + triple_str(ring, a, b, 0));
    }
  ring.dims.reserve(r);
  for (int a = 0; a < r; ++a) ring.dims.emplace_back(d[a]);
  ring.dims_exact = false;
}

namespace {

FusionRing group_ring(std::string name, std::vector<std::string> labels,
                      const std::vector<std::array<int, 3>>& perms) {
  // Elements are permutations of {0,1,2}; product a*b composes a after b.
  const int r = static_cast<int>(perms.size());
  auto find = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < r; ++i)
      if (perms[i] == p) return i;
    fail(Errc::Internal, "group table is not closed");
  };
  FusionRing ring;
  ring.name = std::move(name);
  ring.simples = std::move(labels);
  ring.dual.resize(r);
  ring.N = zero_tensor(r);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      std::array<int, 3> ab{};
      for (int i = 0; i < 3; ++i) ab[i] = perms[a][perms[b][i]];
      ring.N[a][b][find(ab)] = 1;
    }
    std::array<int, 3> inv{};
    for (int i = 0; i < 3; ++i) inv[perms[a][i]] = i;
    ring.dual[a] = find(inv);
  }
  return ring;
}

}  // namespace

std::vector<std::string> builtin_ring_names() {
  return {"hilb_z2", "hilb_s3", "rep_s3", "fib", "ising"};
}

FusionRing builtin_ring(const std::string& name) {
  FusionRing ring;
  if (name == "hilb_z2") {
    return group_ring("hilb_z2", {"e", "g"},
                      {{{0, 1, 2}}, {{1, 0, 2}}});
  } else if (name == "hilb_s3") {
    return group_ring("hilb_s3", {"e", "r", "rr", "s", "sr", "srr"},
                      {{{0, 1, 2}},
                       {{1, 2, 0}},
                       {{2, 0, 1}},
                       {{1, 0, 2}},
                       {{0, 2, 1}},
                       {{2, 1, 0}}});
  } else if (name == "rep_s3") {
    ring.name = name;
    ring.simples = {"1", "sgn", "rho"};
    ring.dual = {0, 1, 2};
    ring.N = zero_tensor(3);
    for (int a = 0; a < 3; ++a) ring.N[0][a][a] = ring.N[a][0][a] = 1;
    ring.N[1][1][0] = 1;
    ring.N[1][2][2] = ring.N[2][1][2] = 1;
    ring.N[2][2][0] = ring.N[2][2][1] = ring.N[2][2][2] = 1;
  } else if (name == "fib") {
    ring.name = name;
    ring.simples = {"1", "tau"};
    ring.dual = {0, 1};
    ring.N = zero_tensor(2);
    ring.N[0][0][0] = ring.N[0][1][1] = ring.N[1][0][1] = 1;
    ring.N[1][1][0] = ring.N[1][1][1] = 1;
  } else if (name == "ising") {
    ring.name = name;
    ring.simples = {"1", "psi", "sigma"};
    ring.dual = {0, 1, 2};
    ring.N = zero_tensor(3);
    for (int a = 0; a < 3; ++a) ring.N[0][a][a] = ring.N[a][0][a] = 1;
    ring.N[1][1][0] = 1;
    ring.N[1][2][2] = ring.N[2][1][2] = 1;
    ring.N[2][2][0] = ring.N[2][2][1] = 1;
  } else {
    fail(Errc::Validation, "unknown builtin ring: " + name);
  }
  return ring;
}

FusionRing ring_from_json(const std::string& text) {
  Json doc = json_parse(text);
  if (!doc.is_object()) fail(Errc::Parse, "ring document must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "simples" && it.key() != "dual" && it.key() != "N")
      fail(Errc::Parse, "unknown key in ring document: " + it.key());
  if (!doc.contains("simples") || !doc.contains("dual") || !doc.contains("N"))
    fail(Errc::Parse, "ring document needs simples, dual and N");

  FusionRing ring;
  ring.name = "custom";
  const Json& js = doc["simples"];
  if (!js.is_array() || js.empty())
    fail(Errc::Parse, "simples must be a non-empty array");
  for (const Json& s : js) {
    if (!s.is_string()) fail(Errc::Parse, "simple names must be strings");
    ring.simples.push_back(s.get<std::string>());
  }
  const int r = ring.rank();

  const Json& jd = doc["dual"];
  if (!jd.is_array() || static_cast<int>(jd.size()) != r)
    fail(Errc::Parse, "dual must be an array of one index per simple");
  for (const Json& d : jd) {
    if (!d.is_number_integer()) fail(Errc::Parse, "dual entries must be integers");
    int idx = d.get<int>();
    if (idx < 0 || idx >= r) fail(Errc::Parse, "dual index out of range");
    ring.dual.push_back(idx);
  }

  ring.N = zero_tensor(r);
  const Json& jn = doc["N"];
  if (!jn.is_array()) fail(Errc::Parse, "N must be an array of [a,b,c,mult]");
  std::set<std::array<int, 3>> seen;
  for (const Json& e : jn) {
    if (!e.is_array() || e.size() != 4)
      fail(Errc::Parse, "each N entry must be [a,b,c,mult]");
    for (const Json& x : e)
      if (!x.is_number_integer())
        fail(Errc::Parse, "N entries must hold integers");
    int a = e[0].get<int>(), b = e[1].get<int>(), c = e[2].get<int>();
    long long mult = e[3].get<long long>();
    if (a < 0 || a >= r || b < 0 || b >= r || c < 0 || c >= r)
      fail(Errc::Parse, "N entry index out of range");
    if (mult < 0) fail(Errc::Parse, "multiplicities must be non-negative");
    if (!seen.insert({a, b, c}).second)
      fail(Errc::Parse, "duplicate N entry");
    ring.N[a][b][c] = mult;
  }

  validate_ring(ring);
  return ring;
}

std::string ring_to_json(const FusionRing& ring) {
  Json doc;
  doc["simples"] = ring.simples;
  doc["dual"] = ring.dual;
  Json entries = Json::array();
  for (int a = 0; a < ring.rank(); ++a)
    for (int b = 0; b < ring.rank(); ++b)
      for (int c = 0; c < ring.rank(); ++c)
        if (ring.n(a, b, c) > 0)
          entries.push_back(Json::array({a, b, c, ring.n(a, b, c)}));
  doc["N"] = std::move(entries);
  return json_dump(doc);
}

std::vector<std::array<int, 3>> admissible_triples(const FusionRing& ring) {
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a < ring.rank(); ++a)
    for (int b = 0; b < ring.rank(); ++b)
      for (int c = 0; c < ring.rank(); ++c)
        if (ring.n(a, b, c) > 0) out.push_back({a, b, c});
  return out;
}

}  // namespace bnet
