#include "core/type_classifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "core/json_io.hpp"

namespace bnet {

WeightedGraph build_weighted_graph(std::shared_ptr<const FusionRing> ring) {
  if (!ring || !ring->has_dims())
    fail(Errc::Internal, "weighted graph needs ring dimensions");
  WeightedGraph g;
  g.ring = ring;
  const int r = ring->rank();
  for (int c1 = 0; c1 < r; ++c1)
    for (int c2 = 0; c2 < r; ++c2)
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          long long count = 0;
          for (int e = 0; e < r; ++e)
            count += ring->n(a, c1, e) * ring->n(e, b, c2);
          if (count > 0) g.edges.push_back({c1, c2, a, b, count});
        }
  Num D = ring->global_dimension();
  g.delta = D * D;
  return g;
}

std::vector<Num> weight_condition_residuals(const WeightedGraph& g) {
  const FusionRing& ring = *g.ring;
  std::vector<Num> res(ring.rank(), Num(0));
  for (const EdgeClass& e : g.edges) {
    Num w = ring.dims[e.a] * ring.dims[e.b] * Num(e.count);
    res[e.c1] += w * ring.dims[e.c2];
  }
  for (int v = 0; v < ring.rank(); ++v) res[v] -= g.delta * ring.dims[v];
  return res;
}

std::vector<RatioGen> ratio_generators(const FusionRing& ring) {
  if (!ring.has_dims()) fail(Errc::Internal, "ratio generators need dimensions");
  const Real tol = pow10(-(long)working_digits() + 10);
  std::vector<RatioGen> out;
  for (const auto& t : admissible_triples(ring)) {
    Num ratio = ring.dims[t[0]] * ring.dims[t[1]] / ring.dims[t[2]];
    bool seen = false;
    for (const RatioGen& g : out) {
      if (ring.dims_exact ? (g.ratio == ratio)
                          : (abs_value(Cplx(g.ratio - ratio)) < tol)) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back({ratio, t});
  }
  std::sort(out.begin(), out.end(),
            [](const RatioGen& x, const RatioGen& y) { return x.ratio < y.ratio; });
  return out;
}

namespace {

// ---- exact lattice machinery ------------------------------------------

std::map<Int, long> factorize(Int n) {
  std::map<Int, long> f;
  if (n <= 0) fail(Errc::Internal, "factorization of non-positive value");
  for (Int p = 2; p * p <= n && p < 1'000'000; p += (p == 2 ? 1 : 2))
    while (n % p == 0) {
      f[p]++;
      n /= p;
    }
  if (n > 1) {
    if (n > Int(1'000'000'000'000LL))
      fail(Errc::Inconclusive, "ratio factorization out of range");
    f[n]++;
  }
  return f;
}

std::vector<std::vector<Int>> exponent_rows(const std::vector<Rat>& ratios,
                                            std::vector<Int>& primes_out) {
  std::map<Int, size_t> primes;
  std::vector<std::map<Int, long>> facs;
  for (const Rat& r : ratios) {
    std::map<Int, long> f = factorize(boost::multiprecision::numerator(r));
    for (auto& [p, e] : factorize(boost::multiprecision::denominator(r)))
      f[p] -= e;
    for (auto& [p, e] : f)
      if (e != 0) primes.emplace(p, 0);
    facs.push_back(std::move(f));
  }
  size_t idx = 0;
  primes_out.clear();
  for (auto& [p, i] : primes) {
    i = idx++;
    primes_out.push_back(p);
  }
  std::vector<std::vector<Int>> rows;
  for (const auto& f : facs) {
    std::vector<Int> row(primes_out.size(), 0);
    for (auto& [p, e] : f)
      if (e != 0) row[primes.at(p)] = e;
    rows.push_back(std::move(row));
  }
  return rows;
}

// gamma = prod primes[j]^(exps[j]) as an exact rational
Rat assemble_generator(const std::vector<Int>& primes, const std::vector<Int>& exps) {
  Int num = 1, den = 1;
  for (size_t j = 0; j < primes.size(); ++j) {
    if (exps[j] == 0) continue;
    long e = exps[j].convert_to<long>();
    Int pw = boost::multiprecision::pow(primes[j],
                                        static_cast<unsigned>(e < 0 ? -e : e));
    (e > 0 ? num : den) *= pw;
  }
  return Rat(num, den);
}

int lattice_rank(std::vector<std::vector<Int>> rows) {
  if (rows.empty()) return 0;
  size_t cols = rows[0].size();
  int rank = 0;
  size_t rpos = 0;
  for (size_t c = 0; c < cols && rpos < rows.size(); ++c) {
    size_t pivot = rpos;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rpos], rows[pivot]);
    for (size_t i = rpos + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Int g = boost::multiprecision::gcd(rows[rpos][c], rows[i][c]);
      Int fi = rows[i][c] / g, fr = rows[rpos][c] / g;
      for (size_t j = 0; j < cols; ++j)
        rows[i][j] = rows[i][j] * fr - rows[rpos][j] * fi;
    }
    ++rpos;
    ++rank;
  }
  return rank;
}

// Rows pairwise parallel; returns the primitive direction and per-row
// integer multipliers.
void rank_one_data(const std::vector<std::vector<Int>>& rows,
                   std::vector<Int>& primitive, std::vector<Int>& mult) {
  size_t cols = rows[0].size();
  const std::vector<Int>* base = nullptr;
  for (const auto& r : rows) {
    bool nonzero = false;
    for (const Int& x : r) nonzero |= (x != 0);
    if (nonzero) {
      base = &r;
      break;
    }
  }
  if (!base) fail(Errc::Internal, "rank-one data on the zero lattice");
  Int content = 0;
  for (const Int& x : *base) content = boost::multiprecision::gcd(content, x);
  primitive.assign(cols, 0);
  for (size_t j = 0; j < cols; ++j) primitive[j] = (*base)[j] / content;
  size_t j0 = 0;
  while (primitive[j0] == 0) ++j0;
  mult.clear();
  for (const auto& r : rows) {
    Int k = r[j0] / primitive[j0];
    for (size_t j = 0; j < cols; ++j)
      if (r[j] != k * primitive[j])
        fail(Errc::Internal, "lattice is not rank one");
    mult.push_back(k);
  }
}

Int gcd_all(const std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

// ---- float helpers ------------------------------------------------------

bool rationalize(const Real& x, const Int& max_den, const Real& tol, Rat& out) {
  // continued fraction convergents
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Real cur = x;
  for (int it = 0; it < 80; ++it) {
    Real fl = boost::multiprecision::floor(cur);
    Int a = fl.convert_to<Int>();
    Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) return false;
    Rat cand(p2, q2);
    if (boost::multiprecision::abs(x - to_real(cand)) <= tol) {
      out = cand;
      return true;
    }
    Real frac = cur - fl;
    if (frac < pow10(-(long)working_digits() + 8)) return false;
    cur = Real(1) / frac;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return false;
}

Real real_gcd(Real a, Real b, const Real& cutoff) {
  a = boost::multiprecision::abs(a);
  b = boost::multiprecision::abs(b);
  if (a < b) std::swap(a, b);
  while (b > cutoff) {
    Real t = boost::multiprecision::fmod(a, b);
    a = b;
    b = t;
  }
  return a;
}

TypeReport make_report(std::string type, std::string method, bool exact) {
  TypeReport rep;
  rep.type = std::move(type);
  rep.method = std::move(method);
  rep.exact = exact;
  rep.precision_digits = precision();
  return rep;
}

}  // namespace

TypeReport classify_ratio_set(const std::vector<Num>& ratios, bool exact) {
  bool all_one = true;
  for (const Num& r : ratios) {
    if (r < Num(1)) fail(Errc::Validation, "spectral ratios must be >= 1");
    if (r != Num(1)) all_one = false;
  }
  if (all_one) {
    TypeReport rep = make_report("II_1", "trivial-ratios", exact);
    rep.exponents.assign(ratios.size(), 0);
    return rep;
  }

  if (exact) {
    std::vector<Rat> rats;
    for (const Num& r : ratios) rats.push_back(r.rat());
    std::vector<Int> primes;
    auto rows = exponent_rows(rats, primes);
    int rank = lattice_rank(rows);
    if (rank >= 2) return make_report("III_1", "integer-lattice", true);
    std::vector<Int> p, mult;
    rank_one_data(rows, p, mult);
    Int g = gcd_all(mult);
    std::vector<Int> gexp(p.size());
    for (size_t j = 0; j < p.size(); ++j) gexp[j] = g * p[j];
    Rat gen = assemble_generator(primes, gexp);
    if (gen <= 1) fail(Errc::Internal, "generator not above one");
    TypeReport rep = make_report("III_lambda", "integer-lattice", true);
    rep.has_lambda = true;
    rep.lambda = Num(Rat(1) / gen);
    for (const Int& k : mult) rep.exponents.push_back(k / g);
    return rep;
  }

  // squared-ratio reconstruction
  {
    const Real rtol = pow10(-(long)precision() + 15);
    std::vector<Rat> squares;
    bool ok = true;
    for (const Num& r : ratios) {
      Real s = r.to_real() * r.to_real();
      Rat q;
      if (!rationalize(s, Int(1'000'000), rtol, q)) {
        ok = false;
        break;
      }
      squares.push_back(q);
    }
    if (ok) {
      std::vector<Int> primes;
      auto rows = exponent_rows(squares, primes);
      int rank = lattice_rank(rows);
      if (rank >= 2) return make_report("III_1", "squared-ratio-lattice", false);
      std::vector<Int> p, mult;
      rank_one_data(rows, p, mult);
      Int g = gcd_all(mult);
      std::vector<Int> gexp(p.size());
      for (size_t j = 0; j < p.size(); ++j) gexp[j] = g * p[j];
      // gamma^2 is rational; lambda = gamma^{-1} = 1/sqrt(gamma2)
      Rat gamma2 = assemble_generator(primes, gexp);
      if (gamma2 <= 1) fail(Errc::Internal, "generator not above one");
      TypeReport rep = make_report("III_lambda", "squared-ratio-lattice", false);
      rep.has_lambda = true;
      rep.lambda =
          Num(Real(Real(1) / boost::multiprecision::sqrt(to_real(gamma2))));
      for (const Int& k : mult) rep.exponents.push_back(k / g);
      return rep;
    }
  }

  // log gcd with resolution bands
  {
    const Real tau = pow10(-(long)(precision() / 2));
    std::vector<Real> logs;
    for (const Num& r : ratios)
      if (r != Num(1)) logs.push_back(boost::multiprecision::log(r.to_real()));
    Real g = logs[0];
    for (size_t i = 1; i < logs.size(); ++i) g = real_gcd(g, logs[i], tau);
    if (g > tau * pow10(6)) {
      std::vector<Int> m;
      bool resid_ok = true;
      for (const Num& r : ratios) {
        if (r == Num(1)) {
          m.push_back(0);
          continue;
        }
        Real l = boost::multiprecision::log(r.to_real());
        Real q = l / g;
        Real qr = boost::multiprecision::floor(q + Real(1) / 2);
        Real resid = boost::multiprecision::abs(l - qr * g);
        if (resid > tau * pow10(3) * (Real(1) + boost::multiprecision::abs(qr)))
          resid_ok = false;
        m.push_back(qr.convert_to<Int>());
      }
      if (!resid_ok) return make_report("inconclusive", "log-gcd", false);
      Int gg = gcd_all(m);
      if (gg > 1) {
        g *= to_real(Rat(gg));
        for (Int& k : m) k /= gg;
      }
      TypeReport rep = make_report("III_lambda", "log-gcd", false);
      rep.has_lambda = true;
      rep.lambda = Num(Real(boost::multiprecision::exp(-g)));
      rep.exponents = std::move(m);
      return rep;
    }
    if (g <= tau * pow10(3))
      return make_report("III_1", "log-gcd", false);
    return make_report("inconclusive", "log-gcd", false);
  }
}

TypeReport classify_type(std::shared_ptr<const FusionRing> ring) {
  if (!ring || !ring->has_dims())
    fail(Errc::Internal, "classification needs ring dimensions");
  std::vector<RatioGen> gens = ratio_generators(*ring);
  std::vector<Num> ratios;
  for (const RatioGen& g : gens) ratios.push_back(g.ratio);
  TypeReport rep = classify_ratio_set(ratios, ring->dims_exact);
  rep.generators = std::move(gens);
  return rep;
}

std::string type_report_json(const FusionRing& ring, const TypeReport& rep) {
  Json doc;
  doc["ring"] = ring.name;
  doc["type"] = rep.type;
  if (rep.has_lambda)
    doc["lambda"] = num_json(rep.lambda);
  else
    doc["lambda"] = nullptr;
  doc["exact"] = rep.exact;
  doc["method"] = rep.method;
  doc["precision"] = rep.precision_digits;
  Json gens = Json::array();
  for (size_t i = 0; i < rep.generators.size(); ++i) {
    const RatioGen& g = rep.generators[i];
    Json e;
    e["triple"] = Json::array({ring.simples[g.triple[0]], ring.simples[g.triple[1]],
                               ring.simples[g.triple[2]]});
    e["ratio"] = num_json(g.ratio);
    if (i < rep.exponents.size())
      e["Z"] = rep.exponents[i].convert_to<long long>();
    else
      e["Z"] = nullptr;
    gens.push_back(std::move(e));
  }
  doc["generators"] = std::move(gens);
  return json_dump(doc);
}

}  // namespace bnet
