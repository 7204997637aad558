#include "core/path_net.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "core/json_io.hpp"

namespace bnet {

namespace {
constexpr long long kEnumerationLimit = 4'000'000;
}

FusionGraph build_fusion_graph(std::shared_ptr<const FusionRing> ring,
                               std::vector<int> X) {
  if (!ring) fail(Errc::Internal, "null ring");
  if (!ring->has_dims())
    fail(Errc::Internal, "ring dimensions must be computed before the graph");
  const int r = ring->rank();
  if (X.empty()) {
    X.resize(r);
    for (int i = 0; i < r; ++i) X[i] = i;
  }
  for (int x : X)
    if (x < 0 || x >= r) fail(Errc::Validation, "X entry out of range");
  std::sort(X.begin(), X.end());

  FusionGraph g;
  g.ring = std::move(ring);
  g.X = std::move(X);
  g.out.resize(r);
  g.A.assign(r, std::vector<Int>(r, 0));
  g.d_X = Num(0);
  g.D_X = Num(0);
  for (int x : g.X) {
    g.d_X += g.ring->dims[x];
    g.D_X += g.ring->dims[x] * g.ring->dims[x];
  }

  // multiplicity of label x in X
  std::vector<int> occ(r, 0);
  for (int x : g.X) occ[x]++;

  for (int src = 0; src < r; ++src) {
    for (int tgt = 0; tgt < r; ++tgt) {
      for (int lbl = 0; lbl < r; ++lbl) {
        if (!occ[lbl]) continue;
        long long m = static_cast<long long>(occ[lbl]) * g.ring->n(src, lbl, tgt);
        for (long long s = 0; s < m; ++s)
          g.out[src].push_back({src, tgt, lbl, static_cast<int>(s)});
        g.A[tgt][src] += m;
      }
    }
    std::sort(g.out[src].begin(), g.out[src].end(),
              [](const GraphEdge& a, const GraphEdge& b) {
                return std::tie(a.target, a.label, a.slot) <
                       std::tie(b.target, b.label, b.slot);
              });
  }
  return g;
}

PathAlgebra::PathAlgebra(FusionGraph g, int level_cap)
    : g_(std::move(g)), cap_(level_cap) {
  if (cap_ < 0) fail(Errc::Validation, "negative level cap");
  PathLevel root;
  root.parent = {-1};
  root.edge = {-1};
  root.vertex = {0};
  levels_.push_back(std::move(root));
}

void PathAlgebra::check_level(int n) const {
  if (n < 0) fail(Errc::Internal, "negative level");
  if (n > cap_)
    fail(Errc::Validation,
         "level " + std::to_string(n) + " exceeds cap " + std::to_string(cap_));
}

std::vector<Int> PathAlgebra::level_dims(int n) const {
  check_level(n);
  const int r = g_.ring->rank();
  std::vector<Int> v(r, 0);
  v[0] = 1;
  for (int k = 0; k < n; ++k) {
    std::vector<Int> w(r, 0);
    for (int t = 0; t < r; ++t)
      for (int s = 0; s < r; ++s)
        if (g_.A[t][s] != 0) w[t] += g_.A[t][s] * v[s];
    v = std::move(w);
  }
  return v;
}

Int PathAlgebra::level_count(int n) const {
  Int total = 0;
  for (const Int& c : level_dims(n)) total += c;
  return total;
}

const PathLevel& PathAlgebra::level(int n) {
  check_level(n);
  while (static_cast<int>(levels_.size()) <= n) {
    int k = static_cast<int>(levels_.size());
    if (level_count(k) > kEnumerationLimit)
      fail(Errc::Resource,
           "path enumeration at level " + std::to_string(k) + " too large");
    PathLevel& prev = levels_.back();
    PathLevel next;
    long long expect = level_count(k).convert_to<long long>();
    next.parent.reserve(expect);
    next.edge.reserve(expect);
    next.vertex.reserve(expect);
    prev.child_off.resize(prev.size());
    for (long long i = 0; i < prev.size(); ++i) {
      prev.child_off[i] = next.size();
      const auto& edges = g_.out[prev.vertex[i]];
      for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        next.parent.push_back(static_cast<int>(i));
        next.edge.push_back(e);
        next.vertex.push_back(edges[e].target);
      }
    }
    levels_.push_back(std::move(next));
  }
  return levels_[n];
}

long long PathAlgebra::child(int n, long long path, int edge_idx) {
  level(n + 1);
  const PathLevel& cur = levels_[n];
  if (path < 0 || path >= cur.size()) fail(Errc::Internal, "path out of range");
  int deg = static_cast<int>(g_.out[cur.vertex[path]].size());
  if (edge_idx < 0 || edge_idx >= deg) fail(Errc::Internal, "edge out of range");
  return cur.child_off[path] + edge_idx;
}

int PathAlgebra::path_range(int n, long long idx) {
  const PathLevel& lv = level(n);
  if (idx < 0 || idx >= lv.size()) fail(Errc::Validation, "path index out of range");
  return lv.vertex[idx];
}

std::vector<GraphEdge> PathAlgebra::path_edges(int n, long long idx) {
  level(n);
  std::vector<GraphEdge> out(n);
  long long cur = idx;
  for (int k = n; k >= 1; --k) {
    const PathLevel& lv = levels_[k];
    if (cur < 0 || cur >= lv.size())
      fail(Errc::Validation, "path index out of range");
    int p = lv.parent[cur];
    out[k - 1] = g_.out[levels_[k - 1].vertex[p]][lv.edge[cur]];
    cur = p;
  }
  return out;
}

std::vector<int> PathAlgebra::path_labels(int n, long long idx) {
  std::vector<int> labels(n);
  auto edges = path_edges(n, idx);
  for (int k = 0; k < n; ++k) labels[k] = edges[k].label;
  return labels;
}

Num PathAlgebra::path_weight(int n, long long idx) {
  Num w(1);
  for (const GraphEdge& e : path_edges(n, idx)) w *= g_.ring->dims[e.label];
  return w;
}

std::string PathAlgebra::path_str(int n, long long idx) {
  const auto& names = g_.ring->simples;
  std::ostringstream os;
  os << names[0];
  for (const GraphEdge& e : path_edges(n, idx))
    os << " -(" << names[e.label] << ":" << e.slot << ")-> " << names[e.target];
  return os.str();
}

long long PathAlgebra::path_index(int n, const std::vector<GraphEdge>& steps) {
  check_level(n);
  if (static_cast<int>(steps.size()) != n)
    fail(Errc::Validation, "path has wrong number of steps");
  level(n);
  long long idx = 0;
  int v = 0;
  for (int k = 0; k < n; ++k) {
    const auto& edges = g_.out[v];
    int pos = -1;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (edges[e].target == steps[k].target && edges[e].label == steps[k].label &&
          edges[e].slot == steps[k].slot) {
        pos = e;
        break;
      }
    if (pos < 0)
      fail(Errc::Validation, "no such edge at step " + std::to_string(k));
    idx = child(k, idx, pos);
    v = edges[pos].target;
  }
  return idx;
}

long long PathAlgebra::path_index_by_labels(int n, const std::vector<int>& labels) {
  check_level(n);
  if (static_cast<int>(labels.size()) != n)
    fail(Errc::Validation, "label sequence has wrong length");
  level(n);
  long long idx = 0;
  int v = 0;
  for (int k = 0; k < n; ++k) {
    const auto& edges = g_.out[v];
    int pos = -1;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (edges[e].label != labels[k]) continue;
      if (pos >= 0)
        fail(Errc::Validation, "label does not determine the edge uniquely");
      pos = e;
    }
    if (pos < 0)
      fail(Errc::Validation, "no edge with requested label at step " +
                                 std::to_string(k));
    idx = child(k, idx, pos);
    v = edges[pos].target;
  }
  return idx;
}

void PathPairOperator::add_term(long long ket, long long bra, const Cplx& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.try_emplace({ket, bra}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

void PathPairOperator::prune() {
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second.is_zero() ? terms.erase(it) : std::next(it);
}

PathPairOperator matrix_unit(PathAlgebra& alg, int n, long long ket, long long bra) {
  if (alg.path_range(n, ket) != alg.path_range(n, bra))
    fail(Errc::Validation, "matrix unit requires paths with equal range");
  PathPairOperator x;
  x.level = n;
  x.add_term(ket, bra, Cplx(Num(1)));
  return x;
}

PathPairOperator identity_op(PathAlgebra& alg, int n) {
  const PathLevel& lv = alg.level(n);
  PathPairOperator x;
  x.level = n;
  for (long long i = 0; i < lv.size(); ++i) x.add_term(i, i, Cplx(Num(1)));
  return x;
}

PathPairOperator label_projector(PathAlgebra& alg, int n,
                                 const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != n)
    fail(Errc::Validation, "label sequence has wrong length");
  alg.level(n);
  PathPairOperator x;
  x.level = n;
  // depth-first over paths whose label sequence matches
  std::vector<std::pair<long long, int>> stack{{0, 0}};  // (path idx, depth)
  while (!stack.empty()) {
    auto [idx, depth] = stack.back();
    stack.pop_back();
    if (depth == n) {
      x.add_term(idx, idx, Cplx(Num(1)));
      continue;
    }
    int v = alg.level(depth).vertex[idx];
    const auto& edges = alg.graph().out[v];
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (edges[e].label == labels[depth])
        stack.push_back({alg.child(depth, idx, e), depth + 1});
  }
  return x;
}

PathPairOperator multiply(PathAlgebra& alg, const PathPairOperator& x,
                          const PathPairOperator& y) {
  (void)alg;
  if (x.level != y.level) fail(Errc::Validation, "operator levels differ");
  std::unordered_map<long long, std::vector<std::pair<long long, const Cplx*>>> by_ket;
  for (const auto& [key, c] : y.terms) by_ket[key.first].push_back({key.second, &c});
  PathPairOperator out;
  out.level = x.level;
  for (const auto& [key, cx] : x.terms) {
    auto it = by_ket.find(key.second);
    if (it == by_ket.end()) continue;
    for (const auto& [bra2, cy] : it->second) out.add_term(key.first, bra2, cx * *cy);
  }
  return out;
}

PathPairOperator adjoint(const PathPairOperator& x) {
  PathPairOperator out;
  out.level = x.level;
  for (const auto& [key, c] : x.terms) out.add_term(key.second, key.first, c.conj());
  return out;
}

PathPairOperator add(const PathPairOperator& x, const PathPairOperator& y) {
  if (x.level != y.level) fail(Errc::Validation, "operator levels differ");
  PathPairOperator out = x;
  for (const auto& [key, c] : y.terms) out.add_term(key.first, key.second, c);
  return out;
}

PathPairOperator scale(const Cplx& c, const PathPairOperator& x) {
  PathPairOperator out;
  out.level = x.level;
  for (const auto& [key, v] : x.terms) out.add_term(key.first, key.second, c * v);
  return out;
}

PathPairOperator include(PathAlgebra& alg, const PathPairOperator& x) {
  PathPairOperator out;
  out.level = x.level + 1;
  for (const auto& [key, c] : x.terms) {
    int v = alg.path_range(x.level, key.first);
    int deg = static_cast<int>(alg.graph().out[v].size());
    for (int e = 0; e < deg; ++e)
      out.add_term(alg.child(x.level, key.first, e),
                   alg.child(x.level, key.second, e), c);
  }
  return out;
}

Cplx trace_cat(PathAlgebra& alg, const PathPairOperator& x) {
  Cplx acc;
  for (const auto& [key, c] : x.terms)
    if (key.first == key.second)
      acc += c * Cplx(alg.ring().dims[alg.path_range(x.level, key.first)]);
  return acc;
}

Cplx canonical_state(PathAlgebra& alg, const PathPairOperator& x) {
  Num norm = pow_int(alg.graph().D_X, -x.level);
  Cplx acc;
  for (const auto& [key, c] : x.terms) {
    if (key.first != key.second) continue;
    Num w = alg.path_weight(x.level, key.first) *
            alg.ring().dims[alg.path_range(x.level, key.first)];
    acc += c * Cplx(w);
  }
  return acc * Cplx(norm);
}

Cplx canonical_state_projector_form(PathAlgebra& alg, const PathPairOperator& x) {
  // Independent route: cut the operator along label projectors, take the
  // categorical trace in each block, weight by the label dimensions.
  std::set<std::vector<int>> seqs;
  for (const auto& [key, c] : x.terms)
    seqs.insert(alg.path_labels(x.level, key.second));
  Cplx acc;
  for (const auto& labels : seqs) {
    Num w(1);
    for (int l : labels) w *= alg.ring().dims[l];
    PathPairOperator cut = multiply(alg, x, label_projector(alg, x.level, labels));
    acc += trace_cat(alg, cut) * Cplx(w);
  }
  return acc * Cplx(pow_int(alg.graph().D_X, -x.level));
}

Cplx markov_trace(PathAlgebra& alg, const PathPairOperator& x) {
  Num norm = pow_int(alg.graph().d_X, -x.level);
  Cplx acc;
  for (const auto& [key, c] : x.terms)
    if (key.first == key.second)
      acc += c * Cplx(alg.ring().dims[alg.path_range(x.level, key.first)]);
  return acc * Cplx(norm);
}

Cplx unit_state(PathAlgebra& alg, const PathPairOperator& x) {
  std::vector<int> units(x.level, 0);
  long long u = alg.path_index_by_labels(x.level, units);
  auto it = x.terms.find({u, u});
  return it == x.terms.end() ? Cplx() : it->second;
}

Cplx regular_q_state(PathAlgebra& alg, const PathPairOperator& x) {
  if (!alg.ring().pointed())
    fail(Errc::Validation, "regular state requires a pointed ring");
  Num norm = pow_int(Num(alg.ring().rank()), -x.level);
  Cplx acc;
  for (const auto& [key, c] : x.terms) acc += c;
  return acc * Cplx(norm);
}

namespace {

// sigma_{i beta} on E_{ket,bra}: scale by (w(ket)/w(bra))^beta. With this
// orientation the canonical state is KMS at beta = +1.
Cplx imag_flow_factor(const Num& wk, const Num& wb, const Num& beta) {
  Num ratio = wk / wb;
  if (ratio == Num(1) || beta.is_zero()) return Cplx(Num(1));
  if (beta.is_integer()) {
    Int e = beta.as_integer();
    if (boost::multiprecision::abs(e) > 1'000'000)
      fail(Errc::Resource, "modular exponent too large");
    return Cplx(pow_int(ratio, e.convert_to<long>()));
  }
  Real f = boost::multiprecision::exp(beta.to_real() *
                                      boost::multiprecision::log(ratio.to_real()));
  return Cplx(Num(f));
}

}  // namespace

PathPairOperator modular_flow_imag(PathAlgebra& alg, const PathPairOperator& x,
                                   const Num& beta) {
  PathPairOperator out;
  out.level = x.level;
  for (const auto& [key, c] : x.terms) {
    Num wk = alg.path_weight(x.level, key.first);
    Num wb = alg.path_weight(x.level, key.second);
    out.add_term(key.first, key.second, c * imag_flow_factor(wk, wb, beta));
  }
  return out;
}

PathPairOperator modular_flow_real(PathAlgebra& alg, const PathPairOperator& x,
                                   const Num& t) {
  PathPairOperator out;
  out.level = x.level;
  for (const auto& [key, c] : x.terms) {
    Num wk = alg.path_weight(x.level, key.first);
    Num wb = alg.path_weight(x.level, key.second);
    Num ratio = wb / wk;
    if (ratio == Num(1) || t.is_zero()) {
      out.add_term(key.first, key.second, c);
      continue;
    }
    Real phase = t.to_real() * boost::multiprecision::log(ratio.to_real());
    Cplx rot(Num(boost::multiprecision::cos(phase)),
             Num(boost::multiprecision::sin(phase)));
    out.add_term(key.first, key.second, c * rot);
  }
  return out;
}

Real kms_defect(PathAlgebra& alg, const PathPairOperator& x,
                const PathPairOperator& y, const Num& beta) {
  Cplx lhs = canonical_state(alg, multiply(alg, x, modular_flow_imag(alg, y, beta)));
  Cplx rhs = canonical_state(alg, multiply(alg, y, x));
  return abs_value(lhs - rhs);
}

namespace {

struct UnitList {
  std::vector<std::pair<long long, long long>> units;
  std::unordered_map<long long, std::vector<int>> by_ket, by_bra;
};

UnitList enumerate_units(PathAlgebra& alg, int n) {
  const PathLevel& lv = alg.level(n);
  std::unordered_map<int, std::vector<long long>> by_vertex;
  for (long long i = 0; i < lv.size(); ++i) by_vertex[lv.vertex[i]].push_back(i);
  UnitList out;
  for (int v = 0; v < alg.ring().rank(); ++v) {
    auto it = by_vertex.find(v);
    if (it == by_vertex.end()) continue;
    for (long long k : it->second)
      for (long long b : it->second) {
        out.by_ket[k].push_back(static_cast<int>(out.units.size()));
        out.by_bra[b].push_back(static_cast<int>(out.units.size()));
        out.units.push_back({k, b});
      }
  }
  return out;
}

template <class Defect>
SweepResult sweep_pairs(PathAlgebra& alg, int n, Defect&& defect) {
  UnitList ul = enumerate_units(alg, n);
  SweepResult res;
  res.max_defect = Real(0);
  long long m = static_cast<long long>(ul.units.size());
  res.pairs = m * m;
  std::vector<int> cand;
  for (int i = 0; i < m; ++i) {
    const auto& [k1, b1] = ul.units[i];
    cand.clear();
    // x*y nonzero needs ket(y) == bra(x); y*x nonzero needs bra(y) == ket(x).
    if (auto it = ul.by_ket.find(b1); it != ul.by_ket.end())
      cand.insert(cand.end(), it->second.begin(), it->second.end());
    if (auto it = ul.by_bra.find(k1); it != ul.by_bra.end())
      cand.insert(cand.end(), it->second.begin(), it->second.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (int j : cand) {
      const auto& [k2, b2] = ul.units[j];
      Real d = defect(k1, b1, k2, b2);
      if (d > res.max_defect) {
        res.max_defect = d;
        res.worst = {k1, b1, k2, b2};
      }
    }
  }
  return res;
}

}  // namespace

SweepResult kms_sweep(PathAlgebra& alg, int n, const Num& beta) {
  return sweep_pairs(alg, n, [&](long long k1, long long b1, long long k2,
                                 long long b2) {
    PathPairOperator x = matrix_unit(alg, n, k1, b1);
    PathPairOperator y = matrix_unit(alg, n, k2, b2);
    return kms_defect(alg, x, y, beta);
  });
}

SweepResult traciality_sweep(PathAlgebra& alg, int n) {
  return sweep_pairs(alg, n, [&](long long k1, long long b1, long long k2,
                                 long long b2) {
    PathPairOperator x = matrix_unit(alg, n, k1, b1);
    PathPairOperator y = matrix_unit(alg, n, k2, b2);
    Cplx lhs = canonical_state(alg, multiply(alg, x, y));
    Cplx rhs = canonical_state(alg, multiply(alg, y, x));
    return abs_value(lhs - rhs);
  });
}

namespace {

Num num_from_json(const Json& j) {
  if (j.is_number_integer()) return Num(static_cast<long long>(j.get<long long>()));
  if (j.is_number_float()) return Num(Real(j.get<double>()));
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    try {
      if (s.find('/') != std::string::npos) return Num(Rat(s));
      if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
          s.find('E') != std::string::npos)
        return Num(Real(s));
      return Num(Rat(s));
    } catch (const std::exception&) {
      fail(Errc::Parse, "bad scalar: " + s);
    }
  }
  fail(Errc::Parse, "scalar must be a number or string");
}

std::vector<GraphEdge> steps_from_json(const Json& j, int level) {
  if (!j.is_array() || static_cast<int>(j.size()) != level)
    fail(Errc::Parse, "path must list one edge per step");
  std::vector<GraphEdge> steps;
  for (int k = 0; k < level; ++k) {
    const Json& e = j[k];
    if (!e.is_array() || e.size() != 4)
      fail(Errc::Parse, "edge must be [step,target,label,slot]");
    for (const Json& x : e)
      if (!x.is_number_integer()) fail(Errc::Parse, "edge fields must be integers");
    if (e[0].get<int>() != k) fail(Errc::Parse, "edge steps must be 0..n-1 in order");
    steps.push_back({0, e[1].get<int>(), e[2].get<int>(), e[3].get<int>()});
  }
  return steps;
}

}  // namespace

PathPairOperator op_from_json(PathAlgebra& alg, const std::string& text) {
  Json doc = json_parse(text);
  if (!doc.is_object() || !doc.contains("level") || !doc.contains("terms"))
    fail(Errc::Parse, "operator document needs level and terms");
  if (!doc["level"].is_number_integer())
    fail(Errc::Parse, "level must be an integer");
  int n = doc["level"].get<int>();
  if (n < 0) fail(Errc::Parse, "level must be non-negative");
  if (n > alg.cap())
    fail(Errc::Validation, "level exceeds cap");
  if (!doc["terms"].is_array()) fail(Errc::Parse, "terms must be an array");

  PathPairOperator x;
  x.level = n;
  for (const Json& t : doc["terms"]) {
    if (!t.is_object() || !t.contains("ket") || !t.contains("bra"))
      fail(Errc::Parse, "term needs ket and bra");
    long long ket = alg.path_index(n, steps_from_json(t["ket"], n));
    long long bra = alg.path_index(n, steps_from_json(t["bra"], n));
    if (alg.path_range(n, ket) != alg.path_range(n, bra))
      fail(Errc::Validation, "term ket and bra must share their range");
    Num re = t.contains("re") ? num_from_json(t["re"]) : Num(0);
    Num im = t.contains("im") ? num_from_json(t["im"]) : Num(0);
    x.add_term(ket, bra, Cplx(re, im));
  }
  return x;
}

std::string op_to_json(PathAlgebra& alg, const PathPairOperator& x) {
  Json doc;
  doc["level"] = x.level;
  Json terms = Json::array();
  for (const auto& [key, c] : x.terms) {
    Json t;
    auto dump_path = [&](long long idx) {
      Json arr = Json::array();
      auto edges = alg.path_edges(x.level, idx);
      for (int k = 0; k < x.level; ++k)
        arr.push_back(Json::array(
            {k, edges[k].target, edges[k].label, edges[k].slot}));
      return arr;
    };
    t["ket"] = dump_path(key.first);
    t["bra"] = dump_path(key.second);
    t["re"] = num_json(c.re);
    t["im"] = num_json(c.im);
    terms.push_back(std::move(t));
  }
  doc["terms"] = std::move(terms);
  return json_dump(doc);
}

}  // namespace bnet
