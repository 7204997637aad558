#include "bnet.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "core/boundary.hpp"
#include "core/exact_oracle.hpp"
#include "core/fusion_ring.hpp"
#include "core/json_io.hpp"
#include "core/k_theory.hpp"
#include "core/num.hpp"
#include "core/path_net.hpp"
#include "core/toric.hpp"
#include "core/type_classifier.hpp"

using namespace bnet;

struct bnet_ring {
    FusionRing ring;
};

struct bnet_diagram {
    StationaryAFData data;
};

namespace {

thread_local std::string g_error;

int set_error(Errc c, const char* msg) {
    g_error = msg ? msg : "";
    return static_cast<int>(c);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Every entry point funnels through here so exceptions never cross the ABI.
template <class F> int guarded(F&& f) {
    try {
        f();
        return BNET_OK;
    } catch (const Error& e) {
        return set_error(e.code, e.what());
    } catch (const std::exception& e) {
        return set_error(Errc::Internal, e.what());
    } catch (...) {
        return set_error(Errc::Internal, "unidentified failure");
    }
}

void require(const void* p, const char* what) {
    if (!p) fail(Errc::Validation, std::string(what) + " is null");
}

int emit(char** out, const Json& j) {
    require(out, "output pointer");
    *out = dup_string(json_dump(j));
    if (!*out) return set_error(Errc::Resource, "out of memory");
    return BNET_OK;
}

Json cplx_json(const Cplx& c) {
    Json j;
    j["re"] = num_json(c.re);
    j["im"] = num_json(c.im);
    return j;
}

Json int_vec_json(const std::vector<Int>& v) {
    Json j = Json::array();
    for (const Int& x : v) j.push_back(x.str());
    return j;
}

const char* kind_name(EdgeKind k) { return k == EdgeKind::Rough ? "rough" : "smooth"; }

Json stabilizer_json(const Window& win, const Stabilizer& s) {
    Json j;
    j["type"] = s.star ? "star" : "plaquette";
    j["x"] = s.x;
    j["y"] = s.y;
    j["op"] = pauli_str(win, s.op);
    return j;
}

FusionRing with_dims(const FusionRing& ring) {
    FusionRing r = ring;
    ensure_dims(r);
    return r;
}

// Path algebra over the full regular object, dimensions filled.
PathAlgebra make_algebra(const FusionRing& ring, int cap) {
    auto rp = std::make_shared<FusionRing>(with_dims(ring));
    return PathAlgebra(build_fusion_graph(std::move(rp), {}), cap);
}

LatticeRegion parse_region_json(const Json& j) {
    if (!j.is_string()) fail(Errc::Parse, "region entries must be strings");
    return region_parse(j.get<std::string>());
}

std::vector<Int> parse_class_vector(const std::string& text) {
    Json j = json_parse(text);
    if (!j.is_array()) fail(Errc::Parse, "class vector must be a JSON array");
    std::vector<Int> v;
    v.reserve(j.size());
    for (const auto& x : j) {
        if (x.is_number_integer())
            v.emplace_back(x.get<long long>());
        else if (x.is_string())
            v.emplace_back(Int(x.get<std::string>()));
        else
            fail(Errc::Parse, "class vector entries must be integers or strings");
    }
    return v;
}

} // namespace

extern "C" {

const char* bnet_version(void) { return "0.1.0"; }

const char* bnet_last_error(void) { return g_error.c_str(); }

void bnet_string_free(char* s) { std::free(s); }

int bnet_set_precision(int digits) {
    return guarded([&] { set_precision(static_cast<unsigned>(digits > 0 ? digits : 0)); });
}

int bnet_precision(void) { return static_cast<int>(precision()); }

int bnet_ring_list(char** out_json) {
    return guarded([&] {
        Json j;
        j["rings"] = builtin_ring_names();
        emit(out_json, j);
    });
}

int bnet_ring_builtin(const char* name, bnet_ring** out) {
    return guarded([&] {
        require(name, "ring name");
        require(out, "output handle");
        *out = new bnet_ring{builtin_ring(name)};
    });
}

int bnet_ring_from_json(const char* text, bnet_ring** out) {
    return guarded([&] {
        require(text, "ring document");
        require(out, "output handle");
        *out = new bnet_ring{ring_from_json(text)};
    });
}

void bnet_ring_free(bnet_ring* r) { delete r; }

int bnet_ring_validate(const bnet_ring* r, char** out_json) {
    return guarded([&] {
        require(r, "ring handle");
        validate_ring(r->ring);
        Json j;
        j["name"] = r->ring.name;
        j["rank"] = r->ring.rank();
        j["valid"] = true;
        emit(out_json, j);
    });
}

int bnet_ring_dims(const bnet_ring* r, char** out_json) {
    return guarded([&] {
        require(r, "ring handle");
        FusionRing ring = with_dims(r->ring);
        Json j;
        j["name"] = ring.name;
        Json dims = Json::array();
        for (std::size_t i = 0; i < ring.simples.size(); ++i) {
            Json d;
            d["simple"] = ring.simples[i];
            d["dim"] = num_json(ring.dims[i]);
            dims.push_back(d);
        }
        j["dims"] = dims;
        j["global_dimension"] = num_json(ring.global_dimension());
        j["exact"] = ring.dims_exact;
        emit(out_json, j);
    });
}

int bnet_ring_pointed(const bnet_ring* r, char** out_json) {
    return guarded([&] {
        require(r, "ring handle");
        FusionRing ring = with_dims(r->ring);
        Json j;
        j["name"] = ring.name;
        j["pointed"] = ring.pointed();
        emit(out_json, j);
    });
}

int bnet_ring_triples(const bnet_ring* r, char** out_json) {
    return guarded([&] {
        require(r, "ring handle");
        auto triples = admissible_triples(r->ring);
        Json list = Json::array();
        for (const auto& t : triples) {
            Json e;
            e["a"] = r->ring.simples[std::size_t(t[0])];
            e["b"] = r->ring.simples[std::size_t(t[1])];
            e["c"] = r->ring.simples[std::size_t(t[2])];
            e["n"] = r->ring.n(t[0], t[1], t[2]);
            list.push_back(e);
        }
        Json j;
        j["name"] = r->ring.name;
        j["count"] = triples.size();
        j["triples"] = list;
        emit(out_json, j);
    });
}

int bnet_ring_to_json(const bnet_ring* r, char** out_json) {
    return guarded([&] {
        require(r, "ring handle");
        require(out_json, "output pointer");
        *out_json = dup_string(ring_to_json(r->ring));
        if (!*out_json) fail(Errc::Resource, "out of memory");
    });
}

int bnet_classify(const bnet_ring* r, char** out_json) {
    return guarded([&] {
        require(r, "ring handle");
        require(out_json, "output pointer");
        auto rp = std::make_shared<FusionRing>(with_dims(r->ring));
        auto rep = classify_type(rp);
        *out_json = dup_string(type_report_json(*rp, rep));
        if (!*out_json) fail(Errc::Resource, "out of memory");
    });
}

int bnet_state_evaluate(const bnet_ring* r, int level_cap, const char* op_json,
                        char** out_json) {
    return guarded([&] {
        require(r, "ring handle");
        require(op_json, "operator document");
        PathAlgebra alg = make_algebra(r->ring, level_cap);
        PathPairOperator op = op_from_json(alg, op_json);
        Json values;
        values["markov"] = cplx_json(markov_trace(alg, op));
        values["canonical"] = cplx_json(canonical_state(alg, op));
        values["unit"] = cplx_json(unit_state(alg, op));
        if (alg.ring().pointed()) values["regular_q"] = cplx_json(regular_q_state(alg, op));
        Json j;
        j["ring"] = alg.ring().name;
        j["level"] = op.level;
        j["terms"] = op.terms.size();
        j["values"] = values;
        emit(out_json, j);
    });
}

namespace {

Json sweep_json(const FusionRing& ring, int level, const SweepResult& r) {
    Json j;
    j["ring"] = ring.name;
    j["level"] = level;
    j["pairs"] = r.pairs;
    j["max_defect"] = num_json(Num(r.max_defect));
    j["worst"] = r.worst;
    return j;
}

} // namespace

int bnet_kms_check(const bnet_ring* r, int level, char** out_json) {
    return guarded([&] {
        require(r, "ring handle");
        PathAlgebra alg = make_algebra(r->ring, level);
        auto sweep = kms_sweep(alg, level, Num(1));
        Json j = sweep_json(alg.ring(), level, sweep);
        j["beta"] = 1;
        emit(out_json, j);
    });
}

int bnet_trace_check(const bnet_ring* r, int level, char** out_json) {
    return guarded([&] {
        require(r, "ring handle");
        PathAlgebra alg = make_algebra(r->ring, level);
        auto sweep = traciality_sweep(alg, level);
        emit(out_json, sweep_json(alg.ring(), level, sweep));
    });
}

int bnet_toric_reduce(int width, int height, const char* monomial, const char* inner,
                      const char* outer, char** out_json) {
    return guarded([&] {
        require(monomial, "monomial");
        require(inner, "inner region");
        require(outer, "outer region");
        Window win{width, height};
        PauliMonomial p = pauli_parse(win, monomial);
        LatticeRegion ri = region_parse(inner);
        LatticeRegion ro = region_parse(outer);
        ReduceResult res = pauli_reduce(win, p, ri, ro);
        Json j;
        j["window"] = {win.W, win.H};
        j["monomial"] = pauli_str(win, p);
        j["inner"] = region_str(ri);
        j["outer"] = region_str(ro);
        j["commutes"] = res.commutes;
        if (res.witness) j["witness"] = stabilizer_json(win, *res.witness);
        Json factors = Json::array();
        for (const auto& s : res.factors) factors.push_back(stabilizer_json(win, s));
        j["factors"] = factors;
        j["boundary"] = boundary_str(res.boundary);
        j["sites"] = res.boundary.sites;
        j["kind"] = kind_name(res.boundary.kind);
        j["phase"] = res.boundary.phase;
        if (res.interval) {
            Json iv;
            iv["side"] = side_name(res.interval->side);
            iv["kind"] = kind_name(res.interval->kind);
            iv["coord"] = res.interval->coord;
            iv["lo"] = res.interval->lo;
            iv["hi"] = res.interval->hi;
            iv["sites"] = res.interval->sites();
            j["interval"] = iv;
        }
        j["strict"] = res.strict;
        emit(out_json, j);
    });
}

int bnet_toric_boundary_dim(int sites, int rough, char** out_json) {
    return guarded([&] {
        auto info = boundary_algebra(sites, rough ? EdgeKind::Rough : EdgeKind::Smooth);
        Json j;
        j["sites"] = info.sites;
        j["kind"] = kind_name(info.kind);
        j["dimension"] = info.dimension.str();
        j["center_dim"] = info.center_dim;
        j["central"] = boundary_str(info.central);
        j["block_side"] = info.block_side.str();
        j["blocks"] = "M" + info.block_side.str() + "+M" + info.block_side.str();
        emit(out_json, j);
    });
}

int bnet_toric_iso_verify(int sites, int rough, char** out_json) {
    return guarded([&] {
        auto rep = fusion_net_iso(sites, rough ? EdgeKind::Rough : EdgeKind::Smooth);
        Json j;
        j["sites"] = rep.sites;
        j["kind"] = kind_name(rep.kind);
        j["dimension"] = rep.dimension.str();
        j["ambient"] = rep.ambient.str();
        j["block_dims"] = int_vec_json(rep.block_dims);
        j["relations_ok"] = rep.relations_ok;
        j["table_ok"] = rep.table_ok;
        j["parity_ok"] = rep.parity_ok;
        j["injective_ok"] = rep.injective_ok;
        j["markov_matches_state"] = rep.markov_matches_state;
        j["canonical_matches_state"] = rep.canonical_matches_state;
        j["unit_state_matches"] = rep.unit_state_matches;
        j["regular_state_matches"] = rep.regular_state_matches;
        j["all_ok"] = rep.all_ok();
        emit(out_json, j);
    });
}

int bnet_toric_lto_verify(const char* config_json, char** out_json) {
    return guarded([&] {
        require(config_json, "config document");
        Json cfg = json_parse(config_json);
        if (!cfg.is_object()) fail(Errc::Parse, "config must be a JSON object");
        std::string mode = cfg.value("mode", std::string());
        if (!cfg.contains("window") || !cfg["window"].is_array() || cfg["window"].size() != 2)
            fail(Errc::Parse, "config needs \"window\": [w, h]");
        Window win{cfg["window"][0].get<int>(), cfg["window"][1].get<int>()};
        if (!cfg.contains("regions") || !cfg["regions"].is_array())
            fail(Errc::Parse, "config needs a \"regions\" array");
        std::vector<LatticeRegion> regions;
        for (const auto& rj : cfg["regions"]) regions.push_back(parse_region_json(rj));
        auto want = [&](std::size_t n) {
            if (regions.size() != n)
                fail(Errc::Validation, "mode \"" + mode + "\" needs " + std::to_string(n) +
                                           " regions, got " + std::to_string(regions.size()));
        };
        int samples = cfg.value("samples", 100);
        unsigned seed = cfg.value("seed", 2026u);
        int probes = cfg.value("probes", 4);

        Json j;
        j["mode"] = mode;
        j["window"] = {win.W, win.H};
        j["regions"] = cfg["regions"];
        j["seed"] = seed;
        if (mode == "projector") {
            want(1);
            auto rep = oracle_projector_report(win, regions[0], probes, seed);
            j["qubits"] = rep.qubits;
            j["generators"] = rep.generators;
            j["trace"] = rep.trace;
            j["idempotency"] = rep.idempotency;
            j["self_adjointness"] = rep.self_adjointness;
        } else if (mode == "lto1") {
            want(2);
            auto rep = verify_lto1(win, regions[0], regions[1]);
            j["qubits"] = rep.qubits;
            j["ground_dim"] = rep.ground_dim;
            j["checked"] = rep.checked;
            j["max_deviation"] = rep.max_deviation;
            j["stab_absorption"] = rep.stab_absorption;
            j["channel_mismatch"] = rep.channel_mismatch;
            j["strict"] = rep.strict;
        } else if (mode == "lto234") {
            want(3);
            auto rep = verify_lto234(win, regions[0], regions[1], regions[2], seed);
            j["qubits"] = rep.qubits;
            j["interval_sites"] = rep.interval_sites;
            j["expected_span"] = rep.expected_span.str();
            j["span_small"] = rep.span_small;
            j["span_small_embedded"] = rep.span_small_embedded;
            j["span_large"] = rep.span_large;
            j["span_large_embedded"] = rep.span_large_embedded;
            j["dropped_norm"] = rep.dropped_norm;
            j["net_order_residual"] = rep.net_order_residual;
            j["injectivity_rank"] = rep.injectivity_rank;
            j["min_injection_norm"] = rep.min_injection_norm;
            j["channel_agrees"] = rep.channel_agrees;
            j["strict"] = rep.strict;
        } else if (mode == "lto3") {
            want(3);
            auto rep = verify_lto3(win, regions[0], regions[1], regions[2], samples, seed);
            j["qubits"] = rep.qubits;
            j["sites_small"] = rep.sites_small;
            j["sites_large"] = rep.sites_large;
            j["expected_small"] = rep.expected_small.str();
            j["expected_large"] = rep.expected_large.str();
            j["span_small"] = rep.span_small;
            j["span_large"] = rep.span_large;
            j["span_union"] = rep.span_union;
            j["samples"] = rep.samples;
            j["max_noncommutant_norm"] = rep.max_noncommutant_norm;
            j["strict"] = rep.strict;
        } else if (mode == "state") {
            want(3);
            auto rep = verify_state_uniqueness(win, regions[0], regions[1], regions[2],
                                               samples, seed);
            j["qubits"] = rep.qubits;
            j["samples"] = rep.samples;
            j["max_scalar_deviation"] = rep.max_scalar_deviation;
            j["max_channel_mismatch"] = rep.max_channel_mismatch;
            j["psi_one"] = rep.psi_one;
            j["trace_proportionality"] = rep.trace_proportionality;
            j["net_order_residual"] = rep.net_order_residual;
        } else {
            fail(Errc::Validation, "unknown mode \"" + mode + "\"");
        }
        emit(out_json, j);
    });
}

int bnet_k0_tensor(const bnet_ring* r, const int* objects, int len, bnet_diagram** out) {
    return guarded([&] {
        require(r, "ring handle");
        require(out, "output handle");
        if (len < 0) fail(Errc::Validation, "object count is negative");
        if (len > 0) require(objects, "object list");
        std::vector<int> X(objects, objects + len);
        *out = new bnet_diagram{stationary_tensor(r->ring, X)};
    });
}

int bnet_k0_two_sided(const bnet_ring* r, bnet_diagram** out) {
    return guarded([&] {
        require(r, "ring handle");
        require(out, "output handle");
        *out = new bnet_diagram{stationary_two_sided(r->ring)};
    });
}

void bnet_diagram_free(bnet_diagram* d) { delete d; }

int bnet_k0_describe(const bnet_diagram* d, char** out_json) {
    return guarded([&] {
        require(d, "diagram handle");
        Json j;
        j["k"] = d->data.k;
        Json A = Json::array();
        for (const auto& row : d->data.A) A.push_back(int_vec_json(row));
        j["matrix"] = A;
        j["initial"] = int_vec_json(d->data.e);
        Json tau = Json::array();
        for (const Num& t : d->data.tau) tau.push_back(num_json(t));
        j["trace"] = tau;
        j["lambda"] = num_json(d->data.lambda);
        j["primitive"] = d->data.primitive;
        emit(out_json, j);
    });
}

int bnet_k0_dimension_sequence(const bnet_diagram* d, int levels, char** out_json) {
    return guarded([&] {
        require(d, "diagram handle");
        auto seq = dimension_sequence(d->data, levels);
        Json rows = Json::array();
        for (const auto& v : seq) rows.push_back(int_vec_json(v));
        Json pair = Json::array();
        for (const auto& v : seq) pair.push_back(num_json(trace_pairing(d->data, v)));
        Json j;
        j["levels"] = rows;
        j["pairings"] = pair;
        j["lambda"] = num_json(d->data.lambda);
        emit(out_json, j);
    });
}

int bnet_k0_pairing(const bnet_diagram* d, const char* v_json, char** out_json) {
    return guarded([&] {
        require(d, "diagram handle");
        require(v_json, "class vector");
        auto v = parse_class_vector(v_json);
        Json j;
        j["vector"] = int_vec_json(v);
        j["value"] = num_json(trace_pairing(d->data, v));
        emit(out_json, j);
    });
}

int bnet_k0_infinitesimal(const bnet_diagram* d, int bound, char** out_json) {
    return guarded([&] {
        require(d, "diagram handle");
        auto res = find_infinitesimal(d->data, bound);
        Json j;
        j["bound"] = bound;
        j["found"] = res.found;
        if (res.found) j["witness"] = int_vec_json(res.witness);
        j["certificate"] = res.certificate;
        j["power_checked"] = res.power_checked;
        emit(out_json, j);
    });
}

int bnet_k0_uhf(const bnet_diagram* d, char** out_json) {
    return guarded([&] {
        require(d, "diagram handle");
        auto rep = uhf_report(d->data);
        Json j;
        j["rank_one"] = rep.rank_one;
        if (rep.rank_one) {
            j["q"] = rep.q.str();
            j["base"] = rep.base.str();
        }
        j["label"] = rep.label;
        emit(out_json, j);
    });
}

} // extern "C"
