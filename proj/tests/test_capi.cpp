#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <string>

#include "bnet.h"
#include "core/fusion_ring.hpp"
#include "core/json_io.hpp"
#include "core/path_net.hpp"

using bnet::Json;

namespace {

// Take ownership of a C string result and parse it.
Json grab(char* s) {
    REQUIRE(s != nullptr);
    std::string text(s);
    bnet_string_free(s);
    return bnet::json_parse(text);
}

struct RingGuard {
    bnet_ring* h = nullptr;
    ~RingGuard() { bnet_ring_free(h); }
};

struct DiagramGuard {
    bnet_diagram* h = nullptr;
    ~DiagramGuard() { bnet_diagram_free(h); }
};

} // namespace

TEST_CASE("error plumbing and lifetime") {
    CHECK(std::string(bnet_version()) == "0.1.0");

    bnet_ring* r = nullptr;
    CHECK(bnet_ring_builtin("no_such_ring", &r) == BNET_ERR_VALIDATION);
    CHECK(r == nullptr);
    CHECK(std::string(bnet_last_error()).size() > 0);

    CHECK(bnet_ring_builtin(nullptr, &r) == BNET_ERR_VALIDATION);
    char* out = nullptr;
    CHECK(bnet_ring_validate(nullptr, &out) == BNET_ERR_VALIDATION);
    CHECK(bnet_ring_from_json("{", &r) == BNET_ERR_PARSE);

    bnet_string_free(nullptr);
    bnet_ring_free(nullptr);
    bnet_diagram_free(nullptr);

    CHECK(bnet_set_precision(30) == BNET_OK);
    CHECK(bnet_precision() == 30);
    CHECK(bnet_set_precision(50) == BNET_OK);
    CHECK(bnet_precision() == 50);
}

TEST_CASE("ring operations round-trip through JSON") {
    char* out = nullptr;
    REQUIRE(bnet_ring_list(&out) == BNET_OK);
    Json names = grab(out);
    CHECK(names["rings"].size() == 5);

    RingGuard fib;
    REQUIRE(bnet_ring_builtin("fib", &fib.h) == BNET_OK);

    REQUIRE(bnet_ring_validate(fib.h, &out) == BNET_OK);
    Json v = grab(out);
    CHECK(v["valid"] == true);
    CHECK(v["rank"] == 2);

    REQUIRE(bnet_ring_dims(fib.h, &out) == BNET_OK);
    Json d = grab(out);
    CHECK(d["dims"].size() == 2);
    CHECK(d["exact"] == false);

    REQUIRE(bnet_ring_pointed(fib.h, &out) == BNET_OK);
    CHECK(grab(out)["pointed"] == false);

    RingGuard z2;
    REQUIRE(bnet_ring_builtin("hilb_z2", &z2.h) == BNET_OK);
    REQUIRE(bnet_ring_pointed(z2.h, &out) == BNET_OK);
    CHECK(grab(out)["pointed"] == true);

    REQUIRE(bnet_ring_triples(z2.h, &out) == BNET_OK);
    Json t = grab(out);
    CHECK(t["count"] == 4);
    CHECK(t["triples"].size() == 4);

    RingGuard rep;
    REQUIRE(bnet_ring_builtin("rep_s3", &rep.h) == BNET_OK);
    REQUIRE(bnet_ring_triples(rep.h, &out) == BNET_OK);
    CHECK(grab(out)["count"] == 11);

    // serialize, reload, revalidate
    REQUIRE(bnet_ring_to_json(rep.h, &out) == BNET_OK);
    std::string doc(out);
    bnet_string_free(out);
    RingGuard back;
    REQUIRE(bnet_ring_from_json(doc.c_str(), &back.h) == BNET_OK);
    REQUIRE(bnet_ring_validate(back.h, &out) == BNET_OK);
    CHECK(grab(out)["valid"] == true);
}

TEST_CASE("classification reports through the C surface") {
    char* out = nullptr;
    RingGuard z2;
    REQUIRE(bnet_ring_builtin("hilb_z2", &z2.h) == BNET_OK);
    REQUIRE(bnet_classify(z2.h, &out) == BNET_OK);
    Json j = grab(out);
    CHECK(j["type"] == "II_1");
    CHECK(j["exact"] == true);

    RingGuard fib;
    REQUIRE(bnet_ring_builtin("fib", &fib.h) == BNET_OK);
    REQUIRE(bnet_classify(fib.h, &out) == BNET_OK);
    Json f = grab(out);
    CHECK(f["type"] == "III_lambda");
}

TEST_CASE("state evaluation matches the core") {
    using namespace bnet;
    auto rp = std::make_shared<FusionRing>(builtin_ring("hilb_z2"));
    ensure_dims(*rp);
    PathAlgebra alg(build_fusion_graph(rp, {}), 4);
    PathPairOperator op = label_projector(alg, 2, {1, 1});
    std::string doc = op_to_json(alg, op);

    RingGuard z2;
    REQUIRE(bnet_ring_builtin("hilb_z2", &z2.h) == BNET_OK);
    char* out = nullptr;
    REQUIRE(bnet_state_evaluate(z2.h, 4, doc.c_str(), &out) == BNET_OK);
    Json j = grab(out);
    CHECK(j["level"] == 2);
    CHECK(j["values"]["markov"]["re"] == num_json(markov_trace(alg, op).re));
    CHECK(j["values"]["markov"]["im"] == num_json(markov_trace(alg, op).im));
    CHECK(j["values"]["canonical"]["re"] == num_json(canonical_state(alg, op).re));
    CHECK(j["values"]["unit"]["re"] == num_json(unit_state(alg, op).re));
    CHECK(j["values"]["regular_q"]["re"] == num_json(regular_q_state(alg, op).re));

    REQUIRE(bnet_kms_check(z2.h, 2, &out) == BNET_OK);
    Json k = grab(out);
    CHECK(k["beta"] == 1);
    CHECK(k["pairs"].get<long long>() > 0);

    REQUIRE(bnet_trace_check(z2.h, 2, &out) == BNET_OK);
    Json tr = grab(out);
    CHECK(tr["max_defect"] == num_json(Num(0)));
}

TEST_CASE("toric reductions and algebra structure") {
    char* out = nullptr;

    // boundary x generator on a strict-margin pair: passes through untouched
    REQUIRE(bnet_toric_reduce(3, 5, "X@(1,1,e)", "rect 1 1 1 2 smooth rough smooth smooth",
                              "rect 0 0 1 3 smooth rough smooth smooth", &out) == BNET_OK);
    Json r = grab(out);
    CHECK(r["commutes"] == true);
    CHECK(r["boundary"] == "x0");
    CHECK(r["sites"] == 2);
    CHECK(r["kind"] == "rough");
    CHECK(r["phase"] == 0);
    CHECK(r["interval"]["side"] == "east");

    // a bulk X anticommutes with a plaquette of the outer region
    REQUIRE(bnet_toric_reduce(3, 3, "X@(1,1,e)", "rect 1 1 1 1 smooth rough smooth smooth",
                              "rect 0 0 2 2 smooth smooth smooth smooth", &out) == BNET_OK);
    Json nc = grab(out);
    CHECK(nc["commutes"] == false);
    CHECK(nc["witness"]["type"] == "plaquette");

    REQUIRE(bnet_toric_boundary_dim(3, 1, &out) == BNET_OK);
    Json bd = grab(out);
    CHECK(bd["dimension"] == "32");
    CHECK(bd["blocks"] == "M4+M4");
    CHECK(bd["center_dim"] == 2);

    REQUIRE(bnet_toric_iso_verify(2, 1, &out) == BNET_OK);
    CHECK(grab(out)["all_ok"] == true);

    CHECK(bnet_toric_reduce(3, 3, "X@(9,9,e)", "rect 1 1 1 1 smooth rough smooth smooth",
                            "rect 0 0 2 2 smooth smooth smooth smooth", &out) ==
          BNET_ERR_VALIDATION);
    CHECK(bnet_toric_reduce(3, 3, "W@(1,1,e)", "rect 1 1 1 1 smooth rough smooth smooth",
                            "rect 0 0 2 2 smooth smooth smooth smooth", &out) == BNET_ERR_PARSE);
}

TEST_CASE("oracle verification through config documents") {
    char* out = nullptr;
    const char* cfg = R"({"mode": "lto1", "window": [3, 3],
        "regions": ["rect 1 1 1 1 smooth rough smooth smooth", "rect 0 0 2 2 smooth smooth smooth smooth"]})";
    REQUIRE(bnet_toric_lto_verify(cfg, &out) == BNET_OK);
    Json j = grab(out);
    CHECK(j["ground_dim"] == 128);
    CHECK(j["checked"] == 2);
    CHECK(j["max_deviation"].get<double>() < 1e-10);
    CHECK(j["strict"] == false);

    const char* proj = R"({"mode": "projector", "window": [3, 4],
        "regions": ["rect 0 0 2 2 smooth smooth smooth smooth"], "probes": 3, "seed": 11})";
    REQUIRE(bnet_toric_lto_verify(proj, &out) == BNET_OK);
    Json p = grab(out);
    CHECK(p["trace"].get<double>() == 128.0);
    CHECK(p["idempotency"].get<double>() < 1e-12);

    CHECK(bnet_toric_lto_verify("{\"mode\": \"lto1\"}", &out) == BNET_ERR_PARSE);
    CHECK(bnet_toric_lto_verify("not json", &out) == BNET_ERR_PARSE);
    const char* bad = R"({"mode": "nope", "window": [3, 3], "regions": []})";
    CHECK(bnet_toric_lto_verify(bad, &out) == BNET_ERR_VALIDATION);
    const char* short_regions = R"({"mode": "lto1", "window": [3, 3], "regions": []})";
    CHECK(bnet_toric_lto_verify(short_regions, &out) == BNET_ERR_VALIDATION);
}

TEST_CASE("k0 analysis over the C surface") {
    char* out = nullptr;
    RingGuard hilb;
    REQUIRE(bnet_ring_builtin("hilb_s3", &hilb.h) == BNET_OK);
    DiagramGuard two;
    REQUIRE(bnet_k0_two_sided(hilb.h, &two.h) == BNET_OK);

    REQUIRE(bnet_k0_describe(two.h, &out) == BNET_OK);
    Json desc = grab(out);
    CHECK(desc["k"] == 6);
    CHECK(desc["lambda"] == "36");
    CHECK(desc["primitive"] == true);

    REQUIRE(bnet_k0_uhf(two.h, &out) == BNET_OK);
    Json uhf = grab(out);
    CHECK(uhf["rank_one"] == true);
    CHECK(uhf["q"] == "36");
    CHECK(uhf["base"] == "6");
    CHECK(uhf["label"] == "M_{6^inf}");

    REQUIRE(bnet_k0_infinitesimal(two.h, 1, &out) == BNET_OK);
    Json none = grab(out);
    CHECK(none["found"] == false);
    CHECK(none["certificate"] == "annihilated");

    RingGuard rep;
    REQUIRE(bnet_ring_builtin("rep_s3", &rep.h) == BNET_OK);
    const int coarse[] = {0, 1, 2};
    DiagramGuard dg;
    REQUIRE(bnet_k0_tensor(rep.h, coarse, 3, &dg.h) == BNET_OK);

    REQUIRE(bnet_k0_dimension_sequence(dg.h, 2, &out) == BNET_OK);
    Json seq = grab(out);
    CHECK(seq["levels"][2] == Json::array({"3", "3", "5"}));
    CHECK(seq["pairings"][2] == "16");

    REQUIRE(bnet_k0_pairing(dg.h, "[-1, -1, 1]", &out) == BNET_OK);
    CHECK(grab(out)["value"] == "0");

    REQUIRE(bnet_k0_infinitesimal(dg.h, 1, &out) == BNET_OK);
    Json found = grab(out);
    CHECK(found["found"] == true);
    CHECK(found["witness"] == Json::array({"-1", "-1", "1"}));
    CHECK(found["certificate"] == "power");

    REQUIRE(bnet_k0_uhf(dg.h, &out) == BNET_OK);
    CHECK(grab(out)["label"] == "not rank-1");

    CHECK(bnet_k0_infinitesimal(dg.h, 0, &out) == BNET_ERR_VALIDATION);
    CHECK(bnet_k0_infinitesimal(two.h, 14, &out) == BNET_ERR_RESOURCE);
    CHECK(bnet_k0_pairing(dg.h, "nope", &out) == BNET_ERR_PARSE);
    CHECK(bnet_k0_pairing(dg.h, "[1]", &out) == BNET_ERR_VALIDATION);
    RingGuard fib;
    REQUIRE(bnet_ring_builtin("fib", &fib.h) == BNET_OK);
    DiagramGuard fd;
    const int one[] = {1};
    REQUIRE(bnet_k0_tensor(fib.h, one, 1, &fd.h) == BNET_OK);
    CHECK(bnet_k0_infinitesimal(fd.h, 1, &out) == BNET_ERR_VALIDATION);
}

TEST_CASE("reports are byte-identical across repeated calls") {
    RingGuard rep;
    REQUIRE(bnet_ring_builtin("rep_s3", &rep.h) == BNET_OK);
    char* a = nullptr;
    char* b = nullptr;
    REQUIRE(bnet_classify(rep.h, &a) == BNET_OK);
    REQUIRE(bnet_classify(rep.h, &b) == BNET_OK);
    CHECK(std::string(a) == std::string(b));
    bnet_string_free(a);
    bnet_string_free(b);

    const char* cfg = R"({"mode": "state", "window": [3, 4],
        "regions": ["rect 1 1 1 1 smooth rough smooth smooth", "rect 0 0 2 2 smooth smooth smooth smooth", "rect 0 0 2 3 smooth smooth smooth smooth"],
        "samples": 20, "seed": 77})";
    REQUIRE(bnet_toric_lto_verify(cfg, &a) == BNET_OK);
    REQUIRE(bnet_toric_lto_verify(cfg, &b) == BNET_OK);
    Json j = bnet::json_parse(a);
    CHECK(std::string(a) == std::string(b));
    CHECK(j["psi_one"] == true);
    CHECK(j["max_scalar_deviation"].get<double>() < 1e-10);
    bnet_string_free(a);
    bnet_string_free(b);
}
