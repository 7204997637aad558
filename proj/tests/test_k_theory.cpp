#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/fusion_ring.hpp"
#include "core/k_theory.hpp"

using namespace bnet;

namespace {

template <class F> Errc thrown(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code;
    }
    return Errc{0};
}

using Mat = std::vector<std::vector<Int>>;

StationaryAFData scalar_diagram(long long a) {
    return make_stationary({{Int(a)}}, {Int(1)}, {Num(1)});
}

} // namespace

TEST_CASE("tensoring builds stationary diagrams") {
    auto rep = builtin_ring("rep_s3");

    auto one = stationary_tensor(rep, {2});
    CHECK(one.k == 3);
    CHECK(one.A == Mat{{0, 0, 1}, {0, 0, 1}, {1, 1, 1}});
    CHECK(one.tau[0] == Num(1));
    CHECK(one.tau[1] == Num(1));
    CHECK(one.tau[2] == Num(2));
    CHECK(one.lambda == Num(2));
    CHECK(one.primitive);

    auto coarse = stationary_tensor(rep, {0, 1, 2});
    CHECK(coarse.A == Mat{{1, 1, 1}, {1, 1, 1}, {1, 1, 3}});
    CHECK(coarse.lambda == Num(4));
    CHECK(coarse.primitive);

    auto hilb = builtin_ring("hilb_s3");
    auto two = stationary_two_sided(hilb);
    CHECK(two.k == 6);
    for (const auto& row : two.A)
        for (const Int& x : row) CHECK(x == 6);
    CHECK(two.lambda == Num(36));
    for (const Num& t : two.tau) CHECK(t == Num(1));
    CHECK(two.primitive);

    auto left = stationary_tensor(hilb, {0, 1, 2, 3, 4, 5});
    for (const auto& row : left.A)
        for (const Int& x : row) CHECK(x == 1);
    CHECK(left.lambda == Num(6));

    SUBCASE("hand-built data") {
        auto ident = make_stationary({{1, 0}, {0, 1}}, {Int(1), Int(0)}, {Num(1), Num(1)});
        CHECK(ident.lambda == Num(1));
        CHECK_FALSE(ident.primitive);
    }

    SUBCASE("rejects malformed input") {
        CHECK(thrown([] { make_stationary({{1, 0}}, {Int(1)}, {Num(1)}); }) == Errc::Validation);
        CHECK(thrown([] { make_stationary({{-1}}, {Int(1)}, {Num(1)}); }) == Errc::Validation);
        CHECK(thrown([] { make_stationary({{2}}, {Int(0)}, {Num(1)}); }) == Errc::Validation);
        CHECK(thrown([] { make_stationary({{2}}, {Int(1)}, {Num(0)}); }) == Errc::Validation);
        CHECK(thrown([] {
                  make_stationary({{1, 1}, {0, 1}}, {Int(1), Int(1)}, {Num(1), Num(1)});
              }) == Errc::Validation);
        CHECK(thrown([&] { stationary_tensor(rep, {}); }) == Errc::Validation);
        CHECK(thrown([&] { stationary_tensor(rep, {3}); }) == Errc::Validation);
    }
}

TEST_CASE("dimension sequences pair with the trace") {
    auto coarse = stationary_tensor(builtin_ring("rep_s3"), {0, 1, 2});
    auto seq = dimension_sequence(coarse, 2);
    REQUIRE(seq.size() == 3);
    CHECK(seq[0] == std::vector<Int>{1, 0, 0});
    CHECK(seq[1] == std::vector<Int>{1, 1, 1});
    CHECK(seq[2] == std::vector<Int>{3, 3, 5});
    CHECK(trace_pairing(coarse, seq[2]) == Num(16));

    auto two = stationary_two_sided(builtin_ring("hilb_s3"));
    auto hseq = dimension_sequence(two, 3);
    CHECK(trace_pairing(two, hseq[1]) == Num(36));
    CHECK(trace_pairing(two, std::vector<Int>{1, -1, 0, 0, 0, 0}) == Num(0));

    // tau . A^n e grows exactly like lambda^n
    for (const auto* d : {&coarse, &two}) {
        Num power(1);
        auto levels = dimension_sequence(*d, 6);
        for (const auto& level : levels) {
            CHECK(trace_pairing(*d, level) == power);
            power *= d->lambda;
        }
    }

    CHECK(thrown([&] { dimension_sequence(coarse, -1); }) == Errc::Validation);
    CHECK(thrown([&] { dimension_sequence(coarse, 41); }) == Errc::Validation);
    CHECK(thrown([&] { trace_pairing(coarse, {Int(1)}); }) == Errc::Validation);
}

TEST_CASE("infinitesimal witness search") {
    auto coarse = stationary_tensor(builtin_ring("rep_s3"), {0, 1, 2});
    auto found = find_infinitesimal(coarse, 1);
    REQUIRE(found.found);
    CHECK(found.witness == std::vector<Int>{-1, -1, 1});
    CHECK(found.certificate == "power");
    CHECK(found.power_checked == 6);
    CHECK(trace_pairing(coarse, found.witness) == Num(0));

    // the witness is fixed by A, so no power can kill it
    auto img = found.witness;
    for (std::size_t i = 0; i < 3; ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < 3; ++j) acc += coarse.A[i][j] * found.witness[j];
        img[i] = acc;
    }
    CHECK(img == found.witness);

    auto one = stationary_tensor(builtin_ring("rep_s3"), {2});
    auto f1 = find_infinitesimal(one, 1);
    REQUIRE(f1.found);
    CHECK(f1.witness == std::vector<Int>{-1, -1, 1});
    CHECK(f1.certificate == "power");

    auto two = stationary_two_sided(builtin_ring("hilb_s3"));
    auto none = find_infinitesimal(two, 1);
    CHECK_FALSE(none.found);
    CHECK(none.certificate == "annihilated");
    CHECK(none.power_checked == 1);

    auto tiny = find_infinitesimal(scalar_diagram(2), 3);
    CHECK_FALSE(tiny.found);
    CHECK(tiny.power_checked == 0);

    auto ident = make_stationary({{1, 0}, {0, 1}}, {Int(1), Int(0)}, {Num(1), Num(1)});
    auto det = find_infinitesimal(ident, 1);
    REQUIRE(det.found);
    CHECK(det.witness == std::vector<Int>{-1, 1});
    CHECK(det.certificate == "determinant");

    SUBCASE("guard rails") {
        CHECK(thrown([&] { find_infinitesimal(coarse, 0); }) == Errc::Validation);
        CHECK(thrown([&] { find_infinitesimal(two, 14); }) == Errc::Resource);
        auto fib = stationary_tensor(builtin_ring("fib"), {1});
        CHECK(fib.primitive);
        CHECK(thrown([&] { find_infinitesimal(fib, 1); }) == Errc::Validation);
    }
}

TEST_CASE("uhf labels for rank-one diagrams") {
    auto two = stationary_two_sided(builtin_ring("hilb_s3"));
    auto rep = uhf_report(two);
    CHECK(rep.rank_one);
    CHECK(rep.q == 36);
    CHECK(rep.base == 6);
    CHECK(rep.label == "M_{6^inf}");

    auto left = uhf_report(stationary_tensor(builtin_ring("hilb_s3"), {0, 1, 2, 3, 4, 5}));
    CHECK(left.rank_one);
    CHECK(left.q == 6);
    CHECK(left.label == "M_{6^inf}");

    auto coarse = uhf_report(stationary_tensor(builtin_ring("rep_s3"), {0, 1, 2}));
    CHECK_FALSE(coarse.rank_one);
    CHECK(coarse.label == "not rank-1");

    CHECK(uhf_report(scalar_diagram(2)).label == "M_{2^inf}");
    auto twelve = uhf_report(scalar_diagram(12));
    CHECK(twelve.q == 12);
    CHECK(twelve.base == 6);
    CHECK(twelve.label == "M_{6^inf}");
}

TEST_CASE("group ring and representation ring separate") {
    auto hilb = stationary_two_sided(builtin_ring("hilb_s3"));
    auto rep = stationary_tensor(builtin_ring("rep_s3"), {0, 1, 2});

    CHECK_FALSE(find_infinitesimal(hilb, 1).found);
    CHECK(uhf_report(hilb).rank_one);

    CHECK(find_infinitesimal(rep, 1).found);
    CHECK_FALSE(uhf_report(rep).rank_one);
}
