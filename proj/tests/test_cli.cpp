#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// Run the installed binary with shell-quoted arguments, merging stderr.
RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(BNET_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("classification lines") {
    auto fib = run_cli("classify --ring fib");
    CHECK(fib.code == 0);
    CHECK(contains(fib.out, "III_lambda lambda=0.6180339887498948482"));
    CHECK(contains(fib.out, "exact=false(numeric)"));

    auto z2 = run_cli("classify --ring hilb_z2");
    CHECK(z2.code == 0);
    CHECK(z2.out == "II_1 exact=true\n");

    auto rep = run_cli("classify --ring rep_s3");
    CHECK(rep.code == 0);
    CHECK(rep.out == "III_lambda lambda=1/2 exact=true\n");

    auto s3 = run_cli("classify --ring hilb_s3");
    CHECK(s3.out == "II_1 exact=true\n");

    auto ising = run_cli("classify --ring ising");
    CHECK(ising.code == 0);
    CHECK(contains(ising.out, "III_lambda"));
}

TEST_CASE("boundary algebra dimensions") {
    auto three = run_cli("toric boundary-dim --sites 3");
    CHECK(three.code == 0);
    CHECK(three.out == "dim=32 blocks=M4+M4\n");

    auto one = run_cli("toric boundary-dim --sites 1");
    CHECK(one.out == "dim=2 blocks=M1+M1\n");

    auto smooth = run_cli("toric boundary-dim --sites 5 --kind smooth");
    CHECK(smooth.out == "dim=512 blocks=M16+M16\n");
}

TEST_CASE("ring inspection") {
    auto val = run_cli("ring validate --ring rep_s3");
    CHECK(val.code == 0);
    CHECK(val.out == "name=rep_s3 rank=3 valid=true\n");

    auto pointed = run_cli("ring pointed --ring hilb_s3");
    CHECK(contains(pointed.out, "pointed=true"));

    auto triples = run_cli("ring triples --ring hilb_z2");
    CHECK(triples.code == 0);
    CHECK(contains(triples.out, "count=4"));

    auto dims = run_cli("ring dims --ring rep_s3");
    CHECK(dims.out == "d(1)=1 d(sgn)=1 d(rho)=2 D=6 exact=true\n");
}

TEST_CASE("state evaluation and sweeps") {
    const char* doc = R"({"level": 2, "terms": [{"ket": [[0,1,1,0],[1,0,1,0]],
        "bra": [[0,1,1,0],[1,0,1,0]], "re": "1", "im": "0"}]})";
    std::ofstream("cli_op.json") << doc;
    auto eval = run_cli("state evaluate --ring hilb_z2 --level 4 @cli_op.json");
    CHECK(eval.code == 0);
    CHECK(eval.out == "level=2 markov=1/4 canonical=1/4 unit=0 regular_q=1/4\n");
    std::remove("cli_op.json");

    auto kms = run_cli("state kms-check --ring fib --level 2");
    CHECK(kms.code == 0);
    CHECK(contains(kms.out, "beta=1"));
    CHECK(contains(kms.out, "pairs="));

    auto tr = run_cli("state trace-check --ring rep_s3 --level 2");
    CHECK(tr.code == 0);
    CHECK(contains(tr.out, "max_defect=0.11111111111111111111111111111111111111111111111111"));

    auto tr2 = run_cli("state trace-check --ring hilb_s3 --level 2");
    CHECK(tr2.out == "ring=hilb_s3 level=2 pairs=46656 max_defect=0\n");
}

TEST_CASE("toric reduction and oracle verification") {
    auto red = run_cli("toric reduce --window 3x5 'X@(1,1,e)' "
                       "'rect 1 1 1 2 smooth rough smooth smooth' "
                       "'rect 0 0 1 3 smooth rough smooth smooth'");
    CHECK(red.code == 0);
    CHECK(contains(red.out, "commutes=true"));
    CHECK(contains(red.out, "boundary=x0"));

    auto anti = run_cli("toric reduce --window 3x3 'X@(1,1,e)' "
                        "'rect 1 1 1 1 smooth rough smooth smooth' "
                        "'rect 0 0 2 2 smooth smooth smooth smooth'");
    CHECK(anti.code == 0);
    CHECK(contains(anti.out, "commutes=false"));

    auto iso = run_cli("toric iso-verify --sites 2");
    CHECK(iso.code == 0);
    CHECK(contains(iso.out, "all_ok=true"));

    const char* cfg = R"({"mode": "lto1", "window": [3,3],
        "regions": ["rect 1 1 1 1 smooth rough smooth smooth",
                    "rect 0 0 2 2 smooth smooth smooth smooth"]})";
    std::ofstream("cli_lto.json") << cfg;
    auto lto = run_cli("toric lto-verify --file cli_lto.json");
    CHECK(lto.code == 0);
    CHECK(contains(lto.out, "ground_dim=128"));
    CHECK(contains(lto.out, "strict=false"));
    std::remove("cli_lto.json");
}

TEST_CASE("dimension group analysis") {
    auto seq = run_cli("k0 dimension_sequence --ring rep_s3 --tensor 0,1,2 --level 2");
    CHECK(seq.code == 0);
    CHECK(seq.out == "n=0 dims=(1,0,0) pairing=1\n"
                     "n=1 dims=(1,1,1) pairing=4\n"
                     "n=2 dims=(3,3,5) pairing=16\n");

    auto pair = run_cli("k0 pairing --ring rep_s3 --tensor 0,1,2 '[-1,-1,1]'");
    CHECK(pair.out == "value=0\n");

    auto inf = run_cli("k0 infinitesimal --ring rep_s3 --tensor 0,1,2");
    CHECK(inf.out == "found=true witness=(-1,-1,1) certificate=power power_checked=6\n");

    auto none = run_cli("k0 infinitesimal --ring hilb_s3 --two-sided");
    CHECK(none.out == "found=false certificate=annihilated power_checked=1\n");

    auto uhf = run_cli("k0 uhf --ring hilb_s3 --two-sided");
    CHECK(uhf.out == "rank_one=true q=36 base=6 label=M_{6^inf}\n");

    auto not1 = run_cli("k0 uhf --ring rep_s3 --tensor 0,1,2");
    CHECK(not1.out == "rank_one=false label=not rank-1\n");
}

TEST_CASE("json reports embed the invocation and repeat byte-identically") {
    auto a = run_cli("--json classify --ring rep_s3");
    auto b = run_cli("--json classify --ring rep_s3");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "\"command\": \"classify\""));
    CHECK(contains(a.out, "\"precision\": 50"));
    CHECK(contains(a.out, "\"type\": \"III_lambda\""));

    // the flag is accepted after the subcommand too
    auto c = run_cli("classify --ring rep_s3 --json");
    CHECK(c.code == 0);
    CHECK(c.out == a.out);

    auto seeded = run_cli("--json toric lto-verify --seed 99 "
                          "'{\"mode\": \"projector\", \"window\": [3,4], "
                          "\"regions\": [\"rect 0 0 2 2 smooth smooth smooth smooth\"]}'");
    CHECK(seeded.code == 0);
    CHECK(contains(seeded.out, "\"seed\": 99"));
    CHECK(contains(seeded.out, "\"trace\": 128.0"));
}

TEST_CASE("exit codes follow the failure taxonomy") {
    CHECK(run_cli("definitely-not-a-command").code == 2);
    CHECK(run_cli("classify --ring fib --precision 5").code == 2);
    CHECK(run_cli("classify --ring no_such_ring").code == 3);
    CHECK(run_cli("state kms-check --ring fib --level 99").code == 3);
    CHECK(run_cli("toric lto-verify '{\"mode\": \"bad\", \"window\": [3,3], "
                  "\"regions\": []}'")
              .code == 3);
    CHECK(run_cli("toric lto-verify 'not json'").code == 2);
    CHECK(run_cli("k0 infinitesimal --ring hilb_s3 --two-sided --bound 14").code == 4);
    CHECK(run_cli("k0 pairing --ring rep_s3 --tensor 0,1,2 '[1]'").code == 3);
    CHECK(run_cli("toric reduce --window 3z3 'X@(1,1,e)' 'rect 0 0 1 1' 'rect 0 0 2 2'")
              .code == 2);
}
