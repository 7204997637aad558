// Command-line front end over the shared C interface. Every subcommand
// builds a JSON report through libbnet, then renders either a text summary
// or the raw document (--json). Exit codes follow the library error codes:
// 1 internal, 2 parse/usage, 3 validation, 4 resource, 5 inconclusive.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bnet.h"

using Json = nlohmann::ordered_json;

namespace {

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& msg) { throw CliError{code, msg}; }

[[noreturn]] void die_api(int code) {
    throw CliError{code, bnet_last_error()};
}

std::string take(char* s) {
    std::string out = s ? s : "";
    bnet_string_free(s);
    return out;
}

Json call_json(int rc, char** out) {
    if (rc != BNET_OK) die_api(rc);
    return Json::parse(take(*out));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die(BNET_ERR_VALIDATION, "cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct RingHandle {
    bnet_ring* h = nullptr;
    ~RingHandle() { bnet_ring_free(h); }
};

struct DiagramHandle {
    bnet_diagram* h = nullptr;
    ~DiagramHandle() { bnet_diagram_free(h); }
};

// Common configuration shared by the subcommands.
struct Options {
    std::string ring = "fib";
    std::string file;
    int precision = 50;
    int level = 2;
    int sites = 3;
    unsigned seed = 2026;
    int bound = 1;
    bool json = false;
    std::string window = "3x3";
    std::string kind = "rough";
    bool two_sided = false;
    std::string tensor;
};

void load_ring(const Options& opt, RingHandle& ring) {
    int rc = opt.file.empty()
                 ? bnet_ring_builtin(opt.ring.c_str(), &ring.h)
                 : bnet_ring_from_json(read_file(opt.file).c_str(), &ring.h);
    if (rc != BNET_OK) die_api(rc);
}

void parse_window(const std::string& text, int& w, int& h) {
    auto sep = text.find('x');
    if (sep == std::string::npos) die(BNET_ERR_PARSE, "window must look like WxH");
    try {
        w = std::stoi(text.substr(0, sep));
        h = std::stoi(text.substr(sep + 1));
    } catch (const std::exception&) {
        die(BNET_ERR_PARSE, "window must look like WxH");
    }
}

int kind_flag(const std::string& kind) {
    if (kind == "rough") return 1;
    if (kind == "smooth") return 0;
    die(BNET_ERR_PARSE, "kind must be rough or smooth");
}

// Text rendering: top-level scalars as key=value, nested values elided.
std::string flat_line(const Json& j) {
    std::string line;
    for (const auto& [key, value] : j.items()) {
        if (value.is_object() || value.is_array() || value.is_null()) continue;
        if (!line.empty()) line += " ";
        line += key + "=";
        line += value.is_string() ? value.get<std::string>() : value.dump();
    }
    return line;
}

// The final report: raw document under --json (with the invocation embedded
// for reproducibility), text summary otherwise.
void deliver(const Options& opt, const std::string& command, const Json& report,
             const std::string& text) {
    if (opt.json) {
        Json doc;
        doc["command"] = command;
        doc["precision"] = opt.precision;
        doc["report"] = report;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << text << "\n";
    }
}

std::string classify_line(const Json& j) {
    std::string line = j["type"].get<std::string>();
    if (!j["lambda"].is_null()) line += " lambda=" + j["lambda"].get<std::string>();
    line += j["exact"].get<bool>() ? " exact=true" : " exact=false(numeric)";
    return line;
}

std::string triples_text(const Json& j) {
    std::ostringstream os;
    os << "count=" << j["count"].get<long long>();
    for (const auto& t : j["triples"])
        os << "\n" << t["a"].get<std::string>() << " x " << t["b"].get<std::string>()
           << " -> " << t["c"].get<std::string>() << " (n=" << t["n"].get<long long>() << ")";
    return os.str();
}

std::string dims_text(const Json& j) {
    std::ostringstream os;
    bool first = true;
    for (const auto& d : j["dims"]) {
        if (!first) os << " ";
        first = false;
        os << "d(" << d["simple"].get<std::string>() << ")=" << d["dim"].get<std::string>();
    }
    os << " D=" << j["global_dimension"].get<std::string>();
    os << " exact=" << (j["exact"].get<bool>() ? "true" : "false");
    return os.str();
}

std::string sequence_text(const Json& j) {
    std::ostringstream os;
    const auto& levels = j["levels"];
    const auto& pairings = j["pairings"];
    for (std::size_t n = 0; n < levels.size(); ++n) {
        if (n) os << "\n";
        os << "n=" << n << " dims=(";
        for (std::size_t i = 0; i < levels[n].size(); ++i) {
            if (i) os << ",";
            os << levels[n][i].get<std::string>();
        }
        os << ") pairing=" << pairings[n].get<std::string>();
    }
    return os.str();
}

std::string infinitesimal_text(const Json& j) {
    std::ostringstream os;
    os << "found=" << (j["found"].get<bool>() ? "true" : "false");
    if (j.contains("witness")) {
        os << " witness=(";
        for (std::size_t i = 0; i < j["witness"].size(); ++i) {
            if (i) os << ",";
            os << j["witness"][i].get<std::string>();
        }
        os << ")";
    }
    os << " certificate=" << j["certificate"].get<std::string>();
    os << " power_checked=" << j["power_checked"].get<long long>();
    return os.str();
}

// Sweep levels stay small enough to enumerate: 12 for pointed rings whose
// levels grow linearly, 8 otherwise.
void check_level_cap(const Options& opt, const RingHandle& ring) {
    char* out = nullptr;
    Json j = call_json(bnet_ring_pointed(ring.h, &out), &out);
    int cap = j["pointed"].get<bool>() ? 12 : 8;
    if (opt.level < 1 || opt.level > cap)
        die(BNET_ERR_VALIDATION,
            "level must lie in [1, " + std::to_string(cap) + "] for this ring");
}

void make_diagram(const Options& opt, const RingHandle& ring, DiagramHandle& dg) {
    if (opt.two_sided) {
        if (!opt.tensor.empty())
            die(BNET_ERR_VALIDATION, "choose either --two-sided or --tensor");
        int rc = bnet_k0_two_sided(ring.h, &dg.h);
        if (rc != BNET_OK) die_api(rc);
        return;
    }
    std::vector<int> objects;
    std::stringstream ss(opt.tensor);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            objects.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            die(BNET_ERR_PARSE, "tensor list must be comma-separated indices");
        }
    }
    if (objects.empty())
        die(BNET_ERR_VALIDATION, "k0 needs --two-sided or --tensor i,j,...");
    int rc = bnet_k0_tensor(ring.h, objects.data(), static_cast<int>(objects.size()), &dg.h);
    if (rc != BNET_OK) die_api(rc);
}

int run(int argc, char** argv) {
    Options opt;
    CLI::App app{"boundary algebra toolkit"};
    app.require_subcommand(1);
    app.add_option("--precision", opt.precision, "working decimal digits")
        ->check(CLI::Range(10, 1000));
    app.add_flag("--json", opt.json, "emit the full JSON report");

    auto add_ring_source = [&](CLI::App* cmd) {
        cmd->add_option("--ring", opt.ring, "built-in ring name");
        cmd->add_option("--file", opt.file, "ring JSON document path");
    };

    // ring
    auto* ring_cmd = app.add_subcommand("ring", "fusion ring inspection");
    ring_cmd->require_subcommand(1);
    std::string ring_action;
    for (const char* name : {"validate", "dims", "pointed", "triples"}) {
        auto* sub = ring_cmd->add_subcommand(name);
        add_ring_source(sub);
        sub->callback([&, name] { ring_action = name; });
    }

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "boundary factor type");
    add_ring_source(classify_cmd);

    // state
    auto* state_cmd = app.add_subcommand("state", "fusion-net state evaluation");
    state_cmd->require_subcommand(1);
    std::string state_action, op_doc;
    auto* eval_cmd = state_cmd->add_subcommand("evaluate", "states on an operator document");
    add_ring_source(eval_cmd);
    eval_cmd->add_option("--level", opt.level, "path enumeration cap");
    eval_cmd->add_option("operator", op_doc, "operator JSON (inline or @path)")->required();
    eval_cmd->callback([&] { state_action = "evaluate"; });
    for (const char* name : {"kms-check", "trace-check"}) {
        auto* sub = state_cmd->add_subcommand(name);
        add_ring_source(sub);
        sub->add_option("--level", opt.level, "sweep level");
        sub->callback([&, name] { state_action = name; });
    }

    // toric
    auto* toric_cmd = app.add_subcommand("toric", "lattice boundary reductions");
    toric_cmd->require_subcommand(1);
    std::string toric_action, monomial, inner, outer, lto_config;
    auto* reduce_cmd = toric_cmd->add_subcommand("reduce", "reduce a bulk monomial");
    reduce_cmd->add_option("--window", opt.window, "lattice size WxH");
    reduce_cmd->add_option("monomial", monomial)->required();
    reduce_cmd->add_option("inner", inner)->required();
    reduce_cmd->add_option("outer", outer)->required();
    reduce_cmd->callback([&] { toric_action = "reduce"; });
    auto* dim_cmd = toric_cmd->add_subcommand("boundary-dim", "interval algebra shape");
    dim_cmd->add_option("--sites", opt.sites)->check(CLI::Range(1, 10));
    dim_cmd->add_option("--kind", opt.kind, "rough|smooth");
    dim_cmd->callback([&] { toric_action = "boundary-dim"; });
    auto* iso_cmd = toric_cmd->add_subcommand("iso-verify", "fusion-net isomorphism");
    iso_cmd->add_option("--sites", opt.sites)->check(CLI::Range(1, 4));
    iso_cmd->add_option("--kind", opt.kind, "rough|smooth");
    iso_cmd->callback([&] { toric_action = "iso-verify"; });
    auto* lto_cmd = toric_cmd->add_subcommand("lto-verify", "exact finite-window oracle");
    lto_cmd->add_option("config", lto_config, "config JSON (inline)");
    lto_cmd->add_option("--file", opt.file, "config JSON path");
    lto_cmd->add_option("--seed", opt.seed, "probe seed override");
    lto_cmd->callback([&] { toric_action = "lto-verify"; });

    // k0
    auto* k0_cmd = app.add_subcommand("k0", "dimension group analysis");
    k0_cmd->require_subcommand(1);
    std::string k0_action, class_vector;
    auto add_diagram_source = [&](CLI::App* cmd) {
        cmd->add_option("--ring", opt.ring, "built-in ring name");
        cmd->add_option("--file", opt.file, "ring JSON document path");
        cmd->add_flag("--two-sided", opt.two_sided, "two-sided regular diagram");
        cmd->add_option("--tensor", opt.tensor, "tensoring multiset, e.g. 0,1,2");
    };
    auto* seq_cmd = k0_cmd->add_subcommand("dimension_sequence");
    add_diagram_source(seq_cmd);
    seq_cmd->add_option("--level", opt.level, "levels to list")->check(CLI::Range(0, 40));
    seq_cmd->callback([&] { k0_action = "dimension_sequence"; });
    auto* pair_cmd = k0_cmd->add_subcommand("pairing");
    add_diagram_source(pair_cmd);
    pair_cmd->add_option("vector", class_vector, "class vector JSON array")->required();
    pair_cmd->callback([&] { k0_action = "pairing"; });
    auto* inf_cmd = k0_cmd->add_subcommand("infinitesimal");
    add_diagram_source(inf_cmd);
    inf_cmd->add_option("--bound", opt.bound, "coordinate search bound");
    inf_cmd->callback([&] { k0_action = "infinitesimal"; });
    auto* uhf_cmd = k0_cmd->add_subcommand("uhf");
    add_diagram_source(uhf_cmd);
    uhf_cmd->callback([&] { k0_action = "uhf"; });

    // let --json / --precision appear after the subcommand as well
    std::function<void(CLI::App*)> let_through = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands([](CLI::App*) { return true; })) {
            sub->fallthrough();
            let_through(sub);
        }
    };
    let_through(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return BNET_ERR_PARSE;
    }

    int rc = bnet_set_precision(opt.precision);
    if (rc != BNET_OK) die_api(rc);
    char* out = nullptr;

    if (ring_cmd->parsed()) {
        RingHandle ring;
        load_ring(opt, ring);
        if (ring_action == "validate") {
            Json j = call_json(bnet_ring_validate(ring.h, &out), &out);
            deliver(opt, "ring validate", j, flat_line(j));
        } else if (ring_action == "dims") {
            Json j = call_json(bnet_ring_dims(ring.h, &out), &out);
            deliver(opt, "ring dims", j, dims_text(j));
        } else if (ring_action == "pointed") {
            Json j = call_json(bnet_ring_pointed(ring.h, &out), &out);
            deliver(opt, "ring pointed", j, flat_line(j));
        } else {
            Json j = call_json(bnet_ring_triples(ring.h, &out), &out);
            deliver(opt, "ring triples", j, triples_text(j));
        }
    } else if (classify_cmd->parsed()) {
        RingHandle ring;
        load_ring(opt, ring);
        Json j = call_json(bnet_classify(ring.h, &out), &out);
        deliver(opt, "classify", j, classify_line(j));
    } else if (state_cmd->parsed()) {
        RingHandle ring;
        load_ring(opt, ring);
        check_level_cap(opt, ring);
        if (state_action == "evaluate") {
            std::string doc = op_doc;
            if (!doc.empty() && doc[0] == '@') doc = read_file(doc.substr(1));
            Json j = call_json(bnet_state_evaluate(ring.h, opt.level, doc.c_str(), &out), &out);
            Json values = j["values"];
            std::string text = "level=" + j["level"].dump();
            for (const auto& [name, v] : values.items()) {
                text += " " + name + "=" + v["re"].get<std::string>();
                if (v["im"].get<std::string>() != "0")
                    text += "+" + v["im"].get<std::string>() + "i";
            }
            deliver(opt, "state evaluate", j, text);
        } else if (state_action == "kms-check") {
            Json j = call_json(bnet_kms_check(ring.h, opt.level, &out), &out);
            deliver(opt, "state kms-check", j, flat_line(j));
        } else {
            Json j = call_json(bnet_trace_check(ring.h, opt.level, &out), &out);
            deliver(opt, "state trace-check", j, flat_line(j));
        }
    } else if (toric_cmd->parsed()) {
        if (toric_action == "reduce") {
            int w = 0, h = 0;
            parse_window(opt.window, w, h);
            Json j = call_json(
                bnet_toric_reduce(w, h, monomial.c_str(), inner.c_str(), outer.c_str(), &out),
                &out);
            deliver(opt, "toric reduce", j, flat_line(j));
        } else if (toric_action == "boundary-dim") {
            Json j = call_json(bnet_toric_boundary_dim(opt.sites, kind_flag(opt.kind), &out),
                               &out);
            deliver(opt, "toric boundary-dim", j,
                    "dim=" + j["dimension"].get<std::string>() + " blocks=" +
                        j["blocks"].get<std::string>());
        } else if (toric_action == "iso-verify") {
            Json j =
                call_json(bnet_toric_iso_verify(opt.sites, kind_flag(opt.kind), &out), &out);
            deliver(opt, "toric iso-verify", j, flat_line(j));
        } else {
            std::string doc = lto_config;
            if (!opt.file.empty()) {
                if (!doc.empty())
                    die(BNET_ERR_VALIDATION, "give the config inline or via --file, not both");
                doc = read_file(opt.file);
            }
            if (doc.empty()) die(BNET_ERR_VALIDATION, "lto-verify needs a config document");
            if (lto_cmd->count("--seed")) {
                Json cfg = Json::parse(doc, nullptr, false);
                if (cfg.is_discarded()) die(BNET_ERR_PARSE, "config is not valid JSON");
                cfg["seed"] = opt.seed;
                doc = cfg.dump();
            }
            Json j = call_json(bnet_toric_lto_verify(doc.c_str(), &out), &out);
            deliver(opt, "toric lto-verify", j, flat_line(j));
        }
    } else if (k0_cmd->parsed()) {
        RingHandle ring;
        load_ring(opt, ring);
        DiagramHandle dg;
        make_diagram(opt, ring, dg);
        if (k0_action == "dimension_sequence") {
            Json j = call_json(bnet_k0_dimension_sequence(dg.h, opt.level, &out), &out);
            deliver(opt, "k0 dimension_sequence", j, sequence_text(j));
        } else if (k0_action == "pairing") {
            Json j = call_json(bnet_k0_pairing(dg.h, class_vector.c_str(), &out), &out);
            deliver(opt, "k0 pairing", j, "value=" + j["value"].get<std::string>());
        } else if (k0_action == "infinitesimal") {
            Json j = call_json(bnet_k0_infinitesimal(dg.h, opt.bound, &out), &out);
            deliver(opt, "k0 infinitesimal", j, infinitesimal_text(j));
        } else {
            Json j = call_json(bnet_k0_uhf(dg.h, &out), &out);
            deliver(opt, "k0 uhf", j, flat_line(j));
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BNET_ERR_INTERNAL;
    }
}
