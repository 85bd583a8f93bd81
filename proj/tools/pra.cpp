// pra: command line front end for the product replacement toolkit.
//
// One command per invocation, one JSON report on stdout.  Exit codes:
//   0  success
//   1  usage or parse error
//   2  a documented size cap was exceeded
//   3  negative verdict (not connected, no redundant tuple in the
//      component, infeasible exponent instance, search budget exhausted)
//   4  internal invariant violation (a bug, not an input problem)

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pra/graph.hpp"
#include "pra/group.hpp"
#include "pra/lemmas.hpp"
#include "pra/nielsen.hpp"
#include "pra/tsystems.hpp"
#include "pra/walker.hpp"

using json = nlohmann::ordered_json;
using steady = std::chrono::steady_clock;

namespace {

constexpr const char* artifact_version = "1.0.0";

// Thrown by command handlers to signal exit code 3 after their report
// (with the negative verdict recorded in it) has been assembled.
struct verdict_negative : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json new_report(const std::string& command) {
    json rep;
    rep["version"] = artifact_version;
    rep["command"] = command;
    return rep;
}

void finish_report(json& rep, steady::time_point t0) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(steady::now() - t0);
    rep["wall_ms"] = (uint64_t)ms.count();
    std::cout << rep.dump(2) << "\n";
}

json word_json(const pra::NielsenWord& w) {
    json arr = json::array();
    for (const auto& m : w) arr.push_back(pra::move_to_string(m));
    return arr;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

// ---------------------------------------------------------------------------
// Command handlers.  Each returns the completed report; negative verdicts
// throw verdict_negative after stashing the report via the out parameter.
// ---------------------------------------------------------------------------

struct components_args {
    std::string group;
    uint32_t k = 2;
    bool extended = false;
    std::string out_csv;
};

json run_components(const components_args& a) {
    pra::GroupTable G = pra::GroupTable::build(a.group);
    pra::ComponentReport rep = pra::components(G, a.k, a.extended);

    json j = new_report("components");
    j["group"] = G.label();
    j["k"] = a.k;
    j["extended"] = a.extended;
    j["vertex_count"] = rep.vertex_count;
    j["component_count"] = rep.component_count;
    json comps = json::array();
    for (const auto& c : rep.comps) {
        json e;
        e["size"] = c.size;
        e["rep"] = pra::tuple_string(G, pra::make_tuple(G, c.rep_ids));
        comps.push_back(std::move(e));
    }
    j["components"] = std::move(comps);

    if (!a.out_csv.empty()) {
        std::map<uint64_t, uint64_t, std::greater<uint64_t>> hist;
        for (const auto& c : rep.comps) hist[c.size]++;
        std::ofstream f(a.out_csv);
        if (!f) throw std::invalid_argument("cannot open output file: " + a.out_csv);
        f << "size,count\n";
        for (const auto& [size, count] : hist) f << size << "," << count << "\n";
        j["out"] = a.out_csv;
    }
    return j;
}

json run_tsystems(const std::string& group, uint32_t k) {
    pra::GroupTable G = pra::GroupTable::build(group);
    pra::TSystemReport rep = pra::tsystems(G, k);

    json j = new_report("tsystems");
    j["group"] = G.label();
    j["k"] = k;
    j["vertex_count"] = rep.vertex_count;
    j["component_count"] = rep.component_count;
    j["tsystem_count"] = rep.tsystem_count;
    json orbits = json::array();
    for (const auto& o : rep.orbits) {
        json e;
        e["size"] = o.size;
        e["components"] = o.component_count;
        e["rep"] = pra::tuple_string(G, pra::make_tuple(G, o.rep_ids));
        orbits.push_back(std::move(e));
    }
    j["tsystems"] = std::move(orbits);
    return j;
}

struct walk_args {
    std::string group;
    uint32_t k = 2;
    uint64_t burn_in = 10000;
    uint64_t samples = 0;
    std::optional<uint64_t> seed;
    bool extended = false;
    uint64_t check_every = 0;
    std::string dump_file;
};

json run_walk_cmd(const walk_args& a) {
    pra::GroupTable G = pra::GroupTable::build(a.group);

    pra::WalkConfig cfg;
    cfg.k = a.k;
    cfg.burn_in = a.burn_in;
    cfg.extended = a.extended;
    cfg.check_every = a.check_every;
    cfg.seed = a.seed ? *a.seed : (uint64_t)std::random_device{}() << 32 | std::random_device{}();

    std::vector<uint32_t> raw;
    pra::GenTuple start, last;
    pra::WalkStats st =
        pra::run_walk(G, cfg, a.samples, a.dump_file.empty() ? nullptr : &raw, &start, &last);

    json j = new_report("walk");
    j["group"] = G.label();
    j["k"] = a.k;
    j["extended"] = a.extended;
    j["seed"] = cfg.seed;
    j["burn_in"] = cfg.burn_in;
    j["samples"] = st.samples;
    j["steps"] = st.steps;
    j["check_every"] = a.check_every;
    j["start"] = pra::tuple_string(G, start);
    j["final"] = pra::tuple_string(G, last);
    j["tv"] = st.tv;
    j["chi_square"] = st.chi_square;
    if (G.order() <= 10000) {
        json hist = json::array();
        for (uint64_t c : st.histogram) hist.push_back(c);
        j["histogram"] = std::move(hist);
    }

    if (!a.dump_file.empty()) {
        std::ofstream f(a.dump_file);
        if (!f) throw std::invalid_argument("cannot open output file: " + a.dump_file);
        f << "element\n";
        for (uint32_t id : raw) f << id << "\n";
        j["dump"] = a.dump_file;
    }
    return j;
}

struct connect_args {
    std::string group;
    uint32_t k = 2;
    std::string tuple1, tuple2;
    bool extended = false;
};

json run_connect(const connect_args& a, int& exit_code) {
    pra::GroupTable G = pra::GroupTable::build(a.group);
    pra::GenTuple t1 = pra::parse_tuple(G, a.tuple1);
    pra::GenTuple t2 = pra::parse_tuple(G, a.tuple2);
    if (t1.k != a.k || t2.k != a.k)
        throw std::invalid_argument("tuple arity does not match k");

    auto word = pra::connect_path(G, t1, t2, a.extended);

    json j = new_report("connect");
    j["group"] = G.label();
    j["k"] = a.k;
    j["extended"] = a.extended;
    j["from"] = pra::tuple_string(G, t1);
    j["to"] = pra::tuple_string(G, t2);
    j["connected"] = word.has_value();
    if (word) {
        j["length"] = word->size();
        j["word"] = word_json(*word);
    } else {
        exit_code = 3;
    }
    return j;
}

json run_redundant(const std::string& group, const std::string& tuple, uint32_t depth,
                   int& exit_code) {
    pra::GroupTable G = pra::GroupTable::build(group);
    pra::GenTuple t = pra::parse_tuple(G, tuple);
    auto word = pra::to_redundant(G, t, depth);

    json j = new_report("redundant");
    j["group"] = G.label();
    j["k"] = t.k;
    j["tuple"] = pra::tuple_string(G, t);
    j["found"] = word.has_value();
    if (word) {
        j["length"] = word->size();
        j["word"] = word_json(*word);
        j["result"] = pra::tuple_string(G, pra::apply_word(G, t, *word));
    } else {
        exit_code = 3;
    }
    return j;
}

json run_gaschuetz(const std::string& group, const std::string& a_str, const std::string& b_str,
                   int& exit_code) {
    pra::GroupTable G = pra::GroupTable::build(group);
    if (G.family() != pra::GroupFamily::abelian)
        throw std::invalid_argument("exponent solving needs an ab: group");
    const pra::AbelianGroup& K = G.abelian();

    pra::GenTuple at = pra::parse_tuple(G, a_str);
    if (at.k != 1) throw std::invalid_argument("a must be a single element");
    pra::AbVec a = K.vector_of(at.ids[0]);

    std::vector<pra::AbVec> bs;
    for (const auto& part : split_on(b_str, ';')) {
        pra::GenTuple bt = pra::parse_tuple(G, part);
        if (bt.k != 1) throw std::invalid_argument("each b must be a single element");
        bs.push_back(K.vector_of(bt.ids[0]));
    }

    json j = new_report("gaschuetz");
    j["group"] = G.label();
    j["a"] = G.element_string(at.ids[0]);
    json bj = json::array();
    for (const auto& b : bs) bj.push_back(G.element_string((uint32_t)K.index_of(b)));
    j["b"] = std::move(bj);

    try {
        std::vector<int64_t> m = pra::gaschuetz_exponents(K, a, bs);
        j["feasible"] = true;
        j["m"] = m;
        j["verified"] = true;
    } catch (const std::invalid_argument&) {
        // Inputs already validated above, so this is the infeasibility
        // verdict, not a usage error.
        j["feasible"] = false;
        exit_code = 3;
    }
    return j;
}

struct greedy_args {
    std::string file;
    uint32_t n = 0;
    bool subspaces = false;
};

json run_greedy(const greedy_args& a) {
    std::ifstream f(a.file);
    if (!f) throw std::invalid_argument("cannot open matrix file: " + a.file);
    json in = json::parse(f);

    uint64_t p = in.at("p").get<uint64_t>();
    uint32_t e = in.at("e").get<uint32_t>();
    if (in.contains("n") && in["n"].get<uint32_t>() != a.n)
        throw std::invalid_argument("matrix file dimension does not match n");

    pra::FieldCtx F(p, e);
    std::vector<pra::Mat> mats;
    for (const auto& rows : in.at("matrices")) {
        if (rows.size() != (size_t)a.n * a.n)
            throw std::invalid_argument("matrix entry count must be n*n");
        pra::Mat M = pra::mat_zero(F, a.n);
        for (uint32_t i = 0; i < (uint32_t)rows.size(); ++i)
            M.a[i] = F.from_int(rows[i].get<uint64_t>());
        if (!pra::mat_invertible(F, M)) throw std::invalid_argument("matrices must be invertible");
        mats.push_back(std::move(M));
    }
    if (mats.empty()) throw std::invalid_argument("matrix file holds no matrices");

    json j = new_report("greedy");
    j["file"] = a.file;
    j["p"] = p;
    j["e"] = e;
    j["n"] = a.n;
    j["count"] = mats.size();
    j["mode"] = a.subspaces ? "subspaces" : "lines";

    std::vector<uint32_t> sel = a.subspaces ? pra::greedy_subspace_subset(F, a.n, mats)
                                            : pra::greedy_line_subset(F, a.n, mats);
    j["selected"] = sel;
    j["selected_count"] = sel.size();

    if (a.subspaces) {
        std::vector<pra::Mat> blocks, sel_blocks;
        for (const auto& M : mats) blocks.push_back(pra::exterior_block(F, M));
        for (uint32_t i : sel) sel_blocks.push_back(blocks[i]);
        uint32_t bn = (1u << a.n) - 1;
        j["w_all"] = pra::w_potential(F, bn, blocks);
        j["w_selected"] = pra::w_potential(F, bn, sel_blocks);
    } else {
        std::vector<pra::Mat> sel_mats;
        for (uint32_t i : sel) sel_mats.push_back(mats[i]);
        j["w_all"] = pra::w_potential(F, a.n, mats);
        j["w_selected"] = pra::w_potential(F, a.n, sel_mats);
    }
    return j;
}

json run_group_info(const std::string& group) {
    pra::GroupTable G = pra::GroupTable::build(group);

    json j = new_report("group-info");
    j["group"] = G.label();
    switch (G.family()) {
        case pra::GroupFamily::abelian: j["family"] = "abelian"; break;
        case pra::GroupFamily::sym: j["family"] = "sym"; break;
        case pra::GroupFamily::alt: j["family"] = "alt"; break;
        case pra::GroupFamily::sl2: j["family"] = "sl2"; break;
        case pra::GroupFamily::psl2: j["family"] = "psl2"; break;
        case pra::GroupFamily::pgl2: j["family"] = "pgl2"; break;
    }
    j["order"] = G.order();
    j["abelian"] = G.family() == pra::GroupFamily::abelian;
    j["min_generators"] = G.min_generators();
    {
        json t = json::array();
        for (uint32_t id : G.min_generating_tuple()) t.push_back(G.element_string(id));
        j["min_generating_tuple"] = std::move(t);
    }
    if (G.family() == pra::GroupFamily::abelian) {
        j["invariant_factors"] = G.abelian().factors;
        j["exponent"] = G.abelian().exponent();
    }
    if (G.family() == pra::GroupFamily::sym || G.family() == pra::GroupFamily::alt)
        j["degree"] = G.degree();
    if (G.family() == pra::GroupFamily::sl2 || G.family() == pra::GroupFamily::psl2 ||
        G.family() == pra::GroupFamily::pgl2) {
        j["p"] = G.field().p();
        j["e"] = G.field().e();
        j["q"] = G.field().q();
    }
    if (G.order() <= pra::GroupTable::class_order_cap)
        j["class_count"] = G.class_sizes().size();
    if (G.order() <= pra::GroupTable::aut_order_cap)
        j["aut_order"] = G.automorphism_group().size();
    return j;
}

struct verify_args {
    std::string group;
    std::string tuple;
    std::string word;
    std::string expect;
};

json run_verify(const verify_args& a, int& exit_code) {
    pra::GroupTable G = pra::GroupTable::build(a.group);
    pra::GenTuple t = pra::parse_tuple(G, a.tuple);

    std::string word_text = a.word;
    if (word_text == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        word_text = buf.str();
    }
    pra::NielsenWord w = pra::word_from_string(word_text, t.k);
    pra::GenTuple end = pra::apply_word(G, t, w);

    json j = new_report("verify");
    j["group"] = G.label();
    j["k"] = t.k;
    j["start"] = pra::tuple_string(G, t);
    j["length"] = w.size();
    j["end"] = pra::tuple_string(G, end);
    j["end_generates"] = pra::is_vertex(G, end);
    if (!a.expect.empty()) {
        pra::GenTuple want = pra::parse_tuple(G, a.expect);
        j["expect"] = pra::tuple_string(G, want);
        bool ok = want.ids == end.ids;
        j["match"] = ok;
        if (!ok) exit_code = 3;
    }
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact toolkit for product replacement graphs of finite groups"};
    app.set_version_flag("--version", artifact_version);
    app.set_config("--config");
    app.require_subcommand(1);

    components_args ca;
    auto* c_comp = app.add_subcommand("components", "Census of the tuple-graph components");
    c_comp->add_option("group", ca.group, "Group spec, e.g. psl2:5 or ab:5,5")->required();
    c_comp->add_option("k", ca.k, "Tuple arity")->required()->check(CLI::Range(1, 255));
    c_comp->add_flag("--extended", ca.extended, "Include the swap and invert moves");
    c_comp->add_option("--out", ca.out_csv, "Write a size,count histogram CSV here");

    std::string ts_group;
    uint32_t ts_k = 2;
    auto* c_ts = app.add_subcommand("tsystems", "Automorphism orbits on components");
    c_ts->add_option("group", ts_group, "Group spec")->required();
    c_ts->add_option("k", ts_k, "Tuple arity")->required()->check(CLI::Range(1, 255));

    walk_args wa;
    uint64_t seed_opt = 0;
    auto* c_walk = app.add_subcommand("walk", "Random walk sampling run");
    c_walk->add_option("group", wa.group, "Group spec")->required();
    c_walk->add_option("k", wa.k, "Tuple arity")->required()->check(CLI::Range(2, 255));
    c_walk->add_option("--burnin", wa.burn_in, "Steps before sampling starts (default 10000)");
    c_walk->add_option("--samples", wa.samples, "Sampled elements after burn-in")->required();
    auto* seed_flag = c_walk->add_option("--seed", seed_opt, "PRNG seed (default: random, reported)");
    c_walk->add_flag("--extended", wa.extended, "Walk with swap and invert moves too");
    c_walk->add_option("--check-every", wa.check_every,
                       "Membership check cadence (0 = build default, 1 = every step)");
    c_walk->add_option("--dump", wa.dump_file, "Write raw sampled element ids as CSV here");

    connect_args na;
    auto* c_conn = app.add_subcommand("connect", "Move word between two tuples");
    c_conn->add_option("group", na.group, "Group spec")->required();
    c_conn->add_option("k", na.k, "Tuple arity")->required()->check(CLI::Range(1, 255));
    c_conn->add_option("tuple1", na.tuple1, "Start tuple literal")->required();
    c_conn->add_option("tuple2", na.tuple2, "Target tuple literal")->required();
    c_conn->add_flag("--extended", na.extended, "Allow swap and invert moves");

    std::string rd_group, rd_tuple;
    uint32_t rd_depth = ~0u;
    auto* c_red = app.add_subcommand("redundant", "Move word to a tuple with an identity slot");
    c_red->add_option("group", rd_group, "Group spec")->required();
    c_red->add_option("tuple", rd_tuple, "Start tuple literal")->required();
    c_red->add_option("--depth", rd_depth, "Search radius bound (default unlimited)");

    std::string ga_group, ga_a, ga_b;
    auto* c_ga = app.add_subcommand("gaschuetz", "Exponents m with <m_i*a + b_i> = <a, b_1..b_n>");
    c_ga->add_option("group", ga_group, "Abelian group spec, e.g. ab:2,2")->required();
    c_ga->add_option("a", ga_a, "Element literal, e.g. (1,1)")->required();
    c_ga->add_option("b", ga_b, "Semicolon-separated element literals, e.g. (1,0);(0,1)")
        ->required();

    greedy_args gr;
    auto* c_gr = app.add_subcommand("greedy", "Greedy eigen-refining subset of a matrix set");
    c_gr->add_option("file", gr.file, "JSON matrix file: {p, e, n?, matrices:[[...]]}")->required();
    c_gr->add_option("n", gr.n, "Matrix dimension")->required()->check(CLI::Range(1, 15));
    c_gr->add_flag("--subspace", gr.subspaces,
                   "Select for invariant subspaces of all dimensions (n <= 4)");

    std::string gi_group;
    auto* c_gi = app.add_subcommand("group-info", "Structural facts about one group");
    c_gi->add_option("group", gi_group, "Group spec")->required();

    verify_args va;
    auto* c_ver = app.add_subcommand("verify", "Replay a move word against a tuple");
    c_ver->add_option("group", va.group, "Group spec")->required();
    c_ver->add_option("tuple", va.tuple, "Start tuple literal")->required();
    c_ver->add_option("word", va.word, "Move word text, or - to read stdin")->required();
    c_ver->add_option("--expect", va.expect, "Tuple the word must land on (exit 3 on mismatch)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    auto t0 = steady::now();
    int exit_code = 0;
    json rep;
    try {
        if (app.got_subcommand(c_comp)) {
            rep = run_components(ca);
        } else if (app.got_subcommand(c_ts)) {
            rep = run_tsystems(ts_group, ts_k);
        } else if (app.got_subcommand(c_walk)) {
            if (seed_flag->count() > 0) wa.seed = seed_opt;
            rep = run_walk_cmd(wa);
        } else if (app.got_subcommand(c_conn)) {
            rep = run_connect(na, exit_code);
        } else if (app.got_subcommand(c_red)) {
            rep = run_redundant(rd_group, rd_tuple, rd_depth, exit_code);
        } else if (app.got_subcommand(c_ga)) {
            rep = run_gaschuetz(ga_group, ga_a, ga_b, exit_code);
        } else if (app.got_subcommand(c_gr)) {
            rep = run_greedy(gr);
        } else if (app.got_subcommand(c_gi)) {
            rep = run_group_info(gi_group);
        } else if (app.got_subcommand(c_ver)) {
            rep = run_verify(va, exit_code);
        }
    } catch (const pra::cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const pra::search_exhausted& e) {
        std::cerr << "search exhausted: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    finish_report(rep, t0);
    return exit_code;
}
