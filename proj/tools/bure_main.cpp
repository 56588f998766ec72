// bure: workbench for bottom-up rewriting classes, recognizable ancestor
// sets, and sticking-out graph analysis.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bure/analysis.hpp"
#include "bure/fta.hpp"
#include "bure/ground.hpp"
#include "bure/oracle.hpp"
#include "bure/preservation.hpp"
#include "bure/rewriting.hpp"
#include "bure/semithue.hpp"
#include "bure/workbench.hpp"

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

bure::Trs load_trs(const std::string& path) { return bure::parse_trs(slurp(path)); }
bure::SemiThueSystem load_sts(const std::string& path) { return bure::parse_sts(slurp(path)); }
bure::Fta load_fta(const std::string& path) { return bure::parse_fta(slurp(path)); }

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bure: bottom-up rewriting workbench"};
    app.require_subcommand(1);

    // classify
    std::string classify_file;
    bool classify_json = false;
    auto* classify = app.add_subcommand("classify", "syntactic class predicates of a TRS");
    classify->add_option("file", classify_file, ".trs file")->required();
    classify->add_flag("--json", classify_json);

    // sg
    std::string sg_file, sg_dot;
    bool sg_json = false;
    auto* sg = app.add_subcommand("sg", "sticking-out graph and weight");
    sg->add_option("file", sg_file, ".trs file")->required();
    sg->add_option("--dot", sg_dot, "write DOT output here");
    sg->add_flag("--json", sg_json);

    // sbu-bound
    std::string sbub_file;
    auto* sbub = app.add_subcommand("sbu-bound", "sufficient SBU bound from the graph weight");
    sbub->add_option("file", sbub_file, ".trs file")->required();

    // sbu-decide
    std::string sbud_file;
    int sbud_k = 1;
    auto* sbud = app.add_subcommand("sbu-decide", "decide SBU(k)");
    sbud->add_option("-k", sbud_k, "mark bound")->required();
    sbud->add_option("file", sbud_file, ".trs file")->required();

    // ancestors
    std::string anc_file, anc_target, anc_out, anc_ground;
    int anc_k = 0;
    bool anc_full = false, anc_json = false;
    auto* anc = app.add_subcommand("ancestors", "recognizable ancestor set (k->*)[T]");
    anc->add_option("-k", anc_k, "mark bound")->required();
    anc->add_option("--target", anc_target, "target .fta")->required();
    anc->add_option("file", anc_file, ".trs file")->required();
    anc->add_option("-o", anc_out, "output .fta")->required();
    anc->add_flag("--full", anc_full, "unmarked BU(k) pipeline (caller asserts R in BU(k))");
    anc->add_option("--emit-ground", anc_ground, "dump the compiled ground system here");
    anc->add_flag("--json", anc_json);

    // member
    std::string mem_fta, mem_term;
    auto* mem = app.add_subcommand("member", "automaton membership of a ground term");
    mem->add_option("automaton", mem_fta, ".fta file")->required();
    mem->add_option("term", mem_term, "term literal")->required();

    // reach
    std::string reach_file, reach_term, reach_target;
    int reach_k = 0;
    auto* reach = app.add_subcommand("reach", "is TERM in (k->*)[T]?");
    reach->add_option("-k", reach_k)->required();
    reach->add_option("file", reach_file, ".trs file")->required();
    reach->add_option("term", reach_term)->required();
    reach->add_option("--target", reach_target, "target .fta")->required();

    // bu-decide-sts
    std::string bsts_file;
    int bsts_k = 1;
    auto* bsts = app.add_subcommand("bu-decide-sts",
                                    "decide BU(k) for a condition-C length-increasing STS");
    bsts->add_option("-k", bsts_k)->required();
    bsts->add_option("file", bsts_file, ".sts file")->required();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "bounded brute-force ground truth");
    oracle->require_subcommand(1);
    std::string okbu_file, okbu_term;
    int okbu_k = 0, o_size = 10, o_steps = 12, o_mark = 8;
    auto* okbu = oracle->add_subcommand("kbu-set", "bu(k)-reachable skeletons");
    okbu->add_option("-k", okbu_k)->required();
    okbu->add_option("file", okbu_file)->required();
    okbu->add_option("term", okbu_term)->required();
    okbu->add_option("--max-size", o_size);
    okbu->add_option("--max-steps", o_steps);
    std::string omark_file, omark_term;
    auto* omark = oracle->add_subcommand("mark-sup", "max mark over wbu derivations");
    omark->add_option("file", omark_file)->required();
    omark->add_option("term", omark_term)->required();
    omark->add_option("--max-size", o_size);
    omark->add_option("--max-steps", o_steps);
    omark->add_option("--max-mark", o_mark);
    std::string oword_file, oword_from, oword_to;
    int oword_k = 0;
    auto* oword = oracle->add_subcommand("word-reach", "exact bu(k) word reachability");
    oword->add_option("-k", oword_k)->required();
    oword->add_option("file", oword_file, ".sts file")->required();
    oword->add_option("from", oword_from)->required();
    oword->add_option("to", oword_to)->required();

    // gen3sat
    std::string g3_file, g3_out;
    bool g3_check = false;
    auto* g3 = app.add_subcommand("gen3sat", "3-SAT accessibility instance generator");
    g3->add_option("file", g3_file, "DIMACS CNF")->required();
    g3->add_option("-o", g3_out, "output directory")->required();
    g3->add_flag("--check", g3_check, "also decide accessibility and report");

    // stsembed
    std::string se_file, se_out;
    auto* se = app.add_subcommand("stsembed", "embed a semi-Thue system as a unary TRS");
    se->add_option("file", se_file, ".sts file")->required();
    se->add_option("-o", se_out, "output .trs")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*classify) {
            auto r = load_trs(classify_file);
            auto f = bure::class_predicates(r);
            auto bound = bure::known_bu_bound(r);
            json j{{"linear", f.linear},
                   {"left_linear", f.left_linear},
                   {"right_ground", f.right_ground},
                   {"shallow", f.shallow},
                   {"growing", f.growing}};
            if (bound) {
                j["known_bu_bound"] = bound->first;
                j["bound_class"] = bound->second;
            } else {
                j["known_bu_bound"] = nullptr;
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*sg) {
            auto r = load_trs(sg_file);
            auto g = bure::build_sg(r);
            auto w = bure::graph_weight(g);
            if (!sg_dot.empty()) spit(sg_dot, bure::sg_to_dot(g));
            json arcs = json::array();
            for (const auto& a : g.arcs)
                arcs.push_back({{"from", a.from},
                                {"to", a.to},
                                {"label", std::string(1, a.label)},
                                {"weight", a.weight()}});
            json j{{"vertices", g.vertices}, {"arcs", arcs}};
            j["weight"] = w.finite ? json(w.weight) : json("infinite");
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*sbub) {
            auto r = load_trs(sbub_file);
            auto b = bure::sbu_sufficient_bound(r);
            json j;
            if (b)
                j = {{"sbu_bound", *b}};
            else
                j = {{"sbu_bound", nullptr}, {"note", "graph weight infinite; condition silent"}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*sbud) {
            auto r = load_trs(sbud_file);
            bool yes = bure::decide_sbu(r, sbud_k);
            json j{{"sbu", yes}, {"k", sbud_k}};
            std::cout << j.dump(2) << "\n";
            return yes ? kYes : kNo;
        }
        if (*anc) {
            auto r = load_trs(anc_file);
            auto t = load_fta(anc_target);
            bure::CompiledSystem compiled;
            bure::AncestorOptions opt;
            opt.compiled = &compiled;
            bure::Fta out = anc_full ? bure::ancestors_full(r, t, anc_k, opt)
                                     : bure::ancestors_k(r, t, anc_k, opt);
            spit(anc_out, out.to_string());
            if (!anc_ground.empty()) spit(anc_ground, compiled.materialize().to_string());
            if (anc_json) {
                size_t families = compiled.schematic.size();
                json j{{"k", anc_k},
                       {"K", compiled.K},
                       {"cascade", compiled.cascade},
                       {"d", compiled.d},
                       {"rule_families", families},
                       {"automaton_rules", compiled.automaton_rules.rules.size()},
                       {"states", out.states.size()},
                       {"transitions", out.transitions.size()}};
                std::cout << j.dump(2) << "\n";
            }
            return 0;
        }
        if (*mem) {
            auto a = load_fta(mem_fta);
            auto t = bure::parse_term(mem_term, a.sig);
            return a.member(t) ? kYes : kNo;
        }
        if (*reach) {
            auto r = load_trs(reach_file);
            auto tg = load_fta(reach_target);
            auto t = bure::parse_term(reach_term, r.sig);
            auto b = bure::ancestors_k(r, tg, reach_k);
            return b.member(t) ? kYes : kNo;
        }
        if (*bsts) {
            auto s = load_sts(bsts_file);
            bool yes = bure::decide_bu_k_sts(s, bsts_k);
            json j{{"bu", yes}, {"k", bsts_k}};
            std::cout << j.dump(2) << "\n";
            return yes ? kYes : kNo;
        }
        if (*okbu) {
            auto r = load_trs(okbu_file);
            auto t = bure::parse_term(okbu_term, r.sig);
            bure::SearchBudget b{o_size, o_steps, okbu_k};
            auto res = bure::kbu_reachable(r, t, okbu_k, b);
            for (const auto& x : res.terms) std::cout << x.to_string() << "\n";
            if (res.truncated) std::cerr << "note: search truncated at budget\n";
            return 0;
        }
        if (*omark) {
            auto r = load_trs(omark_file);
            auto t = bure::parse_term(omark_term, r.sig);
            bure::SearchBudget b{o_size, o_steps, o_mark};
            auto res = bure::wbu_mark_supremum(r, t, b);
            json j{{"supremum", res.supremum}, {"truncated", res.truncated}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*oword) {
            auto s = load_sts(oword_file);
            bool yes = bure::word_bu_reach(s, oword_from, oword_to, oword_k);
            std::cout << (yes ? "yes" : "no") << "\n";
            return yes ? kYes : kNo;
        }
        if (*g3) {
            auto f = bure::parse_dimacs(slurp(g3_file));
            auto art = bure::gen_3sat(f);
            std::filesystem::create_directories(g3_out);
            spit(g3_out + "/rphi.trs", art.system.to_string());
            spit(g3_out + "/source.fta", art.source.to_string());
            spit(g3_out + "/target.fta", art.target.to_string());
            json j{{"variables", f.variables},
                   {"clauses", f.clauses.size()},
                   {"rules", art.system.rules.size()}};
            if (g3_check) {
                j["sat"] = bure::truth_table_sat(f);
                j["accessible"] = bure::sat3_accessible(art);
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*se) {
            auto s = load_sts(se_file);
            spit(se_out, bure::embed_semithue(s).to_string());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
