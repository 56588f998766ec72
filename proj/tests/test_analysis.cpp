#include <doctest.h>

#include "bure/analysis.hpp"
#include "bure/oracle.hpp"
#include "bure/preservation.hpp"
#include "bure/workbench.hpp"

using namespace bure;

namespace {

std::set<std::string> arc_strings(const StickingOutGraph& g) {
    std::set<std::string> out;
    for (const auto& a : g.arcs)
        out.insert(std::to_string(a.from) + "->" + std::to_string(a.to) + a.label);
    return out;
}

}  // namespace

TEST_CASE("sticks_out") {
    Signature sig{{"a", 0}, {"f", 2}, {"g", 1}, {"h", 1}};
    // s = g(h(x)) sticks out of t = g(y) at 1, strictly
    auto r = sticks_out(parse_term("g(h(x))", sig), parse_term("g(y)", sig));
    REQUIRE(r.size() == 1);
    CHECK(r[0].first == Position{1});
    CHECK(r[0].second);  // strict
    // the R4-style pair f(g(x)) over f(y)
    Signature sig2{{"a", 0}, {"f", 1}, {"g", 1}};
    auto r2 = sticks_out(parse_term("f(g(x))", sig2), parse_term("f(y)", sig2));
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].second);
    // ground s never sticks out (clause 2 needs s/w outside T(F))
    CHECK(sticks_out(parse_term("a", sig), parse_term("g(y)", sig)).empty());
    CHECK(sticks_out(parse_term("g(a)", sig), parse_term("g(y)", sig)).empty());
    // non-strict: s/w a variable
    auto r3 = sticks_out(parse_term("g(x)", sig), parse_term("g(y)", sig));
    REQUIRE(r3.size() == 1);
    CHECK_FALSE(r3[0].second);
    CHECK_THROWS(sticks_out(parse_term("g(x)", sig), Term::var("y")));
}

TEST_CASE("sticking-out graphs of the fixtures") {
    // R4: one vertex, a loop labeled (b)
    auto g4 = build_sg(fixture("R4").system);
    CHECK(g4.vertices == 1);
    CHECK(arc_strings(g4).count("1->1b"));
    // R0: loops (d) and (a)
    auto g0 = build_sg(fixture("R0").system);
    auto a0 = arc_strings(g0);
    CHECK(a0.count("1->1a"));
    CHECK(a0.count("1->1d"));
    CHECK_FALSE(a0.count("1->1b"));
    // R1: arcs 1->2 (a) and 2->3 (c), nothing else
    auto g1 = build_sg(fixture("R1").system);
    CHECK(arc_strings(g1) == std::set<std::string>{"1->2a", "2->3c"});
    // R5: loop (a)
    auto g5 = build_sg(fixture("R5").system);
    CHECK(arc_strings(g5).count("1->1a"));
}

TEST_CASE("graph weights") {
    CHECK(graph_weight(build_sg(fixture("R4").system)) == WeightResult{false, 0});
    CHECK(graph_weight(build_sg(fixture("R0").system)) == WeightResult{false, 0});
    CHECK(graph_weight(build_sg(fixture("R5").system)) == WeightResult{false, 0});
    CHECK(graph_weight(build_sg(fixture("R1").system)) == WeightResult{true, 1});
    StickingOutGraph empty;
    CHECK(graph_weight(empty) == WeightResult{true, 0});
    // a weight-0 cycle alone stays finite
    StickingOutGraph zc;
    zc.vertices = 2;
    zc.arcs.insert({1, 2, 'c'});
    zc.arcs.insert({2, 1, 'd'});
    zc.arcs.insert({2, 2, 'c'});
    CHECK(graph_weight(zc) == WeightResult{true, 0});
    // weight-1 arcs chained acyclically add up
    StickingOutGraph chain;
    chain.vertices = 3;
    chain.arcs.insert({1, 2, 'a'});
    chain.arcs.insert({2, 3, 'b'});
    CHECK(graph_weight(chain) == WeightResult{true, 2});
}

TEST_CASE("sbu_sufficient_bound") {
    auto b1 = sbu_sufficient_bound(fixture("R1").system);
    REQUIRE(b1.has_value());
    CHECK(*b1 == 2);
    CHECK_FALSE(sbu_sufficient_bound(fixture("R4").system).has_value());
    // sufficiency, not necessity: R5 is SBU(1) but the graph is silent
    CHECK_FALSE(sbu_sufficient_bound(fixture("R5").system).has_value());
}

TEST_CASE("weight consistency with decide_sbu on R1") {
    auto w = graph_weight(build_sg(fixture("R1").system));
    REQUIRE(w.finite);
    CHECK(decide_sbu(fixture("R1").system, w.weight + 1));
}

TEST_CASE("branch systems") {
    auto b4 = branch_system(fixture("R4").system);
    REQUIRE(b4.rules.size() == 1);
    CHECK(b4.rules[0].lhs == "gfg");
    CHECK(b4.rules[0].rhs == "f");
    Trs fg = parse_trs("sig f/1 g/1 a/0\nrule f(x) -> g(x)\n");
    auto bfg = branch_system(fg);
    REQUIRE(bfg.rules.size() == 1);
    CHECK(bfg.rules[0].lhs == "f");
    CHECK(bfg.rules[0].rhs == "g");
    Trs ground = parse_trs("sig a/0 b/0\nrule a -> b\n");
    CHECK(branch_system(ground).rules.empty());
    // R1's erasing rule contributes nothing; the other two embed
    auto b1 = branch_system(fixture("R1").system);
    CHECK(b1.rules.size() == 2);
}

TEST_CASE("branch-system weight bound W(SG(branch)) <= W(SG(R))") {
    for (const char* name : {"R1", "R4", "R5"}) {
        const Trs& r = fixture(name).system;
        auto wr = graph_weight(build_sg(r));
        auto bs = branch_system(r);
        auto wb = graph_weight(build_sg(embed_semithue(bs)));
        if (wr.finite) {
            REQUIRE(wb.finite);
            CHECK(wb.weight <= wr.weight);
        }
    }
}

TEST_CASE("minimal_right_overlaps") {
    auto aba = parse_sts("letters a b\nrule a -> ba\n");
    CHECK(minimal_right_overlaps(aba, 1).empty());  // |vw| < 1 impossible

    auto abba = parse_sts("letters a b\nrule ab -> ba\n");
    auto o1 = minimal_right_overlaps(abba, 1);
    CHECK(!o1.empty());
    for (const auto& o : o1) {
        CHECK(o.w == "b");
        CHECK(o.v == "");
        CHECK(o.rule_r == 0);
        CHECK(o.rule_rp == 0);
        // boundary consistency: d_end = u . lhs . v and up = u . prefix(rhs)
        CHECK(o.d_end == o.u + "ab" + o.v);
        CHECK(o.up == o.u + "b");
    }

    auto abaab = parse_sts("letters a b\nrule ab -> aab\n");
    CHECK(abaab.condition_C());
    CHECK_NOTHROW(minimal_right_overlaps(abaab, 1));  // terminates

    CHECK_THROWS(minimal_right_overlaps(parse_sts("letters a\nrule aa -> a\n"), 1));
    CHECK_THROWS(minimal_right_overlaps(parse_sts("letters a b\nrule ab -> ab\n"), 1));
}

TEST_CASE("overlap resolution is monotone in k") {
    auto abba = parse_sts("letters a b\nrule ab -> ba\n");
    for (int k = 1; k <= 2; ++k) {
        for (const auto& o : minimal_right_overlaps(abba, k)) {
            if (is_overlap_resolved(abba, o, k)) CHECK(is_overlap_resolved(abba, o, k + 1));
        }
    }
}

TEST_CASE("decide_bu_k_sts fixture decisions") {
    auto abba = parse_sts("letters a b\nrule ab -> ba\n");
    auto aba = parse_sts("letters a b\nrule a -> ba\n");
    CHECK_FALSE(decide_bu_k_sts(abba, 0));
    CHECK_FALSE(decide_bu_k_sts(abba, 1));
    CHECK_FALSE(decide_bu_k_sts(abba, 2));
    CHECK_FALSE(decide_bu_k_sts(aba, 0));
    CHECK(decide_bu_k_sts(aba, 1));
    CHECK(decide_bu_k_sts(aba, 2));
    // BU(0) holds exactly for identity rules
    CHECK(decide_bu_k_sts(parse_sts("letters a\n"), 0));
}

TEST_CASE("dot output") {
    auto g = build_sg(fixture("R1").system);
    std::string dot = sg_to_dot(g);
    CHECK(dot.find("digraph SG") != std::string::npos);
    CHECK(dot.find("r1 -> r2 [label=\"a\", weight=1]") != std::string::npos);
    CHECK(dot.find("r2 -> r3 [label=\"c\", weight=0]") != std::string::npos);
}
