#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>

#include "bure/ground.hpp"
#include "bure/workbench.hpp"

using namespace bure;

namespace {

void enum_terms(const Signature& sig, int depth, std::vector<Term>& out) {
    if (depth == 0) return;
    std::vector<Term> smaller;
    enum_terms(sig, depth - 1, smaller);
    for (const auto& [name, ar] : sig.symbols()) {
        if (ar == 0) {
            out.push_back(Term::fun(name));
            continue;
        }
        if (smaller.empty()) continue;
        std::vector<size_t> idx(ar, 0);
        while (true) {
            std::vector<Term> args;
            for (int i = 0; i < ar; ++i) args.push_back(smaller[idx[i]]);
            out.push_back(Term::fun(name, args));
            int pos = ar - 1;
            while (pos >= 0) {
                if (++idx[pos] < smaller.size()) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

// BFS ground-rewriting descendants within a size bound
std::set<Term> ground_closure(const GroundTrs& g, const Term& start, int max_size) {
    std::set<Term> seen{start};
    std::deque<Term> work{start};
    Trs sys = g.as_trs();
    while (!work.empty()) {
        Term cur = work.front();
        work.pop_front();
        for (const auto& [pos, rule, res] : one_step_rewrites(sys, cur)) {
            if (res.size() > max_size) continue;
            if (seen.insert(res).second) work.push_back(res);
        }
    }
    return seen;
}

GroundTrs make_ground(const Signature& sig,
                      std::initializer_list<std::pair<const char*, const char*>> rules) {
    GroundTrs g;
    g.host = sig;
    for (const auto& [l, r] : rules) g.rules.push_back({parse_term(l, sig), parse_term(r, sig)});
    return g;
}

}  // namespace

TEST_CASE("pre_star with an empty system is the target language") {
    Signature sig{{"a", 0}, {"b", 0}, {"f", 2}};
    GroundTrs g;
    g.host = sig;
    Fta target = singleton_automaton(sig, {parse_term("f(a,b)", sig)});
    Fta pre = pre_star(g, target);
    CHECK(language_equal(pre, target));
}

TEST_CASE("pre_star of {a->b} towards {f(b,b)}") {
    Signature sig{{"a", 0}, {"b", 0}, {"f", 2}};
    GroundTrs g = make_ground(sig, {{"a", "b"}});
    Fta target = singleton_automaton(sig, {parse_term("f(b,b)", sig)});
    Fta pre = pre_star(g, target);
    // brute force over the four candidates
    for (const char* x : {"a", "b"})
        for (const char* y : {"a", "b"}) {
            Term t = parse_term(std::string("f(") + x + "," + y + ")", sig);
            CHECK(pre.member(t));
        }
    CHECK_FALSE(pre.member(parse_term("a", sig)));
    CHECK_FALSE(pre.member(parse_term("f(f(a,a),b)", sig)));
}

TEST_CASE("pre_star simulates the printed S0 example") {
    // S0 ∪ A rules for R_1 with T = {a}: the three printed rules plus the
    // cascade instance f(h(qa)) -> g(h(qa)) that the printed derivation
    // steps through, plus the automaton rule a -> qa; target = constant qa
    Signature sig{{"a", 0}, {"f", 1}, {"g", 1}, {"h", 1}, {"i", 1}, {"qa", 0}};
    GroundTrs g = make_ground(sig, {{"f(qa)", "g(qa)"},
                                    {"f(h(qa))", "g(h(qa))"},
                                    {"g(h(qa))", "i(qa)"},
                                    {"i(qa)", "a"},
                                    {"a", "qa"}});
    Fta target;
    target.sig = sig;
    target.states.insert("acc");
    target.finals.insert("acc");
    Transition t;
    t.head = "qa";
    t.to = "acc";
    target.transitions.insert(t);
    Fta pre = pre_star(g, target);
    CHECK(pre.member(parse_term("f(h(f(h(a))))", sig)));  // the ex-toro start
    CHECK(pre.member(parse_term("a", sig)));
    CHECK(pre.member(parse_term("f(h(a))", sig)));
    CHECK_FALSE(pre.member(parse_term("h(a)", sig)));  // no rule consumes a lone h
}

TEST_CASE("post_star basics") {
    Signature sig{{"a", 0}, {"b", 0}, {"f", 1}};
    GroundTrs empty;
    empty.host = sig;
    Fta src = singleton_automaton(sig, {parse_term("a", sig)});
    CHECK(language_equal(post_star(empty, src), src));

    GroundTrs ab = make_ground(sig, {{"a", "b"}});
    Fta post = post_star(ab, src);
    CHECK(post.member(parse_term("a", sig)));
    CHECK(post.member(parse_term("b", sig)));
    CHECK_FALSE(post.member(parse_term("f(a)", sig)));

    GroundTrs grow = make_ground(sig, {{"a", "f(a)"}});
    Fta post2 = post_star(grow, src);
    CHECK(post2.member(parse_term("f(f(a))", sig)));  // two-step BFS oracle
    auto oracle = ground_closure(grow, parse_term("a", sig), 3);
    for (const auto& t : oracle) CHECK(post2.member(t));
}

TEST_CASE("monotonicity and idempotence") {
    Signature sig{{"a", 0}, {"b", 0}, {"g", 1}};
    GroundTrs g = make_ground(sig, {{"a", "b"}, {"g(b)", "a"}});
    Fta target = singleton_automaton(sig, {parse_term("b", sig)});
    Fta once = pre_star(g, target);
    std::vector<Term> terms;
    enum_terms(sig, 4, terms);
    FtaRunner rt(target), ro(once);
    for (const auto& t : terms)
        if (rt.member(t)) CHECK(ro.member(t));  // L(target) ⊆ pre*
    Fta twice = pre_star(g, once);
    CHECK(language_equal(once, twice));
}

TEST_CASE("pre_star and post_star vs BFS oracle on randomized ground systems") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 20; ++trial) {
        Signature sig;
        sig.add("a", 0);
        sig.add("b", 0);
        sig.add("f", 1);
        if (trial % 2) sig.add("g", 2);
        std::vector<Term> pool;
        enum_terms(sig, 2, pool);
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        GroundTrs g;
        g.host = sig;
        int nrules = 2 + static_cast<int>(rng() % 7);
        for (int i = 0; i < nrules; ++i) {
            Term u = pool[pick(rng)], v = pool[pick(rng)];
            // size-non-increasing so the bounded BFS oracle is exact
            if (u.size() < v.size()) std::swap(u, v);
            g.rules.push_back({u, v});
        }
        Term goal = pool[pick(rng)];
        Fta target = singleton_automaton(sig, {goal});
        Fta pre = pre_star(g, target);
        Fta post = post_star(g, target);

        std::vector<Term> universe;
        enum_terms(sig, trial % 2 ? 3 : 4, universe);
        FtaRunner rp(pre), rq(post);
        for (const auto& s : universe) {
            auto reach = ground_closure(g, s, static_cast<int>(s.size()));
            // ancestors: s ->* goal
            CHECK(rp.member(s) == (reach.count(goal) > 0));
        }
        // descendants of the goal, exact within the universe
        auto desc = ground_closure(g, goal, static_cast<int>(goal.size()));
        for (const auto& s : universe) CHECK(rq.member(s) == (desc.count(s) > 0));
    }
}
