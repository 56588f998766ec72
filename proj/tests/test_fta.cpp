#include <doctest.h>

#include <algorithm>

#include "bure/fta.hpp"
#include "bure/workbench.hpp"

using namespace bure;

namespace {

// all ground terms over sig up to a depth bound
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

Fta fixture_even_f() {
    // accepts f^(2n)(a): even chains over {a, f/1}
    return parse_fta(
        "sig a/0 f/1\n"
        "states qe qo\n"
        "final qe\n"
        "trans a -> qe\n"
        "trans f(qe) -> qo\n"
        "trans f(qo) -> qe\n");
}

Fta fixture_eps() {
    // epsilon transitions, binary symbol
    return parse_fta(
        "sig a/0 b/0 g/2\n"
        "states qa qb q1 q2\n"
        "final q2\n"
        "trans a -> qa\n"
        "trans b -> qb\n"
        "trans qa -> q1\n"
        "trans g(q1,qb) -> q2\n"
        "trans q2 -> q1\n");
}

Fta aa_with_f() {
    Fta x = automaton_Aa();
    x.sig.add("f", 1);
    return x;
}

}  // namespace

TEST_CASE("reachable_states and member") {
    Fta aa = automaton_Aa();
    CHECK(aa.reachable_states(Term::fun("a")) == std::set<std::string>{"qa"});
    aa.sig.add("h", 1);
    CHECK(aa.reachable_states(Term::fun("h", {Term::fun("a")})).empty());
    CHECK(aa.reachable_states(Term::fun("qa")) == std::set<std::string>{"qa"});
    CHECK(aa.member(Term::fun("a")));
    CHECK_FALSE(aa.member(Term::fun("h", {Term::fun("a")})));
}

TEST_CASE("fta text format round trip") {
    Fta a = fixture_eps();
    Fta b = parse_fta(a.to_string());
    CHECK(a.states == b.states);
    CHECK(a.finals == b.finals);
    CHECK(a.transitions == b.transitions);
}

TEST_CASE("product and language_equal against brute force") {
    Fta even = fixture_even_f();
    Fta all = all_terms_automaton(even.sig);
    Fta prod = product(even, all);
    std::vector<Term> terms;
    enum_terms(even.sig, 5, terms);
    FtaRunner re(even), rp(prod), ra(all);
    for (const auto& t : terms) {
        CHECK(ra.member(t));
        CHECK(re.member(t) == rp.member(t));
    }
    CHECK(language_equal(even, even));
    CHECK(language_equal(prod, even));
    CHECK_FALSE(language_equal(even, all));
}

TEST_CASE("product with epsilon transitions against brute force") {
    Fta e = fixture_eps();
    Fta all = all_terms_automaton(e.sig);
    Fta prod = product(e, all);
    std::vector<Term> terms;
    enum_terms(e.sig, 3, terms);
    FtaRunner re(e), rp(prod);
    for (const auto& t : terms) CHECK(re.member(t) == rp.member(t));
    CHECK(language_equal(prod, e));
}

TEST_CASE("is_empty") {
    Fta none;
    none.sig.add("a", 0);
    none.states.insert("q");
    none.finals.insert("q");  // no transitions
    CHECK(none.language_empty());
    CHECK(product(automaton_Aa(), none).language_empty());
    CHECK_FALSE(automaton_Aa().language_empty());
    Signature funary{{"f", 1}};
    CHECK(all_terms_automaton(funary).language_empty());
}

TEST_CASE("all_terms_automaton") {
    Signature sig{{"a", 0}, {"f", 1}};
    Fta all = all_terms_automaton(sig);
    CHECK(all.member(Term::fun("a")));
    CHECK(all.member(Term::fun("f", {Term::fun("f", {Term::fun("a")})})));
}

TEST_CASE("extend_marked") {
    Fta aa = automaton_Aa();
    Fta m1 = extend_marked(aa, 1);
    CHECK(m1.transitions.size() == 2);  // a -> qa and a^1 -> qa^1
    CHECK(m1.member(Term::fun("a")));
    CHECK(m1.member(Term::fun("a", {}, 1)));
    Fta m0 = extend_marked(aa, 0);
    CHECK(m0.transitions == aa.transitions);
    Fta m2 = extend_marked(aa, 2);
    CHECK(m2.member(Term::fun("a", {}, 2)));
}

TEST_CASE("extend_marked restricted to unmarked terms equals L(A)") {
    for (Fta a : {fixture_even_f(), fixture_eps()}) {
        Fta m = extend_marked(a, 2);
        std::vector<Term> terms;
        enum_terms(a.sig, 4, terms);
        FtaRunner ra(a), rm(m);
        for (const auto& t : terms) CHECK(ra.member(t) == rm.member(t));
    }
}

TEST_CASE("extend_marked is mark-oblivious (odot compatibility)") {
    Fta a = fixture_even_f();
    int k = 3;
    Fta m = extend_marked(a, k);
    std::vector<Term> terms;
    enum_terms(a.sig, 4, terms);
    for (const auto& t : terms) {
        auto plain = a.reachable_states(t);
        for (int n = 0; n <= k; ++n) {
            auto marked = m.reachable_states(odot(t, n));
            std::set<std::string> expect;
            for (const auto& q : plain) expect.insert(marked_state(q, n));
            CHECK(marked == expect);
        }
    }
}

TEST_CASE("standardize: structure and language") {
    for (Fta a : {automaton_Aa(), fixture_even_f(), fixture_eps()}) {
        Fta h = standardize(a);
        CHECK(is_standard(h));
        std::vector<Term> terms;
        enum_terms(a.sig, 4, terms);
        FtaRunner ra(a), rh(h);
        for (const auto& t : terms) CHECK(ra.member(t) == rh.member(t));
        CHECK(language_equal(a, h));
    }
}

TEST_CASE("standardize keeps constants as states") {
    Fta h = standardize(automaton_Aa());
    CHECK(h.states.count("a"));
    CHECK(h.finals.count("a"));
    CHECK(h.member(Term::fun("a")));
}

TEST_CASE("is_standard rejects") {
    CHECK_FALSE(is_standard(automaton_Aa()));  // nullary transition
    CHECK_FALSE(is_standard(fixture_eps()));   // epsilon transitions
}

TEST_CASE("red: A-reducts on a standard automaton") {
    Fta h = standardize(aa_with_f());
    REQUIRE(is_standard(h));
    Term fa = Term::fun("f", {Term::fun("a")});
    CHECK(red(h, fa, fa.positions()) == fa);
    Term collapsed = red(h, fa, TreeDomain{{}});
    CHECK(collapsed.arity() == 0);
    CHECK(h.states.count(collapsed.head()));
    TreeDomain p01 = {{}, {1}};
    CHECK(red(h, red(h, fa, p01), TreeDomain{{}}) == red(h, fa, TreeDomain{{}}));
    // marks carried: a collapsed subtree becomes a state bearing its root mark
    Term marked = Term::fun("f", {Term::fun("a", {}, 2)}, 1);
    CHECK(red(h, marked, TreeDomain{{}}).mark() == 1);
    CHECK_THROWS(red(automaton_Aa(), fa, TreeDomain{{}}));  // not standard
}

TEST_CASE("mark_witness_automaton") {
    Signature sig{{"a", 0}, {"f", 1}};
    Fta w1 = mark_witness_automaton(sig, 1);
    CHECK(w1.member(Term::fun("f", {Term::fun("a")}, 1)));
    CHECK_FALSE(w1.member(Term::fun("f", {Term::fun("a")})));
    Fta w2 = mark_witness_automaton(sig, 2);
    CHECK(w2.member(Term::fun("f", {Term::fun("a", {}, 2)}, 1)));
    CHECK_FALSE(w2.member(Term::fun("f", {Term::fun("a", {}, 1)}, 1)));
}
