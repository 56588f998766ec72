#include "bure/workbench.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

#include "bure/preservation.hpp"

namespace bure {

namespace {

Trs make_trs(std::initializer_list<std::pair<std::string, int>> sig,
             std::initializer_list<std::pair<const char*, const char*>> rules) {
    Trs r;
    r.sig = Signature(sig);
    for (const auto& [l, rr] : rules) r.rules.push_back({parse_term(l, r.sig), parse_term(rr, r.sig)});
    r.validate();
    return r;
}

}  // namespace

std::vector<Fixture> fixtures() {
    std::vector<Fixture> out;
    out.push_back({"R0",
                   make_trs({{"a", 0}, {"f", 1}}, {{"f(f(x))", "f(x)"}}),
                   "BU^-(1), not SBU"});
    out.push_back({"R1",
                   make_trs({{"a", 0}, {"f", 1}, {"g", 1}, {"h", 1}, {"i", 1}},
                            {{"f(x)", "g(x)"}, {"g(h(x))", "i(x)"}, {"i(x)", "a"}}),
                   "BU^-(2)"});
    out.push_back({"R2",
                   make_trs({{"a", 0}, {"f", 1}, {"g", 1}, {"h", 1}},
                            {{"f(x)", "g(x)"}, {"h(g(a))", "a"}}),
                   "growing, BU^-(1)"});
    out.push_back({"R3",
                   make_trs({{"a", 0}, {"f", 1}, {"g", 1}, {"h", 1}},
                            {{"f(x)", "g(x)"}, {"g(h(x))", "a"}}),
                   "growing, BU(1)"});
    out.push_back({"R4",
                   make_trs({{"a", 0}, {"f", 1}, {"g", 1}}, {{"g(f(g(x)))", "f(x)"}}),
                   "not inverse-recognizability-preserving"});
    out.push_back({"R5",
                   make_trs({{"a", 0}, {"b", 0}, {"f", 2}, {"g", 1}}, {{"f(g(x),a)", "f(x,b)"}}),
                   "SBU(1)"});
    out.push_back({"GAB",
                   make_trs({{"a", 0}, {"b", 0}, {"g", 2}}, {{"g(g(x,b),a)", "g(x,b)"}}),
                   "saturation worked example"});
    out.push_back({"RG",
                   make_trs({{"a", 0}, {"f", 1}}, {{"f(x)", "a"}}),
                   "right-ground, BU(0)"});
    return out;
}

const Fixture& fixture(const std::string& name) {
    static const std::vector<Fixture> all = fixtures();
    for (const auto& f : all)
        if (f.name == name) return f;
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

Fta automaton_Aa() {
    Fta a;
    a.sig.add("a", 0);
    a.states.insert("qa");
    a.finals.insert("qa");
    Transition t;
    t.head = "a";
    t.to = "qa";
    a.transitions.insert(t);
    return a;
}

// --- 3-SAT ---------------------------------------------------------------------

Cnf3 parse_dimacs(const std::string& text) {
    Cnf3 out;
    std::istringstream is(text);
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c") continue;
        if (first == "p") {
            std::string fmt;
            int m;
            if (!(ls >> fmt >> out.variables >> m) || fmt != "cnf")
                throw std::invalid_argument("DIMACS: bad problem line");
            header = true;
            continue;
        }
        if (!header) throw std::invalid_argument("DIMACS: clause before problem line");
        std::vector<int> lits;
        int lit = std::stoi(first);
        while (lit != 0) {
            lits.push_back(lit);
            if (!(ls >> lit)) throw std::invalid_argument("DIMACS: clause missing terminating 0");
        }
        if (lits.size() != 3)
            throw std::invalid_argument("DIMACS: exactly three literals per clause required");
        for (int l : lits)
            if (l == 0 || std::abs(l) > out.variables)
                throw std::invalid_argument("DIMACS: literal out of range");
        out.clauses.push_back({lits[0], lits[1], lits[2]});
    }
    return out;
}

bool truth_table_sat(const Cnf3& f) {
    for (unsigned mask = 0; mask < (1u << f.variables); ++mask) {
        bool all = true;
        for (const auto& cl : f.clauses) {
            bool clause = false;
            for (int lit : cl) {
                bool v = (mask >> (std::abs(lit) - 1)) & 1;
                if (lit < 0) v = !v;
                clause = clause || v;
            }
            if (!clause) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return f.clauses.empty();
}

Sat3Artifacts gen_3sat(const Cnf3& f) {
    if (f.variables < 1) throw std::invalid_argument("gen_3sat: need at least one variable");
    Sat3Artifacts art;
    Signature sig{{"f", 2}, {"g", 2}, {"and", 2}, {"or", 2}, {"not", 1},
                  {"0", 0}, {"1", 0}, {"2", 0}};
    art.system.sig = sig;

    // PL: Boolean evaluation taken in reverse
    auto add_rule = [&](const std::string& l, const std::string& r) {
        art.system.rules.push_back({parse_term(l, sig), parse_term(r, sig)});
    };
    add_rule("0", "and(0,0)");
    add_rule("0", "and(0,1)");
    add_rule("0", "and(1,0)");
    add_rule("1", "and(1,1)");
    add_rule("0", "or(0,0)");
    add_rule("1", "or(0,1)");
    add_rule("1", "or(1,0)");
    add_rule("1", "or(1,1)");
    add_rule("1", "not(0)");
    add_rule("0", "not(1)");

    // linearization: the j-th occurrence of variable i becomes x_i_j
    std::vector<int> occ(f.variables + 1, 0);
    std::vector<std::vector<Term>> slots(f.variables + 1);
    std::vector<Term> clause_terms;
    for (const auto& cl : f.clauses) {
        std::vector<Term> lits;
        for (int lit : cl) {
            int i = std::abs(lit);
            int j = ++occ[i];
            Term v = Term::var("x" + std::to_string(i) + "_" + std::to_string(j));
            slots[i].push_back(v);
            lits.push_back(lit > 0 ? v : Term::fun("not", {v}));
        }
        Term c = lits[0];
        for (size_t i = 1; i < lits.size(); ++i) c = Term::fun("or", {c, lits[i]});
        clause_terms.push_back(c);
    }
    if (clause_terms.empty())
        throw std::invalid_argument("gen_3sat: need at least one clause");
    Term phi_hat = clause_terms[0];
    for (size_t i = 1; i < clause_terms.size(); ++i)
        phi_hat = Term::fun("and", {phi_hat, clause_terms[i]});

    // h: an f-comb seeded with 2 over per-variable g-combs of the occurrence
    // slots (variables with no occurrence contribute a fixed bit)
    Term h = Term::fun("2");
    for (int i = 1; i <= f.variables; ++i) {
        Term comb;
        if (slots[i].empty()) {
            comb = Term::fun("0");
        } else {
            comb = slots[i][0];
            for (size_t j = 1; j < slots[i].size(); ++j) comb = Term::fun("g", {comb, slots[i][j]});
        }
        h = Term::fun("f", {h, comb});
    }
    art.system.rules.push_back({phi_hat, h});
    art.system.validate();

    // source: { 1 }
    art.source.sig = sig;
    art.source.states.insert("qsrc");
    art.source.finals.insert("qsrc");
    {
        Transition t;
        t.head = "1";
        t.to = "qsrc";
        art.source.transitions.insert(t);
    }
    art.source_term = parse_term("1", sig);

    // target: L(G, T2)
    Fta& tg = art.target;
    tg.sig = sig;
    for (const auto& q : {"q0", "q1", "qG0", "qG1", "qG", "qT2"}) tg.states.insert(q);
    tg.finals.insert("qT2");
    auto tr = [&](const std::string& head, std::vector<std::string> from, const std::string& to) {
        Transition t;
        t.head = head;
        t.from = std::move(from);
        t.to = to;
        tg.transitions.insert(t);
    };
    auto eps = [&](const std::string& from, const std::string& to) {
        Transition t;
        t.from = {from};
        t.to = to;
        tg.transitions.insert(t);
    };
    tr("0", {}, "q0");
    tr("1", {}, "q1");
    tr("2", {}, "qT2");
    eps("q0", "qG0");
    eps("q1", "qG1");
    tr("g", {"qG0", "q0"}, "qG0");
    tr("g", {"qG1", "q1"}, "qG1");
    eps("qG0", "qG");
    eps("qG1", "qG");
    tr("f", {"qT2", "qG"}, "qT2");
    return art;
}

bool sat3_accessible(const Sat3Artifacts& art) {
    AncestorOptions opt;
    opt.standardize = false;  // images at apply time are bit constants
    Fta b = ancestors_bu_minus(art.system, art.target, 1, opt);
    return b.member(art.source_term);
}

}  // namespace bure
