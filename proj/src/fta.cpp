#include "bure/fta.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace bure {

void Fta::add_transition(Transition t) {
    if (!t.is_epsilon() && !sig.contains(t.head)) sig.add(t.head, static_cast<int>(t.from.size()));
    for (const auto& q : t.from) states.insert(q);
    states.insert(t.to);
    transitions.insert(std::move(t));
}

void Fta::validate() const {
    for (const auto& q : finals)
        if (!states.count(q)) throw std::invalid_argument("final state '" + q + "' undeclared");
    for (const auto& t : transitions) {
        if (!t.is_epsilon()) {
            if (!sig.contains(t.head))
                throw std::invalid_argument("transition head '" + t.head + "' not in signature");
            if (sig.arity(t.head) != static_cast<int>(t.from.size()))
                throw std::invalid_argument("transition for '" + t.head + "' violates arity");
        } else if (t.from.size() != 1) {
            throw std::invalid_argument("epsilon transition needs exactly one source state");
        }
        for (const auto& q : t.from)
            if (!states.count(q)) throw std::invalid_argument("state '" + q + "' undeclared");
        if (!states.count(t.to)) throw std::invalid_argument("state '" + t.to + "' undeclared");
    }
}

std::set<std::string> Fta::eps_closure(const std::set<std::string>& qs) const {
    std::set<std::string> out = qs;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : transitions)
            if (t.is_epsilon() && out.count(t.from[0]) && !out.count(t.to)) {
                out.insert(t.to);
                changed = true;
            }
    }
    return out;
}

std::set<std::string> Fta::reachable_states(const Term& t) const {
    if (t.is_var()) throw std::invalid_argument("reachable_states: term must be ground");
    std::vector<std::set<std::string>> child_states;
    child_states.reserve(t.args().size());
    for (const auto& a : t.args()) child_states.push_back(reachable_states(a));
    std::set<std::string> out;
    // a state constant reaches itself (terms over signature + states)
    std::string mangled = marked_state(t.head(), t.mark());
    if (t.arity() == 0 && states.count(mangled)) out.insert(mangled);
    for (const auto& tr : transitions) {
        if (tr.is_epsilon() || tr.head != t.head() || tr.mark != t.mark() ||
            static_cast<int>(tr.from.size()) != t.arity())
            continue;
        bool ok = true;
        for (int i = 0; i < t.arity() && ok; ++i) ok = child_states[i].count(tr.from[i]) > 0;
        if (ok) out.insert(tr.to);
    }
    return eps_closure(out);
}

bool Fta::member(const Term& t) const {
    auto r = reachable_states(t);
    for (const auto& q : r)
        if (finals.count(q)) return true;
    return false;
}

std::set<std::string> Fta::accessible_states() const {
    std::set<std::string> acc;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : transitions) {
            if (acc.count(t.to)) continue;
            bool ok = true;
            for (const auto& q : t.from)
                if (!acc.count(q)) {
                    ok = false;
                    break;
                }
            if (ok) {
                acc.insert(t.to);
                changed = true;
            }
        }
    }
    return acc;
}

bool Fta::language_empty() const {
    auto acc = accessible_states();
    for (const auto& q : acc)
        if (finals.count(q)) return false;
    return true;
}

std::string Fta::to_string() const {
    std::ostringstream os;
    os << "sig";
    for (const auto& [n, a] : sig.symbols()) os << ' ' << n << '/' << a;
    os << "\nstates";
    for (const auto& q : states) os << ' ' << q;
    os << "\nfinal";
    for (const auto& q : finals) os << ' ' << q;
    os << '\n';
    for (const auto& t : transitions) {
        if (t.is_epsilon()) {
            os << "trans " << t.from[0] << " -> " << t.to << '\n';
        } else {
            os << "trans " << t.head;
            if (t.mark != 0) os << '^' << t.mark;
            if (!t.from.empty()) {
                os << '(';
                for (size_t i = 0; i < t.from.size(); ++i) {
                    if (i) os << ',';
                    os << t.from[i];
                }
                os << ')';
            }
            os << " -> " << t.to << '\n';
        }
    }
    return os.str();
}

namespace {

std::vector<std::string> tokenize_line(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

// split "f^2(q1,q2)" into head, mark, args
void parse_lhs(const std::string& text, std::string& head, int& mark,
               std::vector<std::string>& args) {
    size_t paren = text.find('(');
    std::string h = text.substr(0, paren);
    size_t caret = h.find('^');
    mark = 0;
    if (caret != std::string::npos) {
        mark = std::stoi(h.substr(caret + 1));
        h = h.substr(0, caret);
    }
    head = h;
    args.clear();
    if (paren != std::string::npos) {
        size_t close = text.rfind(')');
        if (close == std::string::npos) throw std::invalid_argument("missing ')' in " + text);
        std::string inner = text.substr(paren + 1, close - paren - 1);
        std::string cur;
        for (char c : inner) {
            if (c == ',') {
                if (!cur.empty()) args.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur += c;
            }
        }
        if (!cur.empty()) args.push_back(cur);
    }
}

}  // namespace

Fta parse_fta(const std::string& text) {
    Fta a;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        // a comment marker is a '#' at line start or after whitespace (the
        // end-of-word symbol # may appear inside terms)
        for (size_t ci = 0; ci < line.size(); ++ci)
            if (line[ci] == '#' && (ci == 0 || std::isspace(static_cast<unsigned char>(line[ci - 1])))) {
                line = line.substr(0, ci);
                break;
            }
        auto toks = tokenize_line(line);
        if (toks.empty()) continue;
        try {
            if (toks[0] == "sig") {
                for (size_t i = 1; i < toks.size(); ++i) {
                    auto slash = toks[i].find('/');
                    if (slash == std::string::npos)
                        throw std::invalid_argument("expected name/arity, got '" + toks[i] + "'");
                    a.sig.add(toks[i].substr(0, slash), std::stoi(toks[i].substr(slash + 1)));
                }
            } else if (toks[0] == "states") {
                for (size_t i = 1; i < toks.size(); ++i) a.states.insert(toks[i]);
            } else if (toks[0] == "final") {
                for (size_t i = 1; i < toks.size(); ++i) a.finals.insert(toks[i]);
            } else if (toks[0] == "trans") {
                // trans LHS -> q ; LHS is f(q1,..) or a state (epsilon)
                std::string joined;
                for (size_t i = 1; i < toks.size(); ++i) joined += toks[i] + " ";
                auto arrow = joined.find("->");
                if (arrow == std::string::npos) throw std::invalid_argument("missing '->'");
                std::string lhs = joined.substr(0, arrow);
                std::string rhs = joined.substr(arrow + 2);
                lhs.erase(std::remove_if(lhs.begin(), lhs.end(), ::isspace), lhs.end());
                rhs.erase(std::remove_if(rhs.begin(), rhs.end(), ::isspace), rhs.end());
                Transition t;
                std::string head;
                int mark;
                std::vector<std::string> args;
                parse_lhs(lhs, head, mark, args);
                t.to = rhs;
                if (a.states.count(head) && args.empty() && mark == 0 && !a.sig.contains(head)) {
                    t.head.clear();
                    t.from = {head};
                } else {
                    t.head = head;
                    t.mark = mark;
                    t.from = args;
                }
                a.states.insert(t.to);
                a.transitions.insert(t);
            } else {
                throw std::invalid_argument("unknown directive '" + toks[0] + "'");
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument(".fta line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    a.validate();
    return a;
}

Fta all_terms_automaton(const Signature& f) {
    Fta a;
    a.sig = f;
    a.states.insert("qall");
    a.finals.insert("qall");
    for (const auto& [name, ar] : f.symbols()) {
        Transition t;
        t.head = name;
        t.from.assign(ar, "qall");
        t.to = "qall";
        a.transitions.insert(t);
    }
    return a;
}

Fta singleton_automaton(const Signature& f, const std::vector<Term>& terms) {
    Fta a;
    a.sig = f;
    std::function<std::string(const Term&)> build = [&](const Term& t) -> std::string {
        std::string q = "q{" + t.to_string() + "}";
        a.states.insert(q);
        Transition tr;
        tr.head = t.head();
        tr.mark = t.mark();
        for (const auto& arg : t.args()) tr.from.push_back(build(arg));
        tr.to = q;
        a.transitions.insert(tr);
        return q;
    };
    for (const auto& t : terms) {
        if (!t.ground()) throw std::invalid_argument("singleton_automaton: terms must be ground");
        a.finals.insert(build(t));
    }
    return a;
}

namespace {
std::string pair_state(const std::string& a, const std::string& b) { return "(" + a + "|" + b + ")"; }
}  // namespace

Fta product(const Fta& a, const Fta& b) {
    for (const auto& [n, ar] : a.sig.symbols())
        if (b.sig.contains(n) && b.sig.arity(n) != ar)
            throw std::invalid_argument("product: signatures disagree on '" + n + "'");
    Fta out;
    out.sig = a.sig;
    for (const auto& [n, ar] : b.sig.symbols()) out.sig.add(n, ar);
    for (const auto& qa : a.states)
        for (const auto& qb : b.states) out.states.insert(pair_state(qa, qb));
    for (const auto& qa : a.finals)
        for (const auto& qb : b.finals) out.finals.insert(pair_state(qa, qb));
    for (const auto& ta : a.transitions) {
        if (ta.is_epsilon()) {
            for (const auto& qb : b.states) {
                Transition t;
                t.from = {pair_state(ta.from[0], qb)};
                t.to = pair_state(ta.to, qb);
                out.transitions.insert(t);
            }
            continue;
        }
        for (const auto& tb : b.transitions) {
            if (tb.is_epsilon() || ta.head != tb.head || ta.mark != tb.mark ||
                ta.from.size() != tb.from.size())
                continue;
            Transition t;
            t.head = ta.head;
            t.mark = ta.mark;
            for (size_t i = 0; i < ta.from.size(); ++i)
                t.from.push_back(pair_state(ta.from[i], tb.from[i]));
            t.to = pair_state(ta.to, tb.to);
            out.transitions.insert(t);
        }
    }
    for (const auto& tb : b.transitions) {
        if (!tb.is_epsilon()) continue;
        for (const auto& qa : a.states) {
            Transition t;
            t.from = {pair_state(qa, tb.from[0])};
            t.to = pair_state(qa, tb.to);
            out.transitions.insert(t);
        }
    }
    return out;
}

// --- determinization (marked symbols opaque) -----------------------------

namespace {

struct Det {
    // deterministic complete automaton over symbol keys (head, mark)
    std::map<std::pair<std::string, int>, int> arity;  // per marked symbol
    std::vector<std::set<std::string>> state_sets;
    std::map<std::set<std::string>, int> ids;
    // transition function: (symbol, arg ids) -> id
    std::map<std::pair<std::pair<std::string, int>, std::vector<int>>, int> delta;
    std::set<int> finals;
};

Det determinize(const Fta& a, const std::map<std::pair<std::string, int>, int>& alphabet) {
    Det d;
    d.arity = alphabet;
    auto id_of = [&](const std::set<std::string>& s) {
        auto it = d.ids.find(s);
        if (it != d.ids.end()) return it->second;
        int id = static_cast<int>(d.state_sets.size());
        d.ids.emplace(s, id);
        d.state_sets.push_back(s);
        return id;
    };
    // group transitions by symbol
    std::map<std::pair<std::string, int>, std::vector<const Transition*>> by_sym;
    for (const auto& t : a.transitions)
        if (!t.is_epsilon()) by_sym[{t.head, t.mark}].push_back(&t);

    std::vector<int> worklist;
    auto add_state = [&](const std::set<std::string>& s) {
        size_t before = d.state_sets.size();
        int id = id_of(s);
        if (d.state_sets.size() != before) worklist.push_back(id);
        return id;
    };
    // seed with all nullary symbol results (and make the function total)
    std::vector<std::pair<std::string, int>> symbols;
    for (const auto& [sym, ar] : alphabet) symbols.push_back(sym);

    // iterate: for every symbol and every tuple of known states compute target
    bool changed = true;
    add_state({});  // sink for completeness
    for (const auto& sym : symbols) {
        if (alphabet.at(sym) != 0) continue;
        std::set<std::string> target;
        for (const Transition* t : by_sym[sym]) target.insert(t->to);
        // a state constant reaches itself (standard automata keep F_0 as states)
        std::string self = marked_state(sym.first, sym.second);
        if (a.states.count(self)) target.insert(self);
        target = a.eps_closure(target);
        int id = add_state(target);
        d.delta[{sym, {}}] = id;
    }
    while (changed) {
        changed = false;
        size_t n = d.state_sets.size();
        for (const auto& sym : symbols) {
            int ar = alphabet.at(sym);
            if (ar == 0) continue;
            std::vector<int> tuple(ar, 0);
            while (true) {
                if (!d.delta.count({sym, tuple})) {
                    std::set<std::string> target;
                    for (const Transition* t : by_sym[sym]) {
                        bool ok = true;
                        for (int i = 0; i < ar && ok; ++i)
                            ok = d.state_sets[tuple[i]].count(t->from[i]) > 0;
                        if (ok) target.insert(t->to);
                    }
                    target = a.eps_closure(target);
                    int id = id_of(target);
                    d.delta[{sym, tuple}] = id;
                    changed = true;
                }
                // next tuple over current n states
                int pos = ar - 1;
                while (pos >= 0) {
                    if (++tuple[pos] < static_cast<int>(n)) break;
                    tuple[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
        if (d.state_sets.size() != n) changed = true;
    }
    for (size_t i = 0; i < d.state_sets.size(); ++i)
        for (const auto& q : d.state_sets[i])
            if (a.finals.count(q)) {
                d.finals.insert(static_cast<int>(i));
                break;
            }
    return d;
}

}  // namespace

bool language_equal(const Fta& a, const Fta& b) {
    // shared alphabet: union of both signatures' marked symbols seen anywhere
    std::map<std::pair<std::string, int>, int> alphabet;
    auto collect = [&](const Fta& x) {
        for (const auto& [n, ar] : x.sig.symbols()) alphabet[{n, 0}] = ar;
        for (const auto& t : x.transitions)
            if (!t.is_epsilon()) alphabet[{t.head, t.mark}] = static_cast<int>(t.from.size());
    };
    collect(a);
    collect(b);
    Det da = determinize(a, alphabet);
    Det db = determinize(b, alphabet);
    // synchronized exploration of the pair graph
    std::set<std::pair<int, int>> seen;
    std::queue<std::pair<int, int>> todo;
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> dummy;
    // all reachable pairs via tuples of reachable pairs
    std::vector<std::pair<int, int>> pairs;
    auto push = [&](int x, int y) {
        if (seen.insert({x, y}).second) pairs.push_back({x, y});
    };
    // fixpoint over tuples of already-discovered pairs
    bool changed = true;
    std::vector<std::pair<std::string, int>> symbols;
    for (const auto& [sym, ar] : alphabet) symbols.push_back(sym);
    for (const auto& sym : symbols)
        if (alphabet.at(sym) == 0) push(da.delta.at({sym, {}}), db.delta.at({sym, {}}));
    while (changed) {
        changed = false;
        size_t n = pairs.size();
        for (const auto& sym : symbols) {
            int ar = alphabet.at(sym);
            if (ar == 0) continue;
            std::vector<size_t> idx(ar, 0);
            if (n == 0) continue;
            while (true) {
                std::vector<int> ta(ar), tb(ar);
                for (int i = 0; i < ar; ++i) {
                    ta[i] = pairs[idx[i]].first;
                    tb[i] = pairs[idx[i]].second;
                }
                push(da.delta.at({sym, ta}), db.delta.at({sym, tb}));
                int pos = ar - 1;
                while (pos >= 0) {
                    if (++idx[pos] < n) break;
                    idx[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
        if (pairs.size() != n) changed = true;
    }
    for (const auto& [x, y] : pairs)
        if (da.finals.count(x) != db.finals.count(y)) return false;
    return true;
}

// --- marked extension -----------------------------------------------------

std::string marked_state(const std::string& q, int j) {
    return j == 0 ? q : q + "^" + std::to_string(j);
}

Fta extend_marked(const Fta& a, int k) {
    Fta out;
    out.sig = a.sig;
    for (const auto& q : a.states)
        for (int j = 0; j <= k; ++j) out.states.insert(marked_state(q, j));
    for (const auto& q : a.finals)
        for (int j = 0; j <= k; ++j) out.finals.insert(marked_state(q, j));
    for (const auto& t : a.transitions) {
        if (t.is_epsilon()) {
            for (int j = 0; j <= k; ++j) {
                Transition e;
                e.from = {marked_state(t.from[0], j)};
                e.to = marked_state(t.to, j);
                out.transitions.insert(e);
            }
            continue;
        }
        int m = static_cast<int>(t.from.size());
        std::vector<int> marks(m + 1, 0);  // marks[0] = symbol/result mark
        while (true) {
            Transition e;
            e.head = t.head;
            e.mark = marks[0];
            for (int i = 0; i < m; ++i) e.from.push_back(marked_state(t.from[i], marks[i + 1]));
            e.to = marked_state(t.to, marks[0]);
            out.transitions.insert(e);
            int pos = m;
            while (pos >= 0) {
                if (++marks[pos] <= k) break;
                marks[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return out;
}

// --- standard automata -----------------------------------------------------

bool is_standard(const Fta& a) {
    for (const auto& n : a.sig.nullary())
        if (!a.states.count(n)) return false;
    for (const auto& t : a.transitions)
        if (t.is_epsilon() || t.from.empty()) return false;
    // unique target per (f, tuple) over all states
    for (const auto& [name, ar] : a.sig.symbols()) {
        if (ar == 0) continue;
        std::vector<std::string> qs(a.states.begin(), a.states.end());
        std::vector<size_t> idx(ar, 0);
        while (true) {
            int count = 0;
            for (const auto& t : a.transitions) {
                if (t.head != name || t.mark != 0) continue;
                bool ok = true;
                for (int i = 0; i < ar && ok; ++i) ok = t.from[i] == qs[idx[i]];
                if (ok) ++count;
            }
            if (count != 1) return false;
            int pos = ar - 1;
            while (pos >= 0) {
                if (++idx[pos] < qs.size()) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return true;
}

namespace {
std::string subset_state(const std::set<std::string>& p) {
    std::string out = "{";
    bool first = true;
    for (const auto& q : p) {
        if (!first) out += ',';
        out += q;
        first = false;
    }
    return out + "}";
}
}  // namespace

Fta standardize(const Fta& a) {
    a.validate();
    Fta out;
    out.sig = a.sig;
    auto consts = a.sig.nullary();
    for (const auto& c : consts) out.states.insert(c);

    // entry -> the set of A-states it denotes for descendant computation;
    // a constant denotes itself (it reduces further inside reachable_states).
    std::map<std::string, std::set<std::string>> subset_of;

    auto instances_reach = [&](const std::string& name, const std::vector<std::string>& tuple) {
        // Q ∩ descendants of f(P1,...,Pm): union over instance terms.
        std::set<std::string> target;
        int m = static_cast<int>(tuple.size());
        std::vector<std::vector<Term>> choices(m);
        for (int i = 0; i < m; ++i) {
            auto it = subset_of.find(tuple[i]);
            if (it != subset_of.end()) {
                for (const auto& q : it->second) choices[i].push_back(Term::fun(q));
                if (it->second.empty()) return target;  // empty set: no instances
            } else {
                choices[i].push_back(Term::fun(tuple[i]));
            }
        }
        std::vector<int> idx(m, 0);
        while (true) {
            std::vector<Term> args;
            for (int i = 0; i < m; ++i) args.push_back(choices[i][idx[i]]);
            for (const auto& q : a.reachable_states(Term::fun(name, args)))
                if (a.states.count(q)) target.insert(q);
            int pos = m - 1;
            while (pos >= 0) {
                if (++idx[pos] < static_cast<int>(choices[pos].size())) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        return target;
    };

    // accessible powerset construction: the transition map stays total over
    // the discovered state set because targets are discovered with it
    std::set<std::vector<std::string>> done;  // (name :: tuple) handled
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::string> entries(out.states.begin(), out.states.end());
        for (const auto& [name, ar] : a.sig.symbols()) {
            if (ar == 0) continue;
            std::vector<size_t> idx(ar, 0);
            if (entries.empty()) continue;
            while (true) {
                std::vector<std::string> key;
                key.push_back(name);
                for (int i = 0; i < ar; ++i) key.push_back(entries[idx[i]]);
                if (!done.count(key)) {
                    done.insert(key);
                    std::vector<std::string> tuple(key.begin() + 1, key.end());
                    auto target = instances_reach(name, tuple);
                    std::string pname = subset_state(target);
                    if (!out.states.count(pname)) {
                        out.states.insert(pname);
                        subset_of[pname] = target;
                        changed = true;
                    }
                    Transition t;
                    t.head = name;
                    t.from = tuple;
                    t.to = pname;
                    out.transitions.insert(t);
                }
                int pos = ar - 1;
                while (pos >= 0) {
                    if (++idx[pos] < entries.size()) break;
                    idx[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
    }
    for (const auto& [pname, members] : subset_of)
        for (const auto& q : members)
            if (a.finals.count(q)) {
                out.finals.insert(pname);
                break;
            }
    for (const auto& c : consts)
        for (const auto& q : a.reachable_states(Term::fun(c)))
            if (a.finals.count(q)) {
                out.finals.insert(c);
                break;
            }
    return out;
}

Term red(const Fta& standard, const Term& t, const TreeDomain& p) {
    if (!is_standard(standard)) throw std::invalid_argument("red: automaton is not standard");
    if (!is_subdomain(p, t.positions()))
        throw std::invalid_argument("red: P is not a subdomain of Pos(t)");
    // deterministic evaluation of a subtree to its unique state
    std::function<std::string(const Term&)> eval = [&](const Term& u) -> std::string {
        if (u.arity() == 0) {
            // constants and state constants are states
            if (!standard.states.count(u.head()))
                throw std::invalid_argument("red: nullary '" + u.head() + "' is not a state");
            return u.head();
        }
        std::vector<std::string> argq;
        for (const auto& a : u.args()) argq.push_back(eval(a));
        for (const auto& tr : standard.transitions)
            if (!tr.is_epsilon() && tr.head == u.head() && tr.from == argq) return tr.to;
        throw std::invalid_argument("red: no transition for " + u.head());
    };
    std::function<Term(const Term&, const Position&)> build = [&](const Term& u,
                                                                  const Position& at) -> Term {
        Position child = at;
        child.push_back(1);
        bool keep_children = u.arity() > 0 && p.count(child);
        if (!keep_children && u.arity() > 0) {
            // frontier: collapse to the unique state, carry the root mark
            return Term::fun(eval(erase_marks(u)), {}, u.mark());
        }
        if (u.arity() == 0) return u;
        std::vector<Term> args;
        for (int i = 0; i < u.arity(); ++i) {
            Position c = at;
            c.push_back(i + 1);
            args.push_back(build(u.args()[i], c));
        }
        return Term::fun(u.head(), std::move(args), u.mark());
    };
    if (p.empty()) throw std::invalid_argument("red: P must contain the root");
    return build(t, {});
}

FtaRunner::FtaRunner(const Fta& a) {
    int next = 0;
    for (const auto& q : a.states) ids_[q] = next++;
    eps_reach_.assign(next, {});
    std::vector<std::vector<int>> adj(next);
    for (const auto& t : a.transitions)
        if (t.is_epsilon()) adj[ids_.at(t.from[0])].push_back(ids_.at(t.to));
    for (int s = 0; s < next; ++s) {
        std::vector<bool> seen(next, false);
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            eps_reach_[s].push_back(u);
            for (int v : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
        }
        std::sort(eps_reach_[s].begin(), eps_reach_[s].end());
    }
    for (const auto& t : a.transitions) {
        if (t.is_epsilon()) continue;
        IdxTrans it;
        for (const auto& q : t.from) it.from.push_back(ids_.at(q));
        it.to = ids_.at(t.to);
        by_head_[{t.head, t.mark}].push_back(it);
    }
    for (const auto& q : a.finals) finals_.insert(ids_.at(q));
}

int FtaRunner::id(const std::string& q) const {
    auto it = ids_.find(q);
    return it == ids_.end() ? -1 : it->second;
}

std::set<int> FtaRunner::compose(const std::string& head, int mark,
                                 const std::vector<const std::set<int>*>& child_sets) const {
    std::set<int> out;
    if (child_sets.empty()) {
        int self = id(marked_state(head, mark));
        if (self >= 0)
            for (int v : eps_reach_[self]) out.insert(v);
    }
    auto it = by_head_.find({head, mark});
    if (it != by_head_.end()) {
        for (const auto& tr : it->second) {
            if (tr.from.size() != child_sets.size()) continue;
            bool ok = true;
            for (size_t i = 0; i < tr.from.size() && ok; ++i)
                ok = child_sets[i]->count(tr.from[i]) > 0;
            if (ok)
                for (int v : eps_reach_[tr.to]) out.insert(v);
        }
    }
    return out;
}

std::set<int> FtaRunner::states_of(const Term& t) const {
    std::vector<std::set<int>> kids;
    kids.reserve(t.args().size());
    for (const auto& a : t.args()) kids.push_back(states_of(a));
    std::vector<const std::set<int>*> ptrs;
    for (const auto& k : kids) ptrs.push_back(&k);
    return compose(t.head(), t.mark(), ptrs);
}

bool FtaRunner::accepting(const std::set<int>& qs) const {
    for (int q : qs)
        if (finals_.count(q)) return true;
    return false;
}

bool FtaRunner::member(const Term& t) const { return accepting(states_of(t)); }

Fta mark_witness_automaton(const Signature& h, int K) {
    Fta out;
    out.sig = h;
    out.states = {"seen", "unseen"};
    out.finals = {"seen"};
    for (const auto& [name, ar] : h.symbols()) {
        std::vector<int> marks(1, 0);
        std::vector<std::string> flag(ar);
        // enumerate symbol mark j and argument flag patterns
        for (int j = 0; j <= K; ++j) {
            std::vector<int> pattern(ar, 0);  // 0 = unseen, 1 = seen
            while (true) {
                Transition t;
                t.head = name;
                t.mark = j;
                bool any = j == K;
                for (int i = 0; i < ar; ++i) {
                    t.from.push_back(pattern[i] ? "seen" : "unseen");
                    if (pattern[i]) any = true;
                }
                t.to = any ? "seen" : "unseen";
                out.transitions.insert(t);
                int pos = ar - 1;
                while (pos >= 0) {
                    if (++pattern[pos] <= 1) break;
                    pattern[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
    }
    return out;
}

}  // namespace bure
