#include "bure/ground.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "bure/rewriting.hpp"

namespace bure {

void GroundTrs::validate() const {
    for (const auto& r : rules) {
        if (!r.lhs.ground() || !r.rhs.ground())
            throw std::invalid_argument("ground rule has variables: " + r.lhs.to_string() +
                                        " -> " + r.rhs.to_string());
    }
}

Trs GroundTrs::as_trs() const {
    Trs out;
    out.sig = host;
    for (const auto& r : rules) out.rules.push_back({r.lhs, r.rhs});
    return out;
}

GroundTrs GroundTrs::inverted() const {
    GroundTrs out;
    out.host = host;
    for (const auto& r : rules) out.rules.push_back({r.rhs, r.lhs});
    return out;
}

std::string GroundTrs::to_string() const {
    std::ostringstream os;
    os << "sig";
    for (const auto& [n, a] : host.symbols()) os << ' ' << n << '/' << a;
    os << '\n';
    for (const auto& r : rules)
        os << "rule " << r.lhs.to_string() << " -> " << r.rhs.to_string() << '\n';
    return os.str();
}

GroundTrs parse_ground_trs(const std::string& text) {
    Trs t = parse_trs(text);
    GroundTrs out;
    out.host = t.sig;
    for (const auto& r : t.rules) out.rules.push_back({r.lhs, r.rhs});
    out.validate();
    return out;
}

// --- saturation engine ------------------------------------------------------

namespace {

struct Saturator {
    // interned states; term states carry their structural node
    std::vector<std::string> names;
    std::map<std::string, int> ids;
    struct Node {
        std::string head;
        int mark = 0;
        std::vector<int> children;
        bool structural = false;  // term state with a defining transition
    };
    std::vector<Node> nodes;

    // transition indexes (structural + target transitions together)
    std::map<std::pair<std::string, int>, std::vector<int>> nullary;  // (head,mark) -> states
    std::map<std::tuple<std::string, int, int>, std::vector<int>> unary;
    std::map<std::tuple<std::string, int, int, int>, std::vector<int>> binary;
    struct WideTr {
        std::vector<int> from;
        int to;
    };
    std::map<std::pair<std::string, int>, std::vector<WideTr>> wide;  // arity >= 3

    std::vector<std::vector<int>> eps_out;
    std::set<std::pair<int, int>> eps_set;

    std::map<std::string, int> term_state;  // canonical term -> id
    std::vector<std::pair<int, int>> rules;  // (lhs id, rhs id) ground instances

    // per-round closed reach sets of registered term states
    std::vector<std::set<int>> reach_of;

    int intern(const std::string& n) {
        auto it = ids.find(n);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(names.size());
        names.push_back(n);
        ids.emplace(n, id);
        nodes.push_back({});
        eps_out.push_back({});
        return id;
    }

    void add_transition(const std::string& head, int mark, const std::vector<int>& from, int to) {
        switch (from.size()) {
            case 0: nullary[{head, mark}].push_back(to); break;
            case 1: unary[{head, mark, from[0]}].push_back(to); break;
            case 2: binary[{head, mark, from[0], from[1]}].push_back(to); break;
            default: wide[{head, mark}].push_back({from, to});
        }
    }

    int register_term(const Term& t) {
        std::string key = t.to_string();
        auto it = term_state.find(key);
        if (it != term_state.end()) return it->second;
        std::vector<int> kids;
        kids.reserve(t.args().size());
        for (const auto& a : t.args()) kids.push_back(register_term(a));
        int id = intern("<" + key + ">");
        term_state.emplace(key, id);
        nodes[id] = {t.head(), t.mark(), kids, true};
        add_transition(t.head(), t.mark(), kids, id);
        return id;
    }

    bool add_eps(int a, int b) {
        if (a == b) return false;
        if (!eps_set.insert({a, b}).second) return false;
        eps_out[a].push_back(b);
        return true;
    }

    void close_eps(std::set<int>& s) const {
        std::vector<int> work(s.begin(), s.end());
        while (!work.empty()) {
            int u = work.back();
            work.pop_back();
            for (int v : eps_out[u])
                if (s.insert(v).second) work.push_back(v);
        }
    }

    // states reachable from already-computed child sets through one symbol
    void step_symbol(const std::string& head, int mark,
                     const std::vector<const std::set<int>*>& kids, std::set<int>& out) const {
        if (kids.empty()) {
            auto it = nullary.find({head, mark});
            if (it != nullary.end()) out.insert(it->second.begin(), it->second.end());
        } else if (kids.size() == 1) {
            for (int a : *kids[0]) {
                auto it = unary.find({head, mark, a});
                if (it != unary.end()) out.insert(it->second.begin(), it->second.end());
            }
        } else if (kids.size() == 2) {
            for (int a : *kids[0])
                for (int b : *kids[1]) {
                    auto it = binary.find({head, mark, a, b});
                    if (it != binary.end()) out.insert(it->second.begin(), it->second.end());
                }
        } else {
            auto it = wide.find({head, mark});
            if (it != wide.end())
                for (const auto& tr : it->second) {
                    bool ok = true;
                    for (size_t i = 0; i < tr.from.size() && ok; ++i)
                        ok = kids[i]->count(tr.from[i]) > 0;
                    if (ok) out.insert(tr.to);
                }
        }
    }

    // recompute closed reach sets for all registered term states (ids are in
    // registration order, children first)
    void recompute_reach() {
        reach_of.assign(nodes.size(), {});
        for (size_t id = 0; id < nodes.size(); ++id) {
            const Node& n = nodes[id];
            if (!n.structural) continue;
            std::vector<const std::set<int>*> kids;
            kids.reserve(n.children.size());
            for (int c : n.children) kids.push_back(&reach_of[c]);
            std::set<int> out;
            step_symbol(n.head, n.mark, kids, out);
            out.insert(static_cast<int>(id));
            close_eps(out);
            reach_of[id] = std::move(out);
        }
    }

    // generic evaluation of a possibly unregistered ground term
    std::set<int> reach_term(const Term& t, std::map<std::string, std::set<int>>& memo) const {
        std::string key = t.to_string();
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        auto ts = term_state.find(key);
        if (ts != term_state.end() && !reach_of.empty()) {
            memo.emplace(key, reach_of[ts->second]);
            return reach_of[ts->second];
        }
        std::vector<std::set<int>> kid_sets;
        kid_sets.reserve(t.args().size());
        for (const auto& a : t.args()) kid_sets.push_back(reach_term(a, memo));
        std::vector<const std::set<int>*> kids;
        for (const auto& k : kid_sets) kids.push_back(&k);
        std::set<int> out;
        step_symbol(t.head(), t.mark(), kids, out);
        close_eps(out);
        memo.emplace(key, out);
        return out;
    }
};

// solution products for schematic matching: per-variable sets of image indices
using Product = std::map<std::string, std::set<int>>;
using Dnf = std::vector<Product>;

void merge_into(std::map<int, Dnf>& out, int state, const Dnf& dnf) {
    Dnf& d = out[state];
    d.insert(d.end(), dnf.begin(), dnf.end());
}

}  // namespace

Fta pre_star(const GroundTrs& g, const std::vector<SchematicRule>& schematic, const Fta& target) {
    g.validate();
    for (const auto& s : schematic) {
        if (!s.lhs.linear() || !s.rhs.linear())
            throw std::invalid_argument("schematic rule must be linear on both sides");
        for (const auto& x : s.rhs.variables())
            if (!s.images.count(x))
                throw std::invalid_argument("schematic rule lacks images for '" + x + "'");
    }
    Saturator sat;

    // import target automaton
    for (const auto& q : target.states) sat.intern("@" + q);
    for (const auto& tr : target.transitions) {
        if (tr.is_epsilon()) {
            sat.add_eps(sat.ids.at("@" + tr.from[0]), sat.ids.at("@" + tr.to));
        } else {
            std::vector<int> from;
            for (const auto& q : tr.from) from.push_back(sat.ids.at("@" + q));
            sat.add_transition(tr.head, tr.mark, from, sat.ids.at("@" + tr.to));
        }
    }

    // register ground rules
    for (const auto& r : g.rules)
        sat.rules.emplace_back(sat.register_term(r.lhs), sat.register_term(r.rhs));

    // materialized schematic instances, deduplicated
    std::set<std::pair<size_t, std::string>> fired;

    const size_t kExpansionCap = 4u << 20;
    size_t expansions = 0;

    bool changed = true;
    while (changed) {
        changed = false;
        sat.recompute_reach();

        // ground saturation: eps lhs -> every state reached by rhs
        for (const auto& [lid, rid] : sat.rules)
            for (int a : sat.reach_of[rid])
                if (sat.add_eps(lid, a)) changed = true;

        // schematic firing
        std::map<std::string, std::set<int>> memo;
        for (size_t si = 0; si < schematic.size(); ++si) {
            const SchematicRule& sr = schematic[si];
            // reach of every rhs image, grouped per variable by reached state
            std::map<std::string, std::map<int, std::set<int>>> var_candidates;
            for (const auto& [x, imgs] : sr.images) {
                auto& m = var_candidates[x];
                for (size_t i = 0; i < imgs.size(); ++i)
                    for (int a : sat.reach_term(imgs[i].second, memo))
                        m[a].insert(static_cast<int>(i));
            }
            // bottom-up pattern evaluation
            std::function<std::map<int, Dnf>(const Term&)> eval = [&](const Term& t) {
                std::map<int, Dnf> out;
                if (t.is_var()) {
                    for (const auto& [a, set] : var_candidates[t.head()]) {
                        Product p;
                        p[t.head()] = set;
                        merge_into(out, a, {p});
                    }
                    return out;
                }
                if (t.ground()) {
                    for (int a : sat.reach_term(t, memo)) merge_into(out, a, {Product{}});
                    return out;
                }
                std::vector<std::map<int, Dnf>> kids;
                for (const auto& arg : t.args()) kids.push_back(eval(arg));
                // combine through every transition whose arguments are covered
                auto emit = [&](int to, const Dnf& dnf) {
                    std::set<int> closed{to};
                    sat.close_eps(closed);
                    for (int a : closed) merge_into(out, a, dnf);
                };
                auto cross = [&](const Dnf& a, const Dnf& b) {
                    Dnf out2;
                    for (const auto& pa : a)
                        for (const auto& pb : b) {
                            Product p = pa;
                            for (const auto& [k, v] : pb) p[k] = v;  // variables disjoint
                            out2.push_back(std::move(p));
                        }
                    return out2;
                };
                if (t.arity() == 1) {
                    for (const auto& [a, dnf] : kids[0]) {
                        auto it = sat.unary.find({t.head(), t.mark(), a});
                        if (it == sat.unary.end()) continue;
                        for (int to : it->second) emit(to, dnf);
                    }
                } else if (t.arity() == 2) {
                    for (const auto& [a, da] : kids[0])
                        for (const auto& [b, db] : kids[1]) {
                            auto it = sat.binary.find({t.head(), t.mark(), a, b});
                            if (it == sat.binary.end()) continue;
                            Dnf dnf = cross(da, db);
                            for (int to : it->second) emit(to, dnf);
                        }
                } else {
                    auto it = sat.wide.find({t.head(), t.mark()});
                    if (it != sat.wide.end()) {
                        for (const auto& tr : it->second) {
                            Dnf acc{Product{}};
                            bool ok = true;
                            for (size_t i = 0; i < tr.from.size() && ok; ++i) {
                                auto k = kids[i].find(tr.from[i]);
                                if (k == kids[i].end()) {
                                    ok = false;
                                    break;
                                }
                                acc = cross(acc, k->second);
                            }
                            if (ok) emit(tr.to, acc);
                        }
                    }
                }
                return out;
            };
            auto sols = eval(sr.rhs);
            // gather all variables we must instantiate (lhs-only variables
            // range over their whole image list)
            std::vector<std::string> vars;
            for (const auto& [x, imgs] : sr.images) vars.push_back(x);
            std::set<std::vector<int>> thetas;
            for (const auto& [a, dnf] : sols) {
                for (const auto& prod : dnf) {
                    // cartesian expansion
                    std::vector<std::vector<int>> choice;
                    bool empty = false;
                    for (const auto& x : vars) {
                        auto it = prod.find(x);
                        std::vector<int> opts;
                        if (it != prod.end()) {
                            opts.assign(it->second.begin(), it->second.end());
                        } else {
                            for (size_t i = 0; i < sr.images.at(x).size(); ++i)
                                opts.push_back(static_cast<int>(i));
                        }
                        if (opts.empty()) empty = true;
                        choice.push_back(std::move(opts));
                    }
                    if (empty) continue;
                    std::vector<size_t> idx(vars.size(), 0);
                    while (true) {
                        if (++expansions > kExpansionCap)
                            throw std::runtime_error("pre_star: schematic expansion cap exceeded");
                        std::vector<int> theta;
                        for (size_t i = 0; i < vars.size(); ++i) theta.push_back(choice[i][idx[i]]);
                        thetas.insert(theta);
                        int pos = static_cast<int>(vars.size()) - 1;
                        while (pos >= 0) {
                            if (++idx[pos] < choice[pos].size()) break;
                            idx[pos] = 0;
                            --pos;
                        }
                        if (pos < 0) break;
                    }
                }
            }
            for (const auto& theta : thetas) {
                std::string key;
                for (int i : theta) key += std::to_string(i) + ",";
                if (!fired.insert({si, key}).second) continue;
                Substitution ls, rs;
                for (size_t i = 0; i < vars.size(); ++i) {
                    const auto& pair = sr.images.at(vars[i])[theta[i]];
                    ls.emplace(vars[i], pair.first);
                    rs.emplace(vars[i], pair.second);
                }
                Term l = substitute(sr.lhs, ls);
                Term r = substitute(sr.rhs, rs);
                sat.rules.emplace_back(sat.register_term(l), sat.register_term(r));
                changed = true;
            }
        }
    }

    // assemble the result automaton
    Fta out;
    out.sig = g.host;
    for (const auto& [n, a] : target.sig.symbols()) out.sig.add(n, a);
    for (const auto& n : sat.names) out.states.insert(n);
    for (const auto& q : target.finals) out.finals.insert("@" + q);
    auto emit_tr = [&](const std::string& head, int mark, const std::vector<int>& from, int to) {
        Transition t;
        t.head = head;
        t.mark = mark;
        for (int f : from) t.from.push_back(sat.names[f]);
        t.to = sat.names[to];
        out.transitions.insert(t);
    };
    for (const auto& [key, targets] : sat.nullary)
        for (int to : targets) emit_tr(key.first, key.second, {}, to);
    for (const auto& [key, targets] : sat.unary)
        for (int to : targets)
            emit_tr(std::get<0>(key), std::get<1>(key), {std::get<2>(key)}, to);
    for (const auto& [key, targets] : sat.binary)
        for (int to : targets)
            emit_tr(std::get<0>(key), std::get<1>(key), {std::get<2>(key), std::get<3>(key)}, to);
    for (const auto& [key, list] : sat.wide)
        for (const auto& tr : list) emit_tr(key.first, key.second, tr.from, tr.to);
    for (const auto& [a, b] : sat.eps_set) {
        Transition t;
        t.from = {sat.names[a]};
        t.to = sat.names[b];
        out.transitions.insert(t);
    }
    return out;
}

Fta pre_star(const GroundTrs& g, const Fta& target) { return pre_star(g, {}, target); }

Fta post_star(const GroundTrs& g, const Fta& source) {
    return pre_star(g.inverted(), source);
}

}  // namespace bure
