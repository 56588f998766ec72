#include "bure/preservation.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bure {

Term canonical_rename(const Term& t) {
    std::map<std::string, std::string> ren;
    std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
        if (u.is_var()) {
            auto it = ren.find(u.head());
            if (it == ren.end())
                it = ren.emplace(u.head(), "v" + std::to_string(ren.size() + 1)).first;
            return Term::var(it->second);
        }
        std::vector<Term> args;
        for (const auto& a : u.args()) args.push_back(go(a));
        return Term::fun(u.head(), std::move(args), u.mark());
    };
    return go(t);
}

std::set<Term> slhs(const Trs& r) {
    std::set<Term> out;
    for (const auto& rule : r.rules)
        for (const auto& p : rule.lhs.positions())
            out.insert(canonical_rename(rule.lhs.subterm(p)));
    return out;
}

VarLhsElimination eliminate_variable_lhs(const Trs& r) {
    for (const auto& rule : r.rules)
        if (!rule.left_linear())
            throw std::invalid_argument("eliminate_variable_lhs: system must be left-linear");
    VarLhsElimination out;
    bool any = false;
    for (const auto& rule : r.rules)
        if (rule.lhs.is_var()) any = true;
    if (!any) {
        out.system = r;
        out.used = false;
        return out;
    }
    Trs r1;
    r1.sig = r.sig;
    r1.sig.add(out.wrapper, 1);
    for (const auto& rule : r.rules) {
        if (!rule.lhs.is_var()) {
            r1.rules.push_back(rule);
            continue;
        }
        // depth-1 contexts over F ∪ {f1}
        for (const auto& [name, ar] : r1.sig.symbols()) {
            if (ar == 0) continue;
            for (int hole = 0; hole < ar; ++hole) {
                std::vector<Term> largs, rargs;
                for (int i = 0; i < ar; ++i) {
                    if (i == hole) {
                        largs.push_back(rule.lhs);
                        rargs.push_back(rule.rhs);
                    } else {
                        Term y = Term::var("y" + std::to_string(i + 1));
                        largs.push_back(y);
                        rargs.push_back(y);
                    }
                }
                r1.rules.push_back({Term::fun(name, largs), Term::fun(name, rargs)});
            }
        }
    }
    out.system = std::move(r1);
    out.used = true;
    return out;
}

// --- S1 construction ---------------------------------------------------------

namespace {

// all m-increasing mark assignments on the non-variable nodes of a skeleton,
// root mark in [lo, K]; variables stay unmarked
void enumerate_markings(const Term& t, int lo, int K, std::vector<Term>& out) {
    if (t.is_var()) {
        out.push_back(t);
        return;
    }
    for (int m = lo; m <= K; ++m) {
        std::vector<std::vector<Term>> per_arg;
        bool ok = true;
        for (const auto& a : t.args()) {
            std::vector<Term> sub;
            enumerate_markings(a, a.is_var() ? 0 : m, K, sub);
            if (sub.empty()) ok = false;
            per_arg.push_back(std::move(sub));
        }
        if (!ok) continue;
        std::vector<size_t> idx(t.args().size(), 0);
        while (true) {
            std::vector<Term> args;
            for (size_t i = 0; i < idx.size(); ++i) args.push_back(per_arg[i][idx[i]]);
            out.push_back(Term::fun(t.head(), std::move(args), m));
            int pos = static_cast<int>(idx.size()) - 1;
            while (pos >= 0) {
                if (++idx[pos] < per_arg[pos].size()) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
}

// cascade image skeletons: S_1 = states, S_{j+1} = S_j ∪ SLHS[vars -> S_j]
std::vector<Term> cascade_skeletons(const std::set<Term>& sl, const std::set<std::string>& states,
                                    int cascade) {
    std::set<Term> layer;
    for (const auto& q : states) layer.insert(Term::fun(q));
    for (int j = 2; j <= cascade; ++j) {
        std::set<Term> next = layer;
        for (const auto& t : sl) {
            if (t.is_var()) continue;  // identity layer: already in `next`
            std::vector<std::string> vars;
            for (const auto& x : t.variables()) vars.push_back(x);
            if (vars.empty()) {
                next.insert(t);
                continue;
            }
            std::vector<Term> pool(layer.begin(), layer.end());
            std::vector<size_t> idx(vars.size(), 0);
            while (true) {
                Substitution s;
                for (size_t i = 0; i < vars.size(); ++i) s.emplace(vars[i], pool[idx[i]]);
                next.insert(substitute(t, s));
                int pos = static_cast<int>(vars.size()) - 1;
                while (pos >= 0) {
                    if (++idx[pos] < pool.size()) break;
                    idx[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
        layer = std::move(next);
    }
    return {layer.begin(), layer.end()};
}

Signature host_signature(const Trs& r, const Fta& a) {
    Signature host = r.sig;
    for (const auto& [n, ar] : a.sig.symbols()) host.add(n, ar);
    for (const auto& q : a.states) host.add(q, 0);
    return host;
}

CompiledSystem build_S1_impl(const Trs& r, const Fta& a, int K, int cascade, bool marked) {
    if (cascade < 1) throw std::invalid_argument("build_S1: cascade must be >= 1");
    for (const auto& rule : r.rules) {
        if (!rule.linear()) throw std::invalid_argument("build_S1: system must be linear");
        if (rule.lhs.is_var()) throw std::invalid_argument("build_S1: variable lhs present");
    }
    CompiledSystem out;
    out.K = marked ? K : 0;
    out.cascade = cascade;
    out.d = r.max_lhs_depth();
    out.host = host_signature(r, a);
    out.base_states = a.states;
    out.base_finals = a.finals;
    out.marked_automaton = marked ? extend_marked(a, K) : a;

    // automaton transitions as ground rules over state constants; for the
    // marked build every mark pattern in [0, K] is generated (the Γ^{<=k}
    // display), epsilon transitions preserve the mark
    int mk = marked ? K : 0;
    for (const auto& tr : a.transitions) {
        if (tr.is_epsilon()) {
            for (int j = 0; j <= mk; ++j)
                out.automaton_rules.rules.push_back(
                    {Term::fun(tr.from[0], {}, j), Term::fun(tr.to, {}, j)});
            continue;
        }
        int m = static_cast<int>(tr.from.size());
        std::vector<int> marks(m + 1, 0);  // marks[0]: symbol and result mark
        while (true) {
            std::vector<Term> args;
            for (int i = 0; i < m; ++i) args.push_back(Term::fun(tr.from[i], {}, marks[i + 1]));
            out.automaton_rules.rules.push_back(
                {Term::fun(tr.head, std::move(args), marks[0]), Term::fun(tr.to, {}, marks[0])});
            int pos = m;
            while (pos >= 0) {
                if (++marks[pos] <= mk) break;
                marks[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    out.automaton_rules.host = out.host;

    auto sl = slhs(r);
    auto skeletons = cascade_skeletons(sl, a.states, cascade);

    for (const auto& rule : r.rules) {
        std::vector<Term> lhs_variants;
        if (marked) {
            enumerate_markings(rule.lhs, 0, K, lhs_variants);
            // keep root mark 0 only
            lhs_variants.erase(std::remove_if(lhs_variants.begin(), lhs_variants.end(),
                                              [](const Term& t) { return t.mark() != 0; }),
                               lhs_variants.end());
        } else {
            lhs_variants.push_back(rule.lhs);
        }
        auto rhs_vars = rule.rhs.variables();
        for (const auto& lbar : lhs_variants) {
            SchematicRule sr;
            sr.lhs = lbar;
            sr.rhs = rule.rhs;
            bool feasible = true;
            for (const auto& x : rule.lhs.variables()) {
                // father mark of x in the marked lhs
                Position px;
                for (const auto& p : lbar.var_positions())
                    if (lbar.subterm(p).head() == x) px = p;
                int fm = 0;
                int M = 1;
                if (marked) {
                    fm = max_mark_above(px, lbar);  // px nonempty: lhs not a variable
                    M = fm + 1;
                    if (rhs_vars.count(x) && M > K) {
                        feasible = false;
                        break;
                    }
                }
                std::vector<std::pair<Term, Term>> images;
                for (const auto& sk : skeletons) {
                    if (marked) {
                        std::vector<Term> variants;
                        enumerate_markings(sk, fm, K, variants);
                        for (const auto& v : variants) images.emplace_back(v, odot(v, M));
                    } else {
                        images.emplace_back(sk, sk);
                    }
                }
                sr.images.emplace(x, std::move(images));
            }
            if (feasible) out.schematic.push_back(std::move(sr));
        }
    }
    return out;
}

}  // namespace

CompiledSystem build_S1(const Trs& r, const Fta& a, int K, int cascade) {
    return build_S1_impl(r, a, K, cascade, true);
}

CompiledSystem build_S1_unmarked(const Trs& r, const Fta& a, int cascade) {
    return build_S1_impl(r, a, 0, cascade, false);
}

GroundTrs CompiledSystem::materialize(size_t cap) const {
    GroundTrs out;
    out.host = host;
    size_t count = 0;
    for (const auto& sr : schematic) {
        std::vector<std::string> vars;
        for (const auto& [x, imgs] : sr.images) vars.push_back(x);
        std::vector<size_t> idx(vars.size(), 0);
        while (true) {
            Substitution ls, rs;
            bool empty = false;
            for (size_t i = 0; i < vars.size(); ++i) {
                const auto& imgs = sr.images.at(vars[i]);
                if (imgs.empty()) {
                    empty = true;
                    break;
                }
                ls.emplace(vars[i], imgs[idx[i]].first);
                rs.emplace(vars[i], imgs[idx[i]].second);
            }
            if (empty) break;
            if (++count > cap) throw std::runtime_error("materialize: instance cap exceeded");
            out.rules.push_back({substitute(sr.lhs, ls), substitute(sr.rhs, rs)});
            if (vars.empty()) break;
            int pos = static_cast<int>(vars.size()) - 1;
            while (pos >= 0) {
                if (++idx[pos] < sr.images.at(vars[pos]).size()) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    std::sort(out.rules.begin(), out.rules.end());
    out.rules.erase(std::unique(out.rules.begin(), out.rules.end()), out.rules.end());
    return out;
}

GroundTrs erase_marks_system(const CompiledSystem& c) {
    GroundTrs m = c.materialize();
    GroundTrs out;
    out.host = c.host;
    for (const auto& r : m.rules)
        out.rules.push_back({erase_marks(r.lhs), erase_marks(r.rhs)});
    std::sort(out.rules.begin(), out.rules.end());
    out.rules.erase(std::unique(out.rules.begin(), out.rules.end()), out.rules.end());
    return out;
}

// --- pipelines ----------------------------------------------------------------

namespace {

// automaton for f1(T): fresh final root state above a's finals
Fta wrap_automaton(const Fta& a, const std::string& f1) {
    Fta out = a;
    out.sig.add(f1, 1);
    std::string root = "q(f1)";
    while (out.states.count(root)) root += "'";
    out.states.insert(root);
    for (const auto& qf : a.finals) {
        Transition t;
        t.head = f1;
        t.from = {qf};
        t.to = root;
        out.transitions.insert(t);
    }
    out.finals = {root};
    return out;
}

// accepts exactly the state constants {q^j : q in finals, j in [0,k]}
Fta final_constants_target(const Signature& host, const std::set<std::string>& finals, int k) {
    Fta t;
    t.sig = host;
    t.states.insert("acc");
    t.finals.insert("acc");
    for (const auto& q : finals)
        for (int j = 0; j <= k; ++j) {
            Transition tr;
            tr.head = q;
            tr.mark = j;
            tr.to = "acc";
            t.transitions.insert(tr);
        }
    return t;
}

// accept s iff f1(s) in L(b); then drop f1 from the acceptance
Fta unwrap_f1(const Fta& b, const std::string& f1) {
    Fta out = b;
    out.finals.clear();
    // epsilon adjacency, then: q is final iff some q' eps-reachable from q
    // has a transition f1(q') -> q'' whose eps-closure meets b's finals
    std::map<std::string, std::vector<std::string>> eps;
    for (const auto& t : b.transitions)
        if (t.is_epsilon()) eps[t.from[0]].push_back(t.to);
    auto closure = [&](const std::string& q) {
        std::set<std::string> out2{q};
        std::vector<std::string> work{q};
        while (!work.empty()) {
            std::string u = work.back();
            work.pop_back();
            auto it = eps.find(u);
            if (it == eps.end()) continue;
            for (const auto& v : it->second)
                if (out2.insert(v).second) work.push_back(v);
        }
        return out2;
    };
    // sources q' with a good f1 transition
    std::set<std::string> good_src;
    for (const auto& t : b.transitions) {
        if (t.is_epsilon() || t.head != f1 || t.mark != 0) continue;
        for (const auto& fin : closure(t.to))
            if (b.finals.count(fin)) {
                good_src.insert(t.from[0]);
                break;
            }
    }
    for (const auto& q : b.states) {
        for (const auto& q2 : closure(q))
            if (good_src.count(q2)) {
                out.finals.insert(q);
                break;
            }
    }
    return out;
}

Fta run_pipeline(const Trs& original, const Fta& a, int K, int cascade, bool marked,
                 const AncestorOptions& opt) {
    auto elim = eliminate_variable_lhs(original);
    const Trs& r1 = elim.system;
    Fta a1 = a;
    // align the automaton signature with the (possibly extended) system
    for (const auto& [n, ar] : r1.sig.symbols()) a1.sig.add(n, ar);
    if (elim.used) a1 = wrap_automaton(a1, elim.wrapper);
    Fta ahat = opt.standardize ? standardize(a1) : a1;
    for (const auto& [n, ar] : r1.sig.symbols()) ahat.sig.add(n, ar);

    CompiledSystem c = marked ? build_S1(r1, ahat, K, cascade)
                              : build_S1_unmarked(r1, ahat, cascade);
    if (opt.compiled) *opt.compiled = c;
    Fta target = final_constants_target(c.host, ahat.finals, marked ? K : 0);
    Fta closed = pre_star(c.automaton_rules, c.schematic, target);
    if (elim.used) closed = unwrap_f1(closed, elim.wrapper);
    return product(closed, all_terms_automaton(original.sig));
}

}  // namespace

Fta ancestors_k(const Trs& r, const Fta& a, int k, const AncestorOptions& opt) {
    return run_pipeline(r, a, k, k + 1, true, opt);
}

Fta ancestors_full(const Trs& r, const Fta& a, int k, const AncestorOptions& opt) {
    return run_pipeline(r, a, 0, k + 1, false, opt);
}

Fta ancestors_bu_minus(const Trs& r, const Fta& a, int k, const AncestorOptions& opt) {
    if (k < 1) throw std::invalid_argument("ancestors_bu_minus: k must be >= 1");
    return run_pipeline(r, a, 0, k, false, opt);
}

Fta sbu_witness_set(const Trs& r, int k) {
    int K = k + 1;
    auto elim = eliminate_variable_lhs(r);
    const Trs& r1 = elim.system;
    // universal standard automaton over the (extended) signature
    Fta uni;
    uni.sig = r1.sig;
    for (const auto& c : r1.sig.nullary()) uni.states.insert(c);
    uni.states.insert("qtop");
    for (const auto& [name, ar] : r1.sig.symbols()) {
        if (ar == 0) continue;
        std::vector<std::string> pool(uni.states.begin(), uni.states.end());
        std::vector<size_t> idx(ar, 0);
        while (true) {
            Transition t;
            t.head = name;
            for (int i = 0; i < ar; ++i) t.from.push_back(pool[idx[i]]);
            t.to = "qtop";
            uni.transitions.insert(t);
            int pos = ar - 1;
            while (pos >= 0) {
                if (++idx[pos] < pool.size()) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    uni.finals = uni.states;

    CompiledSystem c = build_S1(r1, uni, K, K + 1);
    Fta witness = mark_witness_automaton(c.host, K);
    Fta closed = pre_star(c.automaton_rules, c.schematic, witness);
    if (elim.used) closed = unwrap_f1(closed, elim.wrapper);
    return product(closed, all_terms_automaton(r.sig));
}

bool decide_sbu(const Trs& r, int k) { return sbu_witness_set(r, k).language_empty(); }

}  // namespace bure
