#include "bure/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bure/oracle.hpp"

namespace bure {

std::vector<std::pair<Position, bool>> sticks_out(const Term& s, const Term& t) {
    if (t.is_var()) throw std::invalid_argument("sticks_out: t must not be a variable");
    std::vector<std::pair<Position, bool>> out;
    for (const auto& w : t.var_positions()) {
        // clause 1: every strict ancestor of w agrees between s and t
        bool ok = true;
        for (size_t len = 0; len < w.size() && ok; ++len) {
            Position v(w.begin(), w.begin() + len);
            if (!s.has_position(v)) {
                ok = false;
                break;
            }
            const Term& sv = s.subterm(v);
            const Term& tv = t.subterm(v);
            if (sv.is_var() || sv.head() != tv.head()) ok = false;
        }
        if (!ok) continue;
        // clause 2: w in Pos(s) and s/w not ground
        if (!s.has_position(w)) continue;
        const Term& sw = s.subterm(w);
        if (sw.ground()) continue;
        out.emplace_back(w, !sw.is_var());
    }
    return out;
}

namespace {

std::vector<Term> subterms(const Term& t, bool strict) {
    std::vector<Term> out;
    for (const auto& p : t.positions()) {
        if (strict && p.empty()) continue;
        out.push_back(t.subterm(p));
    }
    return out;
}

bool any_stick(const Term& s, const Term& t, bool need_strict) {
    if (t.is_var()) return false;
    for (const auto& [w, strict] : sticks_out(s, t))
        if (!need_strict || strict) return true;
    return false;
}

}  // namespace

StickingOutGraph build_sg(const Trs& r) {
    StickingOutGraph g;
    g.vertices = static_cast<int>(r.rules.size());
    for (int i = 0; i < g.vertices; ++i) {
        for (int j = 0; j < g.vertices; ++j) {
            const Term& ri = r.rules[i].rhs;
            const Term& lj = r.rules[j].lhs;
            // (a) l_j strictly sticks out of a subterm of r_i
            for (const auto& sub : subterms(ri, false))
                if (any_stick(lj, sub, true)) {
                    g.arcs.insert({i + 1, j + 1, 'a'});
                    break;
                }
            // (b) a strict subterm of l_j strictly sticks out of r_i
            for (const auto& sub : subterms(lj, true))
                if (any_stick(sub, ri, true)) {
                    g.arcs.insert({i + 1, j + 1, 'b'});
                    break;
                }
            // (c) a subterm of r_i sticks out of l_j
            for (const auto& sub : subterms(ri, false))
                if (any_stick(sub, lj, false)) {
                    g.arcs.insert({i + 1, j + 1, 'c'});
                    break;
                }
            // (d) r_i sticks out of a strict subterm of l_j
            for (const auto& sub : subterms(lj, true))
                if (any_stick(ri, sub, false)) {
                    g.arcs.insert({i + 1, j + 1, 'd'});
                    break;
                }
        }
    }
    return g;
}

WeightResult graph_weight(const StickingOutGraph& g) {
    int n = g.vertices;
    // Tarjan SCC
    std::vector<std::vector<std::pair<int, int>>> adj(n + 1);  // (to, weight)
    for (const auto& a : g.arcs) adj[a.from].push_back({a.to, a.weight()});
    std::vector<int> idx(n + 1, -1), low(n + 1, 0), comp(n + 1, -1);
    std::vector<int> stack;
    std::vector<bool> on(n + 1, false);
    int counter = 0, ncomp = 0;
    std::function<void(int)> dfs = [&](int v) {
        idx[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = true;
        for (auto [w, wt] : adj[v]) {
            if (idx[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on[w]) {
                low[v] = std::min(low[v], idx[w]);
            }
        }
        if (low[v] == idx[v]) {
            while (true) {
                int w = stack.back();
                stack.pop_back();
                on[w] = false;
                comp[w] = ncomp;
                if (w == v) break;
            }
            ++ncomp;
        }
    };
    for (int v = 1; v <= n; ++v)
        if (idx[v] < 0) dfs(v);
    // infinite iff a weight-1 arc inside an SCC (zero-weight cycles are fine)
    for (const auto& a : g.arcs)
        if (comp[a.from] == comp[a.to] && a.weight() == 1) return {false, 0};
    // longest path over the condensation; zero-weight intra-SCC arcs cannot
    // increase any path weight, so plain DAG longest-path on components works
    std::vector<std::vector<std::pair<int, int>>> cadj(ncomp);
    for (const auto& a : g.arcs)
        if (comp[a.from] != comp[a.to]) cadj[comp[a.from]].push_back({comp[a.to], a.weight()});
    std::vector<int> memo(ncomp, -1);
    std::function<int(int)> longest = [&](int c) {
        if (memo[c] >= 0) return memo[c];
        int best = 0;
        for (auto [d, wt] : cadj[c]) best = std::max(best, wt + longest(d));
        return memo[c] = best;
    };
    int best = 0;
    for (int c = 0; c < ncomp; ++c) best = std::max(best, longest(c));
    return {true, best};
}

std::optional<int> sbu_sufficient_bound(const Trs& r) {
    for (const auto& rule : r.rules)
        if (!rule.linear())
            throw std::invalid_argument("sbu_sufficient_bound: system must be linear");
    auto w = graph_weight(build_sg(r));
    if (!w.finite) return std::nullopt;
    return w.weight + 1;
}

std::string sg_to_dot(const StickingOutGraph& g) {
    std::ostringstream os;
    os << "digraph SG {\n";
    for (int v = 1; v <= g.vertices; ++v) os << "  r" << v << ";\n";
    for (const auto& a : g.arcs)
        os << "  r" << a.from << " -> r" << a.to << " [label=\"" << a.label
           << "\", weight=" << a.weight() << "];\n";
    os << "}\n";
    return os.str();
}

SemiThueSystem branch_system(const Trs& r) {
    SemiThueSystem out;
    std::set<char> letters;
    std::set<WordRule> rules;
    auto branch_word = [&](const Term& t, const Position& p) {
        std::string w;
        const Term* cur = &t;
        for (int i : p) {
            if (cur->head().size() != 1)
                throw std::invalid_argument("branch_system: symbol names must be single letters");
            w += cur->head();
            cur = &cur->args()[i - 1];
        }
        return w;
    };
    for (const auto& rule : r.rules) {
        if (!rule.linear()) throw std::invalid_argument("branch_system: system must be linear");
        for (const auto& x : rule.rhs.variables()) {
            Position pl, pr;
            bool found = false;
            for (const auto& p : rule.lhs.var_positions())
                if (rule.lhs.subterm(p).head() == x) {
                    pl = p;
                    found = true;
                }
            if (!found) continue;
            for (const auto& p : rule.rhs.var_positions())
                if (rule.rhs.subterm(p).head() == x) pr = p;
            rules.insert({branch_word(rule.lhs, pl), branch_word(rule.rhs, pr)});
        }
    }
    for (const auto& wr : rules) {
        for (char c : wr.lhs + wr.rhs) letters.insert(c);
        out.rules.push_back(wr);
    }
    out.alphabet.assign(letters.begin(), letters.end());
    return out;
}

// --- minimal right-overlaps ----------------------------------------------------

std::vector<Overlap> minimal_right_overlaps(const SemiThueSystem& s, int k) {
    if (k < 1) throw std::invalid_argument("minimal_right_overlaps: k must be >= 1");
    if (!s.length_increasing())
        throw std::invalid_argument("minimal_right_overlaps: system must be length-increasing");
    if (!s.condition_C())
        throw std::invalid_argument("minimal_right_overlaps: condition C violated");

    int lmax = (s.suffix_chain_length() + k) * std::max(s.max_lhs_len(), 1);

    // overlap shapes: lhs(R') = z . v . w with z a non-empty suffix of
    // rhs(R), |w| >= 1
    struct Shape {
        int r, rp;
        std::string z, v, w, p;  // rhs(R) = p . z
    };
    std::vector<Shape> shapes;
    for (size_t ir = 0; ir < s.rules.size(); ++ir) {
        const std::string& rr = s.rules[ir].rhs;
        for (size_t irp = 0; irp < s.rules.size(); ++irp) {
            const std::string& lp = s.rules[irp].lhs;
            for (size_t zlen = 1; zlen < lp.size(); ++zlen) {
                if (zlen > rr.size()) break;
                std::string z = lp.substr(0, zlen);
                if (rr.compare(rr.size() - zlen, zlen, z) != 0) continue;
                std::string rest = lp.substr(zlen);  // v . w
                for (size_t vlen = 0; vlen < rest.size(); ++vlen)
                    shapes.push_back({static_cast<int>(ir), static_cast<int>(irp), z,
                                      rest.substr(0, vlen), rest.substr(vlen),
                                      rr.substr(0, rr.size() - zlen)});
            }
        }
    }
    if (shapes.empty()) return {};

    size_t max_tstar = 0;
    for (const auto& sh : shapes)
        max_tstar = std::max(max_tstar,
                             static_cast<size_t>(lmax) + s.rules[sh.r].lhs.size() + sh.v.size());

    // enumerate start words and their bu(k)-closures once
    std::vector<Overlap> out;
    std::set<std::tuple<std::string, int, int, std::string, std::string, std::string>> seen;
    std::vector<std::string> starts{""};
    for (size_t len = 1; len <= max_tstar; ++len) {
        std::vector<std::string> next;
        for (const auto& w : starts)
            if (w.size() == len - 1)
                for (char c : s.alphabet) next.push_back(w + c);
        starts.insert(starts.end(), next.begin(), next.end());
    }
    for (const auto& s0 : starts) {
        auto closure = word_bu_closure(s, s0, k, max_tstar);
        for (const auto& mw : closure) {
            for (const auto& sh : shapes) {
                const std::string& lr = s.rules[sh.r].lhs;
                // skeleton must be u . lhs(R) . v with the declared v
                if (mw.letters.size() < lr.size() + sh.v.size()) continue;
                size_t ulen = mw.letters.size() - lr.size() - sh.v.size();
                if (ulen > static_cast<size_t>(lmax)) continue;
                if (mw.letters.compare(ulen, lr.size(), lr) != 0) continue;
                if (mw.letters.compare(ulen + lr.size(), sh.v.size(), sh.v) != 0) continue;
                // the extra step uRv must keep the composition bu(k)
                if (lr.size() > 0 && mw.marks[ulen] != 0) continue;
                if (lr.empty()) {
                    bool zeros = true;
                    for (size_t i = 0; i < ulen && zeros; ++i) zeros = mw.marks[i] == 0;
                    if (!zeros) continue;
                }
                int m = 0;
                for (size_t i = 0; i < ulen + lr.size(); ++i) m = std::max(m, mw.marks[i]);
                if (m + 1 > k) continue;
                Overlap o;
                o.d_start = s0;
                o.d_end = mw.letters;
                o.rule_r = sh.r;
                o.rule_rp = sh.rp;
                o.u = mw.letters.substr(0, ulen);
                o.v = sh.v;
                o.w = sh.w;
                o.up = o.u + sh.p;
                if (seen.insert({o.d_start, o.rule_r, o.rule_rp, o.u, o.v, o.w}).second)
                    out.push_back(std::move(o));
            }
        }
    }
    return out;
}

bool is_overlap_resolved(const SemiThueSystem& s, const Overlap& o, int k) {
    return word_bu_reach(s, o.d_start + o.w, o.up + s.rules[o.rule_rp].rhs, k);
}

bool decide_bu_k_sts(const SemiThueSystem& s, int k) {
    if (k < 0) throw std::invalid_argument("decide_bu_k_sts: k must be >= 0");
    if (k == 0) {
        for (const auto& r : s.rules)
            if (r.lhs != r.rhs) return false;
        return true;
    }
    for (const auto& o : minimal_right_overlaps(s, k))
        if (!is_overlap_resolved(s, o, k)) return false;
    return true;
}

}  // namespace bure
