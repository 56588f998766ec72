#include "bure/oracle.hpp"

#include <deque>
#include <functional>
#include <stdexcept>

namespace bure {

namespace {

// match modulo marks: pattern unmarked, subject marked; collects the marked
// images and the marked occurrence of the pattern
bool match_over_marks(const Term& pat, const Term& sub, Substitution& images, Term& marked_pat) {
    if (pat.is_var()) {
        images.emplace(pat.head(), sub);
        marked_pat = pat;
        return true;
    }
    if (sub.is_var() || pat.head() != sub.head() || pat.arity() != sub.arity()) return false;
    std::vector<Term> margs;
    for (int i = 0; i < pat.arity(); ++i) {
        Term m;
        if (!match_over_marks(pat.args()[i], sub.args()[i], images, m)) return false;
        margs.push_back(std::move(m));
    }
    marked_pat = Term::fun(pat.head(), std::move(margs), sub.mark());
    return true;
}

void successors_rec(const Trs& r, const Term& root, const Term& node, Position& path,
                    int above_max, bool above_zero, int bound, std::vector<Term>& out) {
    for (size_t i = 0; i < r.rules.size(); ++i) {
        const Rule& rule = r.rules[i];
        Substitution images;
        Term lbar;
        if (!match_over_marks(rule.lhs, node, images, lbar)) continue;
        bool wbu = rule.lhs.is_var() ? above_zero : lbar.mark() == 0;
        if (!wbu) continue;
        Substitution out_images;
        bool ok = true;
        for (const auto& x : rule.rhs.variables()) {
            // max mark strictly above x inside C̄[l̄]: the path above the
            // redex plus the lhs occurrence nodes above x
            int in_l = 0;
            if (!rule.lhs.is_var()) {
                const Term* cur = &lbar;
                for (const auto& p : rule.lhs.var_positions()) {
                    if (rule.lhs.subterm(p).head() != x) continue;
                    for (int step : p) {
                        in_l = std::max(in_l, cur->mark());
                        cur = &cur->args()[step - 1];
                    }
                    break;
                }
            }
            int M = std::max(above_max, in_l) + 1;
            if (M > bound) {
                ok = false;
                break;
            }
            Term img = odot(images.at(x), M);
            if (max_mark(img) > bound) {
                ok = false;
                break;
            }
            out_images.emplace(x, std::move(img));
        }
        if (ok) out.push_back(root.replace(path, substitute(rule.rhs, out_images)));
    }
    int child_above = std::max(above_max, node.is_var() ? 0 : node.mark());
    bool child_zero = above_zero && (node.is_var() || node.mark() == 0);
    for (int i = 0; i < node.arity(); ++i) {
        path.push_back(i + 1);
        successors_rec(r, root, node.args()[i], path, child_above, child_zero, bound, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<Term> wbu_marked_successors(const Trs& r, const Term& t, int mark_bound) {
    std::vector<Term> out;
    Position path;
    successors_rec(r, t, t, path, 0, true, mark_bound, out);
    return out;
}

KbuReach kbu_reachable(const Trs& r, const Term& s, int k, const SearchBudget& b) {
    if (!s.ground()) throw std::invalid_argument("kbu_reachable: start term must be ground");
    KbuReach out;
    Term start = erase_marks(s);
    std::set<Term> visited{start};
    std::deque<std::pair<Term, int>> frontier{{start, 0}};
    out.terms.insert(start);
    while (!frontier.empty()) {
        auto [cur, depth] = frontier.front();
        frontier.pop_front();
        auto succs = wbu_marked_successors(r, cur, k);
        if (depth >= b.max_steps) {
            if (!succs.empty()) out.truncated = true;
            continue;
        }
        for (const auto& next : succs) {
            if (next.size() > b.max_term_size) {
                out.truncated = true;
                continue;
            }
            if (visited.insert(next).second) {
                out.terms.insert(erase_marks(next));
                frontier.emplace_back(next, depth + 1);
            }
        }
    }
    return out;
}

MarkSup wbu_mark_supremum(const Trs& r, const Term& s, const SearchBudget& b) {
    if (!s.ground()) throw std::invalid_argument("wbu_mark_supremum: start term must be ground");
    MarkSup out;
    Term start = erase_marks(s);
    std::set<Term> visited{start};
    std::deque<std::pair<Term, int>> frontier{{start, 0}};
    while (!frontier.empty()) {
        auto [cur, depth] = frontier.front();
        frontier.pop_front();
        if (out.supremum >= b.max_mark) return out;  // threshold reached
        // marks grow by at most one per step, so bounding the search at
        // max_mark still answers "is the supremum >= max_mark" exactly
        auto succs = wbu_marked_successors(r, cur, b.max_mark);
        if (depth >= b.max_steps) {
            if (!succs.empty()) out.truncated = true;
            continue;
        }
        for (const auto& next : succs) {
            out.supremum = std::max(out.supremum, max_mark(next));
            if (next.size() > b.max_term_size) {
                out.truncated = true;
                continue;
            }
            if (visited.insert(next).second) frontier.emplace_back(next, depth + 1);
        }
    }
    return out;
}

// --- marked word search -------------------------------------------------------

namespace {

std::vector<MarkedWord> word_successors(const SemiThueSystem& s, const MarkedWord& w, int k) {
    std::vector<MarkedWord> out;
    for (const auto& rule : s.rules) {
        size_t L = rule.lhs.size();
        for (size_t p = 0; p + L <= w.letters.size(); ++p) {
            if (w.letters.compare(p, L, rule.lhs) != 0) continue;
            // wbu: non-empty lhs needs root mark 0; empty lhs needs all marks
            // strictly above the insertion point to be 0
            if (L > 0) {
                if (w.marks[p] != 0) continue;
            } else {
                bool ok = true;
                for (size_t i = 0; i < p && ok; ++i) ok = w.marks[i] == 0;
                if (!ok) continue;
            }
            // M = max mark over context-above plus lhs, plus one
            int m = 0;
            for (size_t i = 0; i < p + L; ++i) m = std::max(m, w.marks[i]);
            int M = m + 1;
            if (M > k) continue;
            MarkedWord next;
            next.letters = w.letters.substr(0, p) + rule.rhs + w.letters.substr(p + L);
            next.marks.assign(w.marks.begin(), w.marks.begin() + p);
            next.marks.insert(next.marks.end(), rule.rhs.size(), 0);
            for (size_t i = p + L; i < w.letters.size(); ++i)
                next.marks.push_back(std::max(w.marks[i], M));
            next.end_mark = std::max(w.end_mark, M);
            if (next.end_mark > k) continue;
            bool within = true;
            for (int x : next.marks)
                if (x > k) within = false;
            if (within) out.push_back(std::move(next));
        }
    }
    return out;
}

}  // namespace

std::set<MarkedWord> word_bu_closure(const SemiThueSystem& s, const std::string& from, int k,
                                     size_t maxlen) {
    MarkedWord start{from, std::vector<int>(from.size(), 0), 0};
    std::set<MarkedWord> visited{start};
    std::deque<MarkedWord> frontier{start};
    while (!frontier.empty()) {
        MarkedWord cur = frontier.front();
        frontier.pop_front();
        for (auto& next : word_successors(s, cur, k)) {
            if (next.letters.size() > maxlen) continue;
            if (visited.insert(next).second) frontier.push_back(std::move(next));
        }
    }
    return visited;
}

bool word_bu_reach(const SemiThueSystem& s, const std::string& from, const std::string& to,
                   int k) {
    if (!s.length_increasing())
        throw std::invalid_argument("word_bu_reach: system must be length-increasing");
    if (from.size() > to.size()) return false;
    for (const auto& w : word_bu_closure(s, from, k, to.size()))
        if (w.letters == to) return true;
    return false;
}

std::vector<Derivation> enumerate_derivations(const Trs& r, const Term& s, int max_steps) {
    std::vector<Derivation> out;
    std::function<void(const Derivation&)> go = [&](const Derivation& d) {
        out.push_back(d);
        if (d.length() >= max_steps) return;
        for (const auto& [pos, rule, result] : one_step_rewrites(r, d.end())) {
            Derivation next = d;
            next.push(pos, rule);
            go(next);
        }
    };
    go(Derivation(r, s));
    return out;
}

}  // namespace bure
