#include "bure/rewriting.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bure {

void Trs::validate() const {
    for (const auto& r : rules) {
        auto lv = r.lhs.variables();
        for (const auto& x : r.rhs.variables())
            if (!lv.count(x))
                throw std::invalid_argument("rule " + r.to_string() +
                                            ": rhs variable '" + x + "' not in lhs");
    }
}

int Trs::size() const {
    int n = 0;
    for (const auto& r : rules) n += r.size();
    return n;
}

int Trs::max_lhs_depth() const {
    int d = 0;
    for (const auto& r : rules) d = std::max(d, r.lhs.depth());
    return d;
}

int Trs::max_lhs_var_positions() const {
    int a = 0;
    for (const auto& r : rules) a = std::max(a, static_cast<int>(r.lhs.var_positions().size()));
    return a;
}

std::string Trs::to_string() const {
    std::ostringstream os;
    os << "sig";
    for (const auto& [n, a] : sig.symbols()) os << ' ' << n << '/' << a;
    os << '\n';
    for (const auto& r : rules) os << "rule " << r.to_string() << '\n';
    return os.str();
}

Trs parse_trs(const std::string& text) {
    Trs out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::vector<std::pair<std::string, std::string>> pending;
    while (std::getline(is, line)) {
        ++lineno;
        // a comment marker is a '#' at line start or after whitespace (the
        // end-of-word symbol # may appear inside terms)
        for (size_t ci = 0; ci < line.size(); ++ci)
            if (line[ci] == '#' && (ci == 0 || std::isspace(static_cast<unsigned char>(line[ci - 1])))) {
                line = line.substr(0, ci);
                break;
            }
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        try {
            if (kw == "sig" || kw == "state") {
                std::string item;
                while (ls >> item) {
                    auto slash = item.find('/');
                    if (slash == std::string::npos)
                        throw std::invalid_argument("expected name/arity, got '" + item + "'");
                    out.sig.add(item.substr(0, slash), std::stoi(item.substr(slash + 1)));
                }
            } else if (kw == "rule") {
                std::string rest;
                std::getline(ls, rest);
                auto arrow = rest.find("->");
                if (arrow == std::string::npos) throw std::invalid_argument("missing '->'");
                pending.emplace_back(rest.substr(0, arrow), rest.substr(arrow + 2));
            } else {
                throw std::invalid_argument("unknown directive '" + kw + "'");
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument(".trs line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    for (const auto& [l, r] : pending)
        out.rules.push_back({parse_term(l, out.sig), parse_term(r, out.sig)});
    out.validate();
    return out;
}

Derivation::Derivation(const Trs& r, Term start) : trs_(&r) {
    terms_.push_back(std::move(start));
}

void Derivation::push(const Position& u, int rule_index) {
    if (rule_index < 0 || rule_index >= static_cast<int>(trs_->rules.size()))
        throw std::out_of_range("rule index out of range");
    const Rule& rule = trs_->rules[rule_index];
    const Term& cur = terms_.back();
    auto sigma = match(rule.lhs, cur.subterm(u));
    if (!sigma) throw std::invalid_argument("rule does not match at " + position_to_string(u));
    steps_.push_back({u, rule_index, *sigma});
    terms_.push_back(cur.replace(u, substitute(rule.rhs, *sigma)));
}

void Derivation::push(const Step& s) { push(s.pos, s.rule); }

std::vector<std::tuple<Position, int, Term>> one_step_rewrites(const Trs& r, const Term& t) {
    std::vector<std::tuple<Position, int, Term>> out;
    auto pos_set = t.positions();
    std::vector<Position> poss(pos_set.begin(), pos_set.end());
    for (const auto& u : poss) {
        const Term& sub = t.subterm(u);
        for (size_t i = 0; i < r.rules.size(); ++i) {
            auto sigma = match(r.rules[i].lhs, sub);
            if (sigma)
                out.emplace_back(u, static_cast<int>(i),
                                 t.replace(u, substitute(r.rules[i].rhs, *sigma)));
        }
    }
    return out;
}

// --- marked rewriting -------------------------------------------------------

namespace {

// match modulo marks: pattern is unmarked, subject marked; collects marked
// images and the marked occurrence of the pattern
bool match_marked(const Term& pat, const Term& sub, Substitution& images, Term& marked_pat) {
    if (pat.is_var()) {
        images.emplace(pat.head(), sub);
        marked_pat = pat;
        return true;
    }
    if (sub.is_var() || pat.head() != sub.head() || pat.arity() != sub.arity()) return false;
    std::vector<Term> margs;
    for (int i = 0; i < pat.arity(); ++i) {
        Term m;
        if (!match_marked(pat.args()[i], sub.args()[i], images, m)) return false;
        margs.push_back(std::move(m));
    }
    marked_pat = Term::fun(pat.head(), std::move(margs), sub.mark());
    return true;
}

}  // namespace

MarkedStepResult marked_step(const Trs& r, const Term& marked, const Position& u, int rule_index) {
    const Rule& rule = r.rules.at(rule_index);
    if (!rule.left_linear()) throw std::invalid_argument("marked_step: lhs must be linear");
    const Term& redex = marked.subterm(u);
    Substitution images;
    Term marked_lhs;
    if (!match_marked(rule.lhs, redex, images, marked_lhs))
        throw std::invalid_argument("marked_step: rule does not match at " +
                                    position_to_string(u));
    // wbu clauses
    bool wbu;
    if (rule.lhs.is_var()) {
        wbu = u.empty() ? true : max_mark_above(u, marked) == 0;
    } else {
        wbu = marked_lhs.mark() == 0;
    }
    // sigma-double-bar: image of x gets ⊙ M(C̄[l̄], x); since C̄[l̄] is the
    // whole marked term with images cut out, M is the max mark strictly above
    // x's occurrence (ancestors inside l̄ and inside C̄ both count).
    Substitution out_images;
    for (const auto& x : rule.rhs.variables()) {
        Position in_l;
        for (const auto& p : rule.lhs.var_positions())
            if (rule.lhs.subterm(p).head() == x) in_l = p;
        Position full = u;
        full.insert(full.end(), in_l.begin(), in_l.end());
        int m = full.empty() ? 0 : max_mark_above(full, marked);
        out_images.emplace(x, odot(images.at(x), m + 1));
    }
    Term result = marked.replace(u, substitute(rule.rhs, out_images));
    return {result, marked_lhs, wbu};
}

MarkedDerivation lift_marked(const Trs& r, const Derivation& d, const Term& start) {
    if (erase_marks(start) != d.start())
        throw std::invalid_argument("lift_marked: start marks do not erase to the derivation start");
    MarkedDerivation out;
    out.start = start;
    out.terms.push_back(start);
    Term cur = start;
    for (const auto& s : d.steps()) {
        auto step = marked_step(r, cur, s.pos, s.rule);
        out.marked_lhss.push_back(step.marked_lhs);
        out.step_wbu.push_back(step.wbu);
        out.steps.push_back(s);
        cur = step.result;
        out.terms.push_back(cur);
    }
    return out;
}

MarkedDerivation lift_marked(const Trs& r, const Derivation& d) {
    return lift_marked(r, d, erase_marks(d.start()));
}

bool is_wbu(const MarkedDerivation& d) {
    for (bool w : d.step_wbu)
        if (!w) return false;
    return true;
}

BuClass classify_bu(const MarkedDerivation& d) {
    BuClass out;
    out.wbu = is_wbu(d);
    if (!out.wbu) return out;
    for (const auto& t : d.terms) out.max_mark = std::max(out.max_mark, max_mark(t));
    for (const auto& l : d.marked_lhss) out.max_lhs_mark = std::max(out.max_lhs_mark, max_mark(l));
    return out;
}

// --- wbu reordering ---------------------------------------------------------

namespace {

// residue of position v across one step (linear system): at most one
std::optional<Position> residue(const Position& v, const Step& s, const Rule& rule) {
    const Position& u = s.pos;
    if (!is_prefix(u, v)) return v;  // untouched (v parallel to u or above with v != u prefix)
    if (v == u) return std::nullopt;
    Position rest(v.begin() + u.size(), v.end());
    // v = u . p . w with p a variable position of lhs?
    for (const auto& p : rule.lhs.var_positions()) {
        if (is_prefix(p, rest)) {
            const std::string& x = rule.lhs.subterm(p).head();
            Position w(rest.begin() + p.size(), rest.end());
            for (const auto& q : rule.rhs.var_positions()) {
                if (rule.rhs.subterm(q).head() == x) {
                    Position out = u;
                    out.insert(out.end(), q.begin(), q.end());
                    out.insert(out.end(), w.begin(), w.end());
                    return out;
                }
            }
            return std::nullopt;  // variable erased
        }
    }
    return std::nullopt;  // inside the pattern: destroyed
}

}  // namespace

Derivation wbu_reorder(const Trs& r, const Derivation& d) {
    for (const auto& rule : r.rules)
        if (!rule.linear()) throw std::invalid_argument("wbu_reorder: system must be linear");
    if (d.length() == 0) return d;

    // Map each step j to the start-term position it is a residue of, if any.
    // forward[j][v] tracking: walk each start redex forward instead.
    const Term& s0 = d.start();
    std::vector<std::pair<Position, int>> start_redexes;  // (position in s0, step index)
    for (const auto& u : s0.positions()) {
        // does some step contract a residue of u?
        Position cur = u;
        bool alive = true;
        for (int j = 0; j < d.length() && alive; ++j) {
            const Step& st = d.steps()[j];
            if (st.pos == cur) {
                start_redexes.push_back({u, j});
                break;
            }
            auto nxt = residue(cur, st, r.rules[st.rule]);
            if (!nxt)
                alive = false;
            else
                cur = *nxt;
        }
    }
    if (start_redexes.empty())
        throw std::logic_error("wbu_reorder: no start redex contracted (invalid derivation?)");
    // pick a prefix-maximal start redex; tie-break lexicographically largest
    std::pair<Position, int> best = start_redexes.front();
    auto deeper = [](const Position& a, const Position& b) {
        // b strictly extends a, or b lexicographically after a at equal depth
        if (is_strict_prefix(a, b)) return true;
        if (is_strict_prefix(b, a)) return false;
        return a < b;
    };
    for (const auto& cand : start_redexes)
        if (deeper(best.first, cand.first)) best = cand;

    const auto [u, j] = best;
    const Step& moved = d.steps()[j];

    // new first step: contract u in s0 directly
    Derivation out(r, s0);
    out.push(u, moved.rule);
    // replay steps 0..j-1 (their positions are untouched by the u-rewrite),
    // then j+1..end unchanged
    for (int i = 0; i < d.length(); ++i) {
        if (i == j) continue;
        out.push(d.steps()[i].pos, d.steps()[i].rule);
    }
    if (out.end() != d.end())
        throw std::logic_error("wbu_reorder: permutation changed the endpoint");

    // recurse on the tail
    Derivation tail(r, out.terms()[1]);
    for (int i = 1; i < out.length(); ++i) tail.push(out.steps()[i].pos, out.steps()[i].rule);
    Derivation tail2 = wbu_reorder(r, tail);
    Derivation fin(r, s0);
    fin.push(u, moved.rule);
    for (const auto& st : tail2.steps()) fin.push(st.pos, st.rule);
    return fin;
}

// --- class predicates --------------------------------------------------------

ClassFlags class_predicates(const Trs& r) {
    ClassFlags f;
    f.linear = true;
    f.left_linear = true;
    f.right_ground = true;
    f.shallow = true;
    f.growing = true;
    for (const auto& rule : r.rules) {
        f.linear &= rule.linear();
        f.left_linear &= rule.left_linear();
        f.right_ground &= rule.right_ground();
        // shallow: lhs is a variable or all its variable occurrences at depth 1
        if (!rule.lhs.is_var())
            for (const auto& p : rule.lhs.var_positions())
                if (p.size() != 1) f.shallow = false;
        // growing: every rhs variable at depth <= 1 in lhs
        for (const auto& x : rule.rhs.variables()) {
            if (rule.lhs.is_var()) continue;  // depth 0
            for (const auto& p : rule.lhs.var_positions())
                if (rule.lhs.subterm(p).head() == x && p.size() > 1) f.growing = false;
        }
    }
    return f;
}

std::optional<std::pair<int, std::string>> known_bu_bound(const Trs& r) {
    auto f = class_predicates(r);
    if (f.right_ground) return std::make_pair(0, std::string("right-ground"));
    if (f.linear && f.shallow) return std::make_pair(1, std::string("shallow"));
    if (f.linear && f.growing) return std::make_pair(1, std::string("growing"));
    return std::nullopt;
}

}  // namespace bure
