#include "bure/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace bure {

Signature::Signature(std::initializer_list<std::pair<std::string, int>> syms) {
    for (const auto& [n, a] : syms) add(n, a);
}

void Signature::add(const std::string& name, int arity) {
    auto it = table_.find(name);
    if (it != table_.end() && it->second != arity)
        throw std::invalid_argument("symbol '" + name + "' redeclared with different arity");
    table_[name] = arity;
}

bool Signature::contains(const std::string& name) const { return table_.count(name) > 0; }

int Signature::arity(const std::string& name) const {
    auto it = table_.find(name);
    if (it == table_.end()) throw std::invalid_argument("unknown symbol '" + name + "'");
    return it->second;
}

std::vector<std::string> Signature::nullary() const {
    std::vector<std::string> out;
    for (const auto& [n, a] : table_)
        if (a == 0) out.push_back(n);
    return out;
}

bool Signature::is_unary() const {
    for (const auto& [n, a] : table_)
        if (a > 1) return false;
    return true;
}

std::string position_to_string(const Position& p) {
    if (p.empty()) return "eps";
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(p[i]);
    }
    return out;
}

bool is_prefix(const Position& u, const Position& v) {
    if (u.size() > v.size()) return false;
    return std::equal(u.begin(), u.end(), v.begin());
}

bool is_strict_prefix(const Position& u, const Position& v) {
    return u.size() < v.size() && is_prefix(u, v);
}

Term Term::var(const std::string& name) {
    Term t;
    t.head_ = name;
    t.var_ = true;
    return t;
}

Term Term::fun(const std::string& name, std::vector<Term> args, int mark) {
    Term t;
    t.head_ = name;
    t.var_ = false;
    t.mark_ = mark;
    t.args_ = std::move(args);
    return t;
}

bool Term::ground() const {
    if (var_) return false;
    for (const auto& a : args_)
        if (!a.ground()) return false;
    return true;
}

namespace {
bool linear_rec(const Term& t, std::set<std::string>& seen) {
    if (t.is_var()) return seen.insert(t.head()).second;
    for (const auto& a : t.args())
        if (!linear_rec(a, seen)) return false;
    return true;
}
}  // namespace

bool Term::linear() const {
    std::set<std::string> seen;
    return linear_rec(*this, seen);
}

int Term::size() const {
    int n = 1;
    for (const auto& a : args_) n += a.size();
    return n;
}

int Term::depth() const {
    // dpt(t) = sup{|u| : u non-variable position} + 1; a bare variable has
    // depth 0 by the empty sup convention.
    if (var_) return 0;
    int best = 0;
    for (const auto& a : args_) best = std::max(best, a.depth());
    return best + 1;
}

std::set<std::string> Term::variables() const {
    std::set<std::string> out;
    if (var_) {
        out.insert(head_);
        return out;
    }
    for (const auto& a : args_) {
        auto sub = a.variables();
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

namespace {
void positions_rec(const Term& t, Position& cur, std::set<Position>& out, bool vars_only) {
    if (!vars_only || t.is_var()) out.insert(cur);
    for (int i = 0; i < t.arity(); ++i) {
        cur.push_back(i + 1);
        positions_rec(t.args()[i], cur, out, vars_only);
        cur.pop_back();
    }
}
}  // namespace

std::set<Position> Term::positions() const {
    std::set<Position> out;
    Position cur;
    positions_rec(*this, cur, out, false);
    return out;
}

std::set<Position> Term::var_positions() const {
    std::set<Position> out;
    Position cur;
    positions_rec(*this, cur, out, true);
    return out;
}

const Term& Term::subterm(const Position& u) const {
    const Term* t = this;
    for (int i : u) {
        if (i < 1 || i > t->arity())
            throw std::out_of_range("position " + position_to_string(u) + " outside term domain");
        t = &t->args()[i - 1];
    }
    return *t;
}

bool Term::has_position(const Position& u) const {
    const Term* t = this;
    for (int i : u) {
        if (i < 1 || i > t->arity()) return false;
        t = &t->args()[i - 1];
    }
    return true;
}

Term Term::replace(const Position& u, const Term& s) const {
    if (u.empty()) return s;
    if (u.front() < 1 || u.front() > arity())
        throw std::out_of_range("position outside term domain");
    Term out = *this;
    out.args_[u.front() - 1] =
        args_[u.front() - 1].replace(Position(u.begin() + 1, u.end()), s);
    return out;
}

Term Term::with_mark(int m) const {
    if (var_) return *this;
    Term out = *this;
    out.mark_ = m;
    return out;
}

std::string Term::to_string() const {
    std::string out = head_;
    if (!var_ && mark_ != 0) out += "^" + std::to_string(mark_);
    if (!args_.empty()) {
        out += '(';
        for (size_t i = 0; i < args_.size(); ++i) {
            if (i) out += ',';
            out += args_[i].to_string();
        }
        out += ')';
    }
    return out;
}

bool Term::operator==(const Term& o) const {
    return var_ == o.var_ && mark_ == o.mark_ && head_ == o.head_ && args_ == o.args_;
}

bool Term::operator<(const Term& o) const {
    if (var_ != o.var_) return var_ < o.var_;
    if (head_ != o.head_) return head_ < o.head_;
    if (mark_ != o.mark_) return mark_ < o.mark_;
    return args_ < o.args_;
}

Term substitute(const Term& pattern, const Substitution& s) {
    if (pattern.is_var()) {
        auto it = s.find(pattern.head());
        return it == s.end() ? pattern : it->second;
    }
    std::vector<Term> args;
    args.reserve(pattern.args().size());
    for (const auto& a : pattern.args()) args.push_back(substitute(a, s));
    return Term::fun(pattern.head(), std::move(args), pattern.mark());
}

namespace {
bool match_rec(const Term& pat, const Term& sub, Substitution& out) {
    if (pat.is_var()) {
        out.emplace(pat.head(), sub);
        return true;
    }
    if (sub.is_var() || pat.head() != sub.head() || pat.mark() != sub.mark() ||
        pat.arity() != sub.arity())
        return false;
    for (int i = 0; i < pat.arity(); ++i)
        if (!match_rec(pat.args()[i], sub.args()[i], out)) return false;
    return true;
}
}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
    if (!pattern.linear()) throw std::invalid_argument("match: non-linear pattern");
    Substitution s;
    if (!match_rec(pattern, subject, s)) return std::nullopt;
    return s;
}

Term erase_marks(const Term& t) { return mark_uniform(t, 0); }

Term mark_uniform(const Term& t, int i) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(mark_uniform(a, i));
    return Term::fun(t.head(), std::move(args), i);
}

Term odot(const Term& t, int n) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(odot(a, n));
    return Term::fun(t.head(), std::move(args), std::max(t.mark(), n));
}

int max_mark(const Term& t) {
    int m = t.is_var() ? 0 : t.mark();
    for (const auto& a : t.args()) m = std::max(m, max_mark(a));
    return m;
}

int min_mark(const Term& t) {
    int m = t.is_var() ? 0 : t.mark();
    for (const auto& a : t.args()) m = std::min(m, min_mark(a));
    return m;
}

int max_mark_above(const Position& u, const Term& t) {
    if (u.empty()) throw std::invalid_argument("max_mark_above: u must not be the root");
    if (!t.has_position(u)) throw std::out_of_range("max_mark_above: position outside term");
    int best = 0;
    const Term* cur = &t;
    for (size_t i = 0; i < u.size(); ++i) {  // strict ancestors only
        best = std::max(best, cur->is_var() ? 0 : cur->mark());
        cur = &cur->args()[u[i] - 1];
    }
    return best;
}

bool is_m_increasing(const Term& t) {
    int root = t.is_var() ? 0 : t.mark();
    for (const auto& a : t.args()) {
        int child = a.is_var() ? 0 : a.mark();
        if (child < root) return false;
        if (!is_m_increasing(a)) return false;
    }
    return true;
}

int mark_bound_M(const Term& t, const std::string& x) {
    std::vector<Position> occ;
    for (const auto& p : t.var_positions())
        if (t.subterm(p).head() == x) occ.push_back(p);
    if (occ.size() != 1)
        throw std::invalid_argument("mark_bound_M: variable '" + x + "' must occur exactly once");
    const Position& pos = occ.front();
    if (pos.empty()) return 1;  // bare variable: empty sup
    return max_mark_above(pos, t) + 1;
}

// --- tree domains -------------------------------------------------------

bool is_tree_domain(const TreeDomain& p) {
    for (const auto& u : p) {
        if (!u.empty()) {
            Position parent(u.begin(), u.end() - 1);
            if (!p.count(parent)) return false;
            if (u.back() > 1) {
                Position sib = u;
                sib.back() -= 1;
                if (!p.count(sib)) return false;
            }
        }
    }
    return true;
}

bool is_subdomain(const TreeDomain& sub, const TreeDomain& p) {
    if (!is_tree_domain(sub)) return false;
    for (const auto& u : sub) {
        if (!p.count(u)) return false;
        // must keep every right sibling present in p
        Position next = u;
        if (!next.empty()) {
            next.back() += 1;
            if (p.count(next) && !sub.count(next)) return false;
        }
    }
    return true;
}

TreeDomain domain_closure(const TreeDomain& q, const TreeDomain& p) {
    for (const auto& u : q)
        if (!p.count(u)) throw std::invalid_argument("domain_closure: Q not within P");
    TreeDomain out = q;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Position> add;
        for (const auto& u : out) {
            if (!u.empty()) {
                Position parent(u.begin(), u.end() - 1);
                if (!out.count(parent)) add.push_back(parent);
            }
            Position sib = u;
            if (!sib.empty()) {
                sib.back() += 1;
                if (p.count(sib) && !out.count(sib)) add.push_back(sib);
                sib.back() -= 2;
                if (sib.back() >= 1 && !out.count(sib)) add.push_back(sib);
            }
        }
        for (auto& a : add) {
            out.insert(a);
            changed = true;
        }
    }
    return out;
}

bool is_antichain(const std::set<Position>& y) {
    for (const auto& u : y)
        for (const auto& v : y)
            if (u != v && is_prefix(u, v)) return false;
    return true;
}

bool is_transversal(const std::set<Position>& t, const TreeDomain& p) {
    if (!is_antichain(t)) return false;
    for (const auto& u : t)
        if (!p.count(u)) return false;
    // maximal: every domain element is comparable to some member
    for (const auto& v : p) {
        bool cmp = false;
        for (const auto& u : t)
            if (is_prefix(u, v) || is_prefix(v, u)) {
                cmp = true;
                break;
            }
        if (!cmp) return false;
    }
    return true;
}

std::set<Position> smallest_transversal(const std::set<Position>& y, const TreeDomain& p) {
    if (!is_antichain(y)) throw std::invalid_argument("smallest_transversal: Y not an antichain");
    for (const auto& u : y)
        if (!p.count(u)) throw std::invalid_argument("smallest_transversal: Y not within P");
    // Z := Y together with every child (in P) of a strict ancestor of some
    // y that is not itself strictly above a member of Y.
    std::set<Position> z = y;
    for (const auto& yy : y) {
        for (size_t len = 0; len < yy.size(); ++len) {
            Position anc(yy.begin(), yy.begin() + len);  // anc < yy
            for (int i = 1;; ++i) {
                Position child = anc;
                child.push_back(i);
                if (!p.count(child)) break;
                bool above_y = false;
                for (const auto& y2 : y)
                    if (is_strict_prefix(child, y2)) {
                        above_y = true;
                        break;
                    }
                if (!above_y) z.insert(child);
            }
        }
    }
    return z;
}

// --- contexts -----------------------------------------------------------

namespace {
int count_holes(const Term& t) {
    if (t.is_var()) return t.head() == kHole ? 1 : 0;
    int n = 0;
    for (const auto& a : t.args()) n += count_holes(a);
    return n;
}
}  // namespace

bool is_context(const Term& t) { return count_holes(t) == 1; }

Position hole_position(const Term& c) {
    for (const auto& p : c.var_positions())
        if (c.subterm(p).head() == kHole) return p;
    throw std::invalid_argument("hole_position: no hole in term");
}

Term plug(const Term& c, const Term& t) { return c.replace(hole_position(c), t); }

// --- parsing ------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;
    const Signature& sig;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("parse error at column " + std::to_string(i + 1) + ": " +
                                    msg + " in '" + s + "'");
    }

    std::string ident() {
        skip();
        size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\'' ||
                s[i] == '#'))
            ++i;
        if (start == i) fail("expected identifier");
        return s.substr(start, i - start);
    }

    Term term() {
        skip();
        if (i + 1 < s.size() && s[i] == '[' && s[i + 1] == ']') {
            i += 2;
            return Term::var(kHole);
        }
        std::string name = ident();
        int mark = 0;
        if (i < s.size() && s[i] == '^') {
            ++i;
            size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (start == i) fail("expected mark after '^'");
            mark = std::stoi(s.substr(start, i - start));
        }
        std::vector<Term> args;
        skip();
        if (i < s.size() && s[i] == '(') {
            ++i;
            skip();
            if (i < s.size() && s[i] == ')') {
                ++i;
            } else {
                while (true) {
                    args.push_back(term());
                    skip();
                    if (i < s.size() && s[i] == ',') {
                        ++i;
                        continue;
                    }
                    if (i < s.size() && s[i] == ')') {
                        ++i;
                        break;
                    }
                    fail("expected ',' or ')'");
                }
            }
        }
        if (sig.contains(name)) {
            if (static_cast<int>(args.size()) != sig.arity(name))
                fail("symbol '" + name + "' expects arity " + std::to_string(sig.arity(name)));
            return Term::fun(name, std::move(args), mark);
        }
        if (!args.empty()) fail("undeclared symbol '" + name + "' used with arguments");
        if (mark != 0) fail("variable '" + name + "' cannot carry a mark");
        return Term::var(name);
    }
};

}  // namespace

Term parse_term(const std::string& text, const Signature& sig) {
    Parser p{text, 0, sig};
    Term t = p.term();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return t;
}

}  // namespace bure
