#include "bure/semithue.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace bure {

bool SemiThueSystem::length_increasing() const {
    for (const auto& r : rules)
        if (r.lhs.size() > r.rhs.size()) return false;
    return true;
}

namespace {
bool is_suffix(const std::string& a, const std::string& b) {
    return a.size() <= b.size() && std::equal(a.rbegin(), a.rend(), b.rbegin());
}
}  // namespace

bool SemiThueSystem::condition_C() const {
    // cycle detection over edges i -> j iff rhs_i suffix of lhs_j
    int n = static_cast<int>(rules.size());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (is_suffix(rules[i].rhs, rules[j].lhs)) adj[i].push_back(j);
    std::vector<int> color(n, 0);
    std::function<bool(int)> has_cycle = [&](int v) {
        color[v] = 1;
        for (int w : adj[v]) {
            if (color[w] == 1) return true;
            if (color[w] == 0 && has_cycle(w)) return true;
        }
        color[v] = 2;
        return false;
    };
    for (int v = 0; v < n; ++v)
        if (color[v] == 0 && has_cycle(v)) return false;
    return true;
}

int SemiThueSystem::max_lhs_len() const {
    int m = 0;
    for (const auto& r : rules) m = std::max(m, static_cast<int>(r.lhs.size()));
    return m;
}

int SemiThueSystem::suffix_chain_length() const {
    if (!condition_C()) throw std::logic_error("suffix_chain_length: condition C violated");
    int n = static_cast<int>(rules.size());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (is_suffix(rules[i].rhs, rules[j].lhs)) adj[i].push_back(j);
    std::vector<int> memo(n, -1);
    std::function<int(int)> longest = [&](int v) {
        if (memo[v] >= 0) return memo[v];
        int best = 1;
        for (int w : adj[v]) best = std::max(best, 1 + longest(w));
        return memo[v] = best;
    };
    int best = n == 0 ? 0 : 1;
    for (int v = 0; v < n; ++v) best = std::max(best, longest(v));
    return best;
}

std::string SemiThueSystem::to_string() const {
    std::ostringstream os;
    os << "letters";
    for (char c : alphabet) os << ' ' << c;
    os << '\n';
    for (const auto& r : rules) os << "rule " << r.lhs << " -> " << r.rhs << '\n';
    return os.str();
}

SemiThueSystem parse_sts(const std::string& text) {
    SemiThueSystem out;
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
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        try {
            if (kw == "letters") {
                std::string item;
                while (ls >> item) {
                    if (item.size() != 1)
                        throw std::invalid_argument("letters must be single characters");
                    out.alphabet.push_back(item[0]);
                }
            } else if (kw == "rule") {
                std::string l, arrow, r;
                ls >> l >> arrow;
                if (arrow != "->") throw std::invalid_argument("expected '->'");
                if (!(ls >> r)) r = "";  // empty rhs
                if (l == "_") l = "";
                if (r == "_") r = "";
                out.rules.push_back({l, r});
            } else {
                throw std::invalid_argument("unknown directive '" + kw + "'");
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument(".sts line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    // letters used in rules must be declared
    for (const auto& r : out.rules)
        for (char c : r.lhs + r.rhs)
            if (std::find(out.alphabet.begin(), out.alphabet.end(), c) == out.alphabet.end())
                throw std::invalid_argument(std::string(".sts: undeclared letter '") + c + "'");
    return out;
}

Signature word_signature(const SemiThueSystem& s) {
    Signature sig;
    for (char c : s.alphabet) sig.add(std::string(1, c), 1);
    sig.add("#", 0);
    return sig;
}

Trs embed_semithue(const SemiThueSystem& s) {
    Trs out;
    out.sig = word_signature(s);
    for (const auto& r : s.rules) {
        Term x = Term::var("x");
        std::function<Term(const std::string&, Term)> wrap = [&](const std::string& w, Term tail) {
            for (auto it = w.rbegin(); it != w.rend(); ++it)
                tail = Term::fun(std::string(1, *it), {tail});
            return tail;
        };
        out.rules.push_back({wrap(r.lhs, x), wrap(r.rhs, x)});
    }
    return out;
}

Term word_to_term(const std::string& w, bool closed) {
    Term tail = closed ? Term::fun("#") : Term::var("x");
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        tail = Term::fun(std::string(1, *it), {tail});
    return tail;
}

std::optional<std::string> term_to_word(const Term& t) {
    std::string out;
    const Term* cur = &t;
    while (!cur->is_var() && cur->arity() == 1) {
        out += cur->head();
        cur = &cur->args()[0];
    }
    if (cur->is_var() || cur->head() != "#" || cur->arity() != 0) return std::nullopt;
    return out;
}

// --- derivation algebra -----------------------------------------------------

WordDerivation WordDerivation::trivial(std::string v) {
    WordDerivation d;
    d.trivial_word_ = std::move(v);
    return d;
}

WordDerivation WordDerivation::step(std::string u, WordRule r, std::string w) {
    WordDerivation d;
    d.steps_.emplace_back(std::move(u), std::move(r), std::move(w));
    return d;
}

std::string WordDerivation::boundary_minus() const {
    if (is_trivial()) return trivial_word_;
    const auto& [u, r, w] = steps_.front();
    return u + r.lhs + w;
}

std::string WordDerivation::boundary_plus() const {
    if (is_trivial()) return trivial_word_;
    const auto& [u, r, w] = steps_.back();
    return u + r.rhs + w;
}

WordDerivation WordDerivation::left_act(const std::string& u) const {
    WordDerivation d = *this;
    if (d.is_trivial()) {
        d.trivial_word_ = u + d.trivial_word_;
        return d;
    }
    for (auto& [ui, r, wi] : d.steps_) ui = u + ui;
    return d;
}

WordDerivation WordDerivation::right_act(const std::string& v) const {
    WordDerivation d = *this;
    if (d.is_trivial()) {
        d.trivial_word_ += v;
        return d;
    }
    for (auto& [ui, r, wi] : d.steps_) wi += v;
    return d;
}

bool WordDerivation::is_right_minimal() const {
    if (is_trivial()) return trivial_word_.empty();
    // D = D'.v' iff every right context ends with v'; minimal iff the longest
    // common suffix of the right contexts is empty
    const std::string& first = std::get<2>(steps_.front());
    size_t common = first.size();
    for (const auto& [u, r, w] : steps_) {
        size_t k = 0;
        while (k < common && k < w.size() && w[w.size() - 1 - k] == first[first.size() - 1 - k])
            ++k;
        common = k;
        if (common == 0) return true;
    }
    return common == 0;
}

WordDerivation compose(const WordDerivation& a, const WordDerivation& b) {
    if (a.boundary_plus() != b.boundary_minus())
        throw std::invalid_argument("compose: boundary mismatch ('" + a.boundary_plus() +
                                    "' vs '" + b.boundary_minus() + "')");
    if (a.is_trivial()) return b;
    if (b.is_trivial()) return a;
    WordDerivation d = a;
    d.steps_.insert(d.steps_.end(), b.steps_.begin(), b.steps_.end());
    return d;
}

bool equiv(const WordDerivation& a, const WordDerivation& b) {
    return a.boundary_minus() == b.boundary_minus() && a.boundary_plus() == b.boundary_plus();
}

}  // namespace bure
