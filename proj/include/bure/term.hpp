#ifndef BURE_TERM_HPP
#define BURE_TERM_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bure {

// Ranked signature: symbol name -> arity. Variables are identifiers that are
// not declared here.
class Signature {
public:
    Signature() = default;
    Signature(std::initializer_list<std::pair<std::string, int>> syms);

    void add(const std::string& name, int arity);
    bool contains(const std::string& name) const;
    int arity(const std::string& name) const;  // throws if absent
    const std::map<std::string, int>& symbols() const { return table_; }
    std::vector<std::string> nullary() const;
    bool is_unary() const;  // all arities <= 1

private:
    std::map<std::string, int> table_;
};

// Tree positions: 1-based child indices, empty path = root (epsilon).
using Position = std::vector<int>;

std::string position_to_string(const Position& p);
bool is_prefix(const Position& u, const Position& v);         // u <= v
bool is_strict_prefix(const Position& u, const Position& v);  // u < v

// A term over a marked signature. Marks default to 0 and F is identified
// with F^0, so the same type serves both plain and marked terms. Variables
// always carry mark 0.
class Term {
public:
    Term() : head_("?"), var_(true) {}
    static Term var(const std::string& name);
    static Term fun(const std::string& name, std::vector<Term> args = {}, int mark = 0);

    bool is_var() const { return var_; }
    const std::string& head() const { return head_; }
    int mark() const { return mark_; }
    const std::vector<Term>& args() const { return args_; }
    int arity() const { return static_cast<int>(args_.size()); }

    bool ground() const;
    bool linear() const;
    int size() const;       // Card(Pos(t))
    int depth() const;      // dpt: variables/constants have depth 1 ... see spec of dpt below
    std::set<std::string> variables() const;
    std::set<Position> positions() const;
    std::set<Position> var_positions() const;

    const Term& subterm(const Position& u) const;  // throws on bad position
    bool has_position(const Position& u) const;
    Term replace(const Position& u, const Term& s) const;

    Term with_mark(int m) const;

    std::string to_string() const;  // marks print as name^k, ^0 suppressed

    bool operator==(const Term& o) const;
    bool operator!=(const Term& o) const { return !(*this == o); }
    bool operator<(const Term& o) const;

private:
    std::string head_;
    int mark_ = 0;
    bool var_ = false;
    std::vector<Term> args_;
};

// Substitutions: finite maps variable -> term.
using Substitution = std::map<std::string, Term>;

Term substitute(const Term& pattern, const Substitution& s);

// Linear matching: Some(sigma) iff pattern*sigma == subject, minimal support.
// Marks on the pattern must match the subject exactly at non-variable
// positions. Throws on a non-linear pattern.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

// --- mark layer ---------------------------------------------------------

Term erase_marks(const Term& t);
Term mark_uniform(const Term& t, int i);      // t^<i>: every non-variable mark = i
Term odot(const Term& t, int n);              // right action of (N, max, 0)
int max_mark(const Term& t);
int min_mark(const Term& t);
int max_mark_above(const Position& u, const Term& t);  // max over v < u; u != eps
bool is_m_increasing(const Term& t);
// M(t, x) = sup{m(t/w) | w < pos(t, x)} + 1; x must occur exactly once.
int mark_bound_M(const Term& t, const std::string& x);

// --- tree domains -------------------------------------------------------

using TreeDomain = std::set<Position>;

bool is_tree_domain(const TreeDomain& p);
// P' subdomain of P: a domain, and u.i in P' with u.(i+1) in P forces
// u.(i+1) in P' (a node keeps all or none of its children).
bool is_subdomain(const TreeDomain& sub, const TreeDomain& p);
// CL(Q, P): least subdomain of P containing Q. Throws if Q is not within P.
TreeDomain domain_closure(const TreeDomain& q, const TreeDomain& p);
bool is_antichain(const std::set<Position>& y);
bool is_transversal(const std::set<Position>& t, const TreeDomain& p);
// Tr(Y, P): smallest transversal containing the antichain Y (lemma
// construction; returns the empty set for empty Y).
std::set<Position> smallest_transversal(const std::set<Position>& y, const TreeDomain& p);

// --- contexts -----------------------------------------------------------

inline const std::string kHole = "[]";

bool is_context(const Term& t);             // exactly one occurrence of the hole
Position hole_position(const Term& c);
Term plug(const Term& c, const Term& t);    // C[t]

// --- parsing / printing -------------------------------------------------

// Term literal grammar: ident | ident^k | f(t1,...,tn) | [] .
// Identifiers not in `sig` parse as variables. Arities are checked.
Term parse_term(const std::string& text, const Signature& sig);

}  // namespace bure

#endif
