#ifndef BURE_REWRITING_HPP
#define BURE_REWRITING_HPP

#include <optional>
#include <string>
#include <vector>

#include "bure/term.hpp"

namespace bure {

struct Rule {
    Term lhs;
    Term rhs;

    bool left_linear() const { return lhs.linear(); }
    bool linear() const { return lhs.linear() && rhs.linear(); }
    bool right_ground() const { return rhs.ground(); }
    int size() const { return lhs.size() + rhs.size(); }
    std::string to_string() const { return lhs.to_string() + " -> " + rhs.to_string(); }
    bool operator<(const Rule& o) const {
        return std::tie(lhs, rhs) < std::tie(o.lhs, o.rhs);
    }
    bool operator==(const Rule& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

class Trs {
public:
    Signature sig;
    std::vector<Rule> rules;

    void validate() const;  // Var(rhs) ⊆ Var(lhs), symbols declared
    int size() const;       // ‖R‖
    int max_lhs_depth() const;  // d
    int max_lhs_var_positions() const;  // A(R)
    std::string to_string() const;
};

Trs parse_trs(const std::string& text);

struct Step {
    Position pos;
    int rule;  // index into Trs::rules
    Substitution subst;
};

// A derivation: start term plus validated steps.
class Derivation {
public:
    Derivation(const Trs& r, Term start);
    // appends a step; throws if the redex does not match
    void push(const Position& u, int rule_index);
    void push(const Step& s);

    const Term& start() const { return terms_.front(); }
    const Term& end() const { return terms_.back(); }
    const std::vector<Term>& terms() const { return terms_; }
    const std::vector<Step>& steps() const { return steps_; }
    int length() const { return static_cast<int>(steps_.size()); }
    const Trs& system() const { return *trs_; }

private:
    const Trs* trs_;
    std::vector<Term> terms_;
    std::vector<Step> steps_;
};

// All redexes of t, in (position, rule index) lexicographic order.
std::vector<std::tuple<Position, int, Term>> one_step_rewrites(const Trs& r, const Term& t);

// --- marked rewriting -----------------------------------------------------

struct MarkedStepResult {
    Term result;      // C̄[r σ̿]
    Term marked_lhs;  // l̄: the marked occurrence of the rule lhs (pattern with variables)
    bool wbu;         // the step satisfies the weakly bottom-up clauses
};

// One marked step at position u with rule i; marks of the redex come from s̄.
MarkedStepResult marked_step(const Trs& r, const Term& marked, const Position& u, int rule_index);

struct MarkedDerivation {
    Term start;
    std::vector<Term> terms;        // marked s̄_0 .. s̄_n
    std::vector<Term> marked_lhss;  // l̄_i per step
    std::vector<bool> step_wbu;
    std::vector<Step> steps;
};

// Deterministic marked lift of a derivation (start marks given by `start`,
// which must erase to D.start()).
MarkedDerivation lift_marked(const Trs& r, const Derivation& d, const Term& start);
MarkedDerivation lift_marked(const Trs& r, const Derivation& d);  // unmarked start

bool is_wbu(const MarkedDerivation& d);

struct BuClass {
    bool wbu = false;
    int max_mark = 0;      // k: derivation is bu(k)
    int max_lhs_mark = 0;  // j: derivation is bu^-(j+1)
};
BuClass classify_bu(const MarkedDerivation& d);

// Reorders a derivation of a linear system into one with the same endpoints
// and length whose marked lift is wbu.
Derivation wbu_reorder(const Trs& r, const Derivation& d);

// --- syntactic class predicates --------------------------------------------

struct ClassFlags {
    bool linear = false;
    bool left_linear = false;
    bool right_ground = false;
    bool shallow = false;
    bool growing = false;
};
ClassFlags class_predicates(const Trs& r);

// Smallest bound justified by a class lemma: right-ground -> 0,
// shallow/linear growing -> 1.
std::optional<std::pair<int, std::string>> known_bu_bound(const Trs& r);

}  // namespace bure

#endif
