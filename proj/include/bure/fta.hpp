#ifndef BURE_FTA_HPP
#define BURE_FTA_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bure/term.hpp"

namespace bure {

// One transition of a bottom-up tree automaton: either
//   f^mark(q1,...,qm) -> q   (symbol transition, m >= 0)
// or
//   q -> r                   (epsilon transition, head empty)
struct Transition {
    std::string head;  // empty for epsilon
    int mark = 0;      // mark on the symbol (marked signatures)
    std::vector<std::string> from;  // argument states; for epsilon: {q}
    std::string to;

    bool is_epsilon() const { return head.empty(); }
    bool operator<(const Transition& o) const {
        return std::tie(head, mark, from, to) < std::tie(o.head, o.mark, o.from, o.to);
    }
    bool operator==(const Transition& o) const {
        return head == o.head && mark == o.mark && from == o.from && to == o.to;
    }
};

// Bottom-up finite tree automaton. The signature may contain marked symbols
// implicitly: a transition head (name, mark) stands for name^mark, with the
// arity taken from the unmarked name.
class Fta {
public:
    Signature sig;
    std::set<std::string> states;
    std::set<std::string> finals;
    std::set<Transition> transitions;

    void add_transition(Transition t);
    void validate() const;  // arity respect, declared states

    std::string to_string() const;  // .fta text format

    // States reachable from a ground term; state constants in the term reach
    // themselves. Epsilon-closed.
    std::set<std::string> reachable_states(const Term& t) const;
    bool member(const Term& t) const;

    std::set<std::string> eps_closure(const std::set<std::string>& qs) const;

    // States accessible by some ground term of the signature.
    std::set<std::string> accessible_states() const;
    bool language_empty() const;
};

Fta parse_fta(const std::string& text);

// L = T(F): single accepting sink state.
Fta all_terms_automaton(const Signature& f);

// Automaton accepting exactly the given ground terms.
Fta singleton_automaton(const Signature& f, const std::vector<Term>& terms);

// L(A) x L(B) intersection via synchronized product.
Fta product(const Fta& a, const Fta& b);

bool language_equal(const Fta& a, const Fta& b);

// A^{<=k}: every transition replicated over all mark patterns in [0,k];
// epsilon transitions preserve the mark. States become q^j.
Fta extend_marked(const Fta& a, int k);
std::string marked_state(const std::string& q, int j);

// Standard automata (constants are states, no nullary or epsilon rules,
// unique target per symbol and state tuple).
bool is_standard(const Fta& a);

// The hat-A powerset standardization. States: F_0 plus accessible subsets of
// A's states (named deterministically); language preserved.
Fta standardize(const Fta& a);

// A-reduct: the unique t' with Pos(t') = p and t ->*A t'. Requires a standard
// automaton (pass the unmarked standard automaton; marks on t are carried:
// a collapsed subtree becomes a state constant bearing its root's mark).
Term red(const Fta& standard, const Term& t, const TreeDomain& p);

// Accepts marked terms over signature `h` (state constants included as
// nullary symbols) that contain at least one mark equal to K; marks range
// over [0, K].
Fta mark_witness_automaton(const Signature& h, int K);

// Index over an automaton for fast repeated membership queries (bulk
// differential sweeps). States are interned to dense ids; epsilon edges are
// pre-closed.
class FtaRunner {
public:
    explicit FtaRunner(const Fta& a);

    std::set<int> states_of(const Term& t) const;
    // compose a parent state set from already computed child sets
    std::set<int> compose(const std::string& head, int mark,
                          const std::vector<const std::set<int>*>& child_sets) const;
    bool accepting(const std::set<int>& qs) const;
    bool member(const Term& t) const;

private:
    struct IdxTrans {
        std::vector<int> from;
        int to;
    };
    std::map<std::string, int> ids_;
    std::vector<std::vector<int>> eps_reach_;  // closed, includes self
    std::map<std::pair<std::string, int>, std::vector<IdxTrans>> by_head_;
    std::set<int> finals_;
    int id(const std::string& q) const;
};

}  // namespace bure

#endif
