#ifndef BURE_ORACLE_HPP
#define BURE_ORACLE_HPP

#include <set>
#include <string>
#include <vector>

#include "bure/rewriting.hpp"
#include "bure/semithue.hpp"
#include "bure/term.hpp"

namespace bure {

struct SearchBudget {
    int max_term_size = 10;
    int max_steps = 12;
    int max_mark = 8;
};

// All wbu marked successors of a marked term whose marks stay within
// `mark_bound` (single traversal; marks-above tracked incrementally).
std::vector<Term> wbu_marked_successors(const Trs& r, const Term& t, int mark_bound);

// Exhaustive bu(k)-reachability by BFS over marked terms, pruning marks > k
// and non-wbu steps. `truncated` reports whether any expansion hit the size
// or step budget (the reported set is exact when it stays false).
struct KbuReach {
    std::set<Term> terms;  // skeletons reachable from s by a bu(k) derivation
    bool truncated = false;
};
KbuReach kbu_reachable(const Trs& r, const Term& s, int k, const SearchBudget& b);

// Max mark over all wbu marked derivations from s within budget; stops early
// once budget.max_mark is witnessed.
struct MarkSup {
    int supremum = 0;
    bool truncated = false;
};
MarkSup wbu_mark_supremum(const Trs& r, const Term& s, const SearchBudget& b);

// Exact bu(k) word reachability for length-increasing systems: BFS over
// marked words (letter marks plus end-marker mark) of length <= |to|.
bool word_bu_reach(const SemiThueSystem& s, const std::string& from, const std::string& to, int k);

// Every reachable marked word (skeleton, letter marks, end mark) from an
// unmarked start, marks <= k, lengths <= maxlen. Exposed for the overlap
// enumeration and tests.
struct MarkedWord {
    std::string letters;
    std::vector<int> marks;
    int end_mark = 0;
    bool operator<(const MarkedWord& o) const {
        return std::tie(letters, marks, end_mark) < std::tie(o.letters, o.marks, o.end_mark);
    }
};
std::set<MarkedWord> word_bu_closure(const SemiThueSystem& s, const std::string& from, int k,
                                     size_t maxlen);

// All derivations from s of length <= max_steps, in deterministic
// depth-first order (a derivation precedes its extensions).
std::vector<Derivation> enumerate_derivations(const Trs& r, const Term& s, int max_steps);

}  // namespace bure

#endif
