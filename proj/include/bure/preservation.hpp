#ifndef BURE_PRESERVATION_HPP
#define BURE_PRESERVATION_HPP

#include <set>
#include <vector>

#include "bure/fta.hpp"
#include "bure/ground.hpp"
#include "bure/rewriting.hpp"

namespace bure {

// All subterms of left-hand sides up to variable renaming (canonical
// left-to-right leaf order), deduplicated.
std::set<Term> slhs(const Trs& r);

// Canonical variable renaming in left-to-right leaf order (v1, v2, ...).
Term canonical_rename(const Term& t);

// Replaces variable-lhs rules by all their depth-1 context closures over
// F ∪ {f1}. Returns the system unchanged when no variable lhs exists.
struct VarLhsElimination {
    Trs system;
    bool used = false;
    std::string wrapper = "f1";
};
VarLhsElimination eliminate_variable_lhs(const Trs& r);

// The compiled ground system S1 over (F ∪ Q)^{<=K}: rule families
// l̄τ̄ -> r τ̿ kept schematic (per-variable image domains), plus the marked
// automaton part.
struct CompiledSystem {
    Signature host;                        // F plus state constants
    std::vector<SchematicRule> schematic;  // marked S1 rule families
    GroundTrs automaton_rules;             // A^{<=K} transitions as ground rules
    Fta marked_automaton;                  // A^{<=K}
    std::set<std::string> base_states;     // states of A (unmarked names)
    std::set<std::string> base_finals;
    int K = 0;
    int cascade = 1;
    int d = 0;

    // Explicit S1 (used by --emit-ground and the exact-rule tests). Guarded
    // by an instance cap.
    GroundTrs materialize(size_t cap = 1u << 22) const;
};

// Marked build: marks on l̄ and the images range over all m-increasing
// assignments <= K with lhs root mark 0 and image root marks at least the
// mark of the variable's father in l̄; images are cascade substitutions
// (cascade-1 layers into SLHS(R), final layer into A's states).
CompiledSystem build_S1(const Trs& r, const Fta& a, int K, int cascade);

// Unmarked variant (the S1^0 pipeline): no mark enumeration at all.
CompiledSystem build_S1_unmarked(const Trs& r, const Fta& a, int cascade);

// Marks erased from every materialized rule, duplicates removed.
GroundTrs erase_marks_system(const CompiledSystem& c);

struct AncestorOptions {
    bool standardize = true;           // powerset-standardize the target automaton
    CompiledSystem* compiled = nullptr;  // when set, receives the compiled system
};

// L = (k->*_R)[L(a)]: unmarked terms with a bu(k) derivation into L(a).
Fta ancestors_k(const Trs& r, const Fta& a, int k, const AncestorOptions& opt = {});

// L = (->*_R)[L(a)] for R in BU(k): unmarked S1^0 pipeline with cascade k+1.
Fta ancestors_full(const Trs& r, const Fta& a, int k, const AncestorOptions& opt = {});

// Cheaper cascade-k build for callers targeting bu^-(k) (k >= 1); for k = 1
// this is the plain tau: V -> Q construction.
Fta ancestors_bu_minus(const Trs& r, const Fta& a, int k, const AncestorOptions& opt = {});

// L = (k+1-toro*)[T(F^{<=k+1}) \ T(F^{<=k})] ∩ T(F): unmarked terms from
// which some wbu derivation with marks <= k+1 reaches a mark equal to k+1.
Fta sbu_witness_set(const Trs& r, int k);

bool decide_sbu(const Trs& r, int k);

}  // namespace bure

#endif
