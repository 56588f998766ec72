#ifndef BURE_GROUND_HPP
#define BURE_GROUND_HPP

#include <map>
#include <string>
#include <vector>

#include "bure/fta.hpp"
#include "bure/rewriting.hpp"
#include "bure/term.hpp"

namespace bure {

struct GroundRule {
    Term lhs;
    Term rhs;
    bool operator<(const GroundRule& o) const {
        return std::tie(lhs, rhs) < std::tie(o.lhs, o.rhs);
    }
    bool operator==(const GroundRule& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

// Finite set of ground rules over a host signature (typically the term
// signature plus state constants, marked symbols opaque).
struct GroundTrs {
    Signature host;
    std::vector<GroundRule> rules;

    void validate() const;
    Trs as_trs() const;  // for serialization / rewriting with the generic engine
    GroundTrs inverted() const;
    std::string to_string() const;  // .trs format with `state q/0` lines
};

GroundTrs parse_ground_trs(const std::string& text);

// A rule family l -> r with shared variables; every variable x is
// instantiated by one of finitely many paired images (its lhs occurrence and
// its rhs occurrence may differ, e.g. by a mark action).
struct SchematicRule {
    Term lhs;
    Term rhs;
    std::map<std::string, std::vector<std::pair<Term, Term>>> images;
};

// Ancestor closure: L(result) = { s ground | s ->*_G t for some t in L(target) }.
// Schematic rules are instantiated lazily: an instance materializes when its
// rhs reduces to a state of the current automaton (the saturation inference
// "l -> r, r theta ->* q"). The result's states are named deterministically.
Fta pre_star(const GroundTrs& g, const Fta& target);
Fta pre_star(const GroundTrs& g, const std::vector<SchematicRule>& schematic, const Fta& target);

// Descendant closure via the inverted system.
Fta post_star(const GroundTrs& g, const Fta& source);

}  // namespace bure

#endif
