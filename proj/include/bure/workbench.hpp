#ifndef BURE_WORKBENCH_HPP
#define BURE_WORKBENCH_HPP

#include <map>
#include <string>
#include <vector>

#include "bure/fta.hpp"
#include "bure/rewriting.hpp"
#include "bure/semithue.hpp"

namespace bure {

// Named catalogue of the running example systems, each tagged with its
// documented class.
struct Fixture {
    std::string name;
    Trs system;
    std::string class_tag;  // e.g. "BU^-(2)", "growing, BU(1)"
};

std::vector<Fixture> fixtures();
const Fixture& fixture(const std::string& name);

// The one-state automaton accepting exactly { a }.
Fta automaton_Aa();

// --- 3-SAT hardness generator ------------------------------------------------

struct Cnf3 {
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;  // signed 1-based literals
};

Cnf3 parse_dimacs(const std::string& text);
bool truth_table_sat(const Cnf3& f);

struct Sat3Artifacts {
    Trs system;  // R_phi = PL ∪ { special rule }
    Fta source;  // accepts { 1 }
    Fta target;  // accepts L(G, T2)
    Term source_term;
};

Sat3Artifacts gen_3sat(const Cnf3& f);

// SAT iff the source term is an ancestor of the target language (uses the
// cascade-1 bu^-(1) pipeline; R_phi is linear BU^-(1)).
bool sat3_accessible(const Sat3Artifacts& art);

}  // namespace bure

#endif
