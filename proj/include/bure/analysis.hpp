#ifndef BURE_ANALYSIS_HPP
#define BURE_ANALYSIS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bure/rewriting.hpp"
#include "bure/semithue.hpp"
#include "bure/term.hpp"

namespace bure {

// Positions w where s sticks out of t; strict iff s/w is not a variable.
// t must not be a variable.
std::vector<std::pair<Position, bool>> sticks_out(const Term& s, const Term& t);

struct SgArc {
    int from = 0;  // rule indices, 1-based
    int to = 0;
    char label = 'a';  // a, b, c, d
    int weight() const { return label == 'a' || label == 'b' ? 1 : 0; }
    bool operator<(const SgArc& o) const {
        return std::tie(from, to, label) < std::tie(o.from, o.to, o.label);
    }
};

struct StickingOutGraph {
    int vertices = 0;  // rules 1..n
    std::set<SgArc> arcs;
};

StickingOutGraph build_sg(const Trs& r);

struct WeightResult {
    bool finite = true;
    int weight = 0;  // meaningful when finite
    bool operator==(const WeightResult& o) const {
        return finite == o.finite && (!finite || weight == o.weight);
    }
};

// Infinite iff some cycle contains a weight-1 arc (SCC condensation);
// otherwise the maximal path weight.
WeightResult graph_weight(const StickingOutGraph& g);

// Some(W+1) when the weight is finite (W(SG(R)) = k-1 implies SBU(k)).
std::optional<int> sbu_sufficient_bound(const Trs& r);

std::string sg_to_dot(const StickingOutGraph& g);

// Branch rewriting system: u -> v over F for every rule l -> r and shared
// variable x with ux a branch word of l and vx a branch word of r. Symbol
// names must be single characters.
SemiThueSystem branch_system(const Trs& r);

// A minimal k-right-overlap candidate; D is kept by its boundary words.
struct Overlap {
    std::string d_start;  // ∂-(D)
    std::string d_end;    // ∂+(D) = u · lhs(R) · v
    int rule_r = 0;       // R (0-based index)
    int rule_rp = 0;      // R'
    std::string u, v, up, w;
};

// Candidate tuples for length-increasing systems satisfying condition C,
// bounded by |u| <= (suffix-chain-length + k) * max lhs length.
std::vector<Overlap> minimal_right_overlaps(const SemiThueSystem& s, int k);

// Resolved iff a bu(k) derivation from ∂-(D)·w to u'·rhs(R') exists (exact
// marked-word BFS).
bool is_overlap_resolved(const SemiThueSystem& s, const Overlap& o, int k);

// k >= 1: all minimal k-right-overlaps resolved. k = 0: an STS is BU(0)
// iff every rule has lhs = rhs (any real step stamps a positive mark).
bool decide_bu_k_sts(const SemiThueSystem& s, int k);

}  // namespace bure

#endif
