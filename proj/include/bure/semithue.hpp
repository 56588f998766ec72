#ifndef BURE_SEMITHUE_HPP
#define BURE_SEMITHUE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bure/rewriting.hpp"
#include "bure/term.hpp"

namespace bure {

struct WordRule {
    std::string lhs;
    std::string rhs;
    bool operator<(const WordRule& o) const {
        return std::tie(lhs, rhs) < std::tie(o.lhs, o.rhs);
    }
    bool operator==(const WordRule& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

struct SemiThueSystem {
    std::vector<char> alphabet;
    std::vector<WordRule> rules;

    bool length_increasing() const;  // |u| <= |v| per rule
    // condition C: the graph with an edge i -> j iff rhs_i is a suffix of
    // lhs_j is acyclic.
    bool condition_C() const;
    int max_lhs_len() const;
    // longest path (number of nodes) in the suffix-overlap graph; only
    // meaningful under condition C.
    int suffix_chain_length() const;
    std::string to_string() const;
};

SemiThueSystem parse_sts(const std::string& text);

// Words-as-terms embedding: unary signature A plus nullary #.
Signature word_signature(const SemiThueSystem& s);
Trs embed_semithue(const SemiThueSystem& s);
// closed: F_0(w) = w(#); open: F_1(w) = w(x)
Term word_to_term(const std::string& w, bool closed);
std::optional<std::string> term_to_word(const Term& t);  // for closed unary terms

// --- derivation algebra (§-style word derivations) -------------------------

// Either the trivial derivation D_v or a nonempty sequence of triples
// (u_i, rule_i, w_i) with matching boundaries.
class WordDerivation {
public:
    static WordDerivation trivial(std::string v);
    static WordDerivation step(std::string u, WordRule r, std::string w);

    bool is_trivial() const { return steps_.empty(); }
    int length() const { return static_cast<int>(steps_.size()); }
    std::string boundary_minus() const;  // ∂-
    std::string boundary_plus() const;   // ∂+
    const std::vector<std::tuple<std::string, WordRule, std::string>>& steps() const {
        return steps_;
    }

    WordDerivation left_act(const std::string& u) const;   // u·D
    WordDerivation right_act(const std::string& v) const;  // D·v
    bool is_right_minimal() const;

    friend WordDerivation compose(const WordDerivation& a, const WordDerivation& b);
    friend bool equiv(const WordDerivation& a, const WordDerivation& b);

private:
    std::string trivial_word_;
    std::vector<std::tuple<std::string, WordRule, std::string>> steps_;
};

WordDerivation compose(const WordDerivation& a, const WordDerivation& b);
bool equiv(const WordDerivation& a, const WordDerivation& b);

}  // namespace bure

#endif
