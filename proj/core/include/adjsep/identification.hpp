#pragma once

#include <optional>
#include <string>

#include "adjsep/graph.hpp"

namespace adjsep {

enum class FormulaKind { adjustment, plain, parent_adjustment, partition_product, not_found };

// A closed-form expression for P(y | do(x)). Only the fields of the active
// kind are meaningful.
struct IdentFormula {
    FormulaKind kind = FormulaKind::not_found;
    NodeSet X, Y;
    NodeSet Z;       // adjustment set, or Pa(X) ∖ Y for parent adjustment
    NodeSet y_pa;    // Y ∩ Pa(X)
    NodeSet y_np;    // Y ∖ Pa(X)
    // partition case: ∅ is an adjustment set / the plain formula holds
    bool empty_adjustment_valid = false;
    bool plain_applies = false;
};

// deterministic text with alphabetized node lists
std::string render(const MixedGraph& g, const IdentFormula& f);
const char* kind_name(FormulaKind k);

// X and Y are separated once the edges into X are removed, so P(y | do(x)) = P(y)
bool plain_formula_applies(const MixedGraph& g, const NodeSet& X, const NodeSet& Y);

// X must be a single node. nullopt unless every parent of X lies in R.
std::optional<IdentFormula> parent_adjustment(const MixedGraph& g, const NodeSet& X, const NodeSet& Y,
                                              const NodeSet& R);

// X and Y must partition the nodes
IdentFormula partition_effect(const MixedGraph& g, const NodeSet& X, const NodeSet& Y);

enum class Label { bc, cbc, cbc_plus, extended, undecided };
const char* label_name(Label l);

struct Classification {
    Label label = Label::undecided;
    IdentFormula formula;
};

// Strongest label in BC, CBC, CBC+ (CBC or plain formula), UNDECIDED. With
// `extended`, parent adjustment and the partition case give EXTENDED before
// falling back to UNDECIDED.
Classification classify(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& R,
                        bool extended = false);

}  // namespace adjsep
