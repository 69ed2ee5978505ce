#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tabula/engine.hpp"
#include "tabula/formula.hpp"

namespace tabula {

class BadPathError : public Error {
public:
    using Error::Error;
    BadPathError() : Error("path does not address a node") {}
};

class IncompleteTreeError : public Error {
public:
    IncompleteTreeError() : Error("a leaf still holds a composite formula") {}
};

class IncompleteTableauError : public Error {
public:
    using Error::Error;
    IncompleteTableauError()
        : Error("a leaf's implicit set still holds a composite formula") {}
};

struct TraceOptions {
    // Stop extending a branch as soon as it holds opposite literals, even
    // when composites remain. Off by default: every branch is decomposed
    // down to literals.
    bool early_closure = false;
};

// The rewrite that produced a step's worklist: which list was replaced,
// by which rule, decomposing which formula.
struct FlatAction {
    std::size_t list_index;
    Rule rule;
    SignedFormula used;
};

// One state of the list-of-lists rewriting run; the first step has no
// action and carries the initial worklist.
struct FlatTraceStep {
    std::vector<SignedFormulaList> worklist;
    std::optional<FlatAction> action;
};

// Rewrites [gamma] step by step, always working on the leftmost list that
// still needs decomposition and replacing it in place with the successors
// of one expansion. The final step's worklist is all literal lists.
std::vector<FlatTraceStep> run_flat_trace(const SignedFormulaList& gamma,
                                          Strategy& strategy,
                                          const TraceOptions& options = {});

// Trace tree whose every node carries the full formula list at that point.
// Internal nodes are labeled with the rule and formula they decompose;
// leaves carry Rule::Lit.
struct TreeOfLists {
    SignedFormulaList content;
    Rule rule = Rule::Lit;
    std::optional<SignedFormula> used;
    std::vector<TreeOfLists> children;
};

// Child-index route from the root; {} addresses the root itself.
using NodePath = std::vector<std::size_t>;

TreeOfLists build_tree_of_lists(const SignedFormulaList& gamma, Strategy& strategy,
                                const TraceOptions& options = {});

// Union of lmods over the leaves. A leaf holding opposite literals counts
// as closed (no models) even when composites remain; a leaf that is
// composite and not closed raises IncompleteTreeError.
ModelSet tree_models(const TreeOfLists& tree);

// Trace tree that stores per node only the formulae produced at that node
// (the explicit set) plus the formula decomposed there; the full implicit
// set is recomputed on demand. The root's explicit set is the whole input.
struct Tableau {
    SignedFormulaList explicit_set;
    std::optional<SignedFormula> used;
    std::vector<Tableau> children;
};

Tableau build_tableau(const SignedFormulaList& gamma, Strategy& strategy,
                      const TraceOptions& options = {});

const TreeOfLists& node_at(const TreeOfLists& tree, const NodePath& path);
const Tableau& node_at(const Tableau& t, const NodePath& path);

// The full set at a node: the root's explicit set at the root, otherwise
// (parent's implicit set minus parent's used formula) + own explicit set,
// computed top-down.
SignedFormulaList implicit_set(const Tableau& t, const NodePath& path);

// Union of the explicit sets from the root to the leaf, minus every used
// formula on that path. Equal as a set to implicit_set at the leaf of any
// fully extended branch.
SignedFormulaList branch_union_check(const Tableau& t, const NodePath& leaf_path);

// Rebuilds the full tree this tableau abbreviates: content is the implicit
// set, labels come from each node's used formula.
TreeOfLists to_tree_of_lists(const Tableau& t);

enum class BranchStatus : std::uint8_t { Incomplete, Closed, Open };

// Incomplete while the leaf's implicit set holds any composite; Closed on
// opposite literals; Open otherwise.
BranchStatus branch_status(const Tableau& t, const NodePath& leaf_path);

// Union of lmods over the leaves' implicit sets; closure and completeness
// are judged as in tree_models.
ModelSet tableau_models(const Tableau& t);

} // namespace tabula
