#include "tabula/trace.hpp"

#include <utility>

namespace tabula {

namespace {

bool needs_work(const SignedFormulaList& list, const TraceOptions& options) {
    if (is_literal_set(list)) return false;
    if (options.early_closure && has_opposite_literals(list)) return false;
    return true;
}

// The formulae a rule writes at each successor, before merging with the
// surrounding set; duplicates within one successor collapse.
std::vector<SignedFormulaList> explicit_sets(const SignedFormula& used) {
    switch (rule_for(used)) {
        case Rule::TAnd:
            return {list_union({}, {{Sign::T, used.formula.left()},
                                    {Sign::T, used.formula.right()}})};
        case Rule::FAnd:
            return {{{Sign::F, used.formula.left()}}, {{Sign::F, used.formula.right()}}};
        case Rule::Neg:
            return {{{opposite(used.sign), used.formula.body()}}};
        case Rule::Lit:
            break;
    }
    throw NotCompositeError();
}

} // namespace

std::vector<FlatTraceStep> run_flat_trace(const SignedFormulaList& gamma,
                                          Strategy& strategy,
                                          const TraceOptions& options) {
    std::vector<FlatTraceStep> steps;
    std::vector<SignedFormulaList> worklist{gamma};
    steps.push_back({worklist, std::nullopt});
    while (true) {
        std::size_t index = worklist.size();
        for (std::size_t i = 0; i < worklist.size(); ++i) {
            if (needs_work(worklist[i], options)) {
                index = i;
                break;
            }
        }
        if (index == worklist.size()) break;
        auto selected = select_formula(worklist[index], strategy);
        Expansion expansion = expand(worklist[index], *selected);
        worklist[index] = std::move(expansion.successors[0]);
        if (expansion.successors.size() == 2) {
            worklist.insert(worklist.begin() + static_cast<std::ptrdiff_t>(index) + 1,
                            std::move(expansion.successors[1]));
        }
        steps.push_back({worklist, FlatAction{index, expansion.rule, expansion.used}});
    }
    return steps;
}

namespace {

TreeOfLists build_list_node(SignedFormulaList content, Strategy& strategy,
                            const TraceOptions& options) {
    TreeOfLists node;
    node.content = std::move(content);
    if (!needs_work(node.content, options)) return node;
    auto selected = select_formula(node.content, strategy);
    Expansion expansion = expand(node.content, *selected);
    node.rule = expansion.rule;
    node.used = expansion.used;
    node.children.reserve(expansion.successors.size());
    for (auto& successor : expansion.successors) {
        node.children.push_back(build_list_node(std::move(successor), strategy, options));
    }
    return node;
}

} // namespace

TreeOfLists build_tree_of_lists(const SignedFormulaList& gamma, Strategy& strategy,
                                const TraceOptions& options) {
    return build_list_node(gamma, strategy, options);
}

namespace {

void collect_tree_models(const TreeOfLists& node, ModelSet& out) {
    if (!node.children.empty()) {
        for (const auto& child : node.children) collect_tree_models(child, out);
        return;
    }
    if (is_literal_set(node.content)) {
        out.merge(lmods(node.content));
        return;
    }
    if (has_opposite_literals(node.content)) return;
    throw IncompleteTreeError();
}

} // namespace

ModelSet tree_models(const TreeOfLists& tree) {
    ModelSet result;
    collect_tree_models(tree, result);
    return result;
}

namespace {

Tableau build_tableau_node(const SignedFormulaList& implicit, SignedFormulaList explicit_here,
                           Strategy& strategy, const TraceOptions& options) {
    Tableau node;
    node.explicit_set = std::move(explicit_here);
    if (!needs_work(implicit, options)) return node;
    auto selected = select_formula(implicit, strategy);
    Expansion expansion = expand(implicit, *selected);
    node.used = expansion.used;
    auto children_explicit = explicit_sets(expansion.used);
    node.children.reserve(expansion.successors.size());
    for (std::size_t i = 0; i < expansion.successors.size(); ++i) {
        node.children.push_back(build_tableau_node(
            expansion.successors[i], std::move(children_explicit[i]), strategy, options));
    }
    return node;
}

} // namespace

Tableau build_tableau(const SignedFormulaList& gamma, Strategy& strategy,
                      const TraceOptions& options) {
    return build_tableau_node(gamma, gamma, strategy, options);
}

const TreeOfLists& node_at(const TreeOfLists& tree, const NodePath& path) {
    const TreeOfLists* node = &tree;
    for (std::size_t index : path) {
        if (index >= node->children.size()) throw BadPathError();
        node = &node->children[index];
    }
    return *node;
}

const Tableau& node_at(const Tableau& t, const NodePath& path) {
    const Tableau* node = &t;
    for (std::size_t index : path) {
        if (index >= node->children.size()) throw BadPathError();
        node = &node->children[index];
    }
    return *node;
}

SignedFormulaList implicit_set(const Tableau& t, const NodePath& path) {
    const Tableau* node = &t;
    SignedFormulaList implicit = t.explicit_set;
    for (std::size_t index : path) {
        if (index >= node->children.size() || !node->used) throw BadPathError();
        const Tableau& child = node->children[index];
        implicit = list_union(split(implicit, *node->used), child.explicit_set);
        node = &child;
    }
    return implicit;
}

SignedFormulaList branch_union_check(const Tableau& t, const NodePath& leaf_path) {
    const Tableau* node = &t;
    SignedFormulaList explicit_union = t.explicit_set;
    SignedFormulaList used_on_path;
    for (std::size_t index : leaf_path) {
        if (index >= node->children.size() || !node->used) throw BadPathError();
        append_unique(used_on_path, *node->used);
        node = &node->children[index];
        explicit_union = list_union(std::move(explicit_union), node->explicit_set);
    }
    if (!node->children.empty()) throw BadPathError("path does not address a leaf");
    SignedFormulaList result;
    for (const auto& sf : explicit_union) {
        if (!contains(used_on_path, sf)) result.push_back(sf);
    }
    return result;
}

namespace {

TreeOfLists rebuild_full_node(const Tableau& node, SignedFormulaList implicit) {
    TreeOfLists out;
    out.content = std::move(implicit);
    if (node.children.empty()) {
        if (!is_literal_set(out.content) && !has_opposite_literals(out.content)) {
            throw IncompleteTableauError();
        }
        return out;
    }
    if (!node.used) {
        throw IncompleteTableauError("a node has children but no used formula");
    }
    out.rule = rule_for(*node.used);
    out.used = node.used;
    SignedFormulaList remainder = split(out.content, *node.used);
    out.children.reserve(node.children.size());
    for (const auto& child : node.children) {
        out.children.push_back(
            rebuild_full_node(child, list_union(remainder, child.explicit_set)));
    }
    return out;
}

} // namespace

TreeOfLists to_tree_of_lists(const Tableau& t) {
    return rebuild_full_node(t, t.explicit_set);
}

BranchStatus branch_status(const Tableau& t, const NodePath& leaf_path) {
    if (!node_at(t, leaf_path).children.empty()) {
        throw BadPathError("path does not address a leaf");
    }
    SignedFormulaList implicit = implicit_set(t, leaf_path);
    if (!is_literal_set(implicit)) return BranchStatus::Incomplete;
    if (has_opposite_literals(implicit)) return BranchStatus::Closed;
    return BranchStatus::Open;
}

namespace {

void collect_tableau_models(const Tableau& node, const SignedFormulaList& implicit,
                            ModelSet& out) {
    if (node.children.empty()) {
        if (is_literal_set(implicit)) {
            out.merge(lmods(implicit));
            return;
        }
        if (has_opposite_literals(implicit)) return;
        throw IncompleteTableauError();
    }
    if (!node.used) {
        throw IncompleteTableauError("a node has children but no used formula");
    }
    SignedFormulaList remainder = split(implicit, *node.used);
    for (const auto& child : node.children) {
        collect_tableau_models(child, list_union(remainder, child.explicit_set), out);
    }
}

} // namespace

ModelSet tableau_models(const Tableau& t) {
    ModelSet result;
    collect_tableau_models(t, t.explicit_set, result);
    return result;
}

} // namespace tabula
