#include "tabula/engine.hpp"

#include <algorithm>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tabula {

Rule rule_for(const SignedFormula& sf) noexcept {
    switch (sf.formula.kind()) {
        case Formula::Kind::Var: return Rule::Lit;
        case Formula::Kind::Not: return Rule::Neg;
        case Formula::Kind::And: return sf.sign == Sign::T ? Rule::TAnd : Rule::FAnd;
    }
    return Rule::Lit;
}

const char* rule_label(Rule rule) noexcept {
    switch (rule) {
        case Rule::TAnd: return "T&";
        case Rule::FAnd: return "F&";
        case Rule::Neg: return "~";
        case Rule::Lit: return "lit";
    }
    return "lit";
}

ModelSet::ModelSet(std::initializer_list<PartialModel> models) {
    for (const auto& m : models) insert(m);
}

void ModelSet::insert(PartialModel model) {
    auto it = std::lower_bound(members_.begin(), members_.end(), model);
    if (it != members_.end() && *it == model) return;
    members_.insert(it, std::move(model));
}

void ModelSet::merge(const ModelSet& other) {
    for (const auto& m : other.members_) insert(m);
}

bool ModelSet::contains(const PartialModel& model) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), model);
}

Strategy Strategy::branch_last() { return Strategy(StrategyKind::BranchLast); }

Strategy Strategy::first_composite() { return Strategy(StrategyKind::FirstComposite); }

Strategy Strategy::manual(std::vector<std::size_t> choices) {
    Strategy s(StrategyKind::Manual);
    s.choices_ = std::move(choices);
    return s;
}

SignedFormulaList split(const SignedFormulaList& gamma, const SignedFormula& sigma) {
    auto it = std::find(gamma.begin(), gamma.end(), sigma);
    if (it == gamma.end()) throw NotMemberError();
    SignedFormulaList delta;
    delta.reserve(gamma.size() - 1);
    delta.insert(delta.end(), gamma.begin(), it);
    delta.insert(delta.end(), it + 1, gamma.end());
    return delta;
}

bool is_literal_set(const SignedFormulaList& gamma) noexcept {
    return std::all_of(gamma.begin(), gamma.end(),
                       [](const SignedFormula& sf) { return sf.is_literal(); });
}

bool has_opposite_literals(const SignedFormulaList& gamma) noexcept {
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (!gamma[i].is_literal()) continue;
        for (std::size_t j = i + 1; j < gamma.size(); ++j) {
            if (!gamma[j].is_literal()) continue;
            if (gamma[i].sign != gamma[j].sign &&
                gamma[i].formula == gamma[j].formula) {
                return true;
            }
        }
    }
    return false;
}

ModelSet lmods(const SignedFormulaList& gamma) {
    if (!is_literal_set(gamma)) throw NotLiteralSetError();
    if (has_opposite_literals(gamma)) return {};
    PartialModel model;
    for (const auto& sf : gamma) model.assign(sf.formula.letter(), mean(sf.sign));
    ModelSet result;
    result.insert(std::move(model));
    return result;
}

Expansion expand(const SignedFormulaList& gamma, const SignedFormula& sigma) {
    if (sigma.is_literal()) {
        if (!contains(gamma, sigma)) throw NotMemberError();
        throw NotCompositeError();
    }
    SignedFormulaList delta = split(gamma, sigma);
    Expansion result{sigma, rule_for(sigma), {}};
    switch (result.rule) {
        case Rule::TAnd:
            result.successors.push_back(list_union(
                delta, {{Sign::T, sigma.formula.left()}, {Sign::T, sigma.formula.right()}}));
            break;
        case Rule::FAnd:
            result.successors.push_back(
                list_union(delta, {{Sign::F, sigma.formula.left()}}));
            result.successors.push_back(
                list_union(std::move(delta), {{Sign::F, sigma.formula.right()}}));
            break;
        case Rule::Neg:
            result.successors.push_back(
                list_union(std::move(delta), {{opposite(sigma.sign), sigma.formula.body()}}));
            break;
        case Rule::Lit:
            throw NotCompositeError();
    }
    return result;
}

std::optional<SignedFormula> select_formula(const SignedFormulaList& gamma,
                                            Strategy& strategy) {
    if (is_literal_set(gamma)) return std::nullopt;
    std::size_t picked = gamma.size();
    switch (strategy.kind()) {
        case StrategyKind::BranchLast: {
            std::size_t first_branching = gamma.size();
            for (std::size_t i = 0; i < gamma.size(); ++i) {
                Rule rule = rule_for(gamma[i]);
                if (rule == Rule::Lit) continue;
                if (rule != Rule::FAnd) {
                    picked = i;
                    break;
                }
                if (first_branching == gamma.size()) first_branching = i;
            }
            if (picked == gamma.size()) picked = first_branching;
            break;
        }
        case StrategyKind::FirstComposite:
            for (std::size_t i = 0; i < gamma.size(); ++i) {
                if (!gamma[i].is_literal()) {
                    picked = i;
                    break;
                }
            }
            break;
        case StrategyKind::Manual: {
            if (strategy.cursor_ >= strategy.choices_.size()) {
                throw ManualChoiceError("manual choice sequence exhausted");
            }
            std::size_t index = strategy.choices_[strategy.cursor_++];
            if (index >= gamma.size()) {
                throw ManualChoiceError("manual choice " + std::to_string(index) +
                                        " is out of range");
            }
            if (gamma[index].is_literal()) {
                throw ManualChoiceError("manual choice " + std::to_string(index) +
                                        " names a literal");
            }
            picked = index;
            break;
        }
    }
    strategy.recorded_.push_back(picked);
    return gamma[picked];
}

ModelSet models(const SignedFormulaList& gamma, Strategy& strategy,
                const EngineOptions& options, EngineStats* stats) {
    ModelSet result;
    std::vector<SignedFormulaList> stack;
    stack.push_back(gamma);
    while (!stack.empty()) {
        SignedFormulaList current = std::move(stack.back());
        stack.pop_back();
        if (options.early_closure && has_opposite_literals(current)) {
            if (stats) {
                ++stats->leaves;
                ++stats->closed_leaves;
            }
            continue;
        }
        auto selected = select_formula(current, strategy);
        if (!selected) {
            ModelSet leaf_models = lmods(current);
            if (stats) {
                ++stats->leaves;
                if (leaf_models.empty()) ++stats->closed_leaves;
            }
            result.merge(leaf_models);
            continue;
        }
        Expansion expansion = expand(current, *selected);
        if (stats) ++stats->expansions;
        for (auto it = expansion.successors.rbegin(); it != expansion.successors.rend();
             ++it) {
            stack.push_back(std::move(*it));
        }
    }
    return result;
}

ModelSet models(const SignedFormulaList& gamma) {
    Strategy strategy = Strategy::branch_last();
    return models(gamma, strategy);
}

namespace {

Strategy strategy_of_kind(StrategyKind kind) {
    return kind == StrategyKind::FirstComposite ? Strategy::first_composite()
                                                : Strategy::branch_last();
}

} // namespace

ModelSet models_parallel(const SignedFormulaList& gamma, StrategyKind kind,
                         const EngineOptions& options) {
    if (kind == StrategyKind::Manual) {
        throw ManualChoiceError("manual strategy is sequential; pick branch-last or first");
    }
    std::size_t threads = 1;
#ifdef _OPENMP
    threads = static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
#endif
    std::size_t target = 4 * threads;

    // Peel subproblems off breadth-first until there are enough to share.
    std::vector<SignedFormulaList> jobs;
    std::vector<SignedFormulaList> pending;
    pending.push_back(gamma);
    std::size_t next = 0;
    while (next < pending.size() && pending.size() - next + jobs.size() < target) {
        SignedFormulaList current = std::move(pending[next++]);
        if (options.early_closure && has_opposite_literals(current)) continue;
        Strategy probe = strategy_of_kind(kind);
        auto selected = select_formula(current, probe);
        if (!selected) {
            jobs.push_back(std::move(current));
            continue;
        }
        for (auto& successor : expand(current, *selected).successors) {
            pending.push_back(std::move(successor));
        }
    }
    jobs.insert(jobs.end(), std::make_move_iterator(pending.begin() + next),
                std::make_move_iterator(pending.end()));

    std::vector<ModelSet> partial(jobs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        Strategy strategy = strategy_of_kind(kind);
        partial[i] = models(jobs[i], strategy, options);
    }

    ModelSet result;
    for (const auto& part : partial) result.merge(part);
    return result;
}

ModelSet expand_partial_models(const ModelSet& ms, const std::vector<Letter>& letters) {
    ModelSet result;
    for (const auto& member : ms.members()) {
        std::vector<Letter> free_letters;
        for (const auto& letter : letters) {
            if (!member.defines(letter)) free_letters.push_back(letter);
        }
        for (const auto& [letter, value] : member.assignment()) {
            if (std::find(letters.begin(), letters.end(), letter) == letters.end()) {
                throw DomainError("partial model binds '" + letter.name() +
                                  "', which is outside the requested letters");
            }
        }
        std::size_t count = std::size_t{1} << free_letters.size();
        for (std::size_t mask = 0; mask < count; ++mask) {
            PartialModel total = member;
            for (std::size_t bit = 0; bit < free_letters.size(); ++bit) {
                total.assign(free_letters[bit], ((mask >> bit) & 1) != 0);
            }
            result.insert(std::move(total));
        }
    }
    return result;
}

ModelSet subsume(const ModelSet& ms) {
    ModelSet result;
    for (const auto& candidate : ms.members()) {
        bool extension = std::any_of(
            ms.members().begin(), ms.members().end(),
            [&](const PartialModel& other) { return candidate.extends(other); });
        if (!extension) result.insert(candidate);
    }
    return result;
}

bool is_satisfiable(const SignedFormulaList& gamma) { return !models(gamma).empty(); }

bool is_valid(const Formula& alpha) {
    return models(SignedFormulaList{{Sign::F, alpha}}).empty();
}

bool entails(const SignedFormulaList& gamma, const Formula& alpha) {
    SignedFormulaList combined = gamma;
    append_unique(combined, {Sign::F, alpha});
    return models(combined).empty();
}

} // namespace tabula

