#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tabula/formula.hpp"

namespace tabula {

class NotMemberError : public Error {
public:
    NotMemberError() : Error("formula is not a member of the set") {}
};

class NotCompositeError : public Error {
public:
    NotCompositeError() : Error("formula is a literal; only composites decompose") {}
};

class NotLiteralSetError : public Error {
public:
    NotLiteralSetError() : Error("set contains a composite formula") {}
};

class ManualChoiceError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// The decomposition rule a signed formula calls for; Lit marks a literal,
// which no rule decomposes.
enum class Rule : std::uint8_t { TAnd, FAnd, Neg, Lit };

Rule rule_for(const SignedFormula& sf) noexcept;

// "T&", "F&", "~" or "lit".
const char* rule_label(Rule rule) noexcept;

// A duplicate-free set of partial models held in a canonical order, so two
// sets compare equal no matter how they were assembled.
class ModelSet {
public:
    ModelSet() = default;
    ModelSet(std::initializer_list<PartialModel> models);

    // No-op when the model is already present.
    void insert(PartialModel model);
    void merge(const ModelSet& other);

    bool contains(const PartialModel& model) const noexcept;

    const std::vector<PartialModel>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    bool operator==(const ModelSet&) const = default;

private:
    std::vector<PartialModel> members_;
};

enum class StrategyKind : std::uint8_t { BranchLast, FirstComposite, Manual };

// Policy for picking the next formula to decompose. Every selection is
// recorded as an index into the current list, so any finished run can be
// replayed exactly with manual().
class Strategy {
public:
    // Decomposes F& formulae only when nothing else is decomposable,
    // postponing branches as long as possible. The default policy.
    static Strategy branch_last();

    // Decomposes the first composite in list order.
    static Strategy first_composite();

    // Consumes one pre-supplied index per selection.
    static Strategy manual(std::vector<std::size_t> choices);

    StrategyKind kind() const noexcept { return kind_; }

    // Indices picked so far, in selection order.
    const std::vector<std::size_t>& recorded() const noexcept { return recorded_; }

private:
    explicit Strategy(StrategyKind kind) : kind_(kind) {}

    friend std::optional<SignedFormula> select_formula(const SignedFormulaList& gamma,
                                                       Strategy& strategy);

    StrategyKind kind_;
    std::vector<std::size_t> choices_;
    std::size_t cursor_ = 0;
    std::vector<std::size_t> recorded_;
};

// The remainder after removing sigma: gamma with that one member deleted,
// other members in their original order. Throws NotMemberError.
SignedFormulaList split(const SignedFormulaList& gamma, const SignedFormula& sigma);

bool is_literal_set(const SignedFormulaList& gamma) noexcept;

// True when gamma holds both S p and op(S) p for some letter p.
bool has_opposite_literals(const SignedFormulaList& gamma) noexcept;

// Models of a literal set: empty when it holds opposite literals, else the
// one partial model reading each literal as an assignment. Throws
// NotLiteralSetError on composite members.
ModelSet lmods(const SignedFormulaList& gamma);

// Result of decomposing one composite member: the successor sets in rule
// order. F& produces two successors, T& and ~ one.
struct Expansion {
    SignedFormula used;
    Rule rule;
    std::vector<SignedFormulaList> successors;
};

// Applies the one decomposition rule sigma admits, with delta the rest of
// gamma: T(a & b) yields delta + {T a, T b}; F(a & b) yields delta + {F a}
// and delta + {F b}; S ~a yields delta + {op(S) a}. Delta keeps its order,
// products are appended, and members already present are not duplicated.
Expansion expand(const SignedFormulaList& gamma, const SignedFormula& sigma);

// Absent exactly when gamma is all literals; otherwise the strategy's pick.
// Throws ManualChoiceError when a manual index is out of range, names a
// literal, or the supplied sequence is exhausted.
std::optional<SignedFormula> select_formula(const SignedFormulaList& gamma,
                                            Strategy& strategy);

struct EngineOptions {
    // Drop any set holding opposite literals without decomposing further.
    // Off by default: the plain equations decompose to all-literal sets.
    bool early_closure = false;
};

struct EngineStats {
    std::size_t expansions = 0;
    std::size_t leaves = 0;
    std::size_t closed_leaves = 0;

    std::size_t nodes() const noexcept { return expansions + leaves; }
};

// All models of gamma: lmods on all-literal sets, otherwise the union over
// the successors of one expansion. Runs on an explicit work stack, so
// input size is bounded by memory, not the call stack.
ModelSet models(const SignedFormulaList& gamma, Strategy& strategy,
                const EngineOptions& options = {}, EngineStats* stats = nullptr);

// models() under the default branch-last strategy.
ModelSet models(const SignedFormulaList& gamma);

// Same result as models(), exploring branches across threads. The manual
// strategy is inherently sequential and is rejected.
ModelSet models_parallel(const SignedFormulaList& gamma, StrategyKind kind,
                         const EngineOptions& options = {});

// Every total assignment over `letters` covered by some member. Each
// member's domain must lie inside `letters`; throws DomainError otherwise.
ModelSet expand_partial_models(const ModelSet& ms, const std::vector<Letter>& letters);

// Drops every member that strictly extends another; the covered total
// assignments are unchanged.
ModelSet subsume(const ModelSet& ms);

bool is_satisfiable(const SignedFormulaList& gamma);
bool is_valid(const Formula& alpha);
bool entails(const SignedFormulaList& gamma, const Formula& alpha);

} // namespace tabula
