#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tabula {

// Base class of everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A propositional letter. Identity is the name, byte for byte.
// Names match [A-Za-z][A-Za-z0-9_]*.
class Letter {
public:
    explicit Letter(std::string name);

    const std::string& name() const noexcept { return name_; }

    bool operator==(const Letter&) const noexcept = default;
    auto operator<=>(const Letter&) const noexcept = default;

private:
    std::string name_;
};

class MissingLetterError : public Error {
public:
    explicit MissingLetterError(Letter letter);
    const Letter& letter() const noexcept { return letter_; }

private:
    Letter letter_;
};

class PartialModel;

// A formula over the core connectives {~, &}. Immutable; subtrees are
// shared, so copies are cheap. Equality is structural (no normalisation,
// no commutativity of &).
class Formula {
public:
    enum class Kind : std::uint8_t { Var, Not, And };

    static Formula var(Letter letter);
    static Formula var(std::string name);
    static Formula negation(Formula body);
    static Formula conjunction(Formula left, Formula right);

    Kind kind() const noexcept;
    bool is_var() const noexcept { return kind() == Kind::Var; }

    const Letter& letter() const;  // Kind::Var only
    Formula body() const;          // Kind::Not only
    Formula left() const;          // Kind::And only
    Formula right() const;         // Kind::And only

    // Number of connectives; variables count 0. Every decomposition rule
    // strictly decreases it, which is what terminates the engine.
    std::size_t connective_count() const noexcept;

    std::size_t hash() const noexcept;
    bool operator==(const Formula& other) const noexcept;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static bool nodes_equal(const Node* a, const Node* b) noexcept;
    static bool eval_node(const Node* node, const PartialModel& model);
    static void collect_letters(const Node* node, std::vector<Letter>& out);

    friend bool eval(const Formula& formula, const PartialModel& model);
    friend std::vector<Letter> letters_of(const Formula& formula);

    std::shared_ptr<const Node> node_;
};

enum class Sign : std::uint8_t { T, F };

Sign opposite(Sign s) noexcept;
bool mean(Sign s) noexcept;        // the boolean value a sign asserts
char sign_char(Sign s) noexcept;   // 'T' or 'F'

// A formula asserted true (T) or false (F).
struct SignedFormula {
    Sign sign;
    Formula formula;

    // A literal is a signed letter; it carries no connectives.
    bool is_literal() const noexcept { return formula.is_var(); }

    bool operator==(const SignedFormula& other) const noexcept {
        return sign == other.sign && formula == other.formula;
    }
    std::size_t hash() const noexcept;
};

// Connective count of the underlying formula; literals measure 0.
std::size_t measure(const SignedFormula& sf) noexcept;

// Duplicate-free ordered list: the working representation of a finite set
// of signed formulae. Order is meaningful for traces, not for semantics.
using SignedFormulaList = std::vector<SignedFormula>;

bool contains(const SignedFormulaList& gamma, const SignedFormula& sf);

// Appends sf unless already present; reports whether it was added.
bool append_unique(SignedFormulaList& gamma, const SignedFormula& sf);

// Set union of two duplicate-free lists: keeps `gamma`'s order and appends
// the new members of `extra` in their order.
SignedFormulaList list_union(SignedFormulaList gamma, const SignedFormulaList& extra);

// Equality as sets. Both lists must be duplicate-free.
bool set_equal(const SignedFormulaList& a, const SignedFormulaList& b);

std::size_t total_measure(const SignedFormulaList& gamma) noexcept;

// A finite letter-to-boolean mapping. Stands for every total
// interpretation that agrees with it on its domain; the empty mapping
// stands for all interpretations.
class PartialModel {
public:
    PartialModel() = default;
    PartialModel(std::initializer_list<std::pair<Letter, bool>> entries);

    // Inserts or overwrites the binding for `letter`.
    void assign(Letter letter, bool value);

    bool defines(const Letter& letter) const noexcept;
    std::optional<bool> value(const Letter& letter) const noexcept;

    const std::map<Letter, bool>& assignment() const noexcept { return assignment_; }
    std::size_t size() const noexcept { return assignment_.size(); }
    bool empty() const noexcept { return assignment_.empty(); }

    // True when this model agrees with `other` on other's whole domain and
    // binds strictly more letters.
    bool extends(const PartialModel& other) const noexcept;

    // "p=T q=F", letters in name order; "(all interpretations)" when empty.
    std::string to_string() const;

    bool operator==(const PartialModel&) const noexcept = default;
    auto operator<=>(const PartialModel&) const = default;

private:
    std::map<Letter, bool> assignment_;
};

// Semantic value of a formula under a model covering all its letters.
// Throws MissingLetterError when a letter is unbound; there is no default.
bool eval(const Formula& formula, const PartialModel& model);

// True iff eval(sf.formula, model) equals the value asserted by sf.sign.
bool satisfies(const PartialModel& model, const SignedFormula& sf);

// True iff the model satisfies every member; vacuously true for the
// empty list.
bool satisfies_set(const PartialModel& model, const SignedFormulaList& gamma);

// Letters occurring anywhere in the input, sorted by name, no duplicates.
std::vector<Letter> letters_of(const Formula& formula);
std::vector<Letter> letters_of(const SignedFormulaList& gamma);

} // namespace tabula
