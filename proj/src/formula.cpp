#include "tabula/formula.hpp"

#include <algorithm>
#include <cctype>

namespace tabula {

namespace {

bool valid_letter_name(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin() + 1, name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

std::size_t mix(std::size_t seed, std::size_t value) noexcept {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Letter::Letter(std::string name) : name_(std::move(name)) {
    if (!valid_letter_name(name_)) {
        throw Error("invalid letter name: '" + name_ + "'");
    }
}

MissingLetterError::MissingLetterError(Letter letter)
    : Error("letter '" + letter.name() + "' is not bound by the model"),
      letter_(std::move(letter)) {}

struct Formula::Node {
    Kind kind;
    std::optional<Letter> letter;      // Var only
    std::shared_ptr<const Node> lhs;   // Not body / And left
    std::shared_ptr<const Node> rhs;   // And right
    std::size_t connectives = 0;
    std::size_t hashv = 0;

    ~Node();
};

// Release of a deep formula would otherwise cascade one stack frame per
// connective; unlink sole-owned children iteratively so inputs bounded by
// memory stay bounded by memory during teardown too.
Formula::Node::~Node() {
    std::vector<std::shared_ptr<const Node>> doomed;
    auto grab = [&doomed](std::shared_ptr<const Node>& child) {
        if (child && child.use_count() == 1) doomed.push_back(std::move(child));
        child.reset();
    };
    grab(lhs);
    grab(rhs);
    while (!doomed.empty()) {
        std::shared_ptr<const Node> node = std::move(doomed.back());
        doomed.pop_back();
        Node& inner = const_cast<Node&>(*node);
        grab(inner.lhs);
        grab(inner.rhs);
    }
}

Formula Formula::var(Letter letter) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Var;
    node->hashv = mix(1, std::hash<std::string>{}(letter.name()));
    node->letter = std::move(letter);
    return Formula(std::move(node));
}

Formula Formula::var(std::string name) { return var(Letter(std::move(name))); }

Formula Formula::negation(Formula body) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Not;
    node->lhs = std::move(body.node_);
    node->connectives = 1 + node->lhs->connectives;
    node->hashv = mix(2, node->lhs->hashv);
    return Formula(std::move(node));
}

Formula Formula::conjunction(Formula left, Formula right) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::And;
    node->lhs = std::move(left.node_);
    node->rhs = std::move(right.node_);
    node->connectives = 1 + node->lhs->connectives + node->rhs->connectives;
    node->hashv = mix(mix(3, node->lhs->hashv), node->rhs->hashv);
    return Formula(std::move(node));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

const Letter& Formula::letter() const {
    if (kind() != Kind::Var) throw Error("letter() on a composite formula");
    return *node_->letter;
}

Formula Formula::body() const {
    if (kind() != Kind::Not) throw Error("body() on a formula that is not a negation");
    return Formula(node_->lhs);
}

Formula Formula::left() const {
    if (kind() != Kind::And) throw Error("left() on a formula that is not a conjunction");
    return Formula(node_->lhs);
}

Formula Formula::right() const {
    if (kind() != Kind::And) throw Error("right() on a formula that is not a conjunction");
    return Formula(node_->rhs);
}

std::size_t Formula::connective_count() const noexcept { return node_->connectives; }

std::size_t Formula::hash() const noexcept { return node_->hashv; }

bool Formula::operator==(const Formula& other) const noexcept {
    return nodes_equal(node_.get(), other.node_.get());
}

bool Formula::nodes_equal(const Node* a, const Node* b) noexcept {
    if (a == b) return true;
    if (a->kind != b->kind || a->hashv != b->hashv || a->connectives != b->connectives)
        return false;
    switch (a->kind) {
        case Kind::Var: return a->letter == b->letter;
        case Kind::Not: return nodes_equal(a->lhs.get(), b->lhs.get());
        case Kind::And:
            return nodes_equal(a->lhs.get(), b->lhs.get()) &&
                   nodes_equal(a->rhs.get(), b->rhs.get());
    }
    return false;
}

bool Formula::eval_node(const Node* node, const PartialModel& model) {
    switch (node->kind) {
        case Kind::Var: {
            auto v = model.value(*node->letter);
            if (!v) throw MissingLetterError(*node->letter);
            return *v;
        }
        case Kind::Not:
            return !eval_node(node->lhs.get(), model);
        case Kind::And: {
            // Evaluate both sides so an unbound letter is reported even
            // when the other side already decides the conjunction.
            bool l = eval_node(node->lhs.get(), model);
            bool r = eval_node(node->rhs.get(), model);
            return l && r;
        }
    }
    throw Error("corrupt formula node");
}

void Formula::collect_letters(const Node* node, std::vector<Letter>& out) {
    switch (node->kind) {
        case Kind::Var:
            out.push_back(*node->letter);
            return;
        case Kind::Not:
            collect_letters(node->lhs.get(), out);
            return;
        case Kind::And:
            collect_letters(node->lhs.get(), out);
            collect_letters(node->rhs.get(), out);
            return;
    }
}

Sign opposite(Sign s) noexcept { return s == Sign::T ? Sign::F : Sign::T; }

bool mean(Sign s) noexcept { return s == Sign::T; }

char sign_char(Sign s) noexcept { return s == Sign::T ? 'T' : 'F'; }

std::size_t SignedFormula::hash() const noexcept {
    return mix(sign == Sign::T ? 5 : 7, formula.hash());
}

std::size_t measure(const SignedFormula& sf) noexcept { return sf.formula.connective_count(); }

bool contains(const SignedFormulaList& gamma, const SignedFormula& sf) {
    return std::find(gamma.begin(), gamma.end(), sf) != gamma.end();
}

bool append_unique(SignedFormulaList& gamma, const SignedFormula& sf) {
    if (contains(gamma, sf)) return false;
    gamma.push_back(sf);
    return true;
}

SignedFormulaList list_union(SignedFormulaList gamma, const SignedFormulaList& extra) {
    for (const auto& sf : extra) append_unique(gamma, sf);
    return gamma;
}

bool set_equal(const SignedFormulaList& a, const SignedFormulaList& b) {
    if (a.size() != b.size()) return false;
    return std::all_of(a.begin(), a.end(),
                       [&](const SignedFormula& sf) { return contains(b, sf); });
}

std::size_t total_measure(const SignedFormulaList& gamma) noexcept {
    std::size_t sum = 0;
    for (const auto& sf : gamma) sum += measure(sf);
    return sum;
}

PartialModel::PartialModel(std::initializer_list<std::pair<Letter, bool>> entries) {
    for (const auto& [letter, value] : entries) assignment_.insert_or_assign(letter, value);
}

void PartialModel::assign(Letter letter, bool value) {
    assignment_.insert_or_assign(std::move(letter), value);
}

bool PartialModel::defines(const Letter& letter) const noexcept {
    return assignment_.contains(letter);
}

std::optional<bool> PartialModel::value(const Letter& letter) const noexcept {
    auto it = assignment_.find(letter);
    if (it == assignment_.end()) return std::nullopt;
    return it->second;
}

bool PartialModel::extends(const PartialModel& other) const noexcept {
    if (size() <= other.size()) return false;
    for (const auto& [letter, val] : other.assignment_) {
        auto mine = value(letter);
        if (!mine || *mine != val) return false;
    }
    return true;
}

std::string PartialModel::to_string() const {
    if (assignment_.empty()) return "(all interpretations)";
    std::string out;
    for (const auto& [letter, val] : assignment_) {
        if (!out.empty()) out += ' ';
        out += letter.name();
        out += '=';
        out += val ? 'T' : 'F';
    }
    return out;
}

bool eval(const Formula& formula, const PartialModel& model) {
    return Formula::eval_node(formula.node_.get(), model);
}

bool satisfies(const PartialModel& model, const SignedFormula& sf) {
    return eval(sf.formula, model) == mean(sf.sign);
}

bool satisfies_set(const PartialModel& model, const SignedFormulaList& gamma) {
    return std::all_of(gamma.begin(), gamma.end(),
                       [&](const SignedFormula& sf) { return satisfies(model, sf); });
}

namespace {

std::vector<Letter> finish(std::vector<Letter> letters) {
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    return letters;
}

} // namespace

std::vector<Letter> letters_of(const Formula& formula) {
    std::vector<Letter> out;
    Formula::collect_letters(formula.node_.get(), out);
    return finish(std::move(out));
}

std::vector<Letter> letters_of(const SignedFormulaList& gamma) {
    std::vector<Letter> out;
    for (const auto& sf : gamma) {
        auto some = letters_of(sf.formula);
        out.insert(out.end(), some.begin(), some.end());
    }
    return finish(std::move(out));
}

} // namespace tabula
