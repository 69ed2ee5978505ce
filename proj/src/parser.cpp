#include "tabula/parser.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace tabula {

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& expected)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
            ": expected " + expected),
      line_(line),
      column_(column) {}

MissingSignError::MissingSignError(std::size_t line)
    : Error("line " + std::to_string(line) + ": missing T: or F: sign prefix"),
      line_(line) {}

struct SurfaceFormula::Node {
    Kind kind;
    std::optional<Letter> letter;      // Var only
    std::shared_ptr<const Node> lhs;   // Not body / binary left
    std::shared_ptr<const Node> rhs;   // binary right
};

SurfaceFormula SurfaceFormula::var(Letter letter) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Var;
    node->letter = std::move(letter);
    return SurfaceFormula(std::move(node));
}

SurfaceFormula SurfaceFormula::var(std::string name) { return var(Letter(std::move(name))); }

SurfaceFormula SurfaceFormula::negation(SurfaceFormula body) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Not;
    node->lhs = std::move(body.node_);
    return SurfaceFormula(std::move(node));
}

SurfaceFormula SurfaceFormula::binary(Kind kind, SurfaceFormula left, SurfaceFormula right) {
    if (kind == Kind::Var || kind == Kind::Not) throw Error("binary() needs a binary kind");
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->lhs = std::move(left.node_);
    node->rhs = std::move(right.node_);
    return SurfaceFormula(std::move(node));
}

SurfaceFormula::Kind SurfaceFormula::kind() const noexcept { return node_->kind; }

bool SurfaceFormula::is_binary() const noexcept {
    return kind() != Kind::Var && kind() != Kind::Not;
}

const Letter& SurfaceFormula::letter() const {
    if (kind() != Kind::Var) throw Error("letter() on a composite surface formula");
    return *node_->letter;
}

SurfaceFormula SurfaceFormula::body() const {
    if (kind() != Kind::Not) throw Error("body() on a surface formula that is not a negation");
    return SurfaceFormula(node_->lhs);
}

SurfaceFormula SurfaceFormula::left() const {
    if (!is_binary()) throw Error("left() on a surface formula that is not binary");
    return SurfaceFormula(node_->lhs);
}

SurfaceFormula SurfaceFormula::right() const {
    if (!is_binary()) throw Error("right() on a surface formula that is not binary");
    return SurfaceFormula(node_->rhs);
}

bool SurfaceFormula::operator==(const SurfaceFormula& other) const noexcept {
    const Node* a = node_.get();
    const Node* b = other.node_.get();
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::Var: return a->letter == b->letter;
        case Kind::Not: return SurfaceFormula(a->lhs) == SurfaceFormula(b->lhs);
        default:
            return SurfaceFormula(a->lhs) == SurfaceFormula(b->lhs) &&
                   SurfaceFormula(a->rhs) == SurfaceFormula(b->rhs);
    }
}

namespace {

enum class TokenKind { Identifier, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t column;
};

class Lexer {
public:
    Lexer(const std::string& text, std::size_t line) : text_(text), line_(line) { advance(); }

    const Token& peek() const noexcept { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

    std::size_t line() const noexcept { return line_; }

private:
    void advance() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        std::size_t column = pos_ + 1;
        if (pos_ >= text_.size()) {
            current_ = {TokenKind::End, "", column};
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_') break;
                ++pos_;
            }
            current_ = {TokenKind::Identifier, text_.substr(start, pos_ - start), column};
            return;
        }
        switch (c) {
            case '~': ++pos_; current_ = {TokenKind::Not, "~", column}; return;
            case '&': ++pos_; current_ = {TokenKind::And, "&", column}; return;
            case '|': ++pos_; current_ = {TokenKind::Or, "|", column}; return;
            case '(': ++pos_; current_ = {TokenKind::LParen, "(", column}; return;
            case ')': ++pos_; current_ = {TokenKind::RParen, ")", column}; return;
            case '-':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                    pos_ += 2;
                    current_ = {TokenKind::Implies, "->", column};
                    return;
                }
                throw SyntaxError(line_, column, "'->'");
            case '<':
                if (text_.compare(pos_, 3, "<->") == 0) {
                    pos_ += 3;
                    current_ = {TokenKind::Iff, "<->", column};
                    return;
                }
                throw SyntaxError(line_, column, "'<->'");
            default:
                throw SyntaxError(line_, column, "a formula token");
        }
    }

    const std::string& text_;
    std::size_t line_;
    std::size_t pos_ = 0;
    Token current_{TokenKind::End, "", 1};
};

// Grammar, loosest first:
//   iff   := imp ('<->' iff)?
//   imp   := disj ('->' imp)?
//   disj  := conj ('|' conj)*
//   conj  := unary ('&' unary)*
//   unary := '~' unary | atom
//   atom  := identifier | '(' iff ')'
class FormulaParser {
public:
    FormulaParser(const std::string& text, std::size_t line) : lexer_(text, line) {}

    SurfaceFormula parse() {
        SurfaceFormula result = parse_iff();
        if (lexer_.peek().kind != TokenKind::End) {
            throw SyntaxError(lexer_.line(), lexer_.peek().column, "end of formula");
        }
        return result;
    }

private:
    SurfaceFormula parse_iff() {
        SurfaceFormula left = parse_implies();
        if (lexer_.peek().kind == TokenKind::Iff) {
            lexer_.take();
            return SurfaceFormula::binary(SurfaceFormula::Kind::Iff, std::move(left),
                                          parse_iff());
        }
        return left;
    }

    SurfaceFormula parse_implies() {
        SurfaceFormula left = parse_or();
        if (lexer_.peek().kind == TokenKind::Implies) {
            lexer_.take();
            return SurfaceFormula::binary(SurfaceFormula::Kind::Implies, std::move(left),
                                          parse_implies());
        }
        return left;
    }

    SurfaceFormula parse_or() {
        SurfaceFormula result = parse_and();
        while (lexer_.peek().kind == TokenKind::Or) {
            lexer_.take();
            result = SurfaceFormula::binary(SurfaceFormula::Kind::Or, std::move(result),
                                            parse_and());
        }
        return result;
    }

    SurfaceFormula parse_and() {
        SurfaceFormula result = parse_unary();
        while (lexer_.peek().kind == TokenKind::And) {
            lexer_.take();
            result = SurfaceFormula::binary(SurfaceFormula::Kind::And, std::move(result),
                                            parse_unary());
        }
        return result;
    }

    SurfaceFormula parse_unary() {
        if (lexer_.peek().kind == TokenKind::Not) {
            lexer_.take();
            return SurfaceFormula::negation(parse_unary());
        }
        return parse_atom();
    }

    SurfaceFormula parse_atom() {
        Token t = lexer_.peek();
        switch (t.kind) {
            case TokenKind::Identifier:
                lexer_.take();
                return SurfaceFormula::var(t.text);
            case TokenKind::LParen: {
                lexer_.take();
                SurfaceFormula inner = parse_iff();
                if (lexer_.peek().kind != TokenKind::RParen) {
                    throw SyntaxError(lexer_.line(), lexer_.peek().column, "')'");
                }
                lexer_.take();
                return inner;
            }
            default:
                throw SyntaxError(lexer_.line(), t.column, "a letter, '~' or '('");
        }
    }

    Lexer lexer_;
};

std::string trimmed(std::string line) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
        line.pop_back();
    }
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) {
        ++start;
    }
    return line.substr(start);
}

} // namespace

SurfaceFormula parse_formula(const std::string& text) {
    return FormulaParser(text, 1).parse();
}

Formula desugar(const SurfaceFormula& sf) {
    using Kind = SurfaceFormula::Kind;
    switch (sf.kind()) {
        case Kind::Var:
            return Formula::var(sf.letter());
        case Kind::Not:
            return Formula::negation(desugar(sf.body()));
        case Kind::And:
            return Formula::conjunction(desugar(sf.left()), desugar(sf.right()));
        case Kind::Or: {
            Formula l = desugar(sf.left());
            Formula r = desugar(sf.right());
            return Formula::negation(Formula::conjunction(Formula::negation(std::move(l)),
                                                          Formula::negation(std::move(r))));
        }
        case Kind::Implies: {
            Formula l = desugar(sf.left());
            Formula r = desugar(sf.right());
            return Formula::negation(
                Formula::conjunction(std::move(l), Formula::negation(std::move(r))));
        }
        case Kind::Iff: {
            Formula l = desugar(sf.left());
            Formula r = desugar(sf.right());
            Formula forward =
                Formula::negation(Formula::conjunction(l, Formula::negation(r)));
            Formula backward =
                Formula::negation(Formula::conjunction(r, Formula::negation(l)));
            return Formula::conjunction(std::move(forward), std::move(backward));
        }
    }
    throw Error("corrupt surface formula node");
}

Formula parse_core(const std::string& text) { return desugar(parse_formula(text)); }

Problem parse_problem(const std::string& text) {
    Problem problem;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string raw = eol == std::string::npos ? text.substr(pos)
                                                   : text.substr(pos, eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();

        std::string line = trimmed(raw);
        if (line.empty() || line[0] == '#') continue;

        Sign sign;
        if (line.compare(0, 2, "T:") == 0) {
            sign = Sign::T;
        } else if (line.compare(0, 2, "F:") == 0) {
            sign = Sign::F;
        } else {
            throw MissingSignError(line_no);
        }

        std::string body = line.substr(2);
        Formula formula = desugar(FormulaParser(body, line_no).parse());
        SignedFormula sf{sign, std::move(formula)};
        if (!append_unique(problem.assumptions, sf)) {
            problem.warnings.push_back("line " + std::to_string(line_no) +
                                       ": duplicate assumption dropped: " + render(sf));
        }
    }
    return problem;
}

namespace {

// Precedence levels for rendering: & is 1, ~ is 2, a letter is 3.
// A subterm is parenthesized when its level is below what its slot needs;
// the right operand of & and the operand of ~ both need level 2.
void render_into(const Formula& f, int min_level, std::string& out) {
    switch (f.kind()) {
        case Formula::Kind::Var:
            out += f.letter().name();
            return;
        case Formula::Kind::Not:
            out += '~';
            render_into(f.body(), 2, out);
            return;
        case Formula::Kind::And: {
            bool parens = min_level > 1;
            if (parens) out += '(';
            render_into(f.left(), 1, out);
            out += " & ";
            render_into(f.right(), 2, out);
            if (parens) out += ')';
            return;
        }
    }
}

} // namespace

std::string render(const Formula& f) {
    std::string out;
    render_into(f, 1, out);
    return out;
}

std::string render(const SignedFormula& sf) {
    std::string out(1, sign_char(sf.sign));
    out += ": ";
    render_into(sf.formula, 1, out);
    return out;
}

} // namespace tabula
