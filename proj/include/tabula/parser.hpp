#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tabula/formula.hpp"

namespace tabula {

// Parse failure at a concrete spot in the input. Lines and columns are
// 1-based; single-string parses report line 1.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& expected);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// A problem line that is neither blank, a comment, nor `T:`/`F:` prefixed.
class MissingSignError : public Error {
public:
    explicit MissingSignError(std::size_t line);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A formula in the surface language {~, &, |, ->, <->}. Produced by the
// parser, consumed by desugar; the engine never sees one.
class SurfaceFormula {
public:
    enum class Kind : std::uint8_t { Var, Not, And, Or, Implies, Iff };

    static SurfaceFormula var(Letter letter);
    static SurfaceFormula var(std::string name);
    static SurfaceFormula negation(SurfaceFormula body);
    static SurfaceFormula binary(Kind kind, SurfaceFormula left, SurfaceFormula right);

    Kind kind() const noexcept;
    bool is_binary() const noexcept;

    const Letter& letter() const;   // Kind::Var only
    SurfaceFormula body() const;    // Kind::Not only
    SurfaceFormula left() const;    // binary kinds only
    SurfaceFormula right() const;   // binary kinds only

    bool operator==(const SurfaceFormula& other) const noexcept;

private:
    struct Node;
    explicit SurfaceFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// Parses the surface grammar. Precedence, tightest first: ~, &, |, ->, <->;
// & and | associate left, -> and <-> associate right.
SurfaceFormula parse_formula(const std::string& text);

// Eliminates the surface connectives:
//   a | b   becomes  ~(~a & ~b)
//   a -> b  becomes  ~(a & ~b)
//   a <-> b becomes  ~(a & ~b) & ~(b & ~a)
// Var, ~ and & map through unchanged.
Formula desugar(const SurfaceFormula& sf);

// parse_formula followed by desugar.
Formula parse_core(const std::string& text);

// A parsed problem file: the assumptions in file order with duplicates
// dropped, and one warning line per dropped duplicate.
struct Problem {
    SignedFormulaList assumptions;
    std::string name;
    std::vector<std::string> warnings;
};

// One signed formula per nonblank line: `T:` or `F:`, then a formula.
// Lines beginning with `#` are comments. CRLF input is accepted.
Problem parse_problem(const std::string& text);

// Core-syntax text with minimal parentheses; parse_core(render(f)) == f.
std::string render(const Formula& f);

// "T: p & ~q" style, matching the problem file format.
std::string render(const SignedFormula& sf);

} // namespace tabula
