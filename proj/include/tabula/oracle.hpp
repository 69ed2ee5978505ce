#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tabula/engine.hpp"
#include "tabula/formula.hpp"

namespace tabula {

class TooManyLettersError : public Error {
public:
    TooManyLettersError(std::size_t count, std::size_t bound);
};

// One truth-table row: every declared letter mapped to a boolean. Rows of
// one enumeration share their letter list; bit 0 of `bits` is the last
// letter, so ascending bits walk the table with false before true.
class TotalAssignment {
public:
    TotalAssignment(std::shared_ptr<const std::vector<Letter>> letters, std::uint32_t bits);

    const std::vector<Letter>& letters() const noexcept { return *letters_; }
    std::uint32_t bits() const noexcept { return bits_; }

    bool value_at(std::size_t index) const;
    bool value(const Letter& letter) const;  // throws MissingLetterError

    PartialModel to_partial_model() const;

    bool operator==(const TotalAssignment& other) const noexcept {
        return *letters_ == *other.letters_ && bits_ == other.bits_;
    }

private:
    std::shared_ptr<const std::vector<Letter>> letters_;
    std::uint32_t bits_;
};

struct OracleOptions {
    // Enumerating 2^n rows stops being desk-scale fast; refuse above this.
    std::size_t max_letters = 20;
};

// Ground truth by brute force: all assignments over letters_of(gamma) that
// satisfy every member, in ascending bit order. No pruning; the serial
// form is the reference the threaded form is checked against.
std::vector<TotalAssignment> truth_table_models_serial(const SignedFormulaList& gamma,
                                                       const OracleOptions& options = {});
std::vector<TotalAssignment> truth_table_models(const SignedFormulaList& gamma,
                                                const OracleOptions& options = {});

// The rows as total partial models, canonically ordered.
ModelSet to_partial_models(const std::vector<TotalAssignment>& rows);

// True iff the engine's answer, blown up to total assignments over
// letters_of(gamma), matches the truth table exactly.
bool check_equivalence(const SignedFormulaList& gamma, Strategy strategy,
                       const OracleOptions& options = {});

} // namespace tabula
