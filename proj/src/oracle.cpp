#include "tabula/oracle.hpp"

#include <algorithm>

namespace tabula {

TooManyLettersError::TooManyLettersError(std::size_t count, std::size_t bound)
    : Error("set mentions " + std::to_string(count) + " letters; the bound is " +
            std::to_string(bound)) {}

TotalAssignment::TotalAssignment(std::shared_ptr<const std::vector<Letter>> letters,
                                 std::uint32_t bits)
    : letters_(std::move(letters)), bits_(bits) {}

bool TotalAssignment::value_at(std::size_t index) const {
    if (index >= letters_->size()) throw Error("assignment index out of range");
    std::size_t shift = letters_->size() - 1 - index;
    return ((bits_ >> shift) & 1u) != 0;
}

bool TotalAssignment::value(const Letter& letter) const {
    auto it = std::lower_bound(letters_->begin(), letters_->end(), letter);
    if (it == letters_->end() || *it != letter) throw MissingLetterError(letter);
    return value_at(static_cast<std::size_t>(it - letters_->begin()));
}

PartialModel TotalAssignment::to_partial_model() const {
    PartialModel model;
    for (std::size_t i = 0; i < letters_->size(); ++i) {
        model.assign((*letters_)[i], value_at(i));
    }
    return model;
}

namespace {

std::shared_ptr<const std::vector<Letter>> checked_letters(const SignedFormulaList& gamma,
                                                           const OracleOptions& options) {
    auto letters = std::make_shared<std::vector<Letter>>(letters_of(gamma));
    std::size_t bound = std::min<std::size_t>(options.max_letters, 32);
    if (letters->size() > bound) throw TooManyLettersError(letters->size(), bound);
    return letters;
}

PartialModel row_model(const std::vector<Letter>& letters, std::uint32_t bits) {
    PartialModel model;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        std::size_t shift = letters.size() - 1 - i;
        model.assign(letters[i], ((bits >> shift) & 1u) != 0);
    }
    return model;
}

} // namespace

std::vector<TotalAssignment> truth_table_models_serial(const SignedFormulaList& gamma,
                                                       const OracleOptions& options) {
    auto letters = checked_letters(gamma, options);
    std::uint64_t rows = std::uint64_t{1} << letters->size();
    std::vector<TotalAssignment> result;
    for (std::uint64_t bits = 0; bits < rows; ++bits) {
        if (satisfies_set(row_model(*letters, static_cast<std::uint32_t>(bits)), gamma)) {
            result.emplace_back(letters, static_cast<std::uint32_t>(bits));
        }
    }
    return result;
}

std::vector<TotalAssignment> truth_table_models(const SignedFormulaList& gamma,
                                                const OracleOptions& options) {
    auto letters = checked_letters(gamma, options);
    std::uint64_t rows = std::uint64_t{1} << letters->size();
    std::vector<unsigned char> hit(rows, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::uint64_t bits = 0; bits < rows; ++bits) {
        if (satisfies_set(row_model(*letters, static_cast<std::uint32_t>(bits)), gamma)) {
            hit[bits] = 1;
        }
    }
    std::vector<TotalAssignment> result;
    for (std::uint64_t bits = 0; bits < rows; ++bits) {
        if (hit[bits]) result.emplace_back(letters, static_cast<std::uint32_t>(bits));
    }
    return result;
}

ModelSet to_partial_models(const std::vector<TotalAssignment>& rows) {
    ModelSet result;
    for (const auto& row : rows) result.insert(row.to_partial_model());
    return result;
}

bool check_equivalence(const SignedFormulaList& gamma, Strategy strategy,
                       const OracleOptions& options) {
    ModelSet table = to_partial_models(truth_table_models(gamma, options));
    ModelSet engine = expand_partial_models(models(gamma, strategy), letters_of(gamma));
    return table == engine;
}

} // namespace tabula
