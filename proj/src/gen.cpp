#include "tabula/gen.hpp"

#include <string>
#include <utility>

namespace tabula {

Letter nth_letter(std::size_t index) {
    if (index < 11) return Letter(std::string(1, static_cast<char>('p' + index)));
    return Letter("a" + std::to_string(index));
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

} // namespace

Formula FormulaGenerator::core_formula(std::size_t max_depth, std::size_t letter_count) {
    if (max_depth == 0 || pick(rng_, 3) == 0) {
        return Formula::var(nth_letter(pick(rng_, letter_count)));
    }
    if (pick(rng_, 2) == 0) {
        return Formula::negation(core_formula(max_depth - 1, letter_count));
    }
    Formula left = core_formula(max_depth - 1, letter_count);
    Formula right = core_formula(max_depth - 1, letter_count);
    return Formula::conjunction(std::move(left), std::move(right));
}

SurfaceFormula FormulaGenerator::surface_formula(std::size_t max_depth,
                                                 std::size_t letter_count) {
    using Kind = SurfaceFormula::Kind;
    std::size_t choice = max_depth == 0 ? 0 : pick(rng_, 6);
    if (choice == 0) return SurfaceFormula::var(nth_letter(pick(rng_, letter_count)));
    if (choice == 1) return SurfaceFormula::negation(surface_formula(max_depth - 1, letter_count));
    static constexpr Kind binary_kinds[] = {Kind::And, Kind::Or, Kind::Implies, Kind::Iff};
    SurfaceFormula left = surface_formula(max_depth - 1, letter_count);
    SurfaceFormula right = surface_formula(max_depth - 1, letter_count);
    return SurfaceFormula::binary(binary_kinds[choice - 2], std::move(left), std::move(right));
}

SignedFormula FormulaGenerator::signed_formula(std::size_t max_depth,
                                               std::size_t letter_count) {
    Sign sign = pick(rng_, 2) == 0 ? Sign::T : Sign::F;
    return {sign, core_formula(max_depth, letter_count)};
}

SignedFormulaList FormulaGenerator::problem(std::size_t size, std::size_t max_depth,
                                            std::size_t letter_count) {
    SignedFormulaList gamma;
    std::size_t attempts = 10 * size + 10;
    while (gamma.size() < size && attempts-- > 0) {
        append_unique(gamma, signed_formula(max_depth, letter_count));
    }
    return gamma;
}

std::vector<std::size_t> random_choice_sequence(const SignedFormulaList& gamma,
                                                std::mt19937_64& rng,
                                                const TraceOptions& options) {
    std::vector<std::size_t> choices;
    std::vector<SignedFormulaList> stack;
    stack.push_back(gamma);
    while (!stack.empty()) {
        SignedFormulaList current = std::move(stack.back());
        stack.pop_back();
        if (options.early_closure && has_opposite_literals(current)) continue;
        std::vector<std::size_t> composites;
        for (std::size_t i = 0; i < current.size(); ++i) {
            if (!current[i].is_literal()) composites.push_back(i);
        }
        if (composites.empty()) continue;
        std::size_t index = composites[pick(rng, composites.size())];
        choices.push_back(index);
        Expansion expansion = expand(current, current[index]);
        for (auto it = expansion.successors.rbegin(); it != expansion.successors.rend();
             ++it) {
            stack.push_back(std::move(*it));
        }
    }
    return choices;
}

} // namespace tabula
