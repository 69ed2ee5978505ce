#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tabula/engine.hpp"
#include "tabula/formula.hpp"
#include "tabula/parser.hpp"
#include "tabula/trace.hpp"

namespace tabula {

// The letters random formulae draw from: p, q, r and onward.
Letter nth_letter(std::size_t index);

// Seeded random formulae and problems; one seed, one sequence.
class FormulaGenerator {
public:
    explicit FormulaGenerator(std::uint64_t seed) : rng_(seed) {}

    // max_depth 0 always yields a bare letter.
    Formula core_formula(std::size_t max_depth, std::size_t letter_count);
    SurfaceFormula surface_formula(std::size_t max_depth, std::size_t letter_count);
    SignedFormula signed_formula(std::size_t max_depth, std::size_t letter_count);

    // Up to `size` distinct signed formulae; fewer when the space is too
    // small to keep drawing fresh ones.
    SignedFormulaList problem(std::size_t size, std::size_t max_depth,
                              std::size_t letter_count);

    std::mt19937_64& rng() noexcept { return rng_; }

private:
    std::mt19937_64 rng_;
};

// A decomposition order for gamma picked uniformly at every step, recorded
// as the index sequence Strategy::manual replays.
std::vector<std::size_t> random_choice_sequence(const SignedFormulaList& gamma,
                                                std::mt19937_64& rng,
                                                const TraceOptions& options = {});

} // namespace tabula
