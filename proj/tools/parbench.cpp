#include <chrono>
#include <cstdio>
#include <vector>

#include <CLI11.hpp>

#include "tabula/gen.hpp"
#include "tabula/oracle.hpp"

using namespace tabula;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Comparison {
    const char* kernel;
    double serial_s;
    double parallel_s;
    bool agree;
};

void print_row(const Comparison& row) {
    double speedup = row.parallel_s > 0 ? row.serial_s / row.parallel_s : 0.0;
    std::printf("%-12s %9.3fs %9.3fs %7.2fx   %s\n", row.kernel, row.serial_s,
                row.parallel_s, speedup, row.agree ? "yes" : "NO");
}

Comparison compare_oracle(std::uint64_t seed, std::size_t letters, std::size_t rounds) {
    FormulaGenerator gen(seed);
    std::vector<SignedFormulaList> corpus;
    for (std::size_t i = 0; i < rounds; ++i) {
        SignedFormulaList gamma = gen.problem(3, 6, letters);
        // Pad the letter count so every round enumerates the full table.
        gamma = list_union(gamma, {SignedFormula{
                                      Sign::T,
                                      Formula::conjunction(Formula::var(nth_letter(0)),
                                                           Formula::var(nth_letter(letters - 1)))}});
        corpus.push_back(std::move(gamma));
    }
    OracleOptions options{letters};

    Comparison row{"truth-table", 0.0, 0.0, true};
    std::vector<std::vector<TotalAssignment>> serial_rows;
    auto start = Clock::now();
    for (const auto& gamma : corpus) {
        serial_rows.push_back(truth_table_models_serial(gamma, options));
    }
    row.serial_s = seconds_since(start);

    start = Clock::now();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto parallel_rows = truth_table_models(corpus[i], options);
        row.agree = row.agree && parallel_rows == serial_rows[i];
    }
    row.parallel_s = seconds_since(start);
    return row;
}

Comparison compare_engine(std::uint64_t seed, std::size_t count, std::size_t size,
                          std::size_t depth, std::size_t letters) {
    FormulaGenerator gen(seed);
    std::vector<SignedFormulaList> corpus;
    for (std::size_t i = 0; i < count; ++i) {
        corpus.push_back(gen.problem(size, depth, letters));
    }

    Comparison row{"tableau", 0.0, 0.0, true};
    std::vector<ModelSet> serial_sets;
    auto start = Clock::now();
    for (const auto& gamma : corpus) {
        Strategy strategy = Strategy::branch_last();
        serial_sets.push_back(models(gamma, strategy));
    }
    row.serial_s = seconds_since(start);

    start = Clock::now();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        ModelSet parallel_set = models_parallel(corpus[i], StrategyKind::BranchLast);
        row.agree = row.agree && parallel_set == serial_sets[i];
    }
    row.parallel_s = seconds_since(start);
    return row;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial versus threaded runs of the truth-table and tableau kernels"};

    bool quick = false;
    std::uint64_t seed = 7;
    app.add_flag("--quick", quick, "Small sizes for a fast smoke run");
    app.add_option("--seed", seed, "Corpus seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    std::size_t oracle_letters = quick ? 10 : 16;
    std::size_t oracle_rounds = quick ? 4 : 24;
    std::size_t engine_count = quick ? 20 : 120;
    std::size_t engine_depth = quick ? 5 : 7;

    std::printf("%-12s %10s %10s %8s   %s\n", "kernel", "serial", "parallel", "speedup",
                "agree");
    Comparison oracle_row = compare_oracle(seed, oracle_letters, oracle_rounds);
    print_row(oracle_row);
    Comparison engine_row = compare_engine(seed + 1, engine_count, 4, engine_depth, 8);
    print_row(engine_row);

    return oracle_row.agree && engine_row.agree ? 0 : 1;
}
