#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "tabula/export.hpp"
#include "tabula/gen.hpp"
#include "tabula/oracle.hpp"
#include "tabula/parser.hpp"
#include "tabula/trace.hpp"

using namespace tabula;

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

struct InputSpec {
    std::string file;
    std::vector<std::string> inline_exprs;
};

struct Config {
    std::string strategy = "branch-last";
    std::vector<std::size_t> choices;
    bool early_closure = false;
    bool full_expansion = false;
    bool apply_subsume = false;
    std::string format = "text";
    bool tree_of_lists = false;
    std::size_t max_letters = 0;
};

void add_input_options(CLI::App* cmd, InputSpec& input) {
    cmd->add_option("file", input.file, "Problem file, one `T:`/`F:` line per assumption")
        ->check(CLI::ExistingFile);
    cmd->add_option("-e,--expr", input.inline_exprs,
                    "Inline assumption such as \"T: p & ~q\" (repeatable)");
}

void add_run_options(CLI::App* cmd, Config& config) {
    cmd->add_option("--strategy", config.strategy, "Formula selection policy")
        ->check(CLI::IsMember({"branch-last", "first", "manual"}))
        ->capture_default_str();
    cmd->add_option("--choices", config.choices,
                    "Comma-separated list indices consumed by --strategy manual")
        ->delimiter(',');
    auto* early = cmd->add_flag("--early-closure", config.early_closure,
                                "Stop decomposing a branch once it holds opposite literals");
    cmd->add_flag("--full-expansion", config.full_expansion,
                  "Decompose every branch down to literals (the default)")
        ->excludes(early);
    cmd->add_option("--max-letters", config.max_letters,
                    "Refuse inputs over more than this many letters (0 = no limit)");
}

void add_subsume_option(CLI::App* cmd, Config& config) {
    cmd->add_flag("--subsume", config.apply_subsume,
                  "Drop models that strictly extend another model");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Problem load_problem(const InputSpec& input) {
    if (!input.file.empty() && !input.inline_exprs.empty()) {
        throw UsageError("give a problem file or --expr lines, not both");
    }
    if (input.file.empty() && input.inline_exprs.empty()) {
        throw UsageError("no input: give a problem file or at least one --expr");
    }
    Problem problem;
    if (!input.file.empty()) {
        problem = parse_problem(read_file(input.file));
        problem.name = input.file;
    } else {
        std::string joined;
        for (const auto& line : input.inline_exprs) {
            joined += line;
            joined += '\n';
        }
        problem = parse_problem(joined);
        problem.name = "<command line>";
    }
    for (const auto& warning : problem.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    return problem;
}

void guard_letters(const SignedFormulaList& gamma, const Config& config) {
    if (config.max_letters == 0) return;
    std::size_t used = letters_of(gamma).size();
    if (used > config.max_letters) {
        throw UsageError("input uses " + std::to_string(used) + " letters; limit is " +
                         std::to_string(config.max_letters));
    }
}

Strategy make_strategy(const Config& config) {
    if (config.strategy == "first") return Strategy::first_composite();
    if (config.strategy == "manual") {
        if (config.choices.empty()) {
            throw UsageError("--strategy manual needs --choices");
        }
        return Strategy::manual(config.choices);
    }
    return Strategy::branch_last();
}

EngineOptions engine_options(const Config& config) {
    return EngineOptions{config.early_closure};
}

TraceOptions trace_options(const Config& config) {
    return TraceOptions{config.early_closure};
}

void print_model_set(const ModelSet& ms) {
    if (ms.empty()) {
        std::cout << "UNSATISFIABLE\n";
        return;
    }
    for (const auto& model : ms.members()) std::cout << model.to_string() << "\n";
}

int cmd_models(const InputSpec& input, const Config& config) {
    Problem problem = load_problem(input);
    guard_letters(problem.assumptions, config);
    Strategy strategy = make_strategy(config);
    ModelSet ms = models(problem.assumptions, strategy, engine_options(config));
    if (config.apply_subsume) ms = subsume(ms);
    print_model_set(ms);
    return ms.empty() ? 1 : 0;
}

int cmd_sat(const InputSpec& input, const Config& config) {
    Problem problem = load_problem(input);
    guard_letters(problem.assumptions, config);
    Strategy strategy = make_strategy(config);
    bool sat = !models(problem.assumptions, strategy, engine_options(config)).empty();
    std::cout << (sat ? "SAT" : "UNSAT") << "\n";
    return sat ? 0 : 1;
}

int cmd_valid(const std::string& goal_text, const Config& config) {
    Formula goal = parse_core(goal_text);
    SignedFormulaList refutation = {SignedFormula{Sign::F, goal}};
    guard_letters(refutation, config);
    Strategy strategy = make_strategy(config);
    ModelSet counter = models(refutation, strategy, engine_options(config));
    if (counter.empty()) {
        std::cout << "VALID\n";
        return 0;
    }
    std::cout << "INVALID\n";
    std::cout << "countermodel: " << counter.members().front().to_string() << "\n";
    return 1;
}

int cmd_entails(const std::string& goal_text, const InputSpec& input, const Config& config) {
    Problem problem = load_problem(input);
    Formula goal = parse_core(goal_text);
    SignedFormulaList refutation =
        list_union(problem.assumptions, {SignedFormula{Sign::F, goal}});
    guard_letters(refutation, config);
    Strategy strategy = make_strategy(config);
    ModelSet counter = models(refutation, strategy, engine_options(config));
    if (counter.empty()) {
        std::cout << "ENTAILED\n";
        return 0;
    }
    std::cout << "NOT ENTAILED\n";
    std::cout << "countermodel: " << counter.members().front().to_string() << "\n";
    return 1;
}

int cmd_tableau(const InputSpec& input, const Config& config) {
    Problem problem = load_problem(input);
    guard_letters(problem.assumptions, config);
    Strategy strategy = make_strategy(config);

    if (config.tree_of_lists) {
        TreeOfLists tree =
            build_tree_of_lists(problem.assumptions, strategy, trace_options(config));
        if (config.format == "json") {
            std::cout << to_json(tree).dump(2) << "\n";
        } else if (config.format == "dot") {
            std::cout << to_dot(tree);
        } else {
            std::cout << to_ascii(tree) << "\n";
            ModelSet ms = tree_models(tree);
            if (config.apply_subsume) ms = subsume(ms);
            print_model_set(ms);
        }
        return 0;
    }

    Tableau t = build_tableau(problem.assumptions, strategy, trace_options(config));
    if (config.format == "json") {
        std::cout << to_json(t).dump(2) << "\n";
    } else if (config.format == "dot") {
        std::cout << to_dot(t);
    } else {
        std::cout << to_ascii(t) << "\n";
        ModelSet ms = tableau_models(t);
        if (config.apply_subsume) ms = subsume(ms);
        print_model_set(ms);
    }
    return 0;
}

// --- the stepping REPL ---

void collect_leaves(TreeOfLists& node, std::vector<TreeOfLists*>& out) {
    if (node.children.empty()) {
        out.push_back(&node);
        return;
    }
    for (auto& child : node.children) collect_leaves(child, out);
}

bool leaf_needs_work(const TreeOfLists& leaf, const TraceOptions& options) {
    if (is_literal_set(leaf.content)) return false;
    if (options.early_closure && has_opposite_literals(leaf.content)) return false;
    return true;
}

void print_state(TreeOfLists& tree) {
    std::vector<TreeOfLists*> leaves;
    collect_leaves(tree, leaves);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        std::string line = "leaf " + std::to_string(i) + ":";
        const auto& content = leaves[i]->content;
        for (std::size_t j = 0; j < content.size(); ++j) {
            line += j == 0 ? " " : ", ";
            if (!content[j].is_literal()) line += "[" + std::to_string(j) + "] ";
            line += render(content[j]);
        }
        if (content.empty()) line += " (empty)";
        if (is_literal_set(content)) {
            line += has_opposite_literals(content) ? "  (closed)" : "  (open)";
        }
        std::cout << line << "\n";
    }
}

bool session_complete(TreeOfLists& tree, const TraceOptions& options) {
    std::vector<TreeOfLists*> leaves;
    collect_leaves(tree, leaves);
    for (const auto* leaf : leaves) {
        if (leaf_needs_work(*leaf, options)) return false;
    }
    return true;
}

void offer_export(const TreeOfLists& tree, bool interactive) {
    if (interactive) std::cout << "export? (json/dot/none): " << std::flush;
    std::string answer;
    if (!std::getline(std::cin, answer)) return;
    if (answer == "json") {
        std::cout << to_json(tree).dump(2) << "\n";
    } else if (answer == "dot") {
        std::cout << to_dot(tree);
    }
}

// `use <leaf>.<index>`: both numbers, one dot, nothing else.
bool parse_use_target(const std::string& text, std::size_t& leaf, std::size_t& index) {
    auto dot = text.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == text.size()) return false;
    try {
        std::size_t consumed = 0;
        leaf = std::stoul(text.substr(0, dot), &consumed);
        if (consumed != dot) return false;
        std::string rest = text.substr(dot + 1);
        index = std::stoul(rest, &consumed);
        return consumed == rest.size();
    } catch (const std::exception&) {
        return false;
    }
}

int cmd_step(const InputSpec& input, const Config& config) {
    Problem problem = load_problem(input);
    guard_letters(problem.assumptions, config);
    TraceOptions options = trace_options(config);
    bool interactive = isatty(STDIN_FILENO) != 0;

    TreeOfLists tree;
    tree.content = problem.assumptions;
    std::vector<TreeOfLists> history;

    auto finish = [&](TreeOfLists& done) {
        ModelSet ms = tree_models(done);
        if (config.apply_subsume) ms = subsume(ms);
        std::cout << "complete\n";
        print_model_set(ms);
        offer_export(done, interactive);
    };

    print_state(tree);
    if (session_complete(tree, options)) {
        finish(tree);
        return 0;
    }

    std::string line;
    while (true) {
        if (interactive) std::cout << "step> " << std::flush;
        if (!std::getline(std::cin, line)) break;

        std::istringstream words(line);
        std::string command;
        words >> command;
        if (command.empty()) continue;

        if (command == "quit") break;

        if (command == "show") {
            print_state(tree);
            continue;
        }

        if (command == "undo") {
            if (history.empty()) {
                std::cout << "nothing to undo\n";
                continue;
            }
            tree = std::move(history.back());
            history.pop_back();
            print_state(tree);
            continue;
        }

        if (command == "auto") {
            history.push_back(tree);
            std::vector<TreeOfLists*> leaves;
            collect_leaves(tree, leaves);
            for (auto* leaf : leaves) {
                if (!leaf_needs_work(*leaf, options)) continue;
                Strategy finish_strategy = Strategy::branch_last();
                *leaf = build_tree_of_lists(leaf->content, finish_strategy, options);
            }
            print_state(tree);
            finish(tree);
            return 0;
        }

        if (command == "use") {
            std::string target;
            words >> target;
            std::size_t leaf_index = 0;
            std::size_t member_index = 0;
            if (!parse_use_target(target, leaf_index, member_index)) {
                std::cout << "use takes <leaf>.<formula-index>, e.g. use 0.1\n";
                continue;
            }
            std::vector<TreeOfLists*> leaves;
            collect_leaves(tree, leaves);
            if (leaf_index >= leaves.size()) {
                std::cout << "no leaf " << leaf_index << "\n";
                continue;
            }
            TreeOfLists* leaf = leaves[leaf_index];
            if (member_index >= leaf->content.size()) {
                std::cout << "leaf " << leaf_index << " has no formula " << member_index
                          << "\n";
                continue;
            }
            const SignedFormula& picked = leaf->content[member_index];
            if (picked.is_literal()) {
                std::cout << render(picked) << " is a literal; pick a composite\n";
                continue;
            }
            history.push_back(tree);
            Expansion expansion = expand(leaf->content, picked);
            leaf->rule = expansion.rule;
            leaf->used = expansion.used;
            for (auto& successor : expansion.successors) {
                TreeOfLists child;
                child.content = std::move(successor);
                leaf->children.push_back(std::move(child));
            }
            std::cout << "applied " << rule_label(expansion.rule) << " on "
                      << render(expansion.used) << "\n";
            print_state(tree);
            if (session_complete(tree, options)) {
                finish(tree);
                return 0;
            }
            continue;
        }

        std::cout << "unknown command: " << command
                  << " (use <leaf>.<index>, auto, show, undo, quit)\n";
    }
    return 0;
}

// --- benchmarking ---

struct BenchRow {
    std::string strategy;
    std::size_t problems = 0;
    EngineStats stats;
};

int cmd_bench(const std::vector<std::string>& corpus_files, bool seeded, std::uint64_t seed,
              std::size_t count, std::size_t size, std::size_t depth, std::size_t letters,
              const Config& config) {
    if (!corpus_files.empty() && seeded) {
        throw UsageError("give corpus files or --seed, not both");
    }
    if (corpus_files.empty() && !seeded) {
        throw UsageError("no corpus: give problem files or --seed");
    }
    if (config.format == "dot") {
        throw UsageError("bench writes text or json, not dot");
    }

    std::vector<SignedFormulaList> corpus;
    if (seeded) {
        FormulaGenerator gen(seed);
        for (std::size_t i = 0; i < count; ++i) {
            corpus.push_back(gen.problem(size, depth, letters));
        }
    } else {
        for (const auto& path : corpus_files) {
            Problem problem = parse_problem(read_file(path));
            guard_letters(problem.assumptions, config);
            corpus.push_back(std::move(problem.assumptions));
        }
    }

    if (corpus.empty()) {
        if (config.format == "json") {
            std::cout << nlohmann::ordered_json::array().dump(2) << "\n";
        } else {
            std::printf("%-12s %9s %11s %8s %8s %8s\n", "strategy", "problems",
                        "expansions", "leaves", "closed", "nodes");
        }
        return 0;
    }

    std::vector<BenchRow> rows;
    for (const char* name : {"branch-last", "first"}) {
        BenchRow row;
        row.strategy = name;
        row.problems = corpus.size();
        for (const auto& gamma : corpus) {
            Strategy strategy = std::string(name) == "first" ? Strategy::first_composite()
                                                             : Strategy::branch_last();
            EngineStats stats;
            models(gamma, strategy, engine_options(config), &stats);
            row.stats.expansions += stats.expansions;
            row.stats.leaves += stats.leaves;
            row.stats.closed_leaves += stats.closed_leaves;
        }
        rows.push_back(std::move(row));
    }

    if (config.format == "json") {
        auto out = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            out.push_back({{"strategy", row.strategy},
                           {"problems", row.problems},
                           {"expansions", row.stats.expansions},
                           {"leaves", row.stats.leaves},
                           {"closed", row.stats.closed_leaves},
                           {"nodes", row.stats.nodes()}});
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    std::printf("%-12s %9s %11s %8s %8s %8s\n", "strategy", "problems", "expansions",
                "leaves", "closed", "nodes");
    for (const auto& row : rows) {
        std::printf("%-12s %9zu %11zu %8zu %8zu %8zu\n", row.strategy.c_str(),
                    row.problems, row.stats.expansions, row.stats.leaves,
                    row.stats.closed_leaves, row.stats.nodes());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model enumeration for propositional logic by signed tableaux"};
    app.require_subcommand(1);

    InputSpec input;
    Config config;
    std::string goal;
    std::vector<std::string> corpus_files;
    std::uint64_t seed = 0;
    std::size_t bench_count = 100;
    std::size_t bench_size = 3;
    std::size_t bench_depth = 3;
    std::size_t bench_letters = 3;
    int exit_code = 0;

    auto* models_cmd = app.add_subcommand("models", "Enumerate all models of the assumptions");
    add_input_options(models_cmd, input);
    add_run_options(models_cmd, config);
    add_subsume_option(models_cmd, config);
    models_cmd->callback([&] { exit_code = cmd_models(input, config); });

    auto* sat_cmd = app.add_subcommand("sat", "Decide satisfiability of the assumptions");
    add_input_options(sat_cmd, input);
    add_run_options(sat_cmd, config);
    sat_cmd->callback([&] { exit_code = cmd_sat(input, config); });

    auto* valid_cmd = app.add_subcommand("valid", "Decide validity of one formula");
    valid_cmd->add_option("goal", goal, "Formula to test, e.g. \"~(p & ~p)\"")->required();
    add_run_options(valid_cmd, config);
    valid_cmd->callback([&] { exit_code = cmd_valid(goal, config); });

    auto* entails_cmd =
        app.add_subcommand("entails", "Decide whether the assumptions entail a goal");
    entails_cmd->add_option("goal", goal, "Goal formula")->required();
    add_input_options(entails_cmd, input);
    add_run_options(entails_cmd, config);
    entails_cmd->callback([&] { exit_code = cmd_entails(goal, input, config); });

    auto* tableau_cmd =
        app.add_subcommand("tableau", "Build the proof tree and print it");
    add_input_options(tableau_cmd, input);
    add_run_options(tableau_cmd, config);
    add_subsume_option(tableau_cmd, config);
    tableau_cmd->add_option("--format", config.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();
    tableau_cmd->add_flag("--tree-of-lists", config.tree_of_lists,
                          "Print the tree carrying full formula lists instead of the "
                          "space-saving tree");
    tableau_cmd->callback([&] { exit_code = cmd_tableau(input, config); });

    auto* step_cmd = app.add_subcommand(
        "step", "Decompose by hand, one equation at a time (reads commands from stdin)");
    add_input_options(step_cmd, input);
    add_run_options(step_cmd, config);
    add_subsume_option(step_cmd, config);
    step_cmd->callback([&] { exit_code = cmd_step(input, config); });

    auto* bench_cmd = app.add_subcommand("bench", "Compare strategies over a corpus");
    bench_cmd->add_option("corpus", corpus_files, "Problem files")
        ->check(CLI::ExistingFile);
    auto* seed_opt = bench_cmd->add_option("--seed", seed, "Generate a random corpus");
    bench_cmd->add_option("--count", bench_count, "Generated problems")
        ->capture_default_str();
    bench_cmd->add_option("--size", bench_size, "Signed formulae per generated problem")
        ->capture_default_str();
    bench_cmd->add_option("--depth", bench_depth, "Maximum formula depth")
        ->capture_default_str();
    bench_cmd->add_option("--letters", bench_letters, "Distinct letters")
        ->capture_default_str();
    bench_cmd->add_option("--format", config.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    add_run_options(bench_cmd, config);
    bench_cmd->callback([&] {
        exit_code = cmd_bench(corpus_files, seed_opt->count() > 0, seed, bench_count,
                              bench_size, bench_depth, bench_letters, config);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& parse_error) {
        app.exit(parse_error);
        return 2;
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }
    return exit_code;
}
