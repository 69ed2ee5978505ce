#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tabula/engine.hpp"
#include "tabula/gen.hpp"
#include "tabula/oracle.hpp"

#include "test_util.hpp"

using namespace tabula;
using namespace testutil;

TEST_CASE("rule_for classifies the four shapes") {
    CHECK(rule_for(sT(v("p"))) == Rule::Lit);
    CHECK(rule_for(sF(v("p"))) == Rule::Lit);
    CHECK(rule_for(sT(conj(v("p"), v("q")))) == Rule::TAnd);
    CHECK(rule_for(sF(conj(v("p"), v("q")))) == Rule::FAnd);
    CHECK(rule_for(sT(neg(v("p")))) == Rule::Neg);
    CHECK(rule_for(sF(neg(v("p")))) == Rule::Neg);
    CHECK(std::string(rule_label(Rule::TAnd)) == "T&");
    CHECK(std::string(rule_label(Rule::FAnd)) == "F&");
    CHECK(std::string(rule_label(Rule::Neg)) == "~");
    CHECK(std::string(rule_label(Rule::Lit)) == "lit");
}

TEST_CASE("split removes exactly the chosen member") {
    SignedFormulaList two = {sT(v("p")), sF(v("q"))};
    CHECK(split(two, sT(v("p"))) == SignedFormulaList{sF(v("q"))});
    CHECK(split({sT(v("p"))}, sT(v("p"))).empty());
    CHECK_THROWS_AS(split({sT(v("p"))}, sF(v("p"))), NotMemberError);
    SignedFormulaList three = {sT(v("p")), sF(v("q")), sT(v("r"))};
    CHECK(split(three, sF(v("q"))) == SignedFormulaList{sT(v("p")), sT(v("r"))});
}

TEST_CASE("is_literal_set") {
    CHECK(is_literal_set({sT(v("p")), sF(v("q"))}));
    CHECK_FALSE(is_literal_set({sT(conj(v("p"), v("q")))}));
    CHECK(is_literal_set({}));
}

TEST_CASE("lmods on literal sets") {
    CHECK(lmods({sT(v("p")), sF(v("p"))}).empty());
    ModelSet single = lmods({sT(v("p")), sF(v("q"))});
    REQUIRE(single.size() == 1);
    CHECK(single.members()[0] ==
          PartialModel{{Letter("p"), true}, {Letter("q"), false}});
    ModelSet empty_gamma = lmods({});
    REQUIRE(empty_gamma.size() == 1);
    CHECK(empty_gamma.members()[0].empty());
    CHECK_THROWS_AS(lmods({sT(conj(v("p"), v("q")))}), NotLiteralSetError);
}

TEST_CASE("expand follows the three equations") {
    SignedFormula t_and = sT(conj(v("p"), neg(v("q"))));
    SignedFormula f_and = sF(conj(v("p"), v("q")));

    Expansion branch = expand({t_and, f_and}, f_and);
    CHECK(branch.rule == Rule::FAnd);
    CHECK(branch.used == f_and);
    REQUIRE(branch.successors.size() == 2);
    CHECK(branch.successors[0] == SignedFormulaList{t_and, sF(v("p"))});
    CHECK(branch.successors[1] == SignedFormulaList{t_and, sF(v("q"))});

    Expansion straight = expand({t_and, sF(v("p"))}, t_and);
    CHECK(straight.rule == Rule::TAnd);
    REQUIRE(straight.successors.size() == 1);
    CHECK(straight.successors[0] ==
          SignedFormulaList{sF(v("p")), sT(v("p")), sT(neg(v("q")))});

    Expansion flip = expand({sT(neg(v("q"))), sT(v("p"))}, sT(neg(v("q"))));
    CHECK(flip.rule == Rule::Neg);
    REQUIRE(flip.successors.size() == 1);
    CHECK(flip.successors[0] == SignedFormulaList{sT(v("p")), sF(v("q"))});
}

TEST_CASE("expand deduplicates its products") {
    Expansion same = expand({sT(conj(v("p"), v("p")))}, sT(conj(v("p"), v("p"))));
    CHECK(same.successors[0] == SignedFormulaList{sT(v("p"))});

    Expansion present = expand({sF(v("q")), sT(neg(v("q")))}, sT(neg(v("q"))));
    CHECK(present.successors[0] == SignedFormulaList{sF(v("q"))});
}

TEST_CASE("expand validates its arguments") {
    CHECK_THROWS_AS(expand({sT(v("p"))}, sT(v("p"))), NotCompositeError);
    CHECK_THROWS_AS(expand({sT(v("p"))}, sT(conj(v("p"), v("q")))), NotMemberError);
}

TEST_CASE("selection strategies") {
    SignedFormula f_and = sF(conj(v("p"), v("q")));
    SignedFormula t_and = sT(conj(v("p"), neg(v("q"))));
    SignedFormulaList gamma = {f_and, t_and};

    Strategy branch_last = Strategy::branch_last();
    CHECK(select_formula(gamma, branch_last) == t_and);
    CHECK(branch_last.recorded() == std::vector<std::size_t>{1});

    Strategy first = Strategy::first_composite();
    CHECK(select_formula(gamma, first) == f_and);
    CHECK(first.recorded() == std::vector<std::size_t>{0});

    SignedFormulaList literals = {sT(v("p")), sF(v("q"))};
    CHECK(select_formula(literals, branch_last) == std::nullopt);
    CHECK(select_formula(literals, first) == std::nullopt);
    CHECK(branch_last.recorded().size() == 1);

    SignedFormulaList only_branching = {sT(v("p")), f_and};
    Strategy late = Strategy::branch_last();
    CHECK(select_formula(only_branching, late) == f_and);
}

TEST_CASE("manual strategy consumes supplied indices") {
    SignedFormula f_and = sF(conj(v("p"), v("q")));
    SignedFormulaList gamma = {sT(v("p")), f_and};

    Strategy manual = Strategy::manual({1});
    CHECK(select_formula(gamma, manual) == f_and);
    CHECK(manual.recorded() == std::vector<std::size_t>{1});
    CHECK_THROWS_AS(select_formula(gamma, manual), ManualChoiceError);

    Strategy out_of_range = Strategy::manual({7});
    CHECK_THROWS_AS(select_formula(gamma, out_of_range), ManualChoiceError);

    Strategy names_literal = Strategy::manual({0});
    CHECK_THROWS_AS(select_formula(gamma, names_literal), ManualChoiceError);

    Strategy on_literals = Strategy::manual({0});
    CHECK(select_formula({sT(v("p"))}, on_literals) == std::nullopt);
}

TEST_CASE("models reproduces the worked example") {
    ModelSet ms = models(example_gamma());
    REQUIRE(ms.size() == 1);
    CHECK(ms.members()[0] == PartialModel{{Letter("p"), true}, {Letter("q"), false}});
}

TEST_CASE("models of the empty set is the empty partial model") {
    ModelSet ms = models({});
    REQUIRE(ms.size() == 1);
    CHECK(ms.members()[0].empty());
}

TEST_CASE("models of a single branching formula") {
    ModelSet ms = models({sF(conj(v("p"), v("q")))});
    ModelSet expected{PartialModel{{Letter("p"), false}},
                      PartialModel{{Letter("q"), false}}};
    CHECK(ms == expected);
}

TEST_CASE("model sets are canonical") {
    ModelSet a;
    a.insert(PartialModel{{Letter("q"), false}});
    a.insert(PartialModel{{Letter("p"), true}});
    a.insert(PartialModel{{Letter("p"), true}});
    ModelSet b;
    b.insert(PartialModel{{Letter("p"), true}});
    b.insert(PartialModel{{Letter("q"), false}});
    CHECK(a == b);
    CHECK(a.size() == 2);
    CHECK(a.contains(PartialModel{{Letter("p"), true}}));
    CHECK_FALSE(a.contains(PartialModel{{Letter("p"), false}}));
}

TEST_CASE("strategy choice does not change the computed models") {
    FormulaGenerator gen(505);
    auto letters = first_letters(3);
    for (int i = 0; i < 150; ++i) {
        SignedFormulaList gamma = gen.problem(3, 3, 3);
        Strategy bl = Strategy::branch_last();
        Strategy fc = Strategy::first_composite();
        ModelSet left = expand_partial_models(models(gamma, bl), letters_of(gamma));
        ModelSet right = expand_partial_models(models(gamma, fc), letters_of(gamma));
        CHECK(left == right);
    }
}

TEST_CASE("recorded choices replay to the identical run") {
    FormulaGenerator gen(606);
    for (int i = 0; i < 100; ++i) {
        SignedFormulaList gamma = gen.problem(3, 3, 3);
        Strategy original = Strategy::branch_last();
        EngineStats stats;
        ModelSet first_run = models(gamma, original, {}, &stats);
        Strategy replay = Strategy::manual(original.recorded());
        EngineStats replay_stats;
        ModelSet second_run = models(gamma, replay, {}, &replay_stats);
        CHECK(first_run == second_run);
        CHECK(stats.expansions == replay_stats.expansions);
        CHECK(stats.leaves == replay_stats.leaves);
        CHECK(replay.recorded() == original.recorded());
    }
}

TEST_CASE("early closure prunes without changing the answer") {
    FormulaGenerator gen(707);
    for (int i = 0; i < 100; ++i) {
        SignedFormulaList gamma = gen.problem(3, 3, 2);
        Strategy plain = Strategy::branch_last();
        Strategy pruned = Strategy::branch_last();
        EngineStats plain_stats;
        EngineStats pruned_stats;
        ModelSet a = models(gamma, plain, {}, &plain_stats);
        ModelSet b = models(gamma, pruned, {.early_closure = true}, &pruned_stats);
        auto letters = letters_of(gamma);
        CHECK(expand_partial_models(a, letters) == expand_partial_models(b, letters));
        CHECK(pruned_stats.expansions <= plain_stats.expansions);
    }
}

TEST_CASE("engine stats count the run") {
    Strategy bl = Strategy::branch_last();
    EngineStats stats;
    models(example_gamma(), bl, {}, &stats);
    CHECK(stats.expansions == 3);
    CHECK(stats.leaves == 2);
    CHECK(stats.closed_leaves == 1);
    CHECK(stats.nodes() == 5);

    Strategy fc = Strategy::first_composite();
    EngineStats eager;
    models({sF(conj(v("p"), v("q"))), sT(conj(v("p"), neg(v("q"))))}, fc, {}, &eager);
    CHECK(eager.expansions == 5);

    Strategy bl2 = Strategy::branch_last();
    EngineStats lazy;
    models({sF(conj(v("p"), v("q"))), sT(conj(v("p"), neg(v("q"))))}, bl2, {}, &lazy);
    CHECK(lazy.expansions == 3);
}

TEST_CASE("total measure decreases at every expansion") {
    FormulaGenerator gen(808);
    for (int i = 0; i < 100; ++i) {
        SignedFormulaList gamma = gen.problem(3, 4, 3);
        std::vector<SignedFormulaList> stack{gamma};
        Strategy strategy = Strategy::branch_last();
        while (!stack.empty()) {
            SignedFormulaList current = std::move(stack.back());
            stack.pop_back();
            auto selected = select_formula(current, strategy);
            if (!selected) continue;
            Expansion expansion = expand(current, *selected);
            for (auto& successor : expansion.successors) {
                CHECK(total_measure(successor) < total_measure(current));
                stack.push_back(std::move(successor));
            }
        }
    }
}

TEST_CASE("adversarially deep input stays within the work stack") {
    Formula chain = v("p");
    for (int i = 0; i < 12000; ++i) chain = neg(std::move(chain));
    ModelSet ms = models({{Sign::T, chain}});
    REQUIRE(ms.size() == 1);
    CHECK(ms.members()[0] == PartialModel{{Letter("p"), true}});
}

TEST_CASE("expand_partial_models enumerates extensions") {
    ModelSet pt{PartialModel{{Letter("p"), true}}};
    auto letters = first_letters(2);
    ModelSet expanded = expand_partial_models(pt, letters);
    ModelSet expected{PartialModel{{Letter("p"), true}, {Letter("q"), true}},
                      PartialModel{{Letter("p"), true}, {Letter("q"), false}}};
    CHECK(expanded == expected);

    CHECK(expand_partial_models({}, letters).empty());

    ModelSet everything{PartialModel{}};
    ModelSet two = expand_partial_models(everything, first_letters(1));
    CHECK(two.size() == 2);

    ModelSet zero = expand_partial_models(everything, {});
    REQUIRE(zero.size() == 1);
    CHECK(zero.members()[0].empty());

    CHECK_THROWS_AS(expand_partial_models(pt, std::vector<Letter>{Letter("q")}),
                    DomainError);
}

TEST_CASE("subsume drops strict extensions only") {
    ModelSet with_extension{PartialModel{{Letter("p"), true}},
                            PartialModel{{Letter("p"), true}, {Letter("q"), false}}};
    ModelSet reduced = subsume(with_extension);
    REQUIRE(reduced.size() == 1);
    CHECK(reduced.members()[0] == PartialModel{{Letter("p"), true}});

    ModelSet incomparable{PartialModel{{Letter("p"), true}},
                          PartialModel{{Letter("q"), false}}};
    CHECK(subsume(incomparable) == incomparable);

    CHECK(subsume({}).empty());

    auto letters = first_letters(2);
    CHECK(expand_partial_models(subsume(with_extension), letters) ==
          expand_partial_models(with_extension, letters));
}

TEST_CASE("derived queries") {
    CHECK_FALSE(is_satisfiable({sT(v("p")), sF(v("p"))}));
    CHECK(is_satisfiable(example_gamma()));
    CHECK(is_valid(neg(conj(v("p"), neg(v("p"))))));
    CHECK_FALSE(is_valid(v("p")));
    CHECK(entails({sT(v("p"))}, v("p")));
    CHECK_FALSE(entails({sT(v("p"))}, v("q")));
    CHECK(entails({sT(conj(v("p"), v("q")))}, v("q")));
}

TEST_CASE("parallel exploration matches the sequential result") {
    FormulaGenerator gen(909);
    for (int i = 0; i < 60; ++i) {
        SignedFormulaList gamma = gen.problem(4, 4, 3);
        Strategy bl = Strategy::branch_last();
        CHECK(models_parallel(gamma, StrategyKind::BranchLast) == models(gamma, bl));
        Strategy fc = Strategy::first_composite();
        CHECK(models_parallel(gamma, StrategyKind::FirstComposite) == models(gamma, fc));
    }
    CHECK_THROWS_AS(models_parallel(example_gamma(), StrategyKind::Manual),
                    ManualChoiceError);
    CHECK(models_parallel({}, StrategyKind::BranchLast) == models({}));
}

TEST_CASE("lmods dichotomy on random literal sets") {
    FormulaGenerator gen(111);
    for (int i = 0; i < 200; ++i) {
        SignedFormulaList literals = gen.problem(4, 0, 3);
        ModelSet ms = lmods(literals);
        if (has_opposite_literals(literals)) {
            CHECK(ms.empty());
        } else {
            REQUIRE(ms.size() == 1);
            for (const auto& sf : literals) {
                CHECK(ms.members()[0].value(sf.formula.letter()) == mean(sf.sign));
            }
        }
    }
}
