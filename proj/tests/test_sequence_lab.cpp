#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "naltm/sequence_lab.hpp"

using namespace naltm;

TEST_CASE("setting 1 repeats the constant prefix of the alphabet") {
    GeneratorSpec spec{1, 3, 1, 0, 2, letter_alphabet(3), 0};
    CHECK(generate(spec) == std::vector<Symbol>{"A", "B", "C", "A", "B", "C"});
}

TEST_CASE("generated lengths and alphabet membership") {
    auto alphabet = letter_alphabet(26);
    std::set<Symbol> members(alphabet.begin(), alphabet.end());

    GeneratorSpec s1{1, 5, 1, 0, 7, alphabet, 3};
    CHECK(generate(s1).size() == 35);

    GeneratorSpec s2{2, 4, 3, 0, 11, alphabet, 3};
    auto seq2 = generate(s2);
    CHECK(seq2.size() == 44);

    GeneratorSpec s3{3, 4, 2, 3, 9, alphabet, 3};
    auto seq3 = generate(s3);
    CHECK(seq3.size() == 63);

    for (const Symbol& s : seq2) CHECK(members.count(s) == 1);
    for (const Symbol& s : seq3) CHECK(members.count(s) == 1);
}

TEST_CASE("settings 2 and 3 share constants and draw distinct variables") {
    GeneratorSpec spec{2, 5, 3, 0, 40, letter_alphabet(26), 9};
    auto vars = variants(spec);
    REQUIRE(vars.size() == 3);

    // constants occupy positions 2..m-1 of every variant
    std::vector<Symbol> constants{"A", "B", "C"};
    std::set<Symbol> variables;
    for (const auto& v : vars) {
        REQUIRE(v.size() == 5);
        CHECK(std::vector<Symbol>(v.begin() + 1, v.end() - 1) == constants);
        variables.insert(v.front());
        variables.insert(v.back());
    }
    CHECK(variables.size() == 6);  // 2k distinct draws
    for (const Symbol& v : variables) {
        CHECK(std::find(constants.begin(), constants.end(), v) == constants.end());
    }

    // every repetition is one of the variants
    auto seq = generate(spec);
    std::set<std::vector<Symbol>> variant_set(vars.begin(), vars.end());
    std::set<std::size_t> used;
    for (std::size_t rep = 0; rep < 40; ++rep) {
        std::vector<Symbol> sub(seq.begin() + rep * 5, seq.begin() + rep * 5 + 5);
        CHECK(variant_set.count(sub) == 1);
        used.insert(std::size_t(
            std::find(vars.begin(), vars.end(), sub) - vars.begin()));
    }
    CHECK(used.size() == 3);  // all variants appear over 40 repetitions
}

TEST_CASE("setting 3 appends p random characters per repetition") {
    GeneratorSpec spec{3, 4, 2, 2, 30, letter_alphabet(26), 4};
    auto seq = generate(spec);
    auto vars = variants(spec);
    std::set<std::vector<Symbol>> variant_set(vars.begin(), vars.end());
    for (std::size_t rep = 0; rep < 30; ++rep) {
        std::vector<Symbol> sub(seq.begin() + rep * 6, seq.begin() + rep * 6 + 4);
        CHECK(variant_set.count(sub) == 1);
    }
}

TEST_CASE("generator validation") {
    CHECK_THROWS_WITH(generate({1, 6, 1, 0, 2, letter_alphabet(3), 0}),
                      Catch::Matchers::ContainsSubstring("alphabet too small"));
    CHECK_THROWS_WITH(generate({2, 4, 13, 0, 2, letter_alphabet(26), 0}),
                      Catch::Matchers::ContainsSubstring("alphabet too small"));
    CHECK_THROWS_AS(generate({4, 4, 1, 0, 2, letter_alphabet(26), 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate({1, 1, 1, 0, 2, letter_alphabet(26), 0}),
                    std::invalid_argument);
    auto dup = letter_alphabet(4);
    dup.push_back("A");
    CHECK_THROWS_WITH(generate({1, 3, 1, 0, 2, dup, 0}),
                      Catch::Matchers::ContainsSubstring("duplicate"));
}

TEST_CASE("generation is deterministic in the seed") {
    GeneratorSpec spec{3, 5, 2, 3, 25, letter_alphabet(26), 77};
    CHECK(generate(spec) == generate(spec));
    GeneratorSpec other = spec;
    other.seed = 78;
    CHECK(generate(spec) != generate(other));
}

TEST_CASE("closed-form ceilings match the worked examples") {
    auto alphabet = letter_alphabet(26);
    CHECK(ceiling({1, 6, 1, 0, 10, alphabet, 0}).value == 1.0);
    CHECK(ceiling({2, 4, 2, 0, 10, alphabet, 0}).value == Catch::Approx(0.875));
    CHECK(ceiling({3, 4, 2, 2, 10, alphabet, 0}).value == Catch::Approx(0.5));
    CHECK(ceiling({3, 6, 2, 4, 10, alphabet, 0}).value == Catch::Approx(0.5));
    CHECK(ceiling({1, 6, 1, 0, 10, alphabet, 0}).method == "closed-form");
}

TEST_CASE("empirical oracle agrees with closed form on settings 1 and 2") {
    auto alphabet = letter_alphabet(26);
    // deterministic specs, frozen seeds
    std::vector<GeneratorSpec> specs = {
        {1, 6, 1, 0, 300, alphabet, 0},  {1, 3, 1, 0, 400, alphabet, 1},
        {1, 8, 1, 0, 300, alphabet, 14}, {1, 4, 1, 0, 400, alphabet, 15},
        {2, 4, 2, 0, 500, alphabet, 2},  {2, 5, 3, 0, 600, alphabet, 3},
        {2, 3, 4, 0, 800, alphabet, 4},  {2, 8, 2, 0, 400, alphabet, 5},
        {2, 6, 4, 0, 600, alphabet, 6},  {2, 4, 1, 0, 400, alphabet, 7},
        {2, 7, 3, 0, 500, alphabet, 16}, {2, 5, 2, 0, 600, alphabet, 17},
        {2, 3, 2, 0, 800, alphabet, 18}, {2, 8, 4, 0, 400, alphabet, 19},
        {2, 6, 1, 0, 400, alphabet, 20}, {2, 7, 4, 0, 500, alphabet, 21},
    };
    for (const auto& spec : specs) {
        CAPTURE(spec.setting, spec.m, spec.k, spec.seed);
        double closed = ceiling(spec).value;
        CeilingEstimate emp = empirical_ceiling(spec);
        CHECK(emp.method == "empirical");
        CHECK(std::abs(closed - emp.value) <= 0.02);
    }
}

TEST_CASE("empirical oracle exceeds the setting-3 closed form by the guess credit") {
    // the closed form scores the variable and random positions as fully
    // unpredictable; an optimal guesser still collects 1/k on the variable
    // position and 1/|alphabet| per random filler
    auto alphabet = letter_alphabet(26);
    std::vector<GeneratorSpec> specs = {
        {3, 4, 2, 2, 900, alphabet, 10},
        {3, 6, 2, 4, 700, alphabet, 11},
        {3, 5, 4, 1, 900, alphabet, 12},
        {3, 3, 1, 3, 900, alphabet, 13},
    };
    for (const auto& spec : specs) {
        CAPTURE(spec.m, spec.k, spec.p, spec.seed);
        double closed = ceiling(spec).value;
        double credit =
            (1.0 / spec.k + double(spec.p) / alphabet.size()) / (spec.m + spec.p);
        double emp = empirical_ceiling(spec).value;
        // at least the closed form, at most the true optimum plus noise
        CHECK(emp >= closed - 0.01);
        CHECK(emp <= closed + credit + 0.02);
    }
}

TEST_CASE("windowed accuracy") {
    auto make_reports = [](std::vector<int> corrects) {
        std::vector<StepReport> reports;
        for (std::size_t i = 0; i < corrects.size(); ++i) {
            StepReport r;
            r.step_index = i;
            r.correct = corrects[i] != 0;
            reports.push_back(r);
        }
        return reports;
    };

    auto all = windowed_accuracy(make_reports({1, 1, 1, 1, 1}), 3);
    REQUIRE(all.points.size() == 3);
    for (const auto& p : all.points) CHECK(p.accuracy == 1.0);

    auto alternating = windowed_accuracy(make_reports({1, 0, 1, 0, 1, 0}), 2);
    REQUIRE(alternating.points.size() == 5);
    for (const auto& p : alternating.points) CHECK(p.accuracy == 0.5);

    auto ten = windowed_accuracy(make_reports(std::vector<int>(10, 1)), 4);
    CHECK(ten.points.size() == 7);
    CHECK(ten.points.front().step_index == 3);

    CHECK(windowed_accuracy(make_reports({1, 0}), 5).points.empty());
    CHECK_THROWS_AS(windowed_accuracy(make_reports({1}), 0), std::invalid_argument);
}

TEST_CASE("experiment runs reproduce setting 1 exactly") {
    ModelConfig cfg;
    GeneratorSpec spec{1, 6, 1, 0, 50, letter_alphabet(6), 0};
    auto reports = run_experiment(cfg, spec);
    auto series = windowed_accuracy(reports, 50);
    REQUIRE_FALSE(series.points.empty());
    CHECK(series.points.back().accuracy == 1.0);

    CHECK(run_experiment(cfg, spec) == reports);

    // generator errors surface through the runner
    GeneratorSpec bad = spec;
    bad.alphabet.clear();
    CHECK_THROWS_AS(run_experiment(cfg, bad), std::invalid_argument);
}

TEST_CASE("probe leaves the trained model untouched") {
    ModelConfig cfg;
    GeneratorSpec spec{2, 4, 2, 0, 100, letter_alphabet(26), 2};
    Model model(cfg);
    run_experiment(model, spec);
    auto before_stats = model.network().stats();
    auto before_prediction = model.prediction();

    probe_prediction(model, {"A", "B"});

    CHECK(model.network().stats().link_count == before_stats.link_count);
    CHECK(model.prediction() == before_prediction);
}

TEST_CASE("sweep emits the grid row-major and deterministically") {
    ModelConfig cfg;
    auto alphabet = letter_alphabet(26);
    auto cells = sweep(cfg, {4}, {2}, 120, alphabet, 5);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].m == 4);
    CHECK(cells[0].k == 2);
    CHECK(cells[0].ceiling == Catch::Approx(0.875));

    GeneratorSpec spec{2, 4, 2, 0, 120, alphabet, 5};
    CHECK(cells[0].final_accuracy ==
          final_quarter_accuracy(run_experiment(cfg, spec)));

    auto grid = sweep(cfg, {3, 4}, {2, 3}, 60, alphabet, 5);
    REQUIRE(grid.size() == 4);
    CHECK(grid[0].m == 3);
    CHECK(grid[0].k == 2);
    CHECK(grid[1].m == 3);
    CHECK(grid[1].k == 3);
    CHECK(grid[3].m == 4);
    CHECK(grid[3].k == 3);
    CHECK(sweep(cfg, {3, 4}, {2, 3}, 60, alphabet, 5) == grid);

    CHECK_THROWS_AS(sweep(cfg, {}, {2}, 60, alphabet, 5), std::invalid_argument);
}

TEST_CASE("accuracy saturates once k outgrows the link capacity") {
    // capacity saturation: with the default capacity a k far past it loses
    // accuracy; measured values are printed by the acceptance suite
    ModelConfig cfg;
    cfg.rng_seed = 9;
    auto alphabet = synthetic_alphabet(140);
    auto cells = sweep(cfg, {4}, {2, 64}, 250, alphabet, 9);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].final_accuracy >= cells[1].final_accuracy);
    // the degradation is substantial, not a tie
    CHECK(cells[0].final_accuracy - cells[1].final_accuracy > 0.1);
}
