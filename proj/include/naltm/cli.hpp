#pragma once

// Command-line front end: flag/config parsing, the `run` and `sweep`
// commands, and their file outputs. Exit codes: 0 success, 1 runtime/IO,
// 2 usage.

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "naltm/csv.hpp"
#include "naltm/dot.hpp"
#include "naltm/sequence_lab.hpp"

namespace naltm {

struct RunConfig {
    ModelConfig model;
    GeneratorSpec gen{1, 4, 2, 0, 100, {}, 0};
    std::string alphabet_chars = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
    std::string accuracy_csv = "accuracy.csv";
    std::string dot_file = "network.dot";
    std::string sweep_csv = "sweep.csv";
    std::size_t window = 50;
    double dot_min_expectation = 0.6;
    std::vector<std::uint32_t> m_values{4, 6, 8};
    std::vector<std::uint32_t> k_values{2, 4, 8, 16};

    bool operator==(const RunConfig&) const = default;
};

// One single-character symbol per character of the flag value.
inline std::vector<Symbol> split_alphabet(const std::string& chars) {
    std::vector<Symbol> out;
    out.reserve(chars.size());
    for (char c : chars) out.emplace_back(1, c);
    return out;
}

struct CliHandles {
    CLI::App* run = nullptr;
    CLI::App* sweep = nullptr;
};

// All options live on the top-level app (subcommands fall through), so a
// flat `key = value` config file addresses every flag by its long name.
inline CliHandles build_cli(CLI::App& app, RunConfig& rc) {
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.allow_config_extras(false);
    app.set_config("--config", "", "flat key = value config file; flags override entries");

    app.add_option("--nodes-per-column", rc.model.nodes_per_column,
                   "context nodes per column");
    app.add_option("--max-new-links-per-step", rc.model.max_new_links_per_step,
                   "cap on hypothesized links per step");
    app.add_option("--hypothesis-sample-size", rc.model.hypothesis_sample_size,
                   "nodes sampled per side when hypothesizing");
    app.add_option("--link-capacity-per-column", rc.model.link_capacity_per_column,
                   "owned links a column may keep");
    app.add_option("--anticipation-threshold", rc.model.anticipation_threshold,
                   "strict expectation bar for pre-activation");
    app.add_option("--perceptual-frequency", rc.model.perceptual_truth.frequency,
                   "truth frequency of an active event");
    app.add_option("--perceptual-confidence", rc.model.perceptual_truth.confidence,
                   "truth confidence of an active event");
    app.add_option("--initial-link-priority", rc.model.initial_link_priority,
                   "budget priority of a fresh link");
    app.add_option("--link-durability", rc.model.link_durability,
                   "link priority decay rate");
    app.add_option("--node-durability", rc.model.node_durability,
                   "node priority decay rate");
    app.add_option("--evidential-horizon", rc.model.evidential_horizon,
                   "evidence units behind full confidence");
    app.add_option("--rng-seed", rc.model.rng_seed, "model RNG seed");

    app.add_option("--setting", rc.gen.setting, "experiment setting")
        ->check(CLI::Range(1, 3));
    app.add_option("--m", rc.gen.m, "sub-sequence length");
    app.add_option("--k", rc.gen.k, "number of variable-character samples");
    app.add_option("--p", rc.gen.p, "trailing random characters per repetition");
    app.add_option("--n", rc.gen.n, "repetitions");
    app.add_option("--seed", rc.gen.seed, "generator seed");
    app.add_option("--alphabet", rc.alphabet_chars,
                   "alphabet, one symbol per character");

    app.add_option("--window", rc.window, "trailing accuracy window");
    app.add_option("--accuracy-csv", rc.accuracy_csv, "accuracy output path");
    app.add_option("--dot-file", rc.dot_file, "network DOT output path");
    app.add_option("--dot-min-expectation", rc.dot_min_expectation,
                   "minimum forward expectation for exported edges");
    app.add_option("--sweep-csv", rc.sweep_csv, "sweep grid output path");
    app.add_option("--m-values", rc.m_values, "sweep sub-sequence lengths")
        ->delimiter(',');
    app.add_option("--k-values", rc.k_values, "sweep sample counts")
        ->delimiter(',');

    CliHandles handles;
    handles.run = app.add_subcommand("run", "run one experiment; writes accuracy CSV and network DOT");
    handles.run->fallthrough();
    handles.sweep = app.add_subcommand("sweep", "setting-2 grid over m and k; writes grid CSV");
    handles.sweep->fallthrough();
    return handles;
}

inline int cmd_run(RunConfig rc, std::ostream& out, std::ostream& err) {
    try {
        if (rc.gen.alphabet.empty()) rc.gen.alphabet = split_alphabet(rc.alphabet_chars);
        validate(rc.gen);
        validate(rc.model);
        if (rc.window < 1) throw std::invalid_argument("window must be at least 1");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        Model model(rc.model);
        const auto reports = run_experiment(model, rc.gen);
        const auto series = windowed_accuracy(reports, rc.window);
        write_accuracy_csv(reports, series, rc.accuracy_csv);
        write_text_file(rc.dot_file, export_dot(model.network(), rc.dot_min_expectation));
        char line[64];
        std::snprintf(line, sizeof(line), "final_accuracy=%.3f ceiling=%.3f\n",
                      final_quarter_accuracy(reports), ceiling(rc.gen).value);
        out << line;
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

inline int cmd_sweep(RunConfig rc, std::ostream& out, std::ostream& err) {
    try {
        if (rc.gen.alphabet.empty()) rc.gen.alphabet = split_alphabet(rc.alphabet_chars);
        if (rc.m_values.empty() || rc.k_values.empty()) {
            throw std::invalid_argument("sweep ranges must be nonempty");
        }
        validate(rc.model);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        const auto cells =
            sweep(rc.model, rc.m_values, rc.k_values, rc.gen.n, rc.gen.alphabet, rc.gen.seed);
        write_sweep_csv(cells, rc.sweep_csv);
        out << "wrote " << cells.size() << " cells to " << rc.sweep_csv << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

// Full CLI: parse args (program name excluded) and dispatch.
inline int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    CLI::App app{"temporal sequence learner over symbol streams"};
    CliHandles handles = build_cli(app, rc);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    if (handles.run->parsed()) return cmd_run(rc, out, err);
    return cmd_sweep(rc, out, err);
}

}  // namespace naltm
