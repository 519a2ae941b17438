#pragma once

// The perception cycle. Each step: score the standing prediction, activate
// the input column (burst when nothing was anticipated), hypothesize new
// links under the per-step cap, revise all touched links against the
// observed transition (a fresh link collects its founding evidence in the
// same step), recycle over-capacity columns, decay budgets, then deduce
// the anticipations that gate the next step.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "naltm/network.hpp"
#include "naltm/random.hpp"
#include "naltm/truth.hpp"

namespace naltm {

struct ModelConfig {
    std::uint32_t nodes_per_column = 16;
    std::uint32_t max_new_links_per_step = 16;
    std::uint32_t hypothesis_sample_size = 2;
    std::uint32_t link_capacity_per_column = 64;
    double anticipation_threshold = 0.5;  // strict: pre-activation needs expectation above this
    TruthValue perceptual_truth{1.0, 0.9};
    double initial_link_priority = 0.8;
    double link_durability = 0.9;
    double node_durability = 0.9;
    std::uint32_t evidential_horizon = 1;
    std::uint64_t rng_seed = 0;

    bool operator==(const ModelConfig&) const = default;
};

inline void validate(const ModelConfig& cfg) {
    if (cfg.nodes_per_column == 0)
        throw std::invalid_argument("nodes_per_column must be positive");
    if (cfg.hypothesis_sample_size == 0)
        throw std::invalid_argument("hypothesis_sample_size must be positive");
    if (cfg.hypothesis_sample_size > cfg.nodes_per_column)
        throw std::invalid_argument("hypothesis_sample_size must not exceed nodes_per_column");
    if (cfg.anticipation_threshold < 0.0 || cfg.anticipation_threshold >= 1.0)
        throw std::invalid_argument("anticipation_threshold must be in [0,1)");
    if (cfg.perceptual_truth.frequency < 0.0 || cfg.perceptual_truth.frequency > 1.0)
        throw std::invalid_argument("perceptual_truth frequency must be in [0,1]");
    if (cfg.perceptual_truth.confidence < 0.0 || cfg.perceptual_truth.confidence >= 1.0)
        throw std::invalid_argument("perceptual_truth confidence must be in [0,1)");
    if (cfg.initial_link_priority < 0.0 || cfg.initial_link_priority > 1.0)
        throw std::invalid_argument("initial_link_priority must be in [0,1]");
    if (cfg.link_durability <= 0.0 || cfg.link_durability >= 1.0)
        throw std::invalid_argument("link_durability must be in (0,1)");
    if (cfg.node_durability <= 0.0 || cfg.node_durability >= 1.0)
        throw std::invalid_argument("node_durability must be in (0,1)");
    if (cfg.evidential_horizon == 0)
        throw std::invalid_argument("evidential_horizon must be positive");
}

struct StepReport {
    std::uint64_t step_index = 0;
    Symbol input;
    std::optional<Symbol> predicted;  // top-1 issued before the input arrived
    bool correct = false;
    std::vector<Symbol> anticipated_columns;  // sorted, duplicate-free
    bool burst = false;
    std::uint32_t new_links = 0;
    std::uint32_t evicted_links = 0;

    bool operator==(const StepReport&) const = default;
};

// Index of the maximum score; exact ties are broken uniformly at random.
// Scores are compared only, so any positive rescaling leaves the choice
// distribution unchanged.
inline std::size_t argmax_with_ties(const std::vector<double>& scores, Rng& rng) {
    if (scores.empty()) throw std::invalid_argument("argmax of empty score list");
    double best = scores[0];
    for (double v : scores) best = std::max(best, v);
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] == best) tied.push_back(i);
    }
    if (tied.size() == 1) return tied[0];
    return tied[rng.index(tied.size())];
}

class Model {
public:
    explicit Model(const ModelConfig& cfg)
        : cfg_(checked(cfg)),
          net_(cfg.nodes_per_column, Budget{0.0, cfg.node_durability, 0.0}),
          rng_(cfg.rng_seed) {}

    StepReport step(const Symbol& s) {
        StepReport rep;
        rep.step_index = step_index_;
        rep.input = s;
        rep.predicted = standing_;
        rep.correct = standing_.has_value() && *standing_ == s;

        ColumnId col = activate(s, rep);
        rep.new_links = hypothesize(col);
        revise_links();
        rep.evicted_links = recycle(col);
        net_.decay_link_budgets();
        net_.decay_node_budgets();
        compute_anticipations();
        standing_ = predict_next();
        rep.anticipated_columns = anticipated_symbols();
        roll_flags(col);
        ++step_index_;
        return rep;
    }

    // Standing top-1 prediction for the next input; empty when nothing is
    // pre-active.
    const std::optional<Symbol>& prediction() const { return standing_; }

    const Network& network() const { return net_; }
    const ModelConfig& config() const { return cfg_; }
    std::uint64_t steps_taken() const { return step_index_; }

    // introspection for tests and tooling; "last" = the most recent step
    const std::vector<NodeId>& last_active_nodes() const { return active_prev_; }
    const std::vector<NodeId>& pre_active_nodes() const { return pre_active_; }
    const std::vector<LinkId>& last_revised_links() const { return revised_; }

private:
    static ModelConfig checked(ModelConfig cfg) {
        validate(cfg);
        return cfg;
    }

    ColumnId activate(const Symbol& s, StepReport& rep) {
        ColumnId cid = net_.get_or_create_column(s);
        const Column& col = net_.column(cid);
        active_now_.clear();
        for (NodeId n : col.nodes) {
            if (net_.node(n).pre_active) active_now_.push_back(n);
        }
        rep.burst = active_now_.empty();
        if (rep.burst) {
            active_now_ = col.nodes;
            // a burst is an unrecognized context: allocate representatives
            // for it among nodes no other context has claimed yet
            context_now_ = allocate_representatives(col.nodes);
        } else {
            context_now_ = active_now_;
        }
        for (NodeId n : active_now_) {
            Node& node = net_.node(n);
            node.active_now = true;
            node.truth = cfg_.perceptual_truth;
            node.budget.priority = 1.0;
        }
        return cid;
    }

    // Representatives for a bursting (unrecognized) context, picked in
    // preference order:
    //   1. nodes already claimed by links from the previous actives -- the
    //      entering context already owns them
    //   2. root nodes (outbound links, no inbound claim) -- stream-entry
    //      representatives of this column
    //   3. nodes with no links at all
    //   4. anything else, once the column is saturated
    std::vector<NodeId> allocate_representatives(const std::vector<NodeId>& roster) {
        std::size_t want = std::min<std::size_t>(cfg_.hypothesis_sample_size, roster.size());
        std::vector<std::vector<NodeId>> tiers(4);
        for (NodeId n : roster) {
            const bool inbound = claimed(n);
            const bool outbound = !net_.links_from(n).empty();
            bool from_prev = false;
            for (LinkId lid : net_.links_into(n)) {
                if (net_.node(net_.link(lid).source).active_prev) {
                    from_prev = true;
                    break;
                }
            }
            std::size_t tier;
            if (from_prev) {
                tier = 0;
            } else if (outbound && !inbound) {
                tier = 1;
            } else if (!inbound) {
                tier = 2;
            } else {
                tier = 3;
            }
            tiers[tier].push_back(n);
        }
        std::vector<NodeId> out;
        for (const auto& tier : tiers) {
            if (out.size() >= want) break;
            for (NodeId n : pick_nodes(tier, want - out.size())) out.push_back(n);
        }
        return out;
    }

    // Three evidence cases per link, at most one firing per step:
    //   source active, target active      -> positive to all three predictions
    //   source active, target inactive    -> negative to forward + equivalence
    //   source inactive, target active    -> negative to backward + equivalence
    std::size_t revise_links() {
        revised_.clear();
        std::size_t count = 0;
        const double horizon = cfg_.evidential_horizon;
        const TruthValue pos = unit_evidence(true, horizon);
        const TruthValue neg = unit_evidence(false, horizon);

        for (NodeId n : active_prev_) {
            for (LinkId lid : net_.links_from(n)) {
                Link& l = net_.link(lid);
                if (net_.node(l.target).active_now) {
                    l.forward = revise(l.forward, pos, horizon);
                    l.backward = revise(l.backward, pos, horizon);
                    l.equivalence = revise(l.equivalence, pos, horizon);
                    count += 3;
                } else {
                    l.forward = revise(l.forward, neg, horizon);
                    l.equivalence = revise(l.equivalence, neg, horizon);
                    count += 2;
                }
                l.budget.quality = expectation(l.forward);
                revised_.push_back(lid);
            }
        }
        for (NodeId n : active_now_) {
            for (LinkId lid : net_.links_into(n)) {
                Link& l = net_.link(lid);
                if (net_.node(l.source).active_prev) continue;  // covered above
                l.backward = revise(l.backward, neg, horizon);
                l.equivalence = revise(l.equivalence, neg, horizon);
                l.budget.quality = expectation(l.forward);
                count += 2;
                revised_.push_back(lid);
            }
        }
        return count;
    }

    // Connects the two columns activated in succession. A partially active
    // side contributes exactly its active nodes; a bursting target column
    // contributes the representatives allocated at the burst. Two partial
    // sides mean the existing hypotheses already cover the transition, and
    // a bursting source feeding an anticipated target creates nothing: the
    // anticipation there belongs to whichever context produced it, and
    // wiring an unrecognized context into it fuses the two for good.
    std::uint32_t hypothesize(ColumnId curr) {
        if (!prev_col_.has_value() || *prev_col_ == curr) return 0;
        const bool curr_full =
            active_now_.size() == net_.column(curr).nodes.size();
        if (!curr_full) return 0;

        std::uint32_t created = 0;
        const LinkInit init{cfg_.initial_link_priority, cfg_.link_durability};
        for (NodeId source : context_prev_) {
            for (NodeId target : context_now_) {
                if (created >= cfg_.max_new_links_per_step) return created;
                if (net_.create_link(source, target, init).created) ++created;
            }
        }
        return created;
    }

    std::uint32_t recycle(ColumnId curr) {
        std::size_t evicted = 0;
        if (prev_col_.has_value() && *prev_col_ != curr) {
            evicted += net_.evict_excess(*prev_col_, cfg_.link_capacity_per_column);
        }
        evicted += net_.evict_excess(curr, cfg_.link_capacity_per_column);
        return static_cast<std::uint32_t>(evicted);
    }

    // Deduce candidate anticipations along every link out of an active
    // node; per target, keep the candidate with the highest expectation
    // (correlated links overlap, pooling would overcount).
    void compute_anticipations() {
        for (NodeId n : pre_active_) {
            Node& node = net_.node(n);
            node.pre_active = false;
            node.anticipation = no_evidence();
        }
        pre_active_.clear();

        std::map<NodeId, TruthValue> best;
        for (NodeId n : active_now_) {
            const Node& source = net_.node(n);
            for (LinkId lid : net_.links_from(n)) {
                const Link& l = net_.link(lid);
                TruthValue candidate = deduce(source.truth, l.forward);
                auto [it, inserted] = best.emplace(l.target, candidate);
                if (!inserted && expectation(candidate) > expectation(it->second)) {
                    it->second = candidate;
                }
            }
        }
        for (const auto& [target, truth] : best) {
            if (expectation(truth) > cfg_.anticipation_threshold) {
                Node& node = net_.node(target);
                node.pre_active = true;
                node.anticipation = truth;
                pre_active_.push_back(target);
            }
        }
    }

    // Column score = best expectation among its pre-active nodes.
    std::optional<Symbol> predict_next() {
        if (pre_active_.empty()) return std::nullopt;
        std::map<ColumnId, double> scores;
        for (NodeId n : pre_active_) {
            const Node& node = net_.node(n);
            double e = expectation(node.anticipation);
            auto [it, inserted] = scores.emplace(node.column, e);
            if (!inserted && e > it->second) it->second = e;
        }
        std::vector<ColumnId> cols;
        std::vector<double> vals;
        cols.reserve(scores.size());
        vals.reserve(scores.size());
        for (const auto& [c, v] : scores) {
            cols.push_back(c);
            vals.push_back(v);
        }
        return net_.column(cols[argmax_with_ties(vals, rng_)]).symbol;
    }

    std::vector<Symbol> anticipated_symbols() const {
        std::set<Symbol> symbols;
        for (NodeId n : pre_active_) {
            symbols.insert(net_.column(net_.node(n).column).symbol);
        }
        return {symbols.begin(), symbols.end()};
    }

    void roll_flags(ColumnId col) {
        for (NodeId n : active_prev_) net_.node(n).active_prev = false;
        for (NodeId n : active_now_) {
            Node& node = net_.node(n);
            node.active_now = false;
            node.active_prev = true;
        }
        active_prev_ = std::move(active_now_);
        active_now_.clear();
        context_prev_ = std::move(context_now_);
        context_now_.clear();
        prev_col_ = col;
    }

    // A node is claimed when some inbound link marks it as a context
    // representative; a link whose forward prediction has been punished to
    // indifference or below no longer counts, so abandoned representatives
    // return to the pool.
    bool claimed(NodeId n) const {
        for (LinkId lid : net_.links_into(n)) {
            if (expectation(net_.link(lid).forward) > 0.5) return true;
        }
        return false;
    }

    std::vector<NodeId> pick_nodes(const std::vector<NodeId>& pool, std::size_t count) {
        count = std::min(count, pool.size());
        std::vector<NodeId> out;
        out.reserve(count);
        for (std::uint32_t i :
             rng_.sample(static_cast<std::uint32_t>(pool.size()), static_cast<std::uint32_t>(count))) {
            out.push_back(pool[i]);
        }
        return out;
    }

    ModelConfig cfg_;
    Network net_;
    Rng rng_;
    std::uint64_t step_index_ = 0;
    std::optional<Symbol> standing_;
    std::optional<ColumnId> prev_col_;
    std::vector<NodeId> active_now_;
    std::vector<NodeId> active_prev_;
    std::vector<NodeId> context_now_;   // hypothesis endpoints for this step
    std::vector<NodeId> context_prev_;  // and for the previous one
    std::vector<NodeId> pre_active_;
    std::vector<LinkId> revised_;
};

}  // namespace naltm
