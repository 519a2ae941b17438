#pragma once

// The network store: one column per symbol, a fixed roster of context nodes
// per column, and directed node->node links housing the three temporal
// predictions. Mutation is single-writer; see Model for the update cycle.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "naltm/truth.hpp"

namespace naltm {

using Symbol = std::string;
using NodeId = std::uint32_t;
using ColumnId = std::uint32_t;
using LinkId = std::uint32_t;

// A context-specific event: one contextual variant of its column's meaning.
struct Node {
    NodeId id = 0;
    ColumnId column = 0;
    TruthValue truth = no_evidence();  // perceptual truth while active
    Budget budget;
    bool active_now = false;
    bool active_prev = false;
    bool pre_active = false;
    TruthValue anticipation = no_evidence();  // meaningful only when pre_active
};

// Directed edge housing the three temporal predictions between two events:
// forward  = "source is followed by target"
// backward = "target was preceded by source"
// equivalence = the symmetric combination of both
struct Link {
    NodeId source = 0;
    NodeId target = 0;
    TruthValue forward = no_evidence();
    TruthValue backward = no_evidence();
    TruthValue equivalence = no_evidence();
    Budget budget;
    std::uint64_t seq = 0;  // creation order; breaks eviction ties
    bool alive = true;
};

struct Column {
    ColumnId id = 0;
    Symbol symbol;
    std::vector<NodeId> nodes;  // fixed roster, ascending NodeId
};

struct NetworkStats {
    std::size_t column_count = 0;
    std::size_t node_count = 0;
    std::size_t link_count = 0;
    std::map<ColumnId, std::size_t> links_per_column;
};

// Initial budget of a freshly hypothesized link.
struct LinkInit {
    double priority = 0.8;
    double durability = 0.9;
};

struct CreateLinkResult {
    LinkId id = 0;
    bool created = false;
};

class Network {
public:
    Network(std::uint32_t nodes_per_column, Budget default_node_budget)
        : nodes_per_column_(nodes_per_column),
          default_node_budget_(default_node_budget) {
        if (nodes_per_column == 0) {
            throw std::invalid_argument("nodes_per_column must be positive");
        }
    }

    // Idempotent per symbol; creates the full node roster on first sight.
    ColumnId get_or_create_column(const Symbol& s) {
        if (s.empty()) throw std::invalid_argument("empty symbol");
        auto it = column_index_.find(s);
        if (it != column_index_.end()) return it->second;

        ColumnId cid = static_cast<ColumnId>(columns_.size());
        Column col{cid, s, {}};
        col.nodes.reserve(nodes_per_column_);
        for (std::uint32_t i = 0; i < nodes_per_column_; ++i) {
            NodeId nid = static_cast<NodeId>(nodes_.size());
            Node node;
            node.id = nid;
            node.column = cid;
            node.budget = default_node_budget_;
            nodes_.push_back(node);
            out_.emplace_back();
            in_.emplace_back();
            col.nodes.push_back(nid);
        }
        columns_.push_back(std::move(col));
        owned_links_.push_back(0);
        column_index_.emplace(s, cid);
        return cid;
    }

    // Duplicate pairs are a silent no-op returning the existing link.
    CreateLinkResult create_link(NodeId source, NodeId target, const LinkInit& init) {
        check_node(source);
        check_node(target);
        if (nodes_[source].column == nodes_[target].column) {
            throw std::invalid_argument("intra-column link");
        }
        std::uint64_t key = pair_key(source, target);
        auto it = pair_index_.find(key);
        if (it != pair_index_.end()) return {it->second, false};

        LinkId lid = static_cast<LinkId>(links_.size());
        Link link;
        link.source = source;
        link.target = target;
        link.budget = Budget{init.priority, init.durability, 0.0};
        link.seq = next_seq_++;
        links_.push_back(link);
        out_[source].push_back(lid);
        in_[target].push_back(lid);
        pair_index_.emplace(key, lid);
        ++owned_links_[nodes_[source].column];
        ++alive_links_;
        return {lid, true};
    }

    // Outgoing links of a node, insertion order.
    const std::vector<LinkId>& links_from(NodeId n) const {
        check_node(n);
        return out_[n];
    }

    // Incoming links of a node, insertion order.
    const std::vector<LinkId>& links_into(NodeId n) const {
        check_node(n);
        return in_[n];
    }

    // Drops lowest-priority links owned by the column (a link is owned by
    // the column of its source node) until at most `cap` remain. Ties break
    // by ascending quality, then creation order.
    std::size_t evict_excess(ColumnId c, std::size_t cap) {
        check_column(c);
        if (owned_links_[c] <= cap) return 0;

        std::vector<LinkId> owned;
        owned.reserve(owned_links_[c]);
        for (NodeId n : columns_[c].nodes) {
            owned.insert(owned.end(), out_[n].begin(), out_[n].end());
        }
        std::sort(owned.begin(), owned.end(), [&](LinkId a, LinkId b) {
            const Link& la = links_[a];
            const Link& lb = links_[b];
            if (la.budget.priority != lb.budget.priority)
                return la.budget.priority < lb.budget.priority;
            if (la.budget.quality != lb.budget.quality)
                return la.budget.quality < lb.budget.quality;
            return la.seq < lb.seq;
        });

        std::size_t to_remove = owned.size() - cap;
        for (std::size_t i = 0; i < to_remove; ++i) {
            remove_link(owned[i]);
        }
        return to_remove;
    }

    NetworkStats stats() const {
        NetworkStats s;
        s.column_count = columns_.size();
        s.node_count = nodes_.size();
        s.link_count = alive_links_;
        for (const Column& c : columns_) {
            s.links_per_column[c.id] = owned_links_[c.id];
        }
        return s;
    }

    // accessors --------------------------------------------------------
    Node& node(NodeId n) { check_node(n); return nodes_[n]; }
    const Node& node(NodeId n) const { check_node(n); return nodes_[n]; }
    Link& link(LinkId l) { check_link(l); return links_[l]; }
    const Link& link(LinkId l) const { check_link(l); return links_[l]; }
    const Column& column(ColumnId c) const { check_column(c); return columns_[c]; }
    const std::vector<Column>& columns() const { return columns_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t link_count() const { return alive_links_; }
    std::size_t owned_link_count(ColumnId c) const { check_column(c); return owned_links_[c]; }
    std::uint32_t nodes_per_column() const { return nodes_per_column_; }

    ColumnId find_column(const Symbol& s) const {
        auto it = column_index_.find(s);
        if (it == column_index_.end()) throw std::out_of_range("unknown symbol");
        return it->second;
    }
    bool has_column(const Symbol& s) const { return column_index_.count(s) > 0; }

    // Alive links in creation order; LinkIds never move, dead slots remain.
    template <typename Fn>
    void for_each_link(Fn&& fn) const {
        for (const Link& l : links_) {
            if (l.alive) fn(l);
        }
    }

    // All link budgets decay every step.
    void decay_link_budgets() {
        for (Link& l : links_) {
            if (l.alive) l.budget = decay_budget(l.budget);
        }
    }
    void decay_node_budgets() {
        for (Node& n : nodes_) n.budget = decay_budget(n.budget);
    }

private:
    static std::uint64_t pair_key(NodeId a, NodeId b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    void check_node(NodeId n) const {
        if (n >= nodes_.size()) throw std::out_of_range("unknown node");
    }
    void check_link(LinkId l) const {
        if (l >= links_.size() || !links_[l].alive) throw std::out_of_range("unknown link");
    }
    void check_column(ColumnId c) const {
        if (c >= columns_.size()) throw std::out_of_range("unknown column");
    }

    void remove_link(LinkId lid) {
        Link& l = links_[lid];
        auto& out = out_[l.source];
        out.erase(std::find(out.begin(), out.end(), lid));
        auto& in = in_[l.target];
        in.erase(std::find(in.begin(), in.end(), lid));
        pair_index_.erase(pair_key(l.source, l.target));
        --owned_links_[nodes_[l.source].column];
        --alive_links_;
        l.alive = false;
    }

    std::uint32_t nodes_per_column_;
    Budget default_node_budget_;
    std::vector<Column> columns_;
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::vector<std::vector<LinkId>> out_;
    std::vector<std::vector<LinkId>> in_;
    std::unordered_map<std::uint64_t, LinkId> pair_index_;
    std::map<Symbol, ColumnId> column_index_;
    std::vector<std::size_t> owned_links_;
    std::size_t alive_links_ = 0;
    std::uint64_t next_seq_ = 0;
};

}  // namespace naltm
