#include "adjsep/enumeration.hpp"

#include <unordered_set>

#include "internal.hpp"

namespace adjsep {

std::optional<NodeSet> SepStream::next() {
    if (done_ || !src_) {
        done_ = true;
        return std::nullopt;
    }
    auto s = src_->pull();
    if (!s) {
        done_ = true;
        return std::nullopt;
    }
    ++emitted_;
    return s;
}

std::vector<NodeSet> SepStream::take(std::size_t limit) {
    std::vector<NodeSet> out;
    while (out.size() < limit) {
        auto s = next();
        if (!s) break;
        out.push_back(std::move(*s));
    }
    return out;
}

namespace {

// include/exclude branching on the smallest free node, pruned by the
// Ant(X ∪ Y ∪ I) ∩ R feasibility test
class ListSepSource : public SepStream::Source {
public:
    ListSepSource(std::shared_ptr<const MixedGraph> g, SepQuery q) : g_(std::move(g)), q_(std::move(q)) {
        stack_.push_back({q_.I, q_.R});
    }

    std::optional<NodeSet> pull() override {
        while (!stack_.empty()) {
            auto [inc, allowed] = std::move(stack_.back());
            stack_.pop_back();
            NodeSet z = anteriors(*g_, q_.X | q_.Y | inc) & allowed;
            if (detail::m_connected(*g_, q_.X, q_.Y, z)) continue;
            if (inc == allowed) return inc;
            NodeId v = (allowed - inc).first();
            NodeSet without = allowed;
            without.erase(v);
            NodeSet with = inc;
            with.insert(v);
            stack_.push_back({inc, std::move(without)});
            stack_.push_back({std::move(with), allowed});
        }
        return std::nullopt;
    }

private:
    struct Frame {
        NodeSet inc;
        NodeSet allowed;
    };
    std::shared_ptr<const MixedGraph> g_;
    SepQuery q_;
    std::vector<Frame> stack_;
};

// Minimal X-Y vertex separators of the reduced augmented graph. Each separator
// S with X-side component C spawns, for every x in S, the separator closest to
// C ∪ {x}. Starting from the separator closest to X this reaches every minimal
// separator; a registry drops repeats.
class ListMinSepSource : public SepStream::Source {
public:
    ListMinSepSource(std::shared_ptr<const MixedGraph> g, SepQuery q)
        : g_(std::move(g)), q_(std::move(q)), extra_(q_.I) {}

    std::optional<NodeSet> pull() override {
        if (g_) setup();
        if (pending_.empty()) return std::nullopt;
        NodeSet s = std::move(pending_.back());
        pending_.pop_back();
        expand(s);
        NodeSet out = extra_;
        for (NodeId i : s) out.insert(global_[i]);
        return out;
    }

private:
    void setup() {
        const MixedGraph& g = *g_;
        const SepQuery& q = q_;
        const NodeSet ant = anteriors(g, q.X | q.Y | q.I);
        const auto u = detail::augmented(g, ant);
        m_ = u.size();
        global_ = u.global;
        adj_.assign(m_, NodeSet(m_));
        for (std::size_t i = 0; i < m_; ++i)
            for (auto j : u.adj[i]) adj_[i].insert(j);

        alive_ = NodeSet::full(m_);
        xs_ = NodeSet(m_);
        ys_ = NodeSet(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            NodeId v = global_[i];
            auto li = static_cast<NodeId>(i);
            if (q.X.contains(v)) xs_.insert(li);
            else if (q.Y.contains(v)) ys_.insert(li);
            else if (q.I.contains(v)) alive_.erase(li);
        }
        for (std::size_t i = 0; i < m_; ++i) {
            NodeId v = global_[i];
            auto li = static_cast<NodeId>(i);
            if (!alive_.contains(li) || xs_.contains(li) || ys_.contains(li) || q.R.contains(v)) continue;
            NodeSet nb = adj_[li] & alive_;
            nb.erase(li);
            for (NodeId a : nb) {
                adj_[a] |= nb;
                adj_[a].erase(a);
            }
            alive_.erase(li);
        }
        for (auto& a : adj_) a &= alive_;

        g_.reset();
        if (neighborhood(xs_).intersects(ys_)) return;
        NodeSet s0 = closest_to(xs_);
        seen_.insert(s0);
        pending_.push_back(std::move(s0));
    }

    NodeSet neighborhood(const NodeSet& a) const {
        NodeSet n(m_);
        for (NodeId v : a) n |= adj_[v];
        return n - a;
    }

    NodeSet component(const NodeSet& seeds, const NodeSet& blocked) const {
        NodeSet seen = seeds;
        std::vector<NodeId> stack(seeds.begin(), seeds.end());
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : adj_[v]) {
                if (seen.contains(w) || blocked.contains(w)) continue;
                seen.insert(w);
                stack.push_back(w);
            }
        }
        return seen;
    }

    // minimal separator between a and Y inside N(a)
    NodeSet closest_to(const NodeSet& a) const {
        NodeSet na = neighborhood(a);
        NodeSet ct = component(ys_, na | a);
        return neighborhood(ct) & na;
    }

    void expand(const NodeSet& s) {
        NodeSet side = component(xs_, s);
        for (NodeId x : s) {
            if (adj_[x].intersects(ys_)) continue;
            NodeSet a = side;
            a.insert(x);
            NodeSet child = closest_to(a);
            if (seen_.insert(child).second) pending_.push_back(std::move(child));
        }
    }

    std::shared_ptr<const MixedGraph> g_;
    SepQuery q_;
    NodeSet extra_;
    std::size_t m_ = 0;
    std::vector<NodeId> global_;
    std::vector<NodeSet> adj_;
    NodeSet alive_, xs_, ys_;
    std::unordered_set<NodeSet, NodeSetHash> seen_;
    std::vector<NodeSet> pending_;
};

}  // namespace

SepStream list_sep(std::shared_ptr<const MixedGraph> g, const SepQuery& query) {
    SepQuery q = normalize(*g, query);
    return SepStream(std::make_unique<ListSepSource>(std::move(g), std::move(q)));
}

SepStream list_sep(const MixedGraph& g, const SepQuery& q) {
    return list_sep(std::make_shared<const MixedGraph>(g), q);
}

SepStream list_min_sep(std::shared_ptr<const MixedGraph> g, const SepQuery& query) {
    SepQuery q = normalize(*g, query);
    return SepStream(std::make_unique<ListMinSepSource>(std::move(g), std::move(q)));
}

SepStream list_min_sep(const MixedGraph& g, const SepQuery& q) {
    return list_min_sep(std::make_shared<const MixedGraph>(g), q);
}

}  // namespace adjsep
