#include <deque>

#include "internal.hpp"

namespace adjsep::detail {

namespace {

constexpr Cost cap_inf = CostFn::finite_limit;

struct Arc {
    std::uint32_t to;
    std::uint32_t rev;
    Cost cap;
};

class FlowNetwork {
public:
    explicit FlowNetwork(std::size_t n) : arcs_(n) {}

    void add(std::uint32_t a, std::uint32_t b, Cost cap) {
        arcs_[a].push_back({b, static_cast<std::uint32_t>(arcs_[b].size()), cap});
        arcs_[b].push_back({a, static_cast<std::uint32_t>(arcs_[a].size() - 1), 0});
    }

    // max flow, or cap_inf once the flow shows that no finite cut exists
    Cost max_flow(std::uint32_t s, std::uint32_t t) {
        Cost flow = 0;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pred(arcs_.size());
        std::vector<bool> seen(arcs_.size());
        for (;;) {
            std::fill(seen.begin(), seen.end(), false);
            std::deque<std::uint32_t> q{s};
            seen[s] = true;
            while (!q.empty() && !seen[t]) {
                auto v = q.front();
                q.pop_front();
                for (std::uint32_t i = 0; i < arcs_[v].size(); ++i) {
                    const Arc& a = arcs_[v][i];
                    if (a.cap > 0 && !seen[a.to]) {
                        seen[a.to] = true;
                        pred[a.to] = {v, i};
                        q.push_back(a.to);
                    }
                }
            }
            if (!seen[t]) return flow;
            Cost push = cap_inf;
            for (auto v = t; v != s; v = pred[v].first) push = std::min(push, arcs_[pred[v].first][pred[v].second].cap);
            for (auto v = t; v != s; v = pred[v].first) {
                Arc& a = arcs_[pred[v].first][pred[v].second];
                a.cap -= push;
                arcs_[a.to][a.rev].cap += push;
            }
            flow += push;
            if (flow >= cap_inf) return cap_inf;
        }
    }

    std::vector<bool> residual_reach(std::uint32_t s) const {
        std::vector<bool> seen(arcs_.size(), false);
        std::vector<std::uint32_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (const auto& a : arcs_[v]) {
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = true;
                    stack.push_back(a.to);
                }
            }
        }
        return seen;
    }

private:
    std::vector<std::vector<Arc>> arcs_;
};

}  // namespace

std::optional<NodeSet> min_cut(const UGraph& u, std::size_t universe, const NodeSet& source, const NodeSet& sink,
                               const std::function<Cost(NodeId)>& cost, const NodeSet* removed) {
    const auto n = static_cast<std::uint32_t>(u.size());
    auto alive = [&](std::uint32_t i) { return !removed || !removed->contains(u.global[i]); };
    const std::uint32_t s = 2 * n, t = 2 * n + 1;
    FlowNetwork net(2 * n + 2);
    Cost finite_sum = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!alive(i)) continue;
        NodeId v = u.global[i];
        Cost c = (source.contains(v) || sink.contains(v)) ? CostFn::infinite : cost(v);
        if (c == CostFn::infinite) {
            c = cap_inf;
        } else {
            finite_sum += c;
            if (finite_sum >= cap_inf) throw InvalidQuery("cost total overflows the fixed-point range");
        }
        net.add(2 * i, 2 * i + 1, c);
        if (source.contains(v)) net.add(s, 2 * i, cap_inf);
        if (sink.contains(v)) net.add(2 * i + 1, t, cap_inf);
        for (auto j : u.adj[i])
            if (alive(j)) net.add(2 * i + 1, 2 * j, cap_inf);
    }
    if (net.max_flow(s, t) >= cap_inf) return std::nullopt;
    const auto side = net.residual_reach(s);
    NodeSet cut(universe);
    for (std::uint32_t i = 0; i < n; ++i)
        if (alive(i) && side[2 * i] && !side[2 * i + 1]) cut.insert(u.global[i]);
    return cut;
}

}  // namespace adjsep::detail
