#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "topology.hpp"

namespace mcfplan {

struct Path {
    std::vector<int> nodes;
    double km = 0.0;
};

namespace detail {

// Rank of each node in lexicographic id order; path tie-breaks compare
// these rank sequences.
inline std::vector<int> lex_ranks(const Topology& topo) {
    std::vector<int> order(topo.nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return topo.nodes[static_cast<std::size_t>(a)].id < topo.nodes[static_cast<std::size_t>(b)].id;
    });
    std::vector<int> rank(topo.nodes.size());
    for (std::size_t r = 0; r < order.size(); ++r)
        rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
    return rank;
}

inline bool lex_less(const std::vector<int>& a, const std::vector<int>& b,
                     const std::vector<int>& rank) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int ra = rank[static_cast<std::size_t>(a[i])];
        const int rb = rank[static_cast<std::size_t>(b[i])];
        if (ra != rb) return ra < rb;
    }
    return a.size() < b.size();
}

// Shortest path that is lexicographically smallest among all equal-length
// shortest paths. Walks the shortest-path DAG from src picking the
// smallest-id feasible successor; feasibility uses exact distance sums, so
// with integer link lengths every tie is honoured exactly.
inline std::optional<Path> shortest_path_lex(const Topology& topo, const std::vector<int>& rank,
                                             int src, int dst,
                                             const std::vector<char>& node_banned,
                                             const std::vector<char>& link_banned) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(topo.nodes.size(), inf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[static_cast<std::size_t>(dst)] = 0.0;
    pq.push({0.0, dst});
    while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > dist[static_cast<std::size_t>(u)]) continue;
        for (const auto& [v, li] : topo.adjacency[static_cast<std::size_t>(u)]) {
            if (node_banned[static_cast<std::size_t>(v)] || link_banned[static_cast<std::size_t>(li)])
                continue;
            const double nd = du + topo.links[static_cast<std::size_t>(li)].km;
            if (nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                pq.push({nd, v});
            }
        }
    }
    if (dist[static_cast<std::size_t>(src)] == inf)
        return std::nullopt;
    Path path;
    path.km = dist[static_cast<std::size_t>(src)];
    int cur = src;
    path.nodes.push_back(cur);
    while (cur != dst) {
        int best = -1;
        for (const auto& [v, li] : topo.adjacency[static_cast<std::size_t>(cur)]) {
            if (node_banned[static_cast<std::size_t>(v)] || link_banned[static_cast<std::size_t>(li)])
                continue;
            if (topo.links[static_cast<std::size_t>(li)].km + dist[static_cast<std::size_t>(v)] !=
                dist[static_cast<std::size_t>(cur)])
                continue;
            if (best < 0 || rank[static_cast<std::size_t>(v)] < rank[static_cast<std::size_t>(best)])
                best = v;
        }
        if (best < 0)
            throw Error("shortest_path_lex: broken shortest-path walk");
        cur = best;
        path.nodes.push_back(cur);
        if (path.nodes.size() > topo.nodes.size())
            throw Error("shortest_path_lex: walk exceeded node count");
    }
    return path;
}

} // namespace detail

// Up to k loopless paths, ordered by (length, lexicographic node-id
// sequence). Deterministic for repeated runs on the same inputs.
inline std::vector<Path> k_shortest_paths(const Topology& topo, int src, int dst, int k) {
    if (src == dst)
        throw InvalidInput("k_shortest_paths: src and dst must differ");
    if (src < 0 || dst < 0 || src >= static_cast<int>(topo.nodes.size()) ||
        dst >= static_cast<int>(topo.nodes.size()))
        throw InvalidInput("k_shortest_paths: node index out of range");
    if (!topo.nodes[static_cast<std::size_t>(src)].core || !topo.nodes[static_cast<std::size_t>(dst)].core)
        throw InvalidInput("k_shortest_paths: endpoints must be add/drop (core) nodes");
    if (k < 1)
        throw InvalidInput("k_shortest_paths: k must be >= 1");

    const std::vector<int> rank = detail::lex_ranks(topo);
    std::vector<char> no_nodes(topo.nodes.size(), 0);
    std::vector<char> no_links(topo.links.size(), 0);

    const auto first = detail::shortest_path_lex(topo, rank, src, dst, no_nodes, no_links);
    if (!first)
        throw NoPath("no path from '" + topo.nodes[static_cast<std::size_t>(src)].id + "' to '" +
                     topo.nodes[static_cast<std::size_t>(dst)].id + "'");

    std::vector<Path> accepted{*first};
    auto seq_less = [&rank](const std::vector<int>& a, const std::vector<int>& b) {
        return detail::lex_less(a, b, rank);
    };
    auto cand_less = [&](const Path& a, const Path& b) {
        if (a.km != b.km) return a.km < b.km;
        return seq_less(a.nodes, b.nodes);
    };
    std::set<Path, decltype(cand_less)> candidates(cand_less);
    std::set<std::vector<int>, decltype(seq_less)> known(seq_less);
    known.insert(first->nodes);

    auto link_between = [&](int a, int b) {
        for (const auto& [v, li] : topo.adjacency[static_cast<std::size_t>(a)])
            if (v == b) return li;
        throw Error("k_shortest_paths: missing link on accepted path");
    };

    while (static_cast<int>(accepted.size()) < k) {
        const Path& prev = accepted.back();
        for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
            std::vector<char> node_banned(topo.nodes.size(), 0);
            std::vector<char> link_banned(topo.links.size(), 0);
            double root_km = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                node_banned[static_cast<std::size_t>(prev.nodes[j])] = 1;
                root_km += topo.links[static_cast<std::size_t>(
                    link_between(prev.nodes[j], prev.nodes[j + 1]))].km;
            }
            // every already-accepted path sharing this root forbids its next hop
            for (const Path& p : accepted) {
                if (p.nodes.size() <= i + 1) continue;
                if (!std::equal(p.nodes.begin(), p.nodes.begin() + static_cast<long>(i) + 1,
                                prev.nodes.begin()))
                    continue;
                link_banned[static_cast<std::size_t>(link_between(p.nodes[i], p.nodes[i + 1]))] = 1;
            }
            const int spur = prev.nodes[i];
            const auto tail = detail::shortest_path_lex(topo, rank, spur, dst, node_banned, link_banned);
            if (!tail)
                continue;
            Path cand;
            cand.nodes.assign(prev.nodes.begin(), prev.nodes.begin() + static_cast<long>(i));
            cand.nodes.insert(cand.nodes.end(), tail->nodes.begin(), tail->nodes.end());
            cand.km = root_km + tail->km;
            if (!known.count(cand.nodes))
                candidates.insert(std::move(cand));
        }
        if (candidates.empty())
            break;
        accepted.push_back(*candidates.begin());
        known.insert(accepted.back().nodes);
        candidates.erase(candidates.begin());
    }
    return accepted;
}

inline Path shortest_path(const Topology& topo, int src, int dst) {
    return k_shortest_paths(topo, src, dst, 1).front();
}

} // namespace mcfplan
