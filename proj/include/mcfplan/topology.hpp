#pragma once

#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "textio.hpp"

namespace mcfplan {

struct TopoNode {
    std::string id;
    bool core = false;   // add/drop capable
};

struct TopoLink {
    int a = 0;
    int b = 0;
    double km = 0.0;
    std::string fiber;   // FiberSpec name
};

struct Topology {
    std::vector<TopoNode> nodes;
    std::vector<TopoLink> links;
    // node -> (neighbour node, link index)
    std::vector<std::vector<std::pair<int, int>>> adjacency;

    int index_of(const std::string& id) const {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].id == id) return static_cast<int>(i);
        throw InvalidInput("topology: unknown node '" + id + "'");
    }

    std::vector<int> core_nodes() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].core) out.push_back(static_cast<int>(i));
        return out;
    }

    int link_between(int a, int b) const {
        for (const auto& [v, li] : adjacency[static_cast<std::size_t>(a)])
            if (v == b) return li;
        throw InvalidInput("topology: no link between '" + nodes[static_cast<std::size_t>(a)].id +
                           "' and '" + nodes[static_cast<std::size_t>(b)].id + "'");
    }

    double average_degree() const {
        return nodes.empty() ? 0.0 : 2.0 * static_cast<double>(links.size()) / static_cast<double>(nodes.size());
    }

    double average_link_km() const {
        if (links.empty()) return 0.0;
        double t = 0.0;
        for (const TopoLink& l : links) t += l.km;
        return t / static_cast<double>(links.size());
    }

    void build_adjacency() {
        adjacency.assign(nodes.size(), {});
        for (std::size_t li = 0; li < links.size(); ++li) {
            adjacency[static_cast<std::size_t>(links[li].a)].emplace_back(links[li].b, static_cast<int>(li));
            adjacency[static_cast<std::size_t>(links[li].b)].emplace_back(links[li].a, static_cast<int>(li));
        }
    }

    // Every node reachable from node 0.
    void check_connected() const {
        if (nodes.empty())
            throw InvalidInput("topology: no nodes");
        std::vector<char> seen(nodes.size(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const auto& [v, li] : adjacency[static_cast<std::size_t>(u)])
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    q.push(v);
                }
        }
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (!seen[i])
                throw InvalidInput("topology: disconnected, node '" + nodes[i].id + "' unreachable");
    }
};

// Format: [nodes] rows "id [core]", [links] rows "a b km fiber".
inline Topology load_topology(const std::string& path) {
    Topology topo;
    std::unordered_map<std::string, int> index;
    std::unordered_map<long long, int> seen_pairs;
    for (const TextSection& sec : read_sections(path)) {
        if (sec.header == "nodes") {
            for (const TextLine& l : sec.lines) {
                const auto tok = split_tokens(l.text);
                if (tok.empty() || tok.size() > 2 || (tok.size() == 2 && tok[1] != "core"))
                    throw ParseError(line_context(path, l.number) + ": expected 'id [core]'");
                if (index.count(tok[0]))
                    throw ParseError(line_context(path, l.number) + ": duplicate node '" + tok[0] + "'");
                index[tok[0]] = static_cast<int>(topo.nodes.size());
                topo.nodes.push_back({tok[0], tok.size() == 2});
            }
        } else if (sec.header == "links") {
            for (const TextLine& l : sec.lines) {
                const auto tok = split_tokens(l.text);
                if (tok.size() != 4)
                    throw ParseError(line_context(path, l.number) + ": expected 'a b km fiber'");
                for (const std::string& end : {tok[0], tok[1]})
                    if (!index.count(end))
                        throw ParseError(line_context(path, l.number) + ": link endpoint '" + end +
                                         "' is not a declared node");
                const int a = index[tok[0]];
                const int b = index[tok[1]];
                if (a == b)
                    throw ParseError(line_context(path, l.number) + ": link from '" + tok[0] + "' to itself");
                const long long key = a < b
                    ? static_cast<long long>(a) * 1000000 + b
                    : static_cast<long long>(b) * 1000000 + a;
                if (seen_pairs.count(key))
                    throw ParseError(line_context(path, l.number) + ": duplicate link " + tok[0] + " " + tok[1]);
                seen_pairs[key] = 1;
                const double km = parse_double(tok[2], path, l.number);
                if (!(km > 0.0))
                    throw ParseError(line_context(path, l.number) + ": link length must be > 0 km");
                topo.links.push_back({a, b, km, tok[3]});
            }
        } else if (!sec.header.empty()) {
            throw ParseError(line_context(path, sec.line) + ": unknown section [" + sec.header + "]");
        } else if (!sec.lines.empty()) {
            throw ParseError(line_context(path, sec.lines.front().number) + ": records outside a section");
        }
    }
    if (topo.nodes.empty())
        throw ParseError(path + ": no [nodes] section");
    if (topo.links.empty())
        throw ParseError(path + ": no [links] section");
    topo.build_adjacency();
    topo.check_connected();
    return topo;
}

} // namespace mcfplan
