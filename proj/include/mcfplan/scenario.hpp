#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bandplan.hpp"
#include "crosstalk.hpp"
#include "errors.hpp"
#include "fiber.hpp"
#include "gmi.hpp"
#include "ksp.hpp"
#include "qot.hpp"
#include "textio.hpp"
#include "topology.hpp"

namespace mcfplan {

// One evaluation variant: which fiber carries the traffic and how many
// spatial lanes run in parallel. A multicore fiber takes its lanes from
// the core layout (extra lanes wrap onto parallel fibers); a single-core
// fiber models a bundle of parallel fiber pairs and sees no crosstalk.
struct Scenario {
    std::string name;
    std::string fiber;
    int lanes = 1;
    int k = 1;
    std::optional<double> wtr_ratio;   // trench width override, in units of r1
};

inline std::vector<Scenario> load_scenarios(const std::string& path) {
    std::vector<Scenario> out;
    for (const TextSection& sec : read_sections(path)) {
        const auto head = split_tokens(sec.header);
        if (sec.header.empty()) {
            if (!sec.lines.empty())
                throw ParseError(line_context(path, sec.lines.front().number) +
                                 ": records outside a [scenario] section");
            continue;
        }
        if (head.size() != 2 || head[0] != "scenario")
            throw ParseError(line_context(path, sec.line) + ": expected [scenario NAME]");
        const KeyValues kv = KeyValues::from(sec, path);
        Scenario s;
        s.name = head[1];
        s.fiber = kv.require("fiber", sec.line);
        s.lanes = static_cast<int>(kv.get_long("lanes", 1));
        s.k = static_cast<int>(kv.get_long("k", 1));
        if (const TextLine* t = kv.find("wtr_ratio"))
            s.wtr_ratio = parse_double(t->text, path, t->number);
        if (s.lanes < 1)
            throw ParseError(line_context(path, sec.line) + ": lanes must be >= 1");
        if (s.k < 1)
            throw ParseError(line_context(path, sec.line) + ": k must be >= 1");
        for (const Scenario& other : out)
            if (other.name == s.name)
                throw ParseError(line_context(path, sec.line) + ": duplicate scenario '" + s.name + "'");
        out.push_back(std::move(s));
    }
    if (out.empty())
        throw ParseError(path + ": no [scenario] sections");
    return out;
}

struct TupleResult {
    std::string src, dst;
    int path_index = 0;
    double path_km = 0.0;
    int channel = 0;
    int lane = 0;
    double snr_ase_db = 0.0;
    double snr_nli_db = 0.0;
    double snr_icxt_db = 0.0;
    double mu_db = 0.0;        // accumulated crosstalk ratio along the path
    double gsnr_db = 0.0;
    int m = 0;                 // 0 = no level supportable
    double bitrate_gbps = 0.0;
};

struct ConnectionThroughput {
    std::string src, dst;
    double cpct_gbps = 0.0;    // sum of tuple bitrates for this connection
};

struct ScenarioResult {
    std::string scenario;
    std::vector<TupleResult> tuples;
    std::vector<ConnectionThroughput> connections;
    std::map<std::string, double> per_band_gbps;
    std::vector<double> per_lane_gbps;
    double total_gbps = 0.0;
    long rejected_tuples = 0;
};

// Shared inputs of an evaluation run; everything is immutable while a
// scenario is being evaluated.
struct EvaluationContext {
    const Topology* topo = nullptr;
    const std::map<std::string, FiberSpec>* fibers = nullptr;
    const BandPlan* band = nullptr;
    const QotParams* qot = nullptr;
    const std::vector<GmiLevel>* gmi = nullptr;
    const NliEstimator* nli = nullptr;
    CouplingOptions coupling{};
    bool disable_icxt_gate = false;   // drops the crosstalk gate in level
                                      // selection; the noise term remains

    void check() const {
        if (!topo || !fibers || !band || !qot || !gmi || !nli)
            throw InvalidInput("evaluation context is incomplete");
    }
};

namespace detail {

// Noise added per span of one link at one channel. ICXT is kept per
// adjacency class so lanes on different cores share the cache.
struct LinkChannelNoise {
    int n_spans = 0;
    double p_ase = 0.0;
    double p_nli = 0.0;
    std::vector<double> p_icxt_by_class;
};

struct ChannelScratch {
    double f_thz = 0.0;
    double f_hz = 0.0;
    double nf_db = 0.0;
    double launch_w = 0.0;
    double omega = 0.0;        // per-length coupling rate, multicore only
    std::string band_name;
};

inline LinkChannelNoise link_channel_noise(const FiberSpec& fiber, double link_km,
                                           const ChannelScratch& ch, double symbol_baud,
                                           double btot_hz, double max_span_km,
                                           const NliEstimator& nli,
                                           const std::vector<int>& icxt_classes) {
    LinkChannelNoise out;
    const int n = static_cast<int>(std::ceil(link_km / max_span_km));
    const double span_km = link_km / n;
    out.n_spans = n;
    const double gain = std::pow(10.0, fiber.attenuation_db_km(ch.f_thz) * span_km / 10.0);
    out.p_ase = ase_power(ch.nf_db, ch.f_hz, gain, symbol_baud);
    out.p_nli = nli.span_nli_w(fiber, span_km * km, ch.f_thz, ch.launch_w, symbol_baud, btot_hz);
    out.p_icxt_by_class.reserve(icxt_classes.size());
    for (int n_ac : icxt_classes)
        out.p_icxt_by_class.push_back(icxt_noise_power(mean_icxt(ch.omega, n_ac, span_km * km),
                                                       ch.launch_w));
    return out;
}

// Per-path noise totals for one channel, accumulated in path-link order.
struct PathChannelNoise {
    double ase = 0.0;
    double nli = 0.0;
    std::vector<double> icxt_by_class;
};

template <typename NoiseAt>
inline PathChannelNoise accumulate_path(const std::vector<int>& path_links,
                                        std::size_t n_classes, NoiseAt&& noise_at) {
    PathChannelNoise acc;
    acc.icxt_by_class.assign(n_classes, 0.0);
    for (int li : path_links) {
        const LinkChannelNoise& n = noise_at(li);
        acc.ase += n.n_spans * n.p_ase;
        acc.nli += n.n_spans * n.p_nli;
        for (std::size_t c = 0; c < n_classes; ++c)
            acc.icxt_by_class[c] += n.n_spans * n.p_icxt_by_class[c];
    }
    return acc;
}

inline TupleResult finish_tuple(const PathChannelNoise& acc, const ChannelScratch& ch,
                                int lane_class_index, double filter_penalty_db,
                                const EvaluationContext& ctx) {
    const double p_icxt = lane_class_index >= 0 ? acc.icxt_by_class[static_cast<std::size_t>(lane_class_index)]
                                                : 0.0;
    const QotBreakdown qb = accumulate_gsnr({{ch.launch_w, acc.ase, acc.nli, p_icxt}},
                                            ctx.qot->snr_trx_db, filter_penalty_db,
                                            ctx.qot->aging_margin_db);
    TupleResult t;
    t.snr_ase_db = linear_to_db(qb.snr_ase);
    t.snr_nli_db = linear_to_db(qb.snr_nli);
    t.snr_icxt_db = linear_to_db(qb.snr_icxt);
    t.mu_db = p_icxt > 0.0 ? linear_to_db(p_icxt / ch.launch_w)
                           : -std::numeric_limits<double>::infinity();
    t.gsnr_db = qb.gsnr_db;
    const auto level = select_gmi(t.gsnr_db, t.mu_db, *ctx.gmi, !ctx.disable_icxt_gate);
    if (level) {
        t.m = level->m;
        t.bitrate_gbps = level->net_bitrate_gbps;
    }
    return t;
}

struct ScenarioSetup {
    FiberSpec fiber;                    // trench ratio already applied
    std::vector<ChannelScratch> channels;
    std::vector<int> lane_classes;      // per lane: index into icxt_classes, -1 = uncoupled
    std::vector<int> icxt_classes;      // distinct adjacency counts, descending
    double btot_hz = 0.0;
};

inline ScenarioSetup prepare(const EvaluationContext& ctx, const Scenario& sc) {
    ctx.check();
    const auto it = ctx.fibers->find(sc.fiber);
    if (it == ctx.fibers->end())
        throw InvalidInput("scenario '" + sc.name + "': unknown fiber '" + sc.fiber + "'");
    ScenarioSetup setup;
    setup.fiber = sc.wtr_ratio.has_value() ? it->second.with_trench_ratio(*sc.wtr_ratio) : it->second;
    ctx.band->validate();
    if (!setup.fiber.covers_band(ctx.band->f_min_thz(), ctx.band->f_max_thz()))
        throw InvalidInput("fiber '" + setup.fiber.name + "' curves do not cover the band plan");
    setup.btot_hz = ctx.band->occupied_bandwidth_hz();

    std::vector<int> lane_nadj;
    if (setup.fiber.multicore())
        lane_nadj = lane_adjacency_counts(*setup.fiber.layout, sc.lanes);
    else
        lane_nadj.assign(static_cast<std::size_t>(sc.lanes), 0);
    for (int n_ac : lane_nadj)
        if (n_ac > 0 && std::find(setup.icxt_classes.begin(), setup.icxt_classes.end(), n_ac) ==
                            setup.icxt_classes.end())
            setup.icxt_classes.push_back(n_ac);
    std::sort(setup.icxt_classes.rbegin(), setup.icxt_classes.rend());
    for (int n_ac : lane_nadj) {
        int idx = -1;
        for (std::size_t c = 0; c < setup.icxt_classes.size(); ++c)
            if (setup.icxt_classes[c] == n_ac) idx = static_cast<int>(c);
        setup.lane_classes.push_back(idx);
    }

    const double f_center = (ctx.band->f_min_thz() + ctx.band->f_max_thz()) / 2.0;
    for (const ChannelInfo& ci : ctx.band->channels()) {
        ChannelScratch ch;
        ch.f_thz = ci.f_thz;
        ch.f_hz = ci.f_thz * thz;
        ch.nf_db = ctx.band->nf_db_of(ci);
        ch.launch_w = launch_power_w(*ctx.qot, ci.f_thz, f_center);
        ch.omega = setup.fiber.multicore() ? fiber_pcc(ch.f_hz, setup.fiber, ctx.coupling) : 0.0;
        ch.band_name = ctx.band->band_name_of(ci);
        setup.channels.push_back(ch);
    }
    return setup;
}

} // namespace detail

// Every ordered pair of add/drop nodes, sorted by node id: the demand set.
inline std::vector<std::pair<int, int>> connection_pairs(const Topology& topo) {
    std::vector<int> cores = topo.core_nodes();
    std::sort(cores.begin(), cores.end(), [&](int a, int b) {
        return topo.nodes[static_cast<std::size_t>(a)].id < topo.nodes[static_cast<std::size_t>(b)].id;
    });
    std::vector<std::pair<int, int>> pairs;
    for (int s : cores)
        for (int d : cores)
            if (s != d) pairs.emplace_back(s, d);
    return pairs;
}

inline ScenarioResult evaluate_scenario(const EvaluationContext& ctx, const Scenario& sc) {
    const detail::ScenarioSetup setup = detail::prepare(ctx, sc);
    const Topology& topo = *ctx.topo;
    validate_gmi_table(*ctx.gmi);

    // per (link, channel) noise cache
    const std::size_t n_ch = setup.channels.size();
    std::vector<std::vector<detail::LinkChannelNoise>> cache(topo.links.size());
    for (std::size_t li = 0; li < topo.links.size(); ++li) {
        cache[li].reserve(n_ch);
        for (const detail::ChannelScratch& ch : setup.channels)
            cache[li].push_back(detail::link_channel_noise(setup.fiber, topo.links[li].km, ch,
                                                           ctx.band->symbol_rate_gbaud * ghz,
                                                           setup.btot_hz, ctx.qot->max_span_km,
                                                           *ctx.nli, setup.icxt_classes));
    }

    ScenarioResult res;
    res.scenario = sc.name;
    res.per_lane_gbps.assign(static_cast<std::size_t>(sc.lanes), 0.0);
    for (const Band& b : ctx.band->bands) res.per_band_gbps[b.name] = 0.0;

    for (const auto& [s, d] : connection_pairs(topo)) {
        ConnectionThroughput conn;
        conn.src = topo.nodes[static_cast<std::size_t>(s)].id;
        conn.dst = topo.nodes[static_cast<std::size_t>(d)].id;
        const std::vector<Path> paths = k_shortest_paths(topo, s, d, sc.k);
        for (std::size_t pi = 0; pi < paths.size(); ++pi) {
            const Path& path = paths[pi];
            int core_nodes_on_path = 0;
            for (int n : path.nodes)
                if (topo.nodes[static_cast<std::size_t>(n)].core) ++core_nodes_on_path;
            const double pen_flt = ctx.qot->filter_penalty_per_node_db * core_nodes_on_path;
            std::vector<int> path_links;
            for (std::size_t j = 0; j + 1 < path.nodes.size(); ++j)
                path_links.push_back(topo.link_between(path.nodes[j], path.nodes[j + 1]));
            for (std::size_t ci = 0; ci < n_ch; ++ci) {
                const auto acc = detail::accumulate_path(path_links, setup.icxt_classes.size(),
                                                         [&](int li) -> const detail::LinkChannelNoise& {
                                                             return cache[static_cast<std::size_t>(li)][ci];
                                                         });
                for (int lane = 0; lane < sc.lanes; ++lane) {
                    TupleResult t = detail::finish_tuple(acc, setup.channels[ci],
                                                         setup.lane_classes[static_cast<std::size_t>(lane)],
                                                         pen_flt, ctx);
                    t.src = conn.src;
                    t.dst = conn.dst;
                    t.path_index = static_cast<int>(pi);
                    t.path_km = path.km;
                    t.channel = static_cast<int>(ci);
                    t.lane = lane;
                    if (t.m > 0) {
                        res.total_gbps += t.bitrate_gbps;
                        conn.cpct_gbps += t.bitrate_gbps;
                        res.per_lane_gbps[static_cast<std::size_t>(lane)] += t.bitrate_gbps;
                        res.per_band_gbps[setup.channels[ci].band_name] += t.bitrate_gbps;
                    } else {
                        ++res.rejected_tuples;
                    }
                    res.tuples.push_back(std::move(t));
                }
            }
        }
        res.connections.push_back(std::move(conn));
    }
    return res;
}

// Recomputes one tuple from scratch, without the link cache. Produces the
// identical result to the batch run, bit for bit.
inline TupleResult evaluate_tuple(const EvaluationContext& ctx, const Scenario& sc,
                                  const std::string& src_id, const std::string& dst_id,
                                  int path_index, int channel_index, int lane) {
    const detail::ScenarioSetup setup = detail::prepare(ctx, sc);
    const Topology& topo = *ctx.topo;
    validate_gmi_table(*ctx.gmi);
    if (lane < 0 || lane >= sc.lanes)
        throw InvalidInput("evaluate_tuple: lane out of range");
    if (channel_index < 0 || channel_index >= static_cast<int>(setup.channels.size()))
        throw InvalidInput("evaluate_tuple: channel out of range");
    if (path_index < 0 || path_index >= sc.k)
        throw InvalidInput("evaluate_tuple: path index out of range");

    const int s = topo.index_of(src_id);
    const int d = topo.index_of(dst_id);
    const std::vector<Path> paths = k_shortest_paths(topo, s, d, sc.k);
    if (path_index >= static_cast<int>(paths.size()))
        throw InvalidInput("evaluate_tuple: fewer than k paths exist");
    const Path& path = paths[static_cast<std::size_t>(path_index)];

    int core_nodes_on_path = 0;
    for (int n : path.nodes)
        if (topo.nodes[static_cast<std::size_t>(n)].core) ++core_nodes_on_path;
    std::vector<int> path_links;
    for (std::size_t j = 0; j + 1 < path.nodes.size(); ++j)
        path_links.push_back(topo.link_between(path.nodes[j], path.nodes[j + 1]));

    const detail::ChannelScratch& ch = setup.channels[static_cast<std::size_t>(channel_index)];
    std::map<int, detail::LinkChannelNoise> fresh;
    const auto acc = detail::accumulate_path(path_links, setup.icxt_classes.size(),
                                             [&](int li) -> const detail::LinkChannelNoise& {
                                                 auto found = fresh.find(li);
                                                 if (found == fresh.end())
                                                     found = fresh.emplace(li,
                                                         detail::link_channel_noise(setup.fiber,
                                                             topo.links[static_cast<std::size_t>(li)].km, ch,
                                                             ctx.band->symbol_rate_gbaud * ghz,
                                                             setup.btot_hz, ctx.qot->max_span_km,
                                                             *ctx.nli, setup.icxt_classes)).first;
                                                 return found->second;
                                             });
    TupleResult t = detail::finish_tuple(acc, ch, setup.lane_classes[static_cast<std::size_t>(lane)],
                                         ctx.qot->filter_penalty_per_node_db * core_nodes_on_path, ctx);
    t.src = src_id;
    t.dst = dst_id;
    t.path_index = path_index;
    t.path_km = path.km;
    t.channel = channel_index;
    t.lane = lane;
    return t;
}

} // namespace mcfplan
