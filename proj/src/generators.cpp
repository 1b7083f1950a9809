#include "hyperrob/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hyperrob/rng.hpp"

namespace hyperrob {

Family family_from_string(const std::string& name) {
    if (name == "ER" || name == "er") return Family::ER;
    if (name == "WS" || name == "ws") return Family::WS;
    if (name == "SF" || name == "sf") return Family::SF;
    if (name == "SBM" || name == "sbm") return Family::SBM;
    if (name == "UF" || name == "uf") return Family::UF;
    throw Error(ErrorCode::InvalidConfig, "unknown family: " + name);
}

const char* family_name(Family family) {
    switch (family) {
        case Family::ER: return "ER";
        case Family::WS: return "WS";
        case Family::SF: return "SF";
        case Family::SBM: return "SBM";
        case Family::UF: return "UF";
    }
    return "?";
}

namespace {

using EdgeList = std::vector<std::vector<NodeId>>;

double pair_count(std::size_t n) {
    return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
}

// Edge count matching the expected pairwise clique-expansion density of a
// pairwise graph with edge probability p.
std::size_t density_edge_count(double p, double pairs, double k_mean) {
    if (pairs <= 0.0 || k_mean <= 1.0) return 0;
    double m = p * pairs * 2.0 / (k_mean * (k_mean - 1.0));
    long long r = std::llround(m);
    return r > 0 ? static_cast<std::size_t>(r) : 0;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidConfig, what);
}

void validate(const GeneratorConfig& cfg) {
    require(cfg.num_nodes >= 1, "num_nodes must be >= 1");
    require(cfg.card_min >= 2 && cfg.card_max >= cfg.card_min,
            "cardinality range must satisfy 2 <= card_min <= card_max");
    switch (cfg.family) {
        case Family::ER:
            require(cfg.er_p >= 0.0 && cfg.er_p <= 1.0, "er_p must be in [0,1]");
            require(cfg.num_nodes >= 2, "ER needs at least 2 nodes");
            break;
        case Family::WS:
            require(cfg.ws_p_rw >= 0.0 && cfg.ws_p_rw <= 1.0, "ws_p_rw must be in [0,1]");
            require(cfg.ws_k_nn >= 2 && cfg.ws_k_nn % 2 == 0, "ws_k_nn must be even and >= 2");
            require(cfg.ws_k_nn < cfg.num_nodes, "ws_k_nn must be < num_nodes");
            break;
        case Family::SF:
            require(cfg.sf_m >= 1, "sf_m must be >= 1");
            require(cfg.num_nodes >= std::max<NodeId>(cfg.sf_m, 2),
                    "SF needs num_nodes >= max(sf_m, 2)");
            break;
        case Family::SBM:
            require(cfg.sbm_communities >= 1, "sbm_communities must be >= 1");
            require(cfg.sbm_p_in >= 0.0 && cfg.sbm_p_in <= 1.0, "sbm_p_in must be in [0,1]");
            require(cfg.sbm_p_out >= 0.0 && cfg.sbm_p_out <= 1.0, "sbm_p_out must be in [0,1]");
            require(cfg.num_nodes >= 2, "SBM needs at least 2 nodes");
            break;
        case Family::UF:
            require(cfg.uf_p >= 0.0 && cfg.uf_p <= 1.0, "uf_p must be in [0,1]");
            require(cfg.uf_k >= 2 && cfg.uf_k <= cfg.num_nodes,
                    "uf_k must satisfy 2 <= k <= num_nodes");
            break;
    }
}

// Draws `count` distinct members of `pool` uniformly; ascending output.
std::vector<NodeId> draw_distinct(SplitMix64& rng, const std::vector<NodeId>& pool,
                                  std::size_t count) {
    std::vector<NodeId> members;
    members.reserve(count);
    while (members.size() < count) {
        NodeId candidate = pool[rng.next_below(pool.size())];
        if (std::find(members.begin(), members.end(), candidate) == members.end()) {
            members.push_back(candidate);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

// Random-hypergraph edges over `pool` with density target p, rejecting
// duplicate edges. Gives up (returning what it has) if rejections pile up;
// the connectivity retry loop handles such degenerate draws.
void draw_density_edges(SplitMix64& rng, const std::vector<NodeId>& pool, double p,
                        unsigned card_min, unsigned card_max, EdgeList& edges,
                        std::set<std::vector<NodeId>>& seen) {
    if (pool.size() < 2) return;
    unsigned hi = std::min<unsigned>(card_max, static_cast<unsigned>(pool.size()));
    unsigned lo = std::min(card_min, hi);
    double k_mean = 0.5 * (lo + hi);
    std::size_t target = density_edge_count(p, pair_count(pool.size()), k_mean);
    std::size_t rejections = 0;
    const std::size_t rejection_cap = 50 * target + 1000;
    std::size_t emitted = 0;
    while (emitted < target && rejections < rejection_cap) {
        unsigned k = lo + static_cast<unsigned>(rng.next_below(hi - lo + 1));
        std::vector<NodeId> members = draw_distinct(rng, pool, k);
        if (seen.insert(members).second) {
            edges.push_back(std::move(members));
            ++emitted;
        } else {
            ++rejections;
        }
    }
}

std::vector<NodeId> all_nodes(NodeId n) {
    std::vector<NodeId> ids(n);
    for (NodeId v = 0; v < n; ++v) ids[v] = v;
    return ids;
}

// Community index per node for SBM repair; empty for other families.
std::vector<unsigned> sbm_blocks(NodeId n, unsigned c) {
    std::vector<unsigned> block(n);
    for (NodeId v = 0; v < n; ++v) {
        block[v] = static_cast<unsigned>((static_cast<std::uint64_t>(v) * c) / n);
    }
    return block;
}

struct ComponentView {
    std::vector<NodeId> root;    // representative per node
    std::size_t component_count; // over all nodes
};

ComponentView components_of(NodeId n, const EdgeList& edges) {
    std::vector<NodeId> parent(n);
    for (NodeId v = 0; v < n; ++v) parent[v] = v;
    auto find = [&](NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& members : edges) {
        for (std::size_t i = 1; i < members.size(); ++i) {
            NodeId a = find(members[0]);
            NodeId b = find(members[i]);
            if (a != b) parent[b] = a;
        }
    }
    ComponentView view;
    view.root.resize(n);
    std::set<NodeId> roots;
    for (NodeId v = 0; v < n; ++v) {
        view.root[v] = find(v);
        roots.insert(view.root[v]);
    }
    view.component_count = roots.size();
    return view;
}

// Adds bridge edges until the hypergraph is connected or no admissible
// bridge exists. Bridges have cardinality `card` (>= 2) and connect the
// fragment holding the smallest stranded node to nodes outside it; when
// `block` is non-empty the outside anchor must share the fragment's block.
bool repair_connectivity(NodeId n, EdgeList& edges, SplitMix64& rng, unsigned card,
                         const std::vector<unsigned>& block) {
    if (edges.empty()) return false;
    for (std::size_t guard = 0; guard < n; ++guard) {
        ComponentView view = components_of(n, edges);
        if (view.component_count <= 1) return true;

        // Largest component hosts the designated "main" root.
        std::vector<std::uint32_t> size(n, 0);
        for (NodeId v = 0; v < n; ++v) ++size[view.root[v]];
        NodeId main_root = 0;
        for (NodeId v = 0; v < n; ++v) {
            if (size[v] > size[main_root]) main_root = v;
        }
        NodeId stranded = n;
        for (NodeId v = 0; v < n; ++v) {
            if (view.root[v] != main_root) {
                stranded = v;
                break;
            }
        }
        if (stranded == n) return true;

        NodeId fragment_root = view.root[stranded];
        std::vector<NodeId> fragment, outside;
        for (NodeId v = 0; v < n; ++v) {
            if (view.root[v] == fragment_root) {
                fragment.push_back(v);
            } else if (block.empty() || block[v] == block[stranded]) {
                outside.push_back(v);
            }
        }
        if (outside.empty()) return false; // nothing admissible to bridge to

        NodeId inside_anchor = fragment[rng.next_below(fragment.size())];
        NodeId outside_anchor = outside[rng.next_below(outside.size())];
        std::vector<NodeId> members = {inside_anchor, outside_anchor};
        while (members.size() < card && members.size() < n) {
            NodeId candidate = static_cast<NodeId>(rng.next_below(n));
            if (std::find(members.begin(), members.end(), candidate) == members.end()) {
                members.push_back(candidate);
            }
        }
        std::sort(members.begin(), members.end());
        edges.push_back(std::move(members));
    }
    return false;
}

EdgeList er_attempt(const GeneratorConfig& cfg, std::uint64_t seed) {
    SplitMix64 rng(seed);
    EdgeList edges;
    std::set<std::vector<NodeId>> seen;
    draw_density_edges(rng, all_nodes(cfg.num_nodes), cfg.er_p, cfg.card_min, cfg.card_max,
                       edges, seen);
    repair_connectivity(cfg.num_nodes, edges, rng, 2, {});
    return edges;
}

EdgeList ws_attempt(const GeneratorConfig& cfg, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const NodeId n = cfg.num_nodes;
    const unsigned half = cfg.ws_k_nn / 2;
    EdgeList edges;
    edges.reserve(n);
    for (NodeId anchor = 0; anchor < n; ++anchor) {
        std::vector<NodeId> members;
        members.reserve(half + 1);
        members.push_back(anchor);
        for (unsigned step = 1; step <= half; ++step) {
            members.push_back(static_cast<NodeId>((anchor + step) % n));
        }
        // Independently rewire each non-anchor member; resample duplicates.
        for (std::size_t slot = 1; slot < members.size(); ++slot) {
            if (!rng.next_bernoulli(cfg.ws_p_rw)) continue;
            // The replacement may redraw the old member itself.
            for (;;) {
                NodeId candidate = static_cast<NodeId>(rng.next_below(n));
                if (candidate == anchor) continue;
                bool duplicate = false;
                for (std::size_t i = 0; i < members.size(); ++i) {
                    if (i != slot && members[i] == candidate) {
                        duplicate = true;
                        break;
                    }
                }
                if (!duplicate) {
                    members[slot] = candidate;
                    break;
                }
            }
        }
        std::sort(members.begin(), members.end());
        edges.push_back(std::move(members));
    }
    repair_connectivity(n, edges, rng, 2, {});
    return edges;
}

EdgeList sf_attempt(const GeneratorConfig& cfg, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const NodeId n = cfg.num_nodes;
    const NodeId seed_size = std::max<NodeId>(cfg.sf_m, 2);
    EdgeList edges;
    std::vector<std::uint64_t> degree(n, 0);

    std::vector<NodeId> seed_edge;
    for (NodeId v = 0; v < seed_size; ++v) seed_edge.push_back(v);
    for (NodeId v : seed_edge) ++degree[v];
    edges.push_back(std::move(seed_edge));

    for (NodeId arrival = seed_size; arrival < n; ++arrival) {
        for (unsigned j = 0; j < cfg.sf_m; ++j) {
            unsigned hi = std::min<unsigned>(cfg.card_max, arrival + 1);
            unsigned lo = std::min(cfg.card_min, hi);
            unsigned k = lo + static_cast<unsigned>(rng.next_below(hi - lo + 1));

            // k-1 distinct existing nodes, probability proportional to
            // hyperdegree + 1.
            std::vector<NodeId> members = {arrival};
            std::uint64_t total_weight = arrival; // +1 smoothing summed over existing
            for (NodeId v = 0; v < arrival; ++v) total_weight += degree[v];
            while (members.size() < k) {
                std::uint64_t ticket = rng.next_below(total_weight);
                NodeId chosen = 0;
                for (NodeId v = 0; v < arrival; ++v) {
                    std::uint64_t w = degree[v] + 1;
                    if (ticket < w) {
                        chosen = v;
                        break;
                    }
                    ticket -= w;
                }
                if (std::find(members.begin(), members.end(), chosen) == members.end()) {
                    members.push_back(chosen);
                }
            }
            std::sort(members.begin(), members.end());
            for (NodeId v : members) ++degree[v];
            edges.push_back(std::move(members));
        }
    }
    return edges; // connected by construction
}

EdgeList sbm_attempt(const GeneratorConfig& cfg, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const NodeId n = cfg.num_nodes;
    const unsigned c = cfg.sbm_communities;
    std::vector<unsigned> block = sbm_blocks(n, c);
    std::vector<std::vector<NodeId>> block_nodes(c);
    for (NodeId v = 0; v < n; ++v) block_nodes[block[v]].push_back(v);

    EdgeList edges;
    std::set<std::vector<NodeId>> seen;
    for (unsigned b = 0; b < c; ++b) {
        draw_density_edges(rng, block_nodes[b], cfg.sbm_p_in, cfg.card_min, cfg.card_max,
                           edges, seen);
    }

    // Inter-community edges, count matched to p_out over the cross pairs.
    double cross_pairs = pair_count(n);
    for (unsigned b = 0; b < c; ++b) cross_pairs -= pair_count(block_nodes[b].size());
    unsigned hi = std::min<unsigned>(cfg.card_max, n);
    unsigned lo = std::min(cfg.card_min, hi);
    double k_mean = 0.5 * (lo + hi);
    std::size_t target = c >= 2 ? density_edge_count(cfg.sbm_p_out, cross_pairs, k_mean) : 0;
    std::size_t rejections = 0;
    const std::size_t rejection_cap = 50 * target + 1000;
    std::size_t emitted = 0;
    while (emitted < target && rejections < rejection_cap) {
        unsigned a = static_cast<unsigned>(rng.next_below(c));
        unsigned b = static_cast<unsigned>(rng.next_below(c - 1));
        if (b >= a) ++b;
        const auto& pool_a = block_nodes[a];
        const auto& pool_b = block_nodes[b];
        unsigned edge_hi = static_cast<unsigned>(
            std::min<std::size_t>(hi, pool_a.size() + pool_b.size()));
        if (edge_hi < 2) {
            ++rejections;
            continue;
        }
        unsigned edge_lo = std::min(lo, edge_hi);
        unsigned k = edge_lo + static_cast<unsigned>(rng.next_below(edge_hi - edge_lo + 1));
        // At least one member from each side.
        unsigned from_a = 1 + static_cast<unsigned>(rng.next_below(k - 1));
        from_a = std::min<unsigned>(from_a, static_cast<unsigned>(pool_a.size()));
        unsigned from_b = k - from_a;
        if (from_b > pool_b.size() || from_b < 1) {
            ++rejections;
            continue;
        }
        std::vector<NodeId> members = draw_distinct(rng, pool_a, from_a);
        std::vector<NodeId> members_b = draw_distinct(rng, pool_b, from_b);
        members.insert(members.end(), members_b.begin(), members_b.end());
        std::sort(members.begin(), members.end());
        if (seen.insert(members).second) {
            edges.push_back(std::move(members));
            ++emitted;
        } else {
            ++rejections;
        }
    }

    // Bridges stay within communities when p_out is zero (spanning edges are
    // inadmissible then); otherwise they may cross like any inter edge.
    if (cfg.sbm_p_out == 0.0) {
        repair_connectivity(n, edges, rng, 2, block);
    } else {
        repair_connectivity(n, edges, rng, 2, {});
    }
    return edges;
}

EdgeList uf_attempt(const GeneratorConfig& cfg, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const NodeId n = cfg.num_nodes;
    const unsigned k = cfg.uf_k;
    std::size_t target = density_edge_count(cfg.uf_p, pair_count(n), static_cast<double>(k));
    std::vector<NodeId> pool = all_nodes(n);
    EdgeList edges;
    std::set<std::vector<NodeId>> seen;
    std::size_t rejections = 0;
    const std::size_t rejection_cap = 50 * target + 1000;
    std::size_t emitted = 0;
    while (emitted < target && rejections < rejection_cap) {
        std::vector<NodeId> members = draw_distinct(rng, pool, k);
        if (seen.insert(members).second) {
            edges.push_back(std::move(members));
            ++emitted;
        } else {
            ++rejections;
        }
    }
    repair_connectivity(n, edges, rng, k, {});
    return edges;
}

EdgeList attempt_family(const GeneratorConfig& cfg, std::uint64_t seed) {
    switch (cfg.family) {
        case Family::ER: return er_attempt(cfg, seed);
        case Family::WS: return ws_attempt(cfg, seed);
        case Family::SF: return sf_attempt(cfg, seed);
        case Family::SBM: return sbm_attempt(cfg, seed);
        case Family::UF: return uf_attempt(cfg, seed);
    }
    throw Error(ErrorCode::InvalidConfig, "unknown family");
}

} // namespace

Hypergraph generate(const GeneratorConfig& cfg) {
    validate(cfg);
    constexpr int kMaxAttempts = 100;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::uint64_t seed = attempt == 0 ? cfg.seed : derive_seed(cfg.seed, attempt);
        EdgeList edges = attempt_family(cfg, seed);
        Hypergraph h = Hypergraph::from_edge_list(cfg.num_nodes, edges);
        if (lcc_fraction(h, ActivityMask::all_alive(h)) == 1.0) return h;
    }
    throw Error(ErrorCode::DisconnectedRetryExceeded,
                std::string(family_name(cfg.family)) +
                    " generator failed to produce a connected hypergraph in 100 attempts");
}

Hypergraph gen_er(const GeneratorConfig& cfg) {
    GeneratorConfig c = cfg;
    c.family = Family::ER;
    return generate(c);
}

Hypergraph gen_ws(const GeneratorConfig& cfg) {
    GeneratorConfig c = cfg;
    c.family = Family::WS;
    return generate(c);
}

Hypergraph gen_sf(const GeneratorConfig& cfg) {
    GeneratorConfig c = cfg;
    c.family = Family::SF;
    return generate(c);
}

Hypergraph gen_sbm(const GeneratorConfig& cfg) {
    GeneratorConfig c = cfg;
    c.family = Family::SBM;
    return generate(c);
}

Hypergraph gen_uf(const GeneratorConfig& cfg) {
    GeneratorConfig c = cfg;
    c.family = Family::UF;
    return generate(c);
}

} // namespace hyperrob
