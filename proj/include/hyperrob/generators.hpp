#ifndef HYPERROB_GENERATORS_HPP
#define HYPERROB_GENERATORS_HPP

#include <cstdint>
#include <string>

#include "hyperrob/hypergraph.hpp"

namespace hyperrob {

enum class Family { ER, WS, SF, SBM, UF };

Family family_from_string(const std::string& name); // throws InvalidConfig
const char* family_name(Family family);

/**
 * Parameters for the five synthetic hypergraph families.
 *
 * ER/SBM/UF pick their edge count so that the expected pairwise
 * clique-expansion density matches the configured probability:
 * M = round(p * C(n,2) / C(k_mean,2)) with cardinalities uniform in
 * [card_min, card_max] (k_mean = (card_min+card_max)/2) for ER/SBM and the
 * fixed cardinality k for UF.
 */
struct GeneratorConfig {
    Family family = Family::ER;
    NodeId num_nodes = 200;
    std::uint64_t seed = 0;

    // Cardinality range for ER/SBM/SF draws (clamped to num_nodes).
    unsigned card_min = 2;
    unsigned card_max = 5;

    double er_p = 0.05;

    unsigned ws_k_nn = 10; // even, < num_nodes
    double ws_p_rw = 0.5;

    unsigned sf_m = 5; // edges created per arriving node

    unsigned sbm_communities = 5;
    double sbm_p_in = 0.1;
    double sbm_p_out = 0.01;

    unsigned uf_k = 5;    // fixed cardinality
    double uf_p = 0.05;   // density target for the edge count
};

/**
 * Builds one hypergraph of the configured family. Deterministic per
 * (config, seed): identical inputs give identical edge lists.
 *
 * Every returned hypergraph is intact-connected (lcc_fraction 1 with all
 * entities alive). A draw that comes out fragmented is first repaired with
 * bridge edges (never for an empty draw, and only within communities for
 * SBM); configs whose draws can never connect exhaust 100 derived-seed
 * attempts and throw DisconnectedRetryExceeded.
 *
 * Throws InvalidConfig for out-of-domain parameters.
 */
Hypergraph generate(const GeneratorConfig& cfg);

Hypergraph gen_er(const GeneratorConfig& cfg);
Hypergraph gen_ws(const GeneratorConfig& cfg);
Hypergraph gen_sf(const GeneratorConfig& cfg);
Hypergraph gen_sbm(const GeneratorConfig& cfg);
Hypergraph gen_uf(const GeneratorConfig& cfg);

} // namespace hyperrob

#endif // HYPERROB_GENERATORS_HPP
