#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dicke/basis.hpp"

namespace dicke {

// Phase rate (2m+1) k omega attached to the transition out of level m.
struct ResonanceRow {
    HalfInteger m;
    int rate_over_omega;  // (2m+1) k, exact
};

struct ResonanceTable {
    HalfInteger J;
    int k = 1;
    std::vector<ResonanceRow> rows;  // one per m = -J..J, rates increasing
};

ResonanceTable resonance_table(HalfInteger J, int k);

struct ChainNode {
    HalfInteger m;
    int n = 0;
    bool operator==(const ChainNode&) const = default;
};

struct ChainEdge {
    int a = 0, b = 0;    // node indices
    double weight = 0.0; // |coupling| of the resonant effective Hamiltonian at omega0 = 1
};

struct ChainGraph {
    HalfInteger J;
    std::optional<int> k;  // empty: off-resonant secular coupling
    int n_max = 0;
    std::vector<ChainNode> nodes;
    std::vector<ChainEdge> edges;
    std::vector<std::vector<int>> components;  // maximal connected sets

    std::string to_json() const;
    std::string to_dot() const;
};

/// The canonical dispersive chain rooted at |m_min, n_base>: photon numbers
/// follow n_m = n_base + k (m^2 - m_min^2) with m_min = 0 (integer J) or
/// 1/2 (half-integer J).  Throws CutoffTooSmall if the chain tops out above
/// n_max.  Edges with coupling below 1e-14 (accidental Laguerre zeros) are
/// dropped.
ChainGraph build_chain_graph(HalfInteger J, int k, int n_base, int n_max);

/// Decomposition of the whole truncated space: every |m,n> appears in
/// exactly one component.  k given: resonant rule at g = sqrt(k) omega;
/// k empty: off-resonant secular coupling (half-integer J keeps the
/// m = -1/2 <-> +1/2 equal-n pairs, integer J decouples everything).
ChainGraph chain_partition(HalfInteger J, std::optional<int> k, int n_max);

/// States in no multi-node component of the partition.
std::vector<ChainNode> decoupled_states(HalfInteger J, std::optional<int> k, int n_max);

}  // namespace dicke
