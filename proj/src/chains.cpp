#include "dicke/chains.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "dicke/coefficients.hpp"

namespace dicke {

namespace {

constexpr double kWeightTol = 1e-14;  // drops accidental Laguerre zeros

double ladder_coeff(HalfInteger J, HalfInteger m) {
    const double tj = J.twice(), tm = m.twice();
    return 0.5 * std::sqrt(tj * (tj + 2.0) - tm * (tm + 2.0));
}

// |coupling| of the secular Hamiltonian between |m, n_low + ...> and
// |m+1, n_high>, at omega0 = 1, beta = sqrt(k).  delta = (2m+1) k.
double edge_weight(HalfInteger J, HalfInteger m, int k, int n_lower_photon) {
    const int delta = (m.twice() + 1) * k;
    const double beta = std::sqrt(static_cast<double>(k));
    const double c = ladder_coeff(J, m);
    const int d = std::abs(delta);
    return 0.5 * c * std::abs(d == 0 ? omega_coeff(n_lower_photon, 0, beta)
                                     : displacement_element(n_lower_photon, d, beta));
}

void connected_components(ChainGraph& g) {
    const int N = static_cast<int>(g.nodes.size());
    std::vector<int> parent(N);
    for (int i = 0; i < N; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : g.edges) parent[find(e.a)] = find(e.b);

    std::map<int, std::vector<int>> comps;
    for (int i = 0; i < N; ++i) comps[find(i)].push_back(i);
    g.components.clear();
    for (auto& [root, members] : comps) g.components.push_back(std::move(members));
    std::sort(g.components.begin(), g.components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace

ResonanceTable resonance_table(HalfInteger J, int k) {
    if (k < 1) throw Error("resonance_table requires k >= 1");
    ResonanceTable table{J, k, {}};
    for (int tm = -J.twice(); tm <= J.twice(); tm += 2)
        table.rows.push_back({HalfInteger::from_twice(tm), (tm + 1) * k});
    return table;
}

ChainGraph build_chain_graph(HalfInteger J, int k, int n_base, int n_max) {
    if (k < 1) throw Error("build_chain_graph requires k >= 1");
    if (n_base < 0) throw Error("n_base must be >= 0");
    ChainGraph g{J, k, n_max, {}, {}, {}};

    const int tmin = J.is_integer() ? 0 : 1;  // 2 m_min
    // photon offset n_m - n_base = k (m^2 - m_min^2), exact in (2m)^2 units
    auto photon_of = [&](int tm) { return n_base + k * (tm * tm - tmin * tmin) / 4; };

    int top = 0;
    for (int tm = -J.twice(); tm <= J.twice(); tm += 2) top = std::max(top, photon_of(tm));
    if (top > n_max)
        throw CutoffTooSmall("dispersive chain with n_base = " + std::to_string(n_base) +
                                 " extends past the Fock cutoff",
                             top);

    for (int tm = -J.twice(); tm <= J.twice(); tm += 2)
        g.nodes.push_back({HalfInteger::from_twice(tm), photon_of(tm)});
    for (int i = 0; i + 1 < static_cast<int>(g.nodes.size()); ++i) {
        const HalfInteger m = g.nodes[i].m;
        const int n_lower = std::min(g.nodes[i].n, g.nodes[i + 1].n);
        const double w = edge_weight(J, m, k, n_lower);
        if (w > kWeightTol) g.edges.push_back({i, i + 1, w});
    }
    connected_components(g);
    return g;
}

ChainGraph chain_partition(HalfInteger J, std::optional<int> k, int n_max) {
    ChainGraph g{J, k, n_max, {}, {}, {}};
    const int F = n_max + 1;
    auto node_id = [&](int level, int n) { return level * F + n; };

    const int S = J.twice() + 1;
    for (int level = 0; level < S; ++level) {
        const HalfInteger m = HalfInteger::from_twice(-J.twice() + 2 * level);
        for (int n = 0; n < F; ++n) g.nodes.push_back({m, n});
    }

    if (k.has_value()) {
        if (*k < 1) throw Error("chain_partition requires k >= 1");
        for (int level = 0; level + 1 < S; ++level) {
            const HalfInteger m = HalfInteger::from_twice(-J.twice() + 2 * level);
            const int delta = (m.twice() + 1) * (*k);
            // edge couples |m, n_up - delta> to |m+1, n_up>
            for (int n_up = 0; n_up < F; ++n_up) {
                const int n_lo = n_up - delta;
                if (n_lo < 0 || n_lo >= F) continue;
                const double w = edge_weight(J, m, *k, std::min(n_lo, n_up));
                if (w > kWeightTol) g.edges.push_back({node_id(level, n_lo), node_id(level + 1, n_up), w});
            }
        }
    } else if (!J.is_integer()) {
        // off resonance only the photon-conserving -1/2 <-> +1/2 pair survives
        const int lo = (J.twice() - 1) / 2, hi = lo + 1;
        const double c = ladder_coeff(J, HalfInteger::from_twice(-1));
        for (int n = 0; n < F; ++n) {
            // weight reported without the Omega_n^0 factor: beta is free here
            g.edges.push_back({node_id(lo, n), node_id(hi, n), 0.5 * c});
        }
    }
    connected_components(g);
    return g;
}

std::vector<ChainNode> decoupled_states(HalfInteger J, std::optional<int> k, int n_max) {
    ChainGraph g = chain_partition(J, k, n_max);
    std::vector<ChainNode> out;
    for (const auto& comp : g.components)
        if (comp.size() == 1) out.push_back(g.nodes[comp.front()]);
    return out;
}

std::string ChainGraph::to_json() const {
    nlohmann::json j;
    j["J2"] = J.twice();
    j["J"] = J.str();
    if (k.has_value())
        j["k"] = *k;
    else
        j["k"] = nullptr;
    j["n_max"] = n_max;
    j["nodes"] = nlohmann::json::array();
    for (const auto& node : nodes)
        j["nodes"].push_back({{"m2", node.m.twice()}, {"m", node.m.str()}, {"n", node.n}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges) j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"weight", e.weight}});
    j["components"] = components;
    return j.dump(2);
}

std::string ChainGraph::to_dot() const {
    std::ostringstream os;
    os << "graph chains {\n  rankdir=LR;\n  node [shape=box];\n";
    for (size_t i = 0; i < nodes.size(); ++i)
        os << "  s" << i << " [label=\"|" << nodes[i].m.str() << "," << nodes[i].n << ">\"];\n";
    for (const auto& e : edges) {
        os << "  s" << e.a << " -- s" << e.b << " [label=\"";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3g", e.weight);
        os << buf << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace dicke
