#include "resilnet/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "resilnet/errors.hpp"
#include "resilnet/rng.hpp"

namespace resilnet {

void LatticeSpec::validate() const {
    if (width <= 0 || height <= 0)
        throw ValidationError("lattice dimensions must be positive");
    if (static_cast<long long>(width) * height < 2)
        throw ValidationError("lattice must have at least 2 cells");
    if (boundary == Boundary::periodic && (width < 3 || height < 3))
        throw ValidationError("periodic lattice needs width and height >= 3 "
                              "(smaller sizes wrap onto duplicate neighbors)");
}

void ScaleFreeSpec::validate() const {
    if (node_count <= 0) throw ValidationError("node_count must be positive");
    if (edges_per_node <= 0) throw ValidationError("edges_per_node must be positive");
    if (edges_per_node >= node_count)
        throw ValidationError("edges_per_node must be smaller than node_count");
}

Topology::Topology(std::vector<std::vector<int>> adjacency, TopologyKind kind) : kind_(kind) {
    const int n = static_cast<int>(adjacency.size());
    if (n == 0) throw ValidationError("topology must have at least one node");

    offsets_.resize(n + 1, 0);
    std::size_t total = 0;
    for (int i = 0; i < n; ++i) {
        offsets_[i] = total;
        total += adjacency[i].size();
    }
    offsets_[n] = total;
    flat_.reserve(total);

    for (int i = 0; i < n; ++i) {
        auto& list = adjacency[i];
        std::sort(list.begin(), list.end());
        for (std::size_t k = 0; k < list.size(); ++k) {
            int j = list[k];
            if (j < 0 || j >= n) throw ValidationError("neighbor index out of range");
            if (j == i) throw ValidationError("self-loop in adjacency");
            if (k > 0 && list[k - 1] == j) throw ValidationError("duplicate neighbor entry");
            flat_.push_back(j);
        }
    }
    // Symmetry: j in neighbors(i) <=> i in neighbors(j).
    for (int i = 0; i < n; ++i) {
        for (int j : neighbors(i)) {
            auto row = neighbors(j);
            if (!std::binary_search(row.begin(), row.end(), i))
                throw ValidationError("asymmetric adjacency");
        }
    }
}

Topology build_lattice(const LatticeSpec& spec) {
    spec.validate();
    const int w = spec.width, h = spec.height;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            auto& list = adj[static_cast<std::size_t>(y) * w + x];
            list.reserve(8);
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    int nx = x + dx, ny = y + dy;
                    if (spec.boundary == Boundary::periodic) {
                        nx = (nx + w) % w;
                        ny = (ny + h) % h;
                    } else if (nx < 0 || nx >= w || ny < 0 || ny >= h) {
                        continue;
                    }
                    int j = ny * w + nx;
                    // On small periodic lattices distinct offsets can wrap to
                    // the same cell; Topology would reject the duplicate.
                    if (std::find(list.begin(), list.end(), j) == list.end())
                        list.push_back(j);
                }
            }
        }
    }
    return Topology(std::move(adj), TopologyKind::lattice);
}

Topology build_scale_free(const ScaleFreeSpec& spec) {
    spec.validate();
    const int n = spec.node_count;
    const int m = spec.edges_per_node;
    const int clique = std::min(m + 1, n);

    std::vector<std::vector<int>> adj(n);
    // Degree-proportional sampling by keeping one entry per edge endpoint:
    // drawing uniformly from `endpoints` is drawing nodes weighted by degree.
    std::vector<int> endpoints;
    CounterRng rng(derive_stream(spec.seed, 0x1a77ac4));

    for (int i = 0; i < clique; ++i) {
        for (int j = i + 1; j < clique; ++j) {
            adj[i].push_back(j);
            adj[j].push_back(i);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    }
    std::vector<int> chosen;
    chosen.reserve(m);
    for (int v = clique; v < n; ++v) {
        chosen.clear();
        // Without replacement: redraw until m distinct targets are found.
        while (static_cast<int>(chosen.size()) < m) {
            int candidate = endpoints[rng.uniform_below(endpoints.size())];
            if (std::find(chosen.begin(), chosen.end(), candidate) == chosen.end())
                chosen.push_back(candidate);
        }
        for (int target : chosen) {
            adj[v].push_back(target);
            adj[target].push_back(v);
            endpoints.push_back(v);
            endpoints.push_back(target);
        }
    }
    return Topology(std::move(adj), TopologyKind::scale_free);
}

DegreeStats degree_stats(const Topology& topology) {
    const int n = topology.node_count();
    DegreeStats stats;
    stats.min_degree = topology.degree(0);
    stats.max_degree = topology.degree(0);
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k = topology.degree(i);
        sum += k;
        sum_sq += k * k;
        stats.min_degree = std::min(stats.min_degree, topology.degree(i));
        stats.max_degree = std::max(stats.max_degree, topology.degree(i));
    }
    stats.mean_degree = sum / n;
    stats.mean_square_degree = sum_sq / n;
    return stats;
}

double mean_field_threshold(const DegreeStats& stats) {
    if (stats.mean_square_degree <= 0.0)
        throw ValidationError("degenerate graph: no edges");
    return stats.mean_degree / stats.mean_square_degree;
}

Topology load_edge_list(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int max_node = -1;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        long long i = 0, j = 0;
        if (!(fields >> i)) continue;  // blank or comment-only line
        if (!(fields >> j)) throw ParseError("edge line needs two indices", line_no);
        long long extra;
        if (fields >> extra) throw ParseError("edge line has trailing fields", line_no);
        if (i < 0 || j < 0) throw ParseError("negative node index", line_no);
        if (i == j) throw ParseError("self-loop", line_no);
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        max_node = std::max({max_node, static_cast<int>(i), static_cast<int>(j)});
    }
    if (edges.empty()) throw ValidationError("edge list contains no edges");

    std::vector<std::vector<int>> adj(max_node + 1);
    for (auto [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    // Duplicate pairs (either orientation) would show up as duplicate
    // neighbor entries and be rejected by the Topology constructor.
    return Topology(std::move(adj), TopologyKind::custom);
}

Topology load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list: " + path);
    return load_edge_list(in);
}

} // namespace resilnet
