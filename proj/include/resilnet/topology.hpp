#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace resilnet {

enum class Boundary { periodic, open };

enum class TopologyKind { lattice, scale_free, custom };

// Square lattice with 8-cell Moore neighborhoods.
struct LatticeSpec {
    int width = 0;
    int height = 0;
    Boundary boundary = Boundary::periodic;

    // Throws ValidationError if dimensions are out of range. Periodic
    // lattices need width, height >= 3: at 2 the wrap-around would alias
    // opposite neighbors into duplicate edges.
    void validate() const;

    bool operator==(const LatticeSpec&) const = default;
};

// Preferential-attachment generator parameters.
struct ScaleFreeSpec {
    int node_count = 0;
    int edges_per_node = 0;   // edges contributed by each arriving node
    std::uint64_t seed = 1;

    void validate() const;

    bool operator==(const ScaleFreeSpec&) const = default;
};

// Immutable undirected graph in compressed adjacency form. Symmetry, absence
// of self-loops and absence of duplicate neighbors are enforced when the
// graph is built, so queries never re-check them.
class Topology {
public:
    // Builds from per-node neighbor lists; validates all structural
    // invariants and throws ValidationError on violation.
    Topology(std::vector<std::vector<int>> adjacency, TopologyKind kind);

    int node_count() const { return static_cast<int>(offsets_.size()) - 1; }
    long long edge_count() const { return static_cast<long long>(flat_.size()) / 2; }
    TopologyKind kind() const { return kind_; }

    int degree(int node) const { return static_cast<int>(offsets_[node + 1] - offsets_[node]); }

    std::span<const int> neighbors(int node) const {
        return {flat_.data() + offsets_[node], flat_.data() + offsets_[node + 1]};
    }

private:
    std::vector<std::size_t> offsets_;  // node_count + 1 entries into flat_
    std::vector<int> flat_;             // concatenated sorted neighbor lists
    TopologyKind kind_;
};

// Exact moments of the degree sequence.
struct DegreeStats {
    double mean_degree = 0.0;
    double mean_square_degree = 0.0;
    int min_degree = 0;
    int max_degree = 0;
};

// Moore-neighborhood lattice; every interior node has 8 neighbors, periodic
// boundaries make the graph 8-regular.
Topology build_lattice(const LatticeSpec& spec);

// Preferential attachment: start from a complete graph on edges_per_node + 1
// nodes, then attach each new node to edges_per_node distinct existing nodes
// chosen with probability proportional to their current degree. Deterministic
// for a given spec (including seed).
Topology build_scale_free(const ScaleFreeSpec& spec);

// Exact degree-sequence moments (sums accumulate in node-index order).
DegreeStats degree_stats(const Topology& topology);

// Mean-field epidemic threshold <k>/<k^2>. For a k-regular graph this is
// exactly 1/k. Throws ValidationError for edgeless graphs.
double mean_field_threshold(const DegreeStats& stats);

// Edge-list reader: one "i j" pair per line, 0-based indices, whitespace
// separated, undirected with each pair listed once; '#' starts a comment.
// Node count is max index + 1. Throws ParseError / ValidationError.
Topology load_edge_list(std::istream& in);
Topology load_edge_list_file(const std::string& path);

} // namespace resilnet
