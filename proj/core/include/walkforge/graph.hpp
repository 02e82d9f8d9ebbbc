#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "walkforge/matrix.hpp"

namespace walkforge {

/// Simple directed unweighted graph: no duplicate arcs, self-loops allowed.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), out_(n), in_(n) {}

    /// Validates 0 <= u,v < n and rejects duplicate arcs.
    static Graph from_edges(std::size_t n,
                            const std::vector<std::pair<u32, u32>>& edges);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return m_; }

    bool has_edge(u32 u, u32 v) const;
    void add_edge(u32 u, u32 v);  // throws on duplicate / out of range

    const std::vector<u32>& out_neighbors(u32 u) const { return out_[u]; }
    const std::vector<u32>& in_neighbors(u32 u) const { return in_[u]; }

    /// 0/1 adjacency matrix over the given field.
    DenseMatrix adjacency(const PrimeField& f) const;

    /// FNV-1a over (n, sorted arc list); stable identity for index metadata.
    u64 hash() const;

    std::vector<std::pair<u32, u32>> sorted_edges() const;

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::vector<u32>> out_;
    std::vector<std::vector<u32>> in_;
};

/// Erdos-Renyi style digraph (each arc independently with probability
/// `density`, self-loops included); deterministic in rng state.
Graph random_graph(std::size_t n, double density, std::mt19937_64& rng);

/// Breadth-first distances from src; -1 marks unreachable vertices.
/// dist[src] = 0 (the empty walk).
std::vector<int> bfs_distances(const Graph& g, u32 src);

/// Same on the arc-reversed graph: dist[w] = distance from w to dst.
std::vector<int> bfs_distances_reverse(const Graph& g, u32 dst);

}  // namespace walkforge
