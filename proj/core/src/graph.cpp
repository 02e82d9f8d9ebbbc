#include "walkforge/graph.hpp"

#include <algorithm>

namespace walkforge {

Graph Graph::from_edges(std::size_t n,
                        const std::vector<std::pair<u32, u32>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

bool Graph::has_edge(u32 u, u32 v) const {
    const auto& nb = out_[u];
    return std::find(nb.begin(), nb.end(), v) != nb.end();
}

void Graph::add_edge(u32 u, u32 v) {
    if (u >= n_ || v >= n_)
        throw std::out_of_range("arc (" + std::to_string(u) + "," + std::to_string(v) +
                                ") outside vertex range [0," + std::to_string(n_) + ")");
    if (has_edge(u, v))
        throw std::invalid_argument("duplicate arc (" + std::to_string(u) + "," +
                                    std::to_string(v) + ")");
    out_[u].push_back(v);
    in_[v].push_back(u);
    ++m_;
}

DenseMatrix Graph::adjacency(const PrimeField& f) const {
    DenseMatrix a(f, n_, n_);
    for (u32 u = 0; u < n_; ++u)
        for (u32 v : out_[u]) a(u, v) = f.one();
    return a;
}

std::vector<std::pair<u32, u32>> Graph::sorted_edges() const {
    std::vector<std::pair<u32, u32>> es;
    es.reserve(m_);
    for (u32 u = 0; u < n_; ++u)
        for (u32 v : out_[u]) es.emplace_back(u, v);
    std::sort(es.begin(), es.end());
    return es;
}

u64 Graph::hash() const {
    constexpr u64 kOffset = 0xcbf29ce484222325ull;
    constexpr u64 kPrime = 0x100000001b3ull;
    u64 h = kOffset;
    auto mix = [&](u64 x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= kPrime;
        }
    };
    mix(n_);
    for (auto [u, v] : sorted_edges()) {
        mix(u);
        mix(v);
    }
    return h;
}

Graph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
    Graph g(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (u32 u = 0; u < n; ++u)
        for (u32 v = 0; v < n; ++v)
            if (coin(rng) < density) g.add_edge(u, v);
    return g;
}

namespace {

std::vector<int> bfs_impl(const Graph& g, u32 src, bool reverse) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<u32> queue;
    dist[src] = 0;
    queue.push_back(src);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        u32 u = queue[head];
        const auto& nb = reverse ? g.in_neighbors(u) : g.out_neighbors(u);
        for (u32 w : nb) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace

std::vector<int> bfs_distances(const Graph& g, u32 src) {
    return bfs_impl(g, src, false);
}

std::vector<int> bfs_distances_reverse(const Graph& g, u32 dst) {
    return bfs_impl(g, dst, true);
}

}  // namespace walkforge
