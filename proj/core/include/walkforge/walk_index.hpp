#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "walkforge/bigint.hpp"
#include "walkforge/frobenius.hpp"
#include "walkforge/graph.hpp"

namespace walkforge {

struct HorizonExceeded : std::out_of_range {
    HorizonExceeded(std::size_t k, std::size_t mu)
        : std::out_of_range("walk length " + std::to_string(k) +
                            " beyond query horizon " + std::to_string(mu)) {}
};

struct BoundTooSmall : std::runtime_error {
    explicit BoundTooSmall(const std::string& why)
        : std::runtime_error("CRT bound too small: " + why) {}
};

enum class Exactness { mod_p, exact_crt };

/// Per-pair walk counts w_1..w_K, K <= mu; counts[i-1] = (A^i)_{u,v} mod p.
struct WalkCountVector {
    u32 u = 0, v = 0;
    std::vector<Fe> counts;
    Exactness exactness = Exactness::mod_p;
};

/// Exact integer walk counts from the multi-prime CRT pipeline.
struct ExactWalkCounts {
    u32 u = 0, v = 0;
    std::vector<BigInt> counts;  // w_1..w_{mu'}
    std::vector<u64> primes;
};

/// The preprocessed query structure: per companion block, the strip
/// U_i . [v_1 .. v_{l_i + mu}] whose column windows are U_i F_i^k for every
/// k <= mu (cyclic property pushed through U), the column-prefix-summed
/// variant for <=k queries, and U^{-1}. Total stored columns are at most 2n.
/// Immutable after construction; queries are pure reads.
class WalkIndex {
public:
    struct Strip {
        std::size_t degree = 0;  // l_i
        std::size_t offset = 0;  // row range start of u_inv for this strip
        DenseMatrix cols;        // n x (l_i + mu), column t-1 = U_i v_t
        DenseMatrix prefix;      // column c = sum of cols columns 0..c
    };

    WalkIndex(const FrobeniusForm& form, Graph graph);

    /// Reassembles an index from deserialized parts; reconstructs the graph
    /// adjacency from the strip windows at k = 1 (A = UF . U^{-1}).
    WalkIndex(PrimeField field, std::vector<std::size_t> block_degrees,
              std::vector<DenseMatrix> strip_cols,
              std::vector<DenseMatrix> strip_prefix, DenseMatrix u_inv);

    std::size_t vertex_count() const { return n_; }
    std::size_t horizon() const { return mu_; }
    std::size_t minpoly_deg() const { return minpoly_deg_; }
    u64 prime() const { return field_.modulus(); }
    u64 graph_hash() const { return graph_hash_; }
    const PrimeField& field() const { return field_; }
    const Graph& graph() const { return graph_; }
    const std::vector<Strip>& strips() const { return strips_; }
    const DenseMatrix& u_inv() const { return u_inv_; }
    const std::vector<std::size_t>& block_degrees() const { return block_degrees_; }

    std::size_t total_strip_columns() const;

private:
    PrimeField field_;
    std::size_t n_ = 0;
    std::size_t mu_ = 0;
    std::size_t minpoly_deg_ = 0;
    u64 graph_hash_ = 0;
    std::vector<std::size_t> block_degrees_;
    std::vector<Strip> strips_;
    DenseMatrix u_inv_;
    Graph graph_;

    void finish_setup();
};

/// Builds the index from a verified decomposition. Cost is dominated by the
/// per-block products U_i . [v_1..v_{l_i+mu}] (the U.F and U.F^mu products of
/// the block-diagonal powering, fused through the cyclic window).
WalkIndex build_index(const FrobeniusForm& form, const Graph& g);

/// (A^k)_{u,v} mod p in O(n) field operations: per strip, row u's window of
/// length l_i at offset k dotted with the aligned segment of U^{-1} column v.
/// Throws HorizonExceeded for k outside [1, mu].
Fe query_walk_count(const WalkIndex& idx, u32 u, u32 v, std::size_t k);

/// w_1..w_mu in O(n log n) field operations via one Hankel matvec per strip.
WalkCountVector query_all_lengths(const WalkIndex& idx, u32 u, u32 v);

/// sum_{t<=k} (A^t)_{u,v} mod p via the prefix strips: window at offset k
/// minus window at offset 0. Throws HorizonExceeded for k outside [1, mu].
Fe query_prefix_count(const WalkIndex& idx, u32 u, u32 v, std::size_t k);

struct DistanceResult {
    enum class Kind { Dist, Unreachable, BeyondHorizon } kind;
    std::size_t k = 0;  // valid when kind == Dist
    bool operator==(const DistanceResult&) const = default;
};

/// Smallest k <= mu with w_k != 0 (linear scan of query_all_lengths);
/// dist(u,u) = 0 by convention. Unreachable/BeyondHorizon are certified by a
/// breadth-first pass over the stored adjacency.
DistanceResult distance(const WalkIndex& idx, u32 u, u32 v);

/// Same result via binary search over query_prefix_count; the two routes
/// must agree (prefix counts are non-decreasing as true integers).
DistanceResult distance_via_prefix(const WalkIndex& idx, u32 u, u32 v);

/// Rows u of A^1..A^K by iterated vector-matrix products, O(n^2) per power.
/// Covers queries past the horizon. Requires K <= n.
std::vector<std::vector<Fe>> fallback_power_row(const PrimeField& f, const Graph& g,
                                                u32 u, std::size_t k_max);

/// Runs the full pipeline once per prime and reconstructs exact integer
/// counts w_1..w_{mu'} by Chinese remaindering (mu' = min per-prime horizon).
/// Lifted prefix sums must difference back to the lifted counts, otherwise
/// the prime product is too small for the true counts: BoundTooSmall.
ExactWalkCounts crt_exact_counts(const Graph& g, u32 u, u32 v,
                                 const std::vector<u64>& primes, u64 seed);

}  // namespace walkforge
