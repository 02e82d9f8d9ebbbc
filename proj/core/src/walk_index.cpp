#include "walkforge/walk_index.hpp"

#include <algorithm>
#include <numeric>

#include "walkforge/hankel.hpp"

namespace walkforge {

WalkIndex::WalkIndex(const FrobeniusForm& form, Graph graph)
    : field_(form.field()),
      n_(form.dim()),
      u_inv_(form.u_inv),
      graph_(std::move(graph)) {
    mu_ = form.mu_min;
    minpoly_deg_ = form.minpoly_deg;
    graph_hash_ = graph_.hash();
    for (const auto& b : form.blocks) block_degrees_.push_back(b.degree);

    for (std::size_t bi = 0; bi < form.blocks.size(); ++bi) {
        const auto& block = form.blocks[bi];
        const std::size_t l = block.degree;
        const std::size_t off = form.block_offsets[bi];

        // v_1 .. v_{l+mu}; window k..k+l-1 gives the columns of F_i^k
        auto window = companion_power_window(field_, block, mu_ + 1);

        DenseMatrix u_slice(field_, n_, l);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < l; ++j) u_slice(i, j) = form.u(i, off + j);
        DenseMatrix vmat(field_, l, l + mu_);
        for (std::size_t c = 0; c < l + mu_; ++c)
            for (std::size_t j = 0; j < l; ++j) vmat(j, c) = window[c][j];

        Strip strip{l, off, mat_mul(u_slice, vmat), DenseMatrix(field_, n_, l + mu_)};
        for (std::size_t i = 0; i < n_; ++i) {
            Fe running = field_.zero();
            for (std::size_t c = 0; c < l + mu_; ++c) {
                running = field_.add(running, strip.cols(i, c));
                strip.prefix(i, c) = running;
            }
        }
        strips_.push_back(std::move(strip));
    }
    finish_setup();
}

WalkIndex::WalkIndex(PrimeField field, std::vector<std::size_t> block_degrees,
                     std::vector<DenseMatrix> strip_cols,
                     std::vector<DenseMatrix> strip_prefix, DenseMatrix u_inv)
    : field_(field),
      n_(u_inv.rows()),
      block_degrees_(std::move(block_degrees)),
      u_inv_(std::move(u_inv)),
      graph_(n_) {
    mu_ = *std::min_element(block_degrees_.begin(), block_degrees_.end());
    minpoly_deg_ = *std::max_element(block_degrees_.begin(), block_degrees_.end());

    std::size_t off = 0;
    for (std::size_t bi = 0; bi < block_degrees_.size(); ++bi) {
        const std::size_t l = block_degrees_[bi];
        strips_.push_back(Strip{l, off, std::move(strip_cols[bi]),
                                std::move(strip_prefix[bi])});
        off += l;
    }

    // adjacency reconstruction: the k=1 windows concatenated are U.F,
    // so A = (U.F) . U^{-1}
    DenseMatrix uf(field_, n_, n_);
    for (const auto& s : strips_)
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < s.degree; ++j)
                uf(i, s.offset + j) = s.cols(i, j);
    DenseMatrix a = mat_mul(uf, u_inv_);
    for (u32 i = 0; i < n_; ++i)
        for (u32 j = 0; j < n_; ++j) {
            if (a(i, j).v == 1)
                graph_.add_edge(i, j);
            else if (a(i, j).v != 0)
                throw std::invalid_argument(
                    "index does not describe a 0/1 adjacency matrix");
        }
    graph_hash_ = graph_.hash();
    finish_setup();
}

void WalkIndex::finish_setup() {
    std::size_t expect_off = 0;
    for (const auto& s : strips_) {
        if (s.offset != expect_off || s.cols.cols() != s.degree + mu_ ||
            s.prefix.cols() != s.degree + mu_ || s.cols.rows() != n_)
            throw std::invalid_argument("inconsistent strip shapes");
        expect_off += s.degree;
    }
    if (expect_off != n_) throw std::invalid_argument("block degrees do not sum to n");
}

std::size_t WalkIndex::total_strip_columns() const {
    std::size_t total = 0;
    for (const auto& s : strips_) total += s.cols.cols();
    return total;
}

WalkIndex build_index(const FrobeniusForm& form, const Graph& g) {
    return WalkIndex(form, g);
}

Fe query_walk_count(const WalkIndex& idx, u32 u, u32 v, std::size_t k) {
    if (k < 1 || k > idx.horizon()) throw HorizonExceeded(k, idx.horizon());
    const PrimeField& f = idx.field();
    const u64 p = f.modulus();
    u128 acc = 0;
    for (const auto& s : idx.strips()) {
        auto row = s.cols.row(u);
        for (std::size_t j = 0; j < s.degree; ++j)
            acc += static_cast<u128>(row[k - 1 + j].v) * idx.u_inv()(s.offset + j, v).v;
    }
    return Fe{static_cast<u64>(acc % p)};
}

WalkCountVector query_all_lengths(const WalkIndex& idx, u32 u, u32 v) {
    const PrimeField& f = idx.field();
    WalkCountVector out;
    out.u = u;
    out.v = v;
    out.counts.assign(idx.horizon(), Fe{0});
    for (const auto& s : idx.strips()) {
        const std::size_t l = s.degree;
        HankelSpec h;
        h.rows = idx.horizon();
        h.cols = l;
        auto row = s.cols.row(u);
        h.seq.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(idx.horizon() + l - 1));
        std::vector<Fe> y(l);
        for (std::size_t j = 0; j < l; ++j) y[j] = idx.u_inv()(s.offset + j, v);
        std::vector<Fe> partial = hankel_matvec(f, h, y);
        for (std::size_t k = 0; k < idx.horizon(); ++k)
            out.counts[k] = f.add(out.counts[k], partial[k]);
    }
    return out;
}

Fe query_prefix_count(const WalkIndex& idx, u32 u, u32 v, std::size_t k) {
    if (k < 1 || k > idx.horizon()) throw HorizonExceeded(k, idx.horizon());
    const PrimeField& f = idx.field();
    const u64 p = f.modulus();
    u128 acc_hi = 0, acc_lo = 0;
    for (const auto& s : idx.strips()) {
        auto row = s.prefix.row(u);
        for (std::size_t j = 0; j < s.degree; ++j) {
            const u64 y = idx.u_inv()(s.offset + j, v).v;
            acc_hi += static_cast<u128>(row[k - 1 + j].v) * y;
            if (j >= 1) acc_lo += static_cast<u128>(row[j - 1].v) * y;
        }
    }
    const Fe hi{static_cast<u64>(acc_hi % p)};
    const Fe lo{static_cast<u64>(acc_lo % p)};
    return f.sub(hi, lo);
}

DistanceResult distance(const WalkIndex& idx, u32 u, u32 v) {
    if (u == v) return {DistanceResult::Kind::Dist, 0};
    WalkCountVector wcv = query_all_lengths(idx, u, v);
    for (std::size_t k = 1; k <= wcv.counts.size(); ++k)
        if (wcv.counts[k - 1].v != 0) return {DistanceResult::Kind::Dist, k};
    auto dist = bfs_distances(idx.graph(), u);
    if (dist[v] < 0) return {DistanceResult::Kind::Unreachable, 0};
    return {DistanceResult::Kind::BeyondHorizon, 0};
}

DistanceResult distance_via_prefix(const WalkIndex& idx, u32 u, u32 v) {
    if (u == v) return {DistanceResult::Kind::Dist, 0};
    const std::size_t mu = idx.horizon();
    if (query_prefix_count(idx, u, v, mu).v == 0) {
        auto dist = bfs_distances(idx.graph(), u);
        if (dist[v] < 0) return {DistanceResult::Kind::Unreachable, 0};
        return {DistanceResult::Kind::BeyondHorizon, 0};
    }
    std::size_t lo = 1, hi = mu;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (query_prefix_count(idx, u, v, mid).v != 0)
            hi = mid;
        else
            lo = mid + 1;
    }
    return {DistanceResult::Kind::Dist, lo};
}

std::vector<std::vector<Fe>> fallback_power_row(const PrimeField& f, const Graph& g,
                                                u32 u, std::size_t k_max) {
    if (k_max > g.vertex_count())
        throw std::invalid_argument("fallback_power_row: K exceeds vertex count");
    DenseMatrix a = g.adjacency(f);
    std::vector<std::vector<Fe>> rows;
    rows.reserve(k_max);
    std::vector<Fe> r(g.vertex_count(), Fe{0});
    r[u] = f.one();
    for (std::size_t k = 1; k <= k_max; ++k) {
        r = vec_mat(r, a);
        rows.push_back(r);
    }
    return rows;
}

ExactWalkCounts crt_exact_counts(const Graph& g, u32 u, u32 v,
                                 const std::vector<u64>& primes, u64 seed) {
    if (primes.empty()) throw std::invalid_argument("crt_exact_counts: empty prime list");
    std::vector<u64> uniq = primes;
    std::sort(uniq.begin(), uniq.end());
    if (std::adjacent_find(uniq.begin(), uniq.end()) != uniq.end())
        throw std::invalid_argument("crt_exact_counts: duplicate primes");

    struct PerPrime {
        u64 p;
        std::vector<Fe> counts;
        std::vector<Fe> prefixes;
    };
    std::vector<PerPrime> runs;
    std::size_t mu_min = SIZE_MAX;
    for (u64 p : primes) {
        PrimeField f(p);
        DenseMatrix a = g.adjacency(f);
        FrobeniusForm form = frobenius_decompose(a, seed ^ (p * 0x9e3779b97f4a7c15ull));
        WalkIndex idx(form, g);
        WalkCountVector wcv = query_all_lengths(idx, u, v);
        PerPrime run{p, wcv.counts, {}};
        Fe running = f.zero();
        for (Fe c : wcv.counts) {
            running = f.add(running, c);
            run.prefixes.push_back(running);
        }
        mu_min = std::min(mu_min, wcv.counts.size());
        runs.push_back(std::move(run));
    }

    BigInt modulus = 1;
    for (u64 p : primes) modulus *= p;
    auto lift = [&](std::size_t k, bool prefix) {
        // standard CRT combination
        BigInt x = 0;
        for (const auto& run : runs) {
            const BigInt mi = modulus / run.p;
            // mi^{-1} mod p via Fermat
            PrimeField f(run.p);
            const u64 mi_mod = static_cast<u64>(mi % run.p);
            const u64 inv = f.inv(Fe{mi_mod}).v;
            const u64 res = prefix ? run.prefixes[k].v : run.counts[k].v;
            x += mi * inv % modulus * res % modulus;
        }
        return x % modulus;
    };

    ExactWalkCounts out;
    out.u = u;
    out.v = v;
    out.primes = primes;
    BigInt prev_prefix = 0;
    for (std::size_t k = 0; k < mu_min; ++k) {
        BigInt w = lift(k, false);
        BigInt pk = lift(k, true);
        if (pk < prev_prefix || pk - prev_prefix != w)
            throw BoundTooSmall("prefix sums fail to difference back to counts at k=" +
                                std::to_string(k + 1) +
                                "; true counts exceed the prime product");
        prev_prefix = pk;
        out.counts.push_back(std::move(w));
    }
    return out;
}

}  // namespace walkforge
