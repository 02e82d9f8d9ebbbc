#include "walkforge/frobenius.hpp"

#include <algorithm>
#include <optional>
#include <random>

namespace walkforge {

DenseMatrix CompanionBlock::materialize(const PrimeField& f) const {
    DenseMatrix c(f, degree, degree);
    for (std::size_t i = 0; i + 1 < degree; ++i) c(i + 1, i) = f.one();
    for (std::size_t i = 0; i < degree; ++i) c(i, degree - 1) = f.neg(coeffs[i]);
    return c;
}

poly::Poly CompanionBlock::monic_poly(const PrimeField& f) const {
    return poly::from_companion_coeffs(f, coeffs);
}

DenseMatrix FrobeniusForm::materialize_f() const {
    const PrimeField& f = field();
    DenseMatrix out(f, dim(), dim());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::size_t off = block_offsets[b];
        const std::size_t r = blocks[b].degree;
        for (std::size_t i = 0; i + 1 < r; ++i) out(off + i + 1, off + i) = f.one();
        for (std::size_t i = 0; i < r; ++i)
            out(off + i, off + r - 1) = f.neg(blocks[b].coeffs[i]);
    }
    return out;
}

std::vector<std::vector<Fe>> companion_power_window(const PrimeField& f,
                                                    const CompanionBlock& block,
                                                    std::size_t max_power) {
    const std::size_t r = block.degree;
    std::vector<std::vector<Fe>> window;
    window.reserve(max_power + r - 1);
    std::vector<Fe> w(r, Fe{0});
    w[0] = f.one();  // e_1
    for (std::size_t t = 1; t <= max_power + r - 1; ++t) {
        std::vector<Fe> next(r);
        const Fe tail = w[r - 1];
        next[0] = f.neg(f.mul(block.coeffs[0], tail));
        for (std::size_t i = 1; i < r; ++i)
            next[i] = f.sub(w[i - 1], f.mul(block.coeffs[i], tail));
        window.push_back(next);
        w = std::move(next);
    }
    return window;
}

namespace {

// ---------------------------------------------------------------------------
// structural fast path: matrix already in companion block-diagonal shape
// ---------------------------------------------------------------------------

std::optional<std::vector<CompanionBlock>> parse_companion_blocks(
    const DenseMatrix& a) {
    const PrimeField& f = a.field();
    const std::size_t n = a.rows();
    std::vector<CompanionBlock> blocks;
    std::size_t s = 0;
    while (s < n) {
        // interior column j of a block: single 1 at (j+1, j)
        auto is_interior = [&](std::size_t j) {
            if (j + 1 >= n || a(j + 1, j).v != 1) return false;
            for (std::size_t i = 0; i < n; ++i)
                if (i != j + 1 && a(i, j).v != 0) return false;
            return true;
        };
        std::size_t r = 1;
        while (s + r < n && is_interior(s + r - 1)) ++r;
        const std::size_t last = s + r - 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= s && i < s + r) continue;
            if (a(i, last).v != 0) return std::nullopt;
        }
        CompanionBlock b;
        b.degree = r;
        b.coeffs.resize(r);
        for (std::size_t i = 0; i < r; ++i) b.coeffs[i] = f.neg(a(s + i, last));
        blocks.push_back(std::move(b));
        s += r;
    }
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
        if (!poly::divides(f, blocks[i].monic_poly(f), blocks[i + 1].monic_poly(f)))
            return std::nullopt;
    }
    return blocks;
}

// ---------------------------------------------------------------------------
// randomized cyclic-vector decomposition
// ---------------------------------------------------------------------------

struct GeneratorPoly {
    std::vector<Fe> generator;  // in the coordinates of the original space
    std::vector<Fe> coeffs;     // c_0..c_{d-1} of its monic annihilator
};

// Krylov chain of v under m with its monic annihilator; pivot rows kept
// normalized so each reduction step is a single multiply-subtract sweep.
struct KrylovResult {
    std::size_t dim = 0;
    std::vector<Fe> coeffs;
};

KrylovResult krylov_annihilator(const DenseMatrix& m, std::vector<Fe> v) {
    const PrimeField& f = m.field();
    const std::size_t n = m.rows();
    struct PivotRow {
        std::vector<Fe> vec;   // normalized: vec[pivot] = 1
        std::vector<Fe> expr;  // combination over chain indices 0..d-1
        std::size_t pivot;
    };
    std::vector<PivotRow> pivots;
    std::vector<Fe> w = std::move(v);
    for (std::size_t d = 0;; ++d) {
        std::vector<Fe> cur = w;
        std::vector<Fe> expr(d + 1, Fe{0});
        expr[d] = f.one();
        for (const auto& pr : pivots) {
            const Fe factor = cur[pr.pivot];
            if (factor.v == 0) continue;
            for (std::size_t i = 0; i < n; ++i)
                cur[i] = f.sub(cur[i], f.mul(factor, pr.vec[i]));
            for (std::size_t i = 0; i < pr.expr.size(); ++i)
                expr[i] = f.sub(expr[i], f.mul(factor, pr.expr[i]));
        }
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (cur[i].v != 0) {
                piv = i;
                break;
            }
        if (piv == n) {
            // M^d v = -sum expr_i M^i v, so the annihilator is
            // x^d + sum expr_i x^i
            KrylovResult res;
            res.dim = d;
            res.coeffs.assign(expr.begin(), expr.begin() + d);
            return res;
        }
        const Fe piv_inv = f.inv(cur[piv]);
        for (auto& x : cur) x = f.mul(x, piv_inv);
        for (auto& x : expr) x = f.mul(x, piv_inv);
        pivots.push_back({std::move(cur), std::move(expr), piv});
        w = mat_vec(m, w);
    }
}

// basis columns of the null space of the stacked rows
std::pair<DenseMatrix, std::size_t> row_nullspace(const PrimeField& f,
                                                  std::vector<std::vector<Fe>> rows,
                                                  std::size_t n) {
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t piv = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][c].v != 0) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const Fe inv = f.inv(rows[r][c]);
        for (auto& x : rows[r]) x = f.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].v == 0) continue;
            const Fe factor = rows[i][c];
            for (std::size_t j = 0; j < n; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    DenseMatrix basis(f, n, n - r);
    std::size_t out = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        basis(c, out) = f.one();
        for (std::size_t i = 0; i < pivot_cols.size(); ++i)
            basis(pivot_cols[i], out) = f.neg(rows[i][c]);
        ++out;
    }
    return {basis, r};
}

// solve B X = C for X (B full column rank, system consistent); nullopt when
// inconsistent, which signals that the candidate subspace was not invariant
std::optional<DenseMatrix> solve_exact(const DenseMatrix& b, const DenseMatrix& c) {
    const PrimeField& f = b.field();
    const std::size_t m = b.rows(), w = b.cols(), q = c.cols();
    DenseMatrix aug(f, m, w + q);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < w; ++j) aug(i, j) = b(i, j);
        for (std::size_t j = 0; j < q; ++j) aug(i, w + j) = c(i, j);
    }
    std::vector<std::size_t> pivot_row(w);
    std::size_t r = 0;
    for (std::size_t col = 0; col < w; ++col) {
        std::size_t piv = m;
        for (std::size_t i = r; i < m; ++i)
            if (aug(i, col).v != 0) {
                piv = i;
                break;
            }
        if (piv == m) return std::nullopt;  // rank deficient
        for (std::size_t j = 0; j < w + q; ++j) std::swap(aug(r, j), aug(piv, j));
        const Fe inv = f.inv(aug(r, col));
        for (std::size_t j = 0; j < w + q; ++j) aug(r, j) = f.mul(aug(r, j), inv);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || aug(i, col).v == 0) continue;
            const Fe factor = aug(i, col);
            for (std::size_t j = 0; j < w + q; ++j)
                aug(i, j) = f.sub(aug(i, j), f.mul(factor, aug(r, j)));
        }
        pivot_row[col] = r;
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        for (std::size_t j = 0; j < q; ++j)
            if (aug(i, w + j).v != 0) return std::nullopt;  // inconsistent
    DenseMatrix x(f, w, q);
    for (std::size_t col = 0; col < w; ++col)
        for (std::size_t j = 0; j < q; ++j) x(col, j) = aug(pivot_row[col], w + j);
    return x;
}

constexpr int kLevelTries = 6;

// peel cyclic subspaces off m; generators returned in peel order
// (non-increasing annihilator degree w.h.p.)
std::optional<std::vector<GeneratorPoly>> decompose_level(const DenseMatrix& m,
                                                          std::mt19937_64& rng) {
    const PrimeField& f = m.field();
    const std::size_t dim = m.rows();
    if (dim == 0) return std::vector<GeneratorPoly>{};
    if (m.is_zero()) {
        // every vector is annihilated by x
        std::vector<GeneratorPoly> out(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            out[i].generator.assign(dim, Fe{0});
            out[i].generator[i] = f.one();
            out[i].coeffs = {Fe{0}};
        }
        return out;
    }
    std::uniform_int_distribution<u64> dist(0, f.modulus() - 1);
    auto random_vec = [&] {
        std::vector<Fe> v(dim);
        for (auto& x : v) x.v = dist(rng);
        return v;
    };

    for (int vtry = 0; vtry < kLevelTries; ++vtry) {
        std::vector<Fe> v = random_vec();
        if (std::all_of(v.begin(), v.end(), [](Fe x) { return x.v == 0; })) continue;
        KrylovResult kr = krylov_annihilator(m, v);
        const std::size_t d = kr.dim;
        if (d == 0) continue;
        if (d == dim) return std::vector<GeneratorPoly>{{v, kr.coeffs}};

        for (int utry = 0; utry < kLevelTries; ++utry) {
            // dual constraints u M^i, i < d; their null space is M-invariant
            // when the annihilator of v is the minimal polynomial of m
            std::vector<std::vector<Fe>> rows;
            rows.reserve(d);
            std::vector<Fe> u = random_vec();
            for (std::size_t i = 0; i < d; ++i) {
                rows.push_back(u);
                if (i + 1 < d) u = vec_mat(u, m);
            }
            auto [basis, rank] = row_nullspace(f, std::move(rows), dim);
            if (rank != d || basis.cols() != dim - d) continue;

            DenseMatrix mb = mat_mul(m, basis);
            auto restriction = solve_exact(basis, mb);
            if (!restriction) continue;  // not invariant: bad u or v

            auto sub = decompose_level(*restriction, rng);
            if (!sub) continue;

            std::vector<GeneratorPoly> out;
            out.reserve(1 + sub->size());
            out.push_back({std::move(v), std::move(kr.coeffs)});
            for (auto& gp : *sub) {
                std::vector<Fe> lifted = mat_vec(basis, gp.generator);
                out.push_back({std::move(lifted), std::move(gp.coeffs)});
            }
            return out;
        }
    }
    return std::nullopt;
}

FrobeniusForm assemble_form(const DenseMatrix& a,
                            std::vector<GeneratorPoly> pairs) {
    const PrimeField& f = a.field();
    const std::size_t n = a.rows();
    // smallest degree first
    std::reverse(pairs.begin(), pairs.end());
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const GeneratorPoly& x, const GeneratorPoly& y) {
                         return x.coeffs.size() < y.coeffs.size();
                     });

    FrobeniusForm form{DenseMatrix(f, n, n), DenseMatrix(f, n, n), {}, {}, 0, 0};
    std::size_t col = 0;
    for (const auto& gp : pairs) {
        const std::size_t d = gp.coeffs.size();
        form.block_offsets.push_back(col);
        form.blocks.push_back(CompanionBlock{d, gp.coeffs});
        std::vector<Fe> w = gp.generator;
        for (std::size_t t = 0; t < d; ++t) {
            for (std::size_t i = 0; i < n; ++i) form.u(i, col) = w[i];
            ++col;
            if (t + 1 < d) w = mat_vec(a, w);
        }
    }
    form.u_inv = mat_inverse(form.u);  // throws SingularMatrix on bad randomness
    form.mu_min = form.blocks.front().degree;
    form.minpoly_deg = form.blocks.back().degree;
    return form;
}

}  // namespace

FrobeniusForm frobenius_decompose(const DenseMatrix& a, u64 seed) {
    if (a.rows() != a.cols())
        throw DimensionMismatch("frobenius_decompose needs square input");
    const PrimeField& f = a.field();
    const std::size_t n = a.rows();
    if (n == 0) throw DimensionMismatch("frobenius_decompose on empty matrix");

    if (auto blocks = parse_companion_blocks(a)) {
        FrobeniusForm form{DenseMatrix::identity(f, n), DenseMatrix::identity(f, n),
                           std::move(*blocks), {}, 0, 0};
        std::size_t off = 0;
        for (const auto& b : form.blocks) {
            form.block_offsets.push_back(off);
            off += b.degree;
        }
        form.mu_min = form.blocks.front().degree;
        form.minpoly_deg = form.blocks.back().degree;
        return form;
    }

    std::mt19937_64 rng(seed);
    constexpr int kAttempts = 8;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        auto pairs = decompose_level(a, rng);
        if (!pairs) continue;
        try {
            FrobeniusForm form = assemble_form(a, std::move(*pairs));
            if (verify_form(a, form)) return form;
        } catch (const SingularMatrix&) {
            // generators failed to span; retry with fresh randomness
        }
    }
    throw DecompositionFailure("retry budget exhausted (8 attempts, seed " +
                               std::to_string(seed) + ")");
}

bool verify_form(const DenseMatrix& a, const FrobeniusForm& form) {
    const PrimeField& f = a.field();
    const std::size_t n = a.rows();
    if (form.u.rows() != n || form.u.cols() != n) return false;
    if (form.blocks.empty()) return false;

    std::size_t total = 0;
    for (const auto& b : form.blocks) {
        if (b.degree == 0 || b.coeffs.size() != b.degree) return false;
        total += b.degree;
    }
    if (total != n) return false;

    for (std::size_t i = 0; i + 1 < form.blocks.size(); ++i) {
        if (form.blocks[i].degree > form.blocks[i + 1].degree) return false;
        if (!poly::divides(f, form.blocks[i].monic_poly(f),
                           form.blocks[i + 1].monic_poly(f)))
            return false;
    }

    if (mat_mul(form.u, form.u_inv) != DenseMatrix::identity(f, n)) return false;
    DenseMatrix ufu = mat_mul(mat_mul(form.u, form.materialize_f()), form.u_inv);
    return ufu == a;
}

}  // namespace walkforge
