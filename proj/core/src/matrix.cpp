#include "walkforge/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "walkforge/parallel.hpp"

namespace walkforge {

namespace {

unsigned g_thread_limit = 0;  // 0 = uninitialized

unsigned default_threads() {
    if (const char* env = std::getenv("WALKFORGE_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace

unsigned thread_limit() {
    if (g_thread_limit == 0) g_thread_limit = default_threads();
    return g_thread_limit;
}

void set_thread_limit(unsigned n) { g_thread_limit = n ? n : default_threads(); }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    const std::size_t total = end > begin ? end - begin : 0;
    if (total == 0) return;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(thread_limit(), total));
    if (workers <= 1) {
        fn(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = begin + w * chunk;
        std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

namespace {

// rows [r0, r1) of a*b into out
void mul_rows(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out,
              std::size_t r0, std::size_t r1) {
    const u64 p = a.field().modulus();
    const std::size_t inner = a.cols();
    const std::size_t cols = b.cols();
    std::vector<u128> acc(cols);
    for (std::size_t i = r0; i < r1; ++i) {
        std::fill(acc.begin(), acc.end(), u128{0});
        auto arow = a.row(i);
        for (std::size_t k = 0; k < inner; ++k) {
            const u64 av = arow[k].v;
            if (av == 0) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < cols; ++j) {
                acc[j] += static_cast<u128>(av) * brow[j].v;
            }
        }
        auto orow = out.row(i);
        for (std::size_t j = 0; j < cols; ++j) {
            orow[j].v = static_cast<u64>(acc[j] % p);
        }
    }
}

DenseMatrix mul_cubic(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.field(), a.rows(), b.cols());
    const std::size_t work = a.rows() * a.cols() * b.cols();
    if (work >= (std::size_t{1} << 21) && thread_limit() > 1) {
        parallel_for(0, a.rows(), [&](std::size_t lo, std::size_t hi) {
            mul_rows(a, b, out, lo, hi);
        });
    } else {
        mul_rows(a, b, out, 0, a.rows());
    }
    return out;
}

DenseMatrix strassen_rec(const DenseMatrix& a, const DenseMatrix& b,
                         std::size_t threshold);

DenseMatrix mat_add(const DenseMatrix& a, const DenseMatrix& b) {
    const PrimeField& f = a.field();
    DenseMatrix r(f, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = f.add(a(i, j), b(i, j));
    return r;
}

DenseMatrix mat_sub(const DenseMatrix& a, const DenseMatrix& b) {
    const PrimeField& f = a.field();
    DenseMatrix r(f, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = f.sub(a(i, j), b(i, j));
    return r;
}

DenseMatrix block(const DenseMatrix& m, std::size_t r0, std::size_t c0,
                  std::size_t rows, std::size_t cols) {
    DenseMatrix out(m.field(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (r0 + i < m.rows() && c0 + j < m.cols()) out(i, j) = m(r0 + i, c0 + j);
    return out;
}

void paste(DenseMatrix& dst, const DenseMatrix& src, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < src.rows() && r0 + i < dst.rows(); ++i)
        for (std::size_t j = 0; j < src.cols() && c0 + j < dst.cols(); ++j)
            dst(r0 + i, c0 + j) = src(i, j);
}

DenseMatrix strassen_rec(const DenseMatrix& a, const DenseMatrix& b,
                         std::size_t threshold) {
    const std::size_t n = a.rows();
    if (n <= threshold || a.cols() != n || b.cols() != n) return mul_cubic(a, b);
    const std::size_t h = (n + 1) / 2;

    DenseMatrix a11 = block(a, 0, 0, h, h), a12 = block(a, 0, h, h, h);
    DenseMatrix a21 = block(a, h, 0, h, h), a22 = block(a, h, h, h, h);
    DenseMatrix b11 = block(b, 0, 0, h, h), b12 = block(b, 0, h, h, h);
    DenseMatrix b21 = block(b, h, 0, h, h), b22 = block(b, h, h, h, h);

    DenseMatrix m1 = strassen_rec(mat_add(a11, a22), mat_add(b11, b22), threshold);
    DenseMatrix m2 = strassen_rec(mat_add(a21, a22), b11, threshold);
    DenseMatrix m3 = strassen_rec(a11, mat_sub(b12, b22), threshold);
    DenseMatrix m4 = strassen_rec(a22, mat_sub(b21, b11), threshold);
    DenseMatrix m5 = strassen_rec(mat_add(a11, a12), b22, threshold);
    DenseMatrix m6 = strassen_rec(mat_sub(a21, a11), mat_add(b11, b12), threshold);
    DenseMatrix m7 = strassen_rec(mat_sub(a12, a22), mat_add(b21, b22), threshold);

    DenseMatrix out(a.field(), n, n);
    paste(out, mat_add(mat_sub(mat_add(m1, m4), m5), m7), 0, 0);
    paste(out, mat_add(m3, m5), 0, h);
    paste(out, mat_add(m2, m4), h, 0);
    paste(out, mat_add(mat_add(mat_sub(m1, m2), m3), m6), h, h);
    return out;
}

}  // namespace

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b,
                    const MulOptions& opts) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("mat_mul " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    if (a.field().modulus() != b.field().modulus())
        throw DimensionMismatch("operands use different prime fields");
    if (opts.use_strassen && a.rows() == a.cols() && b.rows() == b.cols() &&
        a.rows() > opts.strassen_threshold) {
        return strassen_rec(a, b, opts.strassen_threshold);
    }
    return mul_cubic(a, b);
}

DenseMatrix mat_inverse(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("mat_inverse needs square input");
    const PrimeField& f = a.field();
    const std::size_t n = a.rows();

    DenseMatrix work = a;
    DenseMatrix inv = DenseMatrix::identity(f, n);
    std::vector<std::size_t> col_of(n);  // col_of[t] = original column placed at step t
    for (std::size_t i = 0; i < n; ++i) col_of[i] = i;

    for (std::size_t t = 0; t < n; ++t) {
        // full pivot search over the remaining submatrix
        std::size_t pr = n, pc = n;
        for (std::size_t i = t; i < n && pr == n; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (work(i, j).v != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr == n) throw SingularMatrix();
        if (pr != t) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(t, j), work(pr, j));
                std::swap(inv(t, j), inv(pr, j));
            }
        }
        if (pc != t) {
            for (std::size_t i = 0; i < n; ++i) std::swap(work(i, t), work(i, pc));
            std::swap(col_of[t], col_of[pc]);
        }
        Fe piv_inv = f.inv(work(t, t));
        for (std::size_t j = 0; j < n; ++j) {
            work(t, j) = f.mul(work(t, j), piv_inv);
            inv(t, j) = f.mul(inv(t, j), piv_inv);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == t || work(i, t).v == 0) continue;
            Fe factor = work(i, t);
            for (std::size_t j = 0; j < n; ++j) {
                work(i, j) = f.sub(work(i, j), f.mul(factor, work(t, j)));
                inv(i, j) = f.sub(inv(i, j), f.mul(factor, inv(t, j)));
            }
        }
    }
    // column swaps permuted the solution rows: row t of inv solves for
    // variable col_of[t]
    DenseMatrix out(f, n, n);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t j = 0; j < n; ++j) out(col_of[t], j) = inv(t, j);
    return out;
}

DenseMatrix mat_pow(const DenseMatrix& a, u64 k) {
    if (a.rows() != a.cols()) throw DimensionMismatch("mat_pow needs square input");
    DenseMatrix result = DenseMatrix::identity(a.field(), a.rows());
    DenseMatrix base = a;
    while (k) {
        if (k & 1) result = mat_mul(result, base);
        k >>= 1;
        if (k) base = mat_mul(base, base);
    }
    return result;
}

std::vector<Fe> mat_vec(const DenseMatrix& a, std::span<const Fe> x) {
    if (x.size() != a.cols()) throw DimensionMismatch("mat_vec");
    const u64 p = a.field().modulus();
    std::vector<Fe> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        u128 acc = 0;
        auto arow = a.row(i);
        for (std::size_t j = 0; j < x.size(); ++j)
            acc += static_cast<u128>(arow[j].v) * x[j].v;
        y[i].v = static_cast<u64>(acc % p);
    }
    return y;
}

std::vector<Fe> vec_mat(std::span<const Fe> x, const DenseMatrix& a) {
    if (x.size() != a.rows()) throw DimensionMismatch("vec_mat");
    const u64 p = a.field().modulus();
    std::vector<u128> acc(a.cols(), u128{0});
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].v == 0) continue;
        auto arow = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc[j] += static_cast<u128>(x[i].v) * arow[j].v;
    }
    std::vector<Fe> y(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) y[j].v = static_cast<u64>(acc[j] % p);
    return y;
}

}  // namespace walkforge
