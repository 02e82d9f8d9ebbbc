#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "walkforge/field.hpp"

namespace walkforge {

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what)
        : std::invalid_argument("dimension mismatch: " + what) {}
};

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("matrix is singular over Z_p") {}
};

/// Row-major dense matrix of canonical residues. Value semantics throughout:
/// the field context is stored by value (it is a few words), so matrices can
/// be returned, serialized and reloaded without lifetime concerns.
class DenseMatrix {
public:
    DenseMatrix(const PrimeField& f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Fe{0}) {}

    static DenseMatrix identity(const PrimeField& f, std::size_t n) {
        DenseMatrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    Fe& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Fe operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Fe> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Fe> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    bool operator==(const DenseMatrix& o) const {
        return field_.modulus() == o.field_.modulus() && rows_ == o.rows_ &&
               cols_ == o.cols_ && data_ == o.data_;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x.v != 0) return false;
        return true;
    }

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<Fe> data_;
};

struct MulOptions {
    bool use_strassen = false;          // off by default
    std::size_t strassen_threshold = 256;
};

/// Exact product mod p. Accumulates each dot product in a 128-bit integer and
/// reduces once (the contract is the exact result, not the trick). May split
/// work across row blocks; the result is schedule-independent.
DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b,
                    const MulOptions& opts = {});

/// Gauss-Jordan with full pivoting over Z_p. Zero pivot search failure means
/// exact rank deficiency; throws SingularMatrix.
DenseMatrix mat_inverse(const DenseMatrix& a);

/// Repeated squaring; a^0 = I.
DenseMatrix mat_pow(const DenseMatrix& a, u64 k);

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    return mat_mul(a, b);
}

/// y = a . x (column vector), exact mod p.
std::vector<Fe> mat_vec(const DenseMatrix& a, std::span<const Fe> x);

/// y = x . a (row vector), exact mod p.
std::vector<Fe> vec_mat(std::span<const Fe> x, const DenseMatrix& a);

}  // namespace walkforge
