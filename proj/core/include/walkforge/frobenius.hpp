#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "walkforge/matrix.hpp"
#include "walkforge/poly.hpp"

namespace walkforge {

/// One companion block: the monic polynomial x^r + c_{r-1}x^{r-1} + ... + c_0
/// realized as the matrix with ones on the subdiagonal and -c in the last
/// column. Multiplication by it advances the associated linear recurrence.
struct CompanionBlock {
    std::size_t degree = 0;
    std::vector<Fe> coeffs;  // c_0 .. c_{r-1}; leading 1 implicit

    DenseMatrix materialize(const PrimeField& f) const;
    poly::Poly monic_poly(const PrimeField& f) const;
};

/// A = U . F . U_inv with F block-diagonal of companion blocks whose
/// polynomials form a divisibility chain, smallest degree first.
struct FrobeniusForm {
    DenseMatrix u;
    DenseMatrix u_inv;
    std::vector<CompanionBlock> blocks;
    std::vector<std::size_t> block_offsets;  // starting column of each block
    std::size_t mu_min = 0;       // degree of the smallest (first) block
    std::size_t minpoly_deg = 0;  // degree of the largest (last) block

    const PrimeField& field() const { return u.field(); }
    std::size_t dim() const { return u.rows(); }
    DenseMatrix materialize_f() const;
};

struct DecompositionFailure : std::runtime_error {
    explicit DecompositionFailure(const std::string& why)
        : std::runtime_error("Frobenius decomposition failed: " + why) {}
};

/// Randomized cyclic-vector (Krylov) decomposition. Deterministic given the
/// seed; retries internally (fresh randomness, up to 8 attempts) and verifies
/// each candidate with verify_form before returning.
///
/// Matrices that are already in companion block-diagonal shape with a valid
/// divisibility chain are returned as-is with U = I.
FrobeniusForm frobenius_decompose(const DenseMatrix& a, u64 seed);

/// True iff U.F.U_inv = A, U.U_inv = I, the divisibility chain holds and the
/// block degrees sum to n. Exact checks; no tolerance exists over Z_p.
bool verify_form(const DenseMatrix& a, const FrobeniusForm& form);

/// The vector sequence v_t = C^t e_1 for t = 1 .. max_power + r - 1, each of
/// length r. For every k <= max_power the columns of C^k are exactly
/// v_k .. v_{k+r-1}; each step costs O(r).
std::vector<std::vector<Fe>> companion_power_window(const PrimeField& f,
                                                    const CompanionBlock& block,
                                                    std::size_t max_power);

}  // namespace walkforge
