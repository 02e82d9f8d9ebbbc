#pragma once

#include <span>
#include <vector>

#include "walkforge/field.hpp"

namespace walkforge {

/// Rectangular Hankel matrix given implicitly by its defining sequence:
/// entry (i, j) = seq[i + j] (0-indexed), so seq.size() = rows + cols - 1.
struct HankelSpec {
    std::vector<Fe> seq;
    std::size_t rows = 0;
    std::size_t cols = 0;

    bool valid() const { return seq.size() == rows + cols - 1 && rows && cols; }
};

/// y = H x by reversing x, convolving with seq and slicing the valid window;
/// equals the dense product exactly. Falls back to the dense O(rows*cols)
/// path when the convolution length exceeds the field's NTT range.
std::vector<Fe> hankel_matvec(const PrimeField& f, const HankelSpec& h,
                              std::span<const Fe> x);

/// Dense reference path (also the fallback target).
std::vector<Fe> hankel_matvec_dense(const PrimeField& f, const HankelSpec& h,
                                    std::span<const Fe> x);

}  // namespace walkforge
