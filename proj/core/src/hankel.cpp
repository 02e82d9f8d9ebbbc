#include "walkforge/hankel.hpp"

#include <algorithm>
#include <stdexcept>

namespace walkforge {

namespace {

void check(const HankelSpec& h, std::span<const Fe> x) {
    if (!h.valid()) throw std::invalid_argument("HankelSpec: seq length != rows+cols-1");
    if (x.size() != h.cols) throw std::invalid_argument("hankel_matvec: |x| != cols");
}

}  // namespace

std::vector<Fe> hankel_matvec_dense(const PrimeField& f, const HankelSpec& h,
                                    std::span<const Fe> x) {
    check(h, x);
    std::vector<Fe> y(h.rows);
    const u64 p = f.modulus();
    for (std::size_t i = 0; i < h.rows; ++i) {
        u128 acc = 0;
        for (std::size_t j = 0; j < h.cols; ++j)
            acc += static_cast<u128>(h.seq[i + j].v) * x[j].v;
        y[i].v = static_cast<u64>(acc % p);
    }
    return y;
}

std::vector<Fe> hankel_matvec(const PrimeField& f, const HankelSpec& h,
                              std::span<const Fe> x) {
    check(h, x);
    std::vector<Fe> xr(x.rbegin(), x.rend());
    try {
        // conv[t] = sum_a seq[a] * x[n-1-t+a]; row i lands at t = cols-1+i
        std::vector<Fe> conv = f.ntt_convolve(h.seq, xr);
        return {conv.begin() + static_cast<std::ptrdiff_t>(h.cols - 1),
                conv.begin() + static_cast<std::ptrdiff_t>(h.cols - 1 + h.rows)};
    } catch (const LengthOverflow&) {
        return hankel_matvec_dense(f, h, x);
    }
}

}  // namespace walkforge
