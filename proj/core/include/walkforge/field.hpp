#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace walkforge {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Prime-field element: canonical residue in [0, p). Plain value type; all
/// arithmetic lives on PrimeField so the modulus is never ambiguous.
struct Fe {
    u64 v = 0;
    friend bool operator==(const Fe&, const Fe&) = default;
};

struct ZeroInverse : std::domain_error {
    ZeroInverse() : std::domain_error("field inverse of zero") {}
};

struct LengthOverflow : std::length_error {
    explicit LengthOverflow(std::size_t need, std::size_t have)
        : std::length_error("convolution length " + std::to_string(need) +
                            " exceeds max NTT length " + std::to_string(have)) {}
};

struct NotPrime : std::invalid_argument {
    explicit NotPrime(u64 p)
        : std::invalid_argument("modulus " + std::to_string(p) + " is not prime") {}
};

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(u64 n);

/// Distinct prime factors (trial division + Pollard rho).
std::vector<u64> distinct_prime_factors(u64 n);

/// An entry from the frozen table of NTT-friendly primes near 2^30.
struct NttPrime {
    u64 p;
    u32 generator;
    u32 two_adic;  // 2^two_adic | p-1
};
std::span<const NttPrime> ntt_prime_table();

/// Arithmetic context for Z_p. Immutable after construction; every operation
/// is pure, so a single instance may be shared across threads freely.
class PrimeField {
public:
    static constexpr u64 kDefaultPrime = 998244353;  // 119 * 2^23 + 1

    /// Validates primality (deterministic Miller-Rabin), derives max_ntt_len
    /// from the 2-adic valuation of p-1 and finds a verified primitive root.
    explicit PrimeField(u64 p = kDefaultPrime);

    /// Picks a random prime from ntt_prime_table(), deterministic in seed.
    static PrimeField sample_ntt_prime(u64 seed);

    u64 modulus() const { return p_; }
    u64 generator() const { return generator_; }
    std::size_t max_ntt_len() const { return max_ntt_len_; }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

    Fe zero() const { return Fe{0}; }
    Fe one() const { return Fe{1 % p_}; }
    Fe from_uint(u64 x) const { return Fe{x % p_}; }
    Fe from_int(i64 x) const {
        i64 r = x % static_cast<i64>(p_);
        if (r < 0) r += static_cast<i64>(p_);
        return Fe{static_cast<u64>(r)};
    }

    Fe add(Fe a, Fe b) const {
        u64 s = a.v + b.v;  // p < 2^63, no overflow
        return Fe{s >= p_ ? s - p_ : s};
    }
    Fe sub(Fe a, Fe b) const {
        return Fe{a.v >= b.v ? a.v - b.v : a.v + (p_ - b.v)};
    }
    Fe mul(Fe a, Fe b) const {
        return Fe{static_cast<u64>(static_cast<u128>(a.v) * b.v % p_)};
    }
    Fe neg(Fe a) const { return Fe{a.v == 0 ? 0 : p_ - a.v}; }

    Fe pow(Fe a, u64 e) const;

    /// Fermat inverse; throws ZeroInverse on a = 0.
    Fe inv(Fe a) const;

    /// In-place forward/inverse NTT. Size must be a power of two not
    /// exceeding max_ntt_len(). Exposed for batched convolution callers.
    void ntt_forward(std::vector<Fe>& a) const;
    void ntt_inverse(std::vector<Fe>& a) const;

    /// Exact cyclic-free convolution via NTT; result length |x|+|y|-1.
    /// Throws LengthOverflow when the padded length exceeds max_ntt_len().
    std::vector<Fe> ntt_convolve(std::span<const Fe> x, std::span<const Fe> y) const;

    /// O(|x||y|) reference convolution, always available.
    std::vector<Fe> schoolbook_convolve(std::span<const Fe> x,
                                        std::span<const Fe> y) const;

    /// Total convolution: NTT when the length fits, schoolbook otherwise.
    std::vector<Fe> convolve(std::span<const Fe> x, std::span<const Fe> y) const;

private:
    u64 p_;
    u64 generator_ = 0;
    std::size_t max_ntt_len_ = 1;

    void ntt_radix2(std::vector<Fe>& a, bool invert) const;
};

}  // namespace walkforge
