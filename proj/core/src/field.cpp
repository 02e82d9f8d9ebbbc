#include "walkforge/field.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

namespace walkforge {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ n);
    while (true) {
        u64 c = rng() % n;
        u64 x = rng() % n, y = x, d = 1;
        auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            if (x == y) break;
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic base set for all 64-bit n
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> fac;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n % q == 0) {
            fac.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) factor_rec(n, fac);
    std::sort(fac.begin(), fac.end());
    fac.erase(std::unique(fac.begin(), fac.end()), fac.end());
    return fac;
}

std::span<const NttPrime> ntt_prime_table() {
    // primes in (2^29, 2^31) with 2^21 <= 2-adic valuation of p-1,
    // each with its smallest primitive root
    static constexpr std::array<NttPrime, 21> kTable = {{
        {998244353ull, 3, 23},  // 119 * 2^23 + 1, the default
        {595591169ull, 3, 23},
        {645922817ull, 3, 23},
        {666894337ull, 5, 22},
        {683671553ull, 3, 22},
        {754974721ull, 11, 24},
        {1004535809ull, 3, 21},
        {1107296257ull, 10, 25},
        {1224736769ull, 3, 24},
        {1300234241ull, 3, 23},
        {1438646273ull, 3, 22},
        {1484783617ull, 5, 23},
        {1711276033ull, 29, 25},
        {1790967809ull, 13, 22},
        {1811939329ull, 13, 26},
        {1866465281ull, 3, 22},
        {2013265921ull, 31, 27},
        {2025848833ull, 10, 22},
        {2088763393ull, 5, 23},
        {2113929217ull, 5, 25},
        {2130706433ull, 3, 24},
    }};
    return kTable;
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (!is_prime_u64(p)) throw NotPrime(p);
    if (p == 2) {
        generator_ = 1;
        max_ntt_len_ = 1;
        return;
    }
    u64 m = p - 1;
    max_ntt_len_ = 1;
    while ((m & 1) == 0) {
        m >>= 1;
        max_ntt_len_ <<= 1;
    }
    auto factors = distinct_prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 q : factors) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            generator_ = g;
            break;
        }
    }
}

PrimeField PrimeField::sample_ntt_prime(u64 seed) {
    auto table = ntt_prime_table();
    std::mt19937_64 rng(seed);
    return PrimeField(table[rng() % table.size()].p);
}

Fe PrimeField::pow(Fe a, u64 e) const { return Fe{powmod(a.v, e, p_)}; }

Fe PrimeField::inv(Fe a) const {
    if (a.v == 0) throw ZeroInverse();
    return pow(a, p_ - 2);
}

void PrimeField::ntt_radix2(std::vector<Fe>& a, bool invert) const {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        Fe w_len = pow(Fe{generator_}, (p_ - 1) / len);
        if (invert) w_len = inv(w_len);
        for (std::size_t i = 0; i < n; i += len) {
            Fe w = one();
            for (std::size_t j = 0; j < len / 2; ++j) {
                Fe even = a[i + j];
                Fe odd = mul(a[i + j + len / 2], w);
                a[i + j] = add(even, odd);
                a[i + j + len / 2] = sub(even, odd);
                w = mul(w, w_len);
            }
        }
    }
    if (invert) {
        Fe n_inv = inv(from_uint(n));
        for (auto& x : a) x = mul(x, n_inv);
    }
}

void PrimeField::ntt_forward(std::vector<Fe>& a) const {
    if (a.size() > max_ntt_len_ || (a.size() & (a.size() - 1)) != 0)
        throw LengthOverflow(a.size(), max_ntt_len_);
    ntt_radix2(a, false);
}

void PrimeField::ntt_inverse(std::vector<Fe>& a) const {
    if (a.size() > max_ntt_len_ || (a.size() & (a.size() - 1)) != 0)
        throw LengthOverflow(a.size(), max_ntt_len_);
    ntt_radix2(a, true);
}

std::vector<Fe> PrimeField::ntt_convolve(std::span<const Fe> x,
                                         std::span<const Fe> y) const {
    if (x.empty() || y.empty()) return {};
    const std::size_t out_len = x.size() + y.size() - 1;
    std::size_t padded = 1;
    while (padded < out_len) padded <<= 1;
    if (padded > max_ntt_len_) throw LengthOverflow(padded, max_ntt_len_);

    std::vector<Fe> fx(padded), fy(padded);
    std::copy(x.begin(), x.end(), fx.begin());
    std::copy(y.begin(), y.end(), fy.begin());
    ntt_radix2(fx, false);
    ntt_radix2(fy, false);
    for (std::size_t i = 0; i < padded; ++i) fx[i] = mul(fx[i], fy[i]);
    ntt_radix2(fx, true);
    fx.resize(out_len);
    return fx;
}

std::vector<Fe> PrimeField::schoolbook_convolve(std::span<const Fe> x,
                                                std::span<const Fe> y) const {
    if (x.empty() || y.empty()) return {};
    std::vector<Fe> out(x.size() + y.size() - 1, Fe{0});
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].v == 0) continue;
        u128 xi = x[i].v;
        for (std::size_t j = 0; j < y.size(); ++j) {
            out[i + j].v = static_cast<u64>((xi * y[j].v + out[i + j].v) % p_);
        }
    }
    return out;
}

std::vector<Fe> PrimeField::convolve(std::span<const Fe> x,
                                     std::span<const Fe> y) const {
    try {
        return ntt_convolve(x, y);
    } catch (const LengthOverflow&) {
        return schoolbook_convolve(x, y);
    }
}

}  // namespace walkforge
