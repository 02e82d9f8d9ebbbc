#include "walkforge/poly.hpp"

#include <stdexcept>

namespace walkforge::poly {

void normalize(Poly& a) {
    while (!a.empty() && a.back().v == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

bool is_zero(const Poly& a) { return a.empty(); }

Poly add(const PrimeField& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Fe{0});
    for (std::size_t i = 0; i < r.size(); ++i) {
        Fe x = i < a.size() ? a[i] : Fe{0};
        Fe y = i < b.size() ? b[i] : Fe{0};
        r[i] = f.add(x, y);
    }
    normalize(r);
    return r;
}

Poly sub(const PrimeField& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Fe{0});
    for (std::size_t i = 0; i < r.size(); ++i) {
        Fe x = i < a.size() ? a[i] : Fe{0};
        Fe y = i < b.size() ? b[i] : Fe{0};
        r[i] = f.sub(x, y);
    }
    normalize(r);
    return r;
}

Poly mul(const PrimeField& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r = f.convolve(a, b);
    normalize(r);
    return r;
}

Poly scale(const PrimeField& f, const Poly& a, Fe c) {
    Poly r = a;
    for (auto& x : r) x = f.mul(x, c);
    normalize(r);
    return r;
}

Poly make_monic(const PrimeField& f, const Poly& a) {
    if (a.empty()) return a;
    return scale(f, a, f.inv(a.back()));
}

std::pair<Poly, Poly> divmod(const PrimeField& f, const Poly& a, const Poly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    Poly rem = a;
    normalize(rem);
    const int db = degree(b);
    if (degree(rem) < db) return {{}, rem};
    Poly quot(rem.size() - b.size() + 1, Fe{0});
    const Fe lead_inv = f.inv(b.back());
    for (int da = degree(rem); da >= db; da = degree(rem)) {
        Fe coef = f.mul(rem[da], lead_inv);
        quot[da - db] = coef;
        for (int i = 0; i <= db; ++i) {
            rem[da - db + i] = f.sub(rem[da - db + i], f.mul(coef, b[i]));
        }
        normalize(rem);
        if (rem.empty()) break;
    }
    normalize(quot);
    return {quot, rem};
}

bool divides(const PrimeField& f, const Poly& a, const Poly& b) {
    if (a.empty()) return b.empty();
    return divmod(f, b, a).second.empty();
}

Poly gcd(const PrimeField& f, Poly a, Poly b) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        Poly r = divmod(f, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(f, a);
}

Poly from_companion_coeffs(const PrimeField& f, std::span<const Fe> c) {
    Poly r(c.begin(), c.end());
    r.push_back(f.one());
    return r;
}

bool equal(const Poly& a, const Poly& b) { return a == b; }

}  // namespace walkforge::poly
