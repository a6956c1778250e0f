#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "latvac/intmat.hpp"

namespace latvac {

inline std::map<long, int> factorize(long n) {
    require(n >= 1, "factorize requires n >= 1");
    std::map<long, int> f;
    for (long p = 2; p * p <= n; ++p)
        while (n % p == 0) { ++f[p]; n /= p; }
    if (n > 1) ++f[n];
    return f;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> d;
    for (long i = 1; i * i <= n; ++i)
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    std::sort(d.begin(), d.end());
    return d;
}

inline long euler_phi(long n) {
    long r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline long dedekind_psi(long n) {
    long r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p + 1);
    return r;
}

// Product of -p over primes dividing n; empty product is 1.
inline long prime_sign_product(long n) {
    long r = 1;
    for (auto& [p, e] : factorize(n)) r *= -p;
    return r;
}

inline long divisor_sum(long n) {
    long s = 0;
    for (long d : divisors(n)) s += d;
    return s;
}

// Coefficients of the d-th cyclotomic polynomial, low degree first.
inline std::vector<Int> cyclotomic_poly(long d) {
    // start from x^d - 1 and divide out Phi_e for proper divisors e
    std::vector<Int> p(d + 1, Int(0));
    p[0] = -1;
    p[d] = 1;
    for (long e : divisors(d)) {
        if (e == d) continue;
        std::vector<Int> q = cyclotomic_poly(e);
        // exact polynomial division p /= q
        std::vector<Int> quot(p.size() - q.size() + 1, Int(0));
        std::vector<Int> rem = p;
        for (long i = (long)quot.size() - 1; i >= 0; --i) {
            Int c = rem[i + q.size() - 1];  // leading coeff of q is 1
            quot[i] = c;
            if (c == 0) continue;
            for (size_t j = 0; j < q.size(); ++j) rem[i + j] -= c * q[j];
        }
        p = quot;
    }
    return p;
}

inline IMat eval_poly(const std::vector<Int>& coeffs, const IMat& m) {
    long n = m.rows();
    IMat r(n, n);
    for (long i = (long)coeffs.size() - 1; i >= 0; --i) {
        r = r * m;
        for (long k = 0; k < n; ++k) r(k, k) += coeffs[i];
    }
    return r;
}

}  // namespace latvac
