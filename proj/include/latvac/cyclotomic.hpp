#pragma once

#include <cstdint>
#include <vector>

#include "latvac/arith.hpp"
#include "latvac/phase.hpp"

namespace latvac {

// Z[x]/(x^M - 1) with an exact zero test for the projection to Q(zeta_M).
//
// An element z is zero in Q(zeta_M) iff Phi_M | z, which is tested by
// multiplying with Psi_M = (x^M - 1)/Phi_M (the product of all other
// cyclotomic factors): z vanishes iff Psi_M * z = 0 in Z[x]/(x^M - 1).
// For the moduli needed by Gauss sums, M = 2^c or M = 8 p^k, Psi_M is the
// sparse polynomial x^{M/2} - 1 resp. (x^{4p^k} - 1)(x^{4p^{k-1}} + 1);
// otherwise Psi_M is obtained by one exact division.
//
// Coefficients are int64 with overflow guards; all sums in scope are tiny
// compared to the 2^62 limit.
class CycRing {
  public:
    using Elt = std::vector<long long>;

    explicit CycRing(long m) : m_(m) {
        require(m >= 1, "cyclotomic modulus must be positive");
        build_psi();
    }

    long modulus() const { return m_; }

    Elt zero() const { return Elt(m_, 0); }
    Elt one() const {
        Elt e = zero();
        e[0] = 1;
        return e;
    }

    // e^{2 pi i k / M}
    Elt root_raw(long long k) const {
        Elt e = zero();
        e[imod(k)] = 1;
        return e;
    }

    Elt root(const Phase& p) const {
        require(m_ % p.den() == 0, "phase denominator does not divide the modulus");
        return root_raw(p.num() * (m_ / p.den()));
    }

    void add_root(Elt& e, const Phase& p, long long count = 1) const {
        require(m_ % p.den() == 0, "phase denominator does not divide the modulus");
        long idx = imod(p.num() * (m_ / p.den()));
        e[idx] = checked_add(e[idx], count);
    }

    static Elt add(const Elt& a, const Elt& b) {
        Elt r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
        return r;
    }
    static Elt sub(const Elt& a, const Elt& b) {
        Elt r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], -b[i]);
        return r;
    }
    static Elt scale(const Elt& a, long long c) {
        Elt r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(a[i], c);
        return r;
    }

    Elt shift(const Elt& a, long long k) const {
        Elt r = zero();
        long s = imod(k);
        for (long i = 0; i < m_; ++i) r[(i + s) % m_] = a[i];
        return r;
    }

    Elt mul(const Elt& a, const Elt& b) const {
        Elt r = zero();
        std::vector<__int128> acc(m_, 0);
        for (long i = 0; i < m_; ++i) {
            if (a[i] == 0) continue;
            for (long j = 0; j < m_; ++j) {
                if (b[j] == 0) continue;
                long k = i + j;
                if (k >= m_) k -= m_;
                acc[k] += (__int128)a[i] * b[j];
            }
        }
        for (long i = 0; i < m_; ++i) r[i] = narrow(acc[i]);
        return r;
    }

    // complex conjugation: zeta -> zeta^{-1}
    Elt conj(const Elt& a) const {
        Elt r = zero();
        for (long i = 0; i < m_; ++i) r[(m_ - i) % m_] = a[i];
        return r;
    }

    bool is_zero(const Elt& a) const {
        std::vector<__int128> acc(m_, 0);
        for (auto& [e, c] : psi_) {
            for (long i = 0; i < m_; ++i) {
                if (a[i] == 0) continue;
                long k = i + e;
                if (k >= m_) k -= m_;
                acc[k] += (__int128)c * a[i];
            }
        }
        for (long i = 0; i < m_; ++i)
            if (acc[i] != 0) return false;
        return true;
    }

    bool equal(const Elt& a, const Elt& b) const { return is_zero(sub(a, b)); }

    // exact cyclotomic representative of sqrt(n) for a positive integer n.
    // Uses sqrt(2) = zeta_8 + zeta_8^{-1} and the quadratic Gauss sum
    // g_p = sum_t zeta_p^{t^2}, which equals sqrt(p) for p = 1 mod 4 and
    // i*sqrt(p) for p = 3 mod 4. Requires 8 | M and p | M for every odd
    // prime with odd multiplicity in n.
    Elt sqrt_int(const Int& n) const {
        require(n >= 1, "sqrt of nonpositive integer");
        Int sq = 1, rem = n;
        std::vector<long> odd_primes;
        bool has2 = false;
        Int nn = n;
        for (long p = 2; Int(p) * p <= nn; ++p) {
            int e = 0;
            while (nn % p == 0) { nn /= p; ++e; }
            for (int i = 0; i < e / 2; ++i) sq *= p;
            if (e % 2) { if (p == 2) has2 = true; else odd_primes.push_back(p); }
        }
        if (nn > 1) {
            require(nn.fits_slong_p(), "squarefree part too large");
            odd_primes.push_back(nn.get_si());
        }
        require(sq.fits_slong_p(), "square part too large");
        Elt r = scale(one(), sq.get_si());
        if (has2) {
            require(m_ % 8 == 0, "sqrt(2) needs 8 | M");
            Elt s2 = add(root_raw(m_ / 8), root_raw(m_ - m_ / 8));
            r = mul(r, s2);
        }
        for (long p : odd_primes) {
            require(m_ % p == 0 && m_ % 4 == 0, "sqrt(p) needs 4p | M");
            Elt g = zero();
            for (long long t = 0; t < p; ++t) {
                long idx = imod(((t * t) % p) * (m_ / p));
                g[idx] = checked_add(g[idx], 1);
            }
            if (p % 4 == 3) g = shift(g, 3 * m_ / 4);  // divide by i
            r = mul(r, g);
        }
        return r;
    }

    std::complex<double> to_complex(const Elt& a) const {
        std::complex<double> s = 0;
        for (long i = 0; i < m_; ++i) {
            if (a[i] == 0) continue;
            double t = 2.0 * 3.14159265358979323846 * (double)i / (double)m_;
            s += (double)a[i] * std::complex<double>(std::cos(t), std::sin(t));
        }
        return s;
    }

  private:
    long imod(long long k) const {
        k %= m_;
        if (k < 0) k += m_;
        return (long)k;
    }

    static long long checked_add(long long a, long long b) {
        long long r;
        require(!__builtin_add_overflow(a, b, &r), "cyclotomic coefficient overflow");
        return r;
    }
    static long long checked_mul(long long a, long long b) {
        long long r;
        require(!__builtin_mul_overflow(a, b, &r), "cyclotomic coefficient overflow");
        return r;
    }
    static long long narrow(__int128 v) {
        require(v <= INT64_MAX / 2 && v >= INT64_MIN / 2, "cyclotomic coefficient overflow");
        return (long long)v;
    }

    void build_psi() {
        psi_.clear();
        if (m_ == 1) {  // Phi_1 = x - 1 = x^M - 1; Psi = 1
            psi_.push_back({0, 1});
            return;
        }
        // power of two: Psi = x^{M/2} - 1
        if ((m_ & (m_ - 1)) == 0) {
            psi_.push_back({m_ / 2, 1});
            psi_.push_back({0, -1});
            return;
        }
        // M = 8 p^k, p an odd prime:
        // Psi = (x^{4p^k} - 1) * Phi_8(x^{p^{k-1}}) = (x^{M/2} - 1)(x^{M/(2p)} + 1)
        {
            long rest = m_;
            int twos = 0;
            while (rest % 2 == 0) { rest /= 2; ++twos; }
            if (twos == 3 && rest > 1 && factorize(rest).size() == 1) {
                long p = factorize(rest).begin()->first;
                long a = m_ / 2;        // 4 p^k
                long b = m_ / (2 * p);  // 4 p^{k-1}
                psi_.push_back({a + b, 1});
                psi_.push_back({a, 1});
                psi_.push_back({b, -1});
                psi_.push_back({0, -1});
                return;
            }
        }
        // general case: divide x^M - 1 by Phi_M
        require(m_ <= 8192, "cyclotomic modulus too large for dense Psi");
        std::vector<Int> phi = cyclotomic_poly(m_);
        long dp = (long)phi.size() - 1;
        std::vector<Int> rem(m_ + 1, Int(0));
        rem[0] = -1;
        rem[m_] = 1;
        std::vector<Int> quot(m_ - dp + 1, Int(0));
        for (long i = m_ - dp; i >= 0; --i) {
            Int c = rem[i + dp];
            quot[i] = c;
            if (c == 0) continue;
            for (long j = 0; j <= dp; ++j) rem[i + j] -= c * phi[j];
        }
        for (long i = 0; i <= m_; ++i) require(rem[i] == 0, "inexact cyclotomic division");
        for (long i = 0; i < (long)quot.size(); ++i) {
            if (quot[i] == 0) continue;
            require(quot[i].fits_slong_p(), "Psi coefficient overflow");
            psi_.push_back({i, quot[i].get_si()});
        }
    }

    long m_;
    std::vector<std::pair<long, long long>> psi_;  // sparse (exponent, coeff)
};

}  // namespace latvac
