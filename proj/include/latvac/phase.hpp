#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <string>

#include "latvac/intmat.hpp"

namespace latvac {

// An element of Q/Z, stored as a reduced fraction num/den in [0, 1).
// All discriminant-form and cocycle phases go through this type, so phase
// arithmetic is exact; complex values appear only in float projections.
class Phase {
  public:
    Phase() : num_(0), den_(1) {}
    Phase(long long num, long long den) { set(num, den); }

    static Phase from_rat(const Rat& r) {
        require(r.get_num().fits_slong_p() && r.get_den().fits_slong_p(),
                "phase denominator too large");
        return Phase(r.get_num().get_si(), r.get_den().get_si());
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    Phase operator+(const Phase& o) const {
        long long g = std::gcd(den_, o.den_);
        long long l = den_ / g * o.den_;
        __int128 n = (__int128)num_ * (l / den_) + (__int128)o.num_ * (l / o.den_);
        return Phase(normalize(n, l), l);
    }
    Phase operator-(const Phase& o) const { return *this + (-o); }
    Phase operator-() const { return num_ == 0 ? Phase() : Phase(den_ - num_, den_); }

    // integer multiple k * phase
    Phase times(long long k) const {
        __int128 kk = (__int128)(k % den_);
        __int128 n = kk * num_;
        return Phase(normalize(n, den_), den_);
    }
    Phase times(const Int& k) const {
        Int r = k % den_;
        return times(r.get_si());
    }

    bool operator==(const Phase& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Phase& o) const { return !(*this == o); }
    bool operator<(const Phase& o) const {
        return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
    }

    Rat to_rat() const { return Rat(num_, den_); }
    std::complex<double> to_complex() const {
        double t = 2.0 * 3.14159265358979323846 * (double)num_ / (double)den_;
        return {std::cos(t), std::sin(t)};
    }

    std::string str() const {
        if (num_ == 0) return "0";
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    static long long normalize(__int128 n, long long d) {
        n %= d;
        if (n < 0) n += d;
        return (long long)n;
    }
    void set(long long num, long long den) {
        require(den > 0, "phase denominator must be positive");
        num %= den;
        if (num < 0) num += den;
        long long g = std::gcd(num, den);
        if (g == 0) g = 1;
        num_ = num / g;
        den_ = den / g;
        if (num_ == 0) den_ = 1;
    }
    long long num_, den_;
};

// q/Z phase from an exact rational, reduced mod 1
inline Phase phase_mod1(const Rat& r) {
    Rat m = r - Rat(Int(r.get_num() / r.get_den()));
    if (m < 0) m += 1;
    m.canonicalize();
    return Phase::from_rat(m);
}

}  // namespace latvac
