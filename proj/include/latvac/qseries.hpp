#pragma once

#include <string>

#include "latvac/intmat.hpp"

namespace latvac {

// Truncated exact Laurent series in q^{1/denom}: coeffs[k] multiplies
// q^{offset + k/denom}. offset * denom is an integer. The number of stored
// coefficients is the truncation order; arithmetic never claims terms beyond
// what both operands know.
class QSeries {
  public:
    QSeries() : offset_(0), denom_(1) {}
    QSeries(Rat offset, long denom, std::vector<Rat> coeffs)
        : offset_(std::move(offset)), denom_(denom), coeffs_(std::move(coeffs)) {
        require(denom_ >= 1, "denominator must be positive");
        Rat t = offset_ * denom_;
        require(t.get_den() == 1, "offset must be a multiple of 1/denom");
    }

    static QSeries constant(const Rat& c, long terms) {
        std::vector<Rat> v(terms, Rat(0));
        if (terms > 0) v[0] = c;
        return QSeries(Rat(0), 1, std::move(v));
    }

    const Rat& offset() const { return offset_; }
    long denom() const { return denom_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    long terms() const { return (long)coeffs_.size(); }

    Rat exponent_at(long k) const { return offset_ + Rat(k, denom_); }

    // exponent strictly below which coefficients are known
    Rat known_until() const { return offset_ + Rat(terms(), denom_); }

    // coefficient at a rational exponent; throws if beyond the truncation
    Rat coeff(const Rat& e) const {
        Rat idx = (e - offset_) * denom_;
        require(idx.get_den() == 1, "exponent not on the series grid");
        Int i = idx.get_num();
        if (i < 0) return 0;
        require(i < terms(), "coefficient beyond truncation");
        return coeffs_[i.get_ui()];
    }

    // re-express on a finer grid (newDenom a multiple of denom)
    QSeries rebase(long new_denom) const {
        require(new_denom % denom_ == 0, "rebase needs a multiple of the denominator");
        long f = new_denom / denom_;
        if (f == 1) return *this;
        std::vector<Rat> c((size_t)terms() * f, Rat(0));
        for (long k = 0; k < terms(); ++k) c[(size_t)k * f] = coeffs_[k];
        // known strictly below offset + terms/denom; on the finer grid that is
        // terms*f slots starting at the same offset
        return QSeries(offset_, new_denom, std::move(c));
    }

    QSeries truncate(long nterms) const {
        std::vector<Rat> c(coeffs_.begin(), coeffs_.begin() + std::min<long>(nterms, terms()));
        return QSeries(offset_, denom_, std::move(c));
    }

    QSeries shift(const Rat& dq) const {  // multiply by q^{dq}
        Rat no = offset_ + dq;
        long d = denom_;
        Rat t = no * d;
        if (t.get_den() != 1) {
            long f = (long)t.get_den().get_si();
            return rebase(d * f).shift(dq);
        }
        return QSeries(no, d, coeffs_);
    }

    QSeries operator*(const QSeries& o) const {
        long d = std::lcm(denom_, o.denom());
        QSeries a = rebase(d), b = o.rebase(d);
        long n = std::min(a.terms(), b.terms());
        std::vector<Rat> c(n, Rat(0));
        for (long i = 0; i < std::min<long>(a.terms(), n); ++i) {
            if (a.coeffs()[i] == 0) continue;
            long jmax = std::min<long>(b.terms(), n - i);
            for (long j = 0; j < jmax; ++j) {
                if (b.coeffs()[j] == 0) continue;
                c[i + j] += a.coeffs()[i] * b.coeffs()[j];
            }
        }
        return QSeries(a.offset() + b.offset(), d, std::move(c));
    }

    QSeries operator+(const QSeries& o) const { return combine(o, 1); }
    QSeries operator-(const QSeries& o) const { return combine(o, -1); }

    QSeries scale(const Rat& c) const {
        std::vector<Rat> v = coeffs_;
        for (Rat& x : v) x *= c;
        return QSeries(offset_, denom_, std::move(v));
    }

    // multiplicative inverse; leading coefficient must be nonzero
    QSeries inverse() const {
        require(terms() > 0 && coeffs_[0] != 0, "series inverse needs a unit leading term");
        long n = terms();
        std::vector<Rat> c(n, Rat(0));
        c[0] = Rat(1) / coeffs_[0];
        for (long k = 1; k < n; ++k) {
            Rat s = 0;
            for (long i = 1; i <= k; ++i) s += coeffs_[i] * c[k - i];
            c[k] = -s / coeffs_[0];
        }
        return QSeries(-offset_, denom_, std::move(c));
    }

    QSeries pow(long e) const {
        require(e >= 0, "pow expects a nonnegative exponent; use inverse() first");
        QSeries r = QSeries(Rat(0), denom_, std::vector<Rat>(coeffs_.size(), Rat(0)));
        if (!r.coeffs_.empty()) r.coeffs_[0] = 1;
        QSeries base = *this;
        long ee = e;
        while (ee > 0) {
            if (ee & 1) r = r * base;
            if (ee >>= 1) base = base * base;
        }
        // r currently carries offset 0 from the seed; fix the offset exactly
        return QSeries(offset_ * e, r.denom(), r.coeffs());
    }

    bool agrees_with(const QSeries& o) const {
        // equality on the overlap of known ranges
        long d = std::lcm(denom_, o.denom());
        QSeries a = rebase(d), b = o.rebase(d);
        Rat lo = std::min(a.offset(), b.offset());
        Rat hi = std::min(a.known_until(), b.known_until());
        for (Rat e = lo; e < hi; e += Rat(1, d)) {
            Rat ca = (e < a.offset()) ? Rat(0) : a.coeff(e);
            Rat cb = (e < b.offset()) ? Rat(0) : b.coeff(e);
            if (ca != cb) return false;
        }
        return true;
    }

    std::string str() const;

  private:
    QSeries combine(const QSeries& o, int sign) const {
        long d = std::lcm(denom_, o.denom());
        QSeries a = rebase(d), b = o.rebase(d);
        Rat lo = std::min(a.offset(), b.offset());
        Rat hi = std::min(a.known_until(), b.known_until());
        Rat cnt = (hi - lo) * d;
        require(cnt.get_den() == 1, "grid mismatch");
        long n = std::max<long>(0, (long)cnt.get_num().get_si());
        std::vector<Rat> c(n, Rat(0));
        for (long k = 0; k < n; ++k) {
            Rat e = lo + Rat(k, d);
            Rat ca = (e < a.offset() || e >= a.known_until()) ? Rat(0) : a.coeff(e);
            Rat cb = (e < b.offset() || e >= b.known_until()) ? Rat(0) : b.coeff(e);
            c[k] = sign > 0 ? ca + cb : ca - cb;
        }
        return QSeries(lo, d, std::move(c));
    }

    Rat offset_;
    long denom_;
    std::vector<Rat> coeffs_;
};

}  // namespace latvac
