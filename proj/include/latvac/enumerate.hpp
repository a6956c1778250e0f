#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <thread>

#include "latvac/lattice.hpp"

namespace latvac {

// Exact enumeration of x in Z^r with Q(x + shift) <= bound, where Q is the
// quadratic form of a positive definite integer Gram matrix.
//
// Fraction-free completing the square: with d_k the k-th leading principal
// minor of G (d_0 = 1) and w_k the k-th row of the Bareiss elimination stage
// k-1 (so w_kk = d_k),
//
//   Q(y) = sum_{k=1..r} ( sum_{j>=k} w_kj y_j )^2 / (d_{k-1} d_k).
//
// For y = x + s/e all hot-loop quantities are integers: Lam_k = sum w_kj
// (e x_j + s_j) and the scaled allowance T_k = d_k * e^2 * (remaining bound)
// obey T_{k-1} = (d_{k-1} T_k - Lam_k^2) / d_k exactly, with the level
// condition Lam_k^2 <= d_{k-1} T_k. The achieved value e^2 Q(x + s/e) at a
// leaf is B_int - T_0. Everything is computed in exact integer arithmetic;
// a narrow int64/int128 path is used only when the mpz setup certifies that
// no intermediate can overflow it.

namespace detail {

inline __int128 isqrt_wide(__int128 v) {
    if (v <= 0) return 0;
    auto r = (__int128)std::sqrt((double)v);
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

struct EnumSetup {
    long r = 0;
    Int e;                           // shift denominator
    std::vector<Int> s;              // e * shift
    std::vector<Int> d;              // d[0..r], leading principal minors
    std::vector<std::vector<Int>> w; // w[k][j] for j >= k (0-indexed level k)
    Int bound_scaled;                // floor(e^2 * max_norm)
    bool zero_shift = false;
};

inline EnumSetup make_setup(const IMat& gram, const QVec& shift, const Rat& max_norm) {
    EnumSetup st;
    st.r = gram.rows();
    require((long)shift.size() == st.r, "shift length mismatch");
    Int e = 1;
    for (const Rat& c : shift) e = lcm(e, Int(c.get_den()));
    st.e = e;
    st.s.resize(st.r);
    st.zero_shift = true;
    for (long j = 0; j < st.r; ++j) {
        Rat t = Rat(e) * shift[j];
        st.s[j] = t.get_num();
        if (st.s[j] != 0) st.zero_shift = false;
    }
    Rat b = Rat(e * e) * max_norm;
    Int bi;
    mpz_fdiv_q(bi.get_mpz_t(), b.get_num().get_mpz_t(), b.get_den().get_mpz_t());
    st.bound_scaled = bi;

    st.d.assign(st.r + 1, Int(0));
    st.d[0] = 1;
    st.w.resize(st.r);
    IMat b2 = gram;
    for (long k = 0; k < st.r; ++k) {
        require(b2(k, k) > 0, "enumeration requires a positive definite Gram matrix");
        st.d[k + 1] = b2(k, k);
        st.w[k].resize(st.r - k);
        for (long j = k; j < st.r; ++j) st.w[k][j - k] = b2(k, j);
        for (long i = k + 1; i < st.r; ++i)
            for (long j = k + 1; j < st.r; ++j) {
                Int t = b2(k, k) * b2(i, j) - b2(i, k) * b2(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), st.d[k].get_mpz_t());
                b2(i, j) = t;
            }
    }
    return st;
}

// Certify that the int64/int128 runner cannot overflow: all stored values
// fit in int64 and max(d)^2 * (B+1) stays well inside the int128 range.
inline bool fits_small(const EnumSetup& st) {
    const Int lim63("4611686018427387904");  // 2^62
    if (st.bound_scaled > lim63 || st.e > lim63) return false;
    Int maxd = 1;
    for (const Int& v : st.d)
        if (v > maxd) maxd = v;
    for (const auto& row : st.w)
        for (const Int& v : row)
            if (abs(v) > lim63) return false;
    for (const Int& v : st.s)
        if (abs(v) > lim63) return false;
    if (maxd > lim63) return false;
    // d_{k-1} * T_k <= maxd^2 * (B+1); demand a wide margin below 2^120
    Int big = maxd * maxd * (st.bound_scaled + 1);
    Int lim120 = Int(1) << 120;
    if (big * 16 > lim120) return false;
    // per-coordinate |e x_j + s_j| bound times |w| must fit comfortably:
    // rest sums have <= r terms, each |w_kj| * |y_j| with |y_j| bounded via
    // y_j^2 <= e^2 * B * (G^{-1})_{jj} <= B * maxd (crude but safe check)
    Int ymax;
    mpz_sqrt(ymax.get_mpz_t(), Int((st.bound_scaled + 1) * maxd).get_mpz_t());
    ymax += 1;
    Int worst = Int(st.r) * maxd * ymax;
    if (worst > lim63) return false;
    return true;
}

// Leaf visitor: coordinates and the achieved scaled norm e^2 * Q(x + s/e),
// together with the multiplicity (2 when only one of +-x was enumerated).
using LeafFn = std::function<void(const std::vector<long long>&, const Int&, int)>;

template <typename Num, typename Wide>
struct Runner {
    const EnumSetup& st;
    long r;
    Num e;
    std::vector<Num> s;
    std::vector<Num> d;
    std::vector<std::vector<Num>> w;
    Wide bound;

    bool half;                      // enumerate only the +x of each +-x pair
    std::vector<long long> x;
    std::vector<Num> y;             // e * x_j + s_j

    LeafFn leaf;

    explicit Runner(const EnumSetup& setup, bool halve)
        : st(setup), r(setup.r), half(halve), x(setup.r, 0), y(setup.r, Num(0)) {
        e = conv(setup.e);
        s.resize(r);
        d.resize(r + 1);
        for (long j = 0; j < r; ++j) s[j] = conv(setup.s[j]);
        for (long k = 0; k <= r; ++k) d[k] = conv(setup.d[k]);
        w.resize(r);
        for (long k = 0; k < r; ++k) {
            w[k].resize(setup.w[k].size());
            for (size_t j = 0; j < setup.w[k].size(); ++j) w[k][j] = conv(setup.w[k][j]);
        }
        bound = widen(conv(setup.bound_scaled));
    }

    static Num conv(const Int& v) {
        if constexpr (std::is_same_v<Num, Int>) return v;
        else return (Num)v.get_si();
    }
    static Wide widen(const Num& v) { return (Wide)v; }

    static Wide wsqrt(const Wide& v) {
        if constexpr (std::is_same_v<Wide, Int>) {
            if (v < 0) return 0;
            Int r2;
            mpz_sqrt(r2.get_mpz_t(), v.get_mpz_t());
            return r2;
        } else {
            return isqrt_wide(v);
        }
    }

    static Int unscale(const Wide& v) {
        if constexpr (std::is_same_v<Wide, Int>) return v;
        else {
            // reconstruct an mpz from int128
            bool neg = v < 0;
            unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
            Int hi = Int((unsigned long long)(u >> 64));
            Int lo = Int((unsigned long long)(u & 0xffffffffffffffffULL));
            Int res = (hi << 64) + lo;
            return neg ? -res : res;
        }
    }

    // enumerate levels k..0 given allowance T at level k; outer_zero tracks
    // whether all coordinates above k are zero (for the +-x halving)
    void run(long k, Wide T, bool outer_zero) {
        Wide m2 = widen(d[k]) * T;
        Wide m = wsqrt(m2);
        // rest = sum_{j>k} w_kj y_j ; constant part C = w_kk s_k + rest
        Wide rest = 0;
        for (long j = k + 1; j < r; ++j) rest += widen(w[k][j - k]) * widen(y[j]);
        Wide a = widen(w[k][0]) * widen(e);  // w_kk * e > 0
        Wide c = widen(w[k][0]) * widen(s[k]) + rest;
        // a * x + c in [-m, m]
        Wide lo_n = -m - c, hi_n = m - c;
        long long lo = (long long)floordiv(lo_n, a, true);
        long long hi = (long long)floordiv(hi_n, a, false);
        if (half && outer_zero && lo < 0) lo = 0;
        for (long long v = lo; v <= hi; ++v) {
            Wide lam = a * (Wide)v + c;
            Wide num = widen(d[k]) * T - lam * lam;
            if (num < 0) continue;  // guard; should not happen with exact bounds
            x[k] = v;
            y[k] = e * (Num)v + s[k];
            Wide Tn = exact_div(num, widen(d[k + 1]));
            bool oz = outer_zero && v == 0;
            if (k == 0) {
                Int achieved = unscale(bound - Tn);
                leaf(x, achieved, (half && !oz) ? 2 : 1);
            } else {
                run(k - 1, Tn, oz);
            }
        }
    }

    static Wide exact_div(const Wide& a, const Wide& b) {
        if constexpr (std::is_same_v<Wide, Int>) {
            Int q;
            mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            return q;
        } else {
            return a / b;
        }
    }

    // floor or ceil of a rational n/a with a > 0
    static Wide floordiv(const Wide& n, const Wide& a, bool ceil) {
        if constexpr (std::is_same_v<Wide, Int>) {
            Int q;
            if (ceil) mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), a.get_mpz_t());
            else mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), a.get_mpz_t());
            return q;
        } else {
            Wide q = n / a, r2 = n % a;
            if (r2 != 0) {
                if (ceil && n > 0) ++q;
                if (!ceil && n < 0) --q;
            }
            return q;
        }
    }
};

inline long env_thread_cap() {
    const char* v = std::getenv("LATVAC_THREADS");
    if (!v) return 0;
    long n = std::atol(v);
    return n > 0 ? n : 1;
}

}  // namespace detail

// counts[V] = number of x with e^2 * Q(x + shift) = V, for V = 0..floor(e^2*B)
struct NormHistogram {
    Int e2;
    std::vector<Int> counts;
};

// Histogram of e^2-scaled norms over the coset shift + Z^r. Deterministic;
// internally may split the top enumeration level across threads (counts are
// merged by plain addition, so the result does not depend on the split).
inline NormHistogram norm_histogram(const Lattice& l, const QVec& shift, const Rat& max_norm) {
    require(is_positive_definite(l), "lattice is not positive definite");
    NormHistogram h;
    if (l.rank() == 0) {
        h.e2 = 1;
        h.counts.assign(max_norm >= 0 ? 1 : 0, Int(0));
        if (max_norm >= 0) h.counts[0] = 1;
        return h;
    }
    auto st = detail::make_setup(l.gram(), shift, max_norm);
    h.e2 = st.e * st.e;
    if (st.bound_scaled < 0) return h;
    require(st.bound_scaled < 1000000, "norm bound too large for histogram");
    long nb = st.bound_scaled.get_si() + 1;
    h.counts.assign(nb, Int(0));

    bool small = detail::fits_small(st);
    long hw = (long)std::thread::hardware_concurrency();
    long cap = detail::env_thread_cap();
    long threads = cap > 0 ? std::min(cap, hw > 0 ? hw : 1) : std::min<long>(hw > 0 ? hw : 1, 8);

    auto run_serial = [&](auto runner_tag) {
        using R = decltype(runner_tag);
        R runner(st, st.zero_shift);
        std::vector<unsigned long long> local(nb, 0);
        runner.leaf = [&](const std::vector<long long>&, const Int& v, int mult) {
            local[v.get_si()] += mult;
        };
        runner.run(st.r - 1, runner.bound * R::widen(runner.d[st.r]), true);
        for (long i = 0; i < nb; ++i) h.counts[i] += Int(local[i]);
    };

    if (!small) {
        run_serial(detail::Runner<Int, Int>(st, st.zero_shift));
        return h;
    }
    if (threads <= 1 || st.r < 8) {
        run_serial(detail::Runner<long long, __int128>(st, st.zero_shift));
        return h;
    }

    // parallel: partition the values of the outermost coordinate
    using R = detail::Runner<long long, __int128>;
    R probe(st, st.zero_shift);
    long k = st.r - 1;
    __int128 T = probe.bound * (__int128)probe.d[st.r];
    __int128 m = R::wsqrt((__int128)probe.d[k] * T);
    __int128 a = (__int128)probe.w[k][0] * probe.e;
    __int128 c = (__int128)probe.w[k][0] * probe.s[k];
    long long lo = (long long)R::floordiv(-m - c, a, true);
    long long hi = (long long)R::floordiv(m - c, a, false);
    if (st.zero_shift && lo < 0) lo = 0;
    if (hi < lo) return h;
    std::atomic<long long> next(lo);
    std::vector<std::vector<unsigned long long>> buckets(threads,
                                                         std::vector<unsigned long long>(nb, 0));
    auto worker = [&](long t) {
        R runner(st, st.zero_shift);
        runner.leaf = [&](const std::vector<long long>&, const Int& v, int mult) {
            buckets[t][v.get_si()] += mult;
        };
        while (true) {
            long long v = next.fetch_add(1);
            if (v > hi) break;
            __int128 lam = a * (__int128)v + c;
            __int128 num = (__int128)runner.d[k] * T - lam * lam;
            if (num < 0) continue;
            runner.x[k] = v;
            runner.y[k] = runner.e * v + runner.s[k];
            __int128 Tn = num / (__int128)runner.d[k + 1];
            bool oz = st.zero_shift && v == 0;
            if (k == 0) {
                Int achieved = R::unscale(runner.bound - Tn);
                buckets[t][achieved.get_si()] += (st.zero_shift && !oz) ? 2 : 1;
            } else {
                runner.run(k - 1, Tn, oz);
            }
        }
    };
    std::vector<std::thread> pool;
    for (long t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
    for (long t = 0; t < threads; ++t)
        for (long i = 0; i < nb; ++i) h.counts[i] += Int(buckets[t][i]);
    return h;
}

inline std::map<Rat, Int> norm_counts(const Lattice& l, const QVec& shift, const Rat& max_norm) {
    NormHistogram h = norm_histogram(l, shift, max_norm);
    std::map<Rat, Int> out;
    for (size_t v = 0; v < h.counts.size(); ++v) {
        if (h.counts[v] == 0) continue;
        Rat n(Int(v));
        n /= Rat(h.e2);
        n.canonicalize();
        out[n] = h.counts[v];
    }
    return out;
}

// All x in Z^r with Q(x + shift) <= max_norm, with exact norms, sorted
// lexicographically by coordinates. Single-threaded.
inline std::vector<std::pair<QVec, Rat>> short_vectors(const Lattice& l, const QVec& shift,
                                                       const Rat& max_norm) {
    require(is_positive_definite(l), "lattice is not positive definite");
    std::vector<std::pair<QVec, Rat>> out;
    if (l.rank() == 0) {
        if (max_norm >= 0) out.push_back({QVec{}, Rat(0)});
        return out;
    }
    auto st = detail::make_setup(l.gram(), shift, max_norm);
    if (st.bound_scaled < 0) return out;
    Rat e2 = Rat(st.e * st.e);

    auto emit = [&](const std::vector<long long>& x, const Int& v, int mult) {
        QVec cx(l.rank());
        for (long j = 0; j < l.rank(); ++j) cx[j] = Rat((long)x[j]) + shift[j];
        Rat n = Rat(v) / e2;
        n.canonicalize();
        out.push_back({cx, n});
        if (mult == 2) {
            QVec nx(l.rank());
            for (long j = 0; j < l.rank(); ++j) nx[j] = -cx[j];
            out.push_back({nx, n});
        }
    };
    if (detail::fits_small(st)) {
        detail::Runner<long long, __int128> r(st, st.zero_shift);
        r.leaf = emit;
        r.run(st.r - 1, r.bound * detail::Runner<long long, __int128>::widen(r.d[st.r]), true);
    } else {
        detail::Runner<Int, Int> r(st, st.zero_shift);
        r.leaf = emit;
        r.run(st.r - 1, r.bound * r.d[st.r], true);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// All lattice vectors of exact norm m (m even and nonnegative), lexicographic.
inline std::vector<QVec> vectors_of_norm(const Lattice& l, const Int& m) {
    require(m >= 0, "norm must be nonnegative");
    require(is_positive_definite(l), "lattice is not positive definite");
    QVec zero(l.rank(), Rat(0));
    std::vector<QVec> out;
    for (auto& [v, n] : short_vectors(l, zero, Rat(m)))
        if (n == Rat(m)) out.push_back(v);
    return out;
}

inline Int count_vectors_of_norm(const Lattice& l, const Int& m) {
    QVec zero(l.rank(), Rat(0));
    NormHistogram h = norm_histogram(l, zero, Rat(m));
    require(h.e2 == 1, "unexpected scale");
    if (m.get_si() >= (long)h.counts.size()) return 0;
    return h.counts[m.get_si()];
}

}  // namespace latvac
