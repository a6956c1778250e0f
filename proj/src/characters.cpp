#include "latvac/characters.hpp"

#include <sstream>

#include "latvac/cyclotomic.hpp"

namespace latvac {

std::string QSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (long k = 0; k < terms(); ++k) {
        const Rat& c = coeffs()[k];
        if (c == 0) continue;
        Rat e = exponent_at(k);
        Rat ac = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool unit = ac == 1;
        if (e == 0) {
            os << ac.get_str();
        } else {
            if (!unit) os << ac.get_str() << "*";
            if (e == 1) os << "q";
            else if (e.get_den() == 1 && e > 0) os << "q^" << e.get_str();
            else os << "q^(" << e.get_str() << ")";
        }
    }
    if (first) os << "0";
    os << " + O(q^" << (known_until().get_den() == 1 ? known_until().get_str()
                                                     : "(" + known_until().get_str() + ")")
       << ")";
    return os.str();
}

QSeries eta_power(long r, long prec) {
    require(prec >= 1, "precision must be at least 1");
    // P = prod_{n >= 1} (1 - q^n), truncated multiplication
    std::vector<Rat> p(prec, Rat(0));
    p[0] = 1;
    for (long n = 1; n < prec; ++n) {
        // multiply by (1 - q^n) in place
        for (long k = prec - 1; k >= n; --k) p[k] -= p[k - n];
    }
    QSeries base(Rat(0), 1, std::move(p));
    long e = r >= 0 ? r : -r;
    QSeries powed = base.pow(e);
    if (r < 0) powed = powed.inverse();
    return powed.shift(Rat(r, 24));
}

QSeries theta_series(const Lattice& l, const QVec& mu, long prec) {
    require(prec >= 1, "precision must be at least 1");
    require(is_even(l), "theta series needs an even lattice");
    require(is_positive_definite(l), "theta series needs a positive definite lattice");
    require(in_dual(l, mu), "coset representative is not in the dual lattice");
    Rat qmu = l.norm(mu) / 2;
    Rat off = qmu - Rat(Int(qmu.get_num() / qmu.get_den()));
    if (off < 0) off += 1;
    off.canonicalize();
    long denom = (long)off.get_den().get_si();
    Rat max_norm = 2 * (off + (prec - 1));
    NormHistogram h = norm_histogram(l, mu, max_norm);
    std::vector<Rat> coeffs((size_t)prec * denom, Rat(0));
    for (size_t v = 0; v < h.counts.size(); ++v) {
        if (h.counts[v] == 0) continue;
        Rat norm = Rat(Int(v)) / Rat(h.e2);
        Rat expo = norm / 2;
        Rat idx = (expo - off) * denom;
        idx.canonicalize();
        require(idx.get_den() == 1 && idx >= 0, "theta exponent off the expected grid");
        long i = (long)idx.get_num().get_si();
        if (i < (long)coeffs.size()) coeffs[i] += Rat(h.counts[v]);
    }
    return QSeries(off, denom, std::move(coeffs));
}

QSeries module_character(const Lattice& l, const QVec& mu, long prec) {
    QSeries th = theta_series(l, mu, prec);
    QSeries eta_inv = eta_power(-(long)l.rank(), prec + 1);
    return th * eta_inv;
}

QSeries c24_character(long dim_v1, long prec) {
    require(prec >= 1, "precision must be at least 1");
    long n = prec + 1;
    // E4 = 1 + 240 sum sigma_3(k) q^k
    std::vector<Rat> e4(n, Rat(0));
    e4[0] = 1;
    for (long k = 1; k < n; ++k) {
        long s3 = 0;
        for (long d : divisors(k)) s3 += d * d * d;
        e4[k] = Rat(240) * s3;
    }
    QSeries eisen4(Rat(0), 1, std::move(e4));
    QSeries j = eisen4.pow(3) * eta_power(-24, n);
    QSeries out = j + QSeries::constant(Rat(dim_v1 - 744), n);
    // constant term is dim V1; everything above q^0 is independent of it
    require(out.coeff(Rat(0)) == dim_v1, "c = 24 character has wrong constant term");
    require(out.coeff(Rat(-1)) == 1, "c = 24 character must start at q^{-1}");
    return out.truncate(prec);
}

ModularData zhu_T(const FinQuadForm& d, long rank) {
    Int sz = d.size();
    require(sz <= 4096, "discriminant form too large for matrix output");
    long n = sz.get_si();
    ModularData t;
    t.n = n;
    t.entries.assign((size_t)n * n, ScaledPhase{});
    Phase shift = phase_mod1(Rat(-rank, 24));
    auto elems = d.elements();
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j)
            if (i != j) t.at(i, j) = ScaledPhase{Phase(), Rat(0), 1};
        t.at(i, i) = ScaledPhase{d.q(elems[i]) + shift, Rat(1), 1};
    }
    return t;
}

ModularData zhu_S(const FinQuadForm& d) {
    Int sz = d.size();
    require(sz <= 4096, "discriminant form too large for matrix output");
    long n = sz.get_si();
    require(sz.fits_slong_p(), "group too large");
    ModularData s;
    s.n = n;
    s.entries.assign((size_t)n * n, ScaledPhase{});
    auto elems = d.elements();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            s.at(i, j) = ScaledPhase{-d.b(elems[i], elems[j]), Rat(1), n};
    return s;
}

bool zhu_relations_exact(const FinQuadForm& d, long rank) {
    auto elems = d.elements();
    long n = (long)elems.size();
    long long m = 24;
    for (const DFElement& a : elems) {
        m = std::lcm(m, d.q(a).den());
        for (const DFElement& b2 : elems) m = std::lcm(m, d.b(a, b2).den());
    }
    CycRing ring((long)m);
    using Elt = CycRing::Elt;
    // permutation alpha -> -alpha
    std::vector<long> negperm(n);
    for (long i = 0; i < n; ++i) {
        Int idx = d.index_of(d.neg(elems[i]));
        negperm[i] = idx.get_si();
    }
    // Stilde: root matrix of exponents -b(a, b); A = Stilde * Ttilde
    std::vector<Elt> st((size_t)n * n, ring.zero()), am((size_t)n * n, ring.zero());
    Phase shift = phase_mod1(Rat(-rank, 24));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Phase sb = -d.b(elems[i], elems[j]);
            st[i * n + j] = ring.root(sb);
            am[i * n + j] = ring.root(sb + d.q(elems[j]) + shift);
        }
    auto matmul = [&](const std::vector<Elt>& x, const std::vector<Elt>& y) {
        std::vector<Elt> r((size_t)n * n, ring.zero());
        for (long i = 0; i < n; ++i)
            for (long k = 0; k < n; ++k)
                for (long j = 0; j < n; ++j)
                    r[i * n + j] = CycRing::add(r[i * n + j], ring.mul(x[i * n + k], y[k * n + j]));
        return r;
    };
    // S^2 = |D| * P_neg (in the scaled world Stilde^2 = |D| P)
    std::vector<Elt> s2 = matmul(st, st);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Elt expect = (j == negperm[i]) ? CycRing::scale(ring.one(), n) : ring.zero();
            if (!ring.equal(s2[i * n + j], expect)) return false;
        }
    // S^4 = |D|^2 * Id follows by applying the permutation twice
    for (long i = 0; i < n; ++i)
        if (negperm[negperm[i]] != i) return false;
    // (S T)^3 = sqrt(|D|) * Stilde^2 in the scaled world
    std::vector<Elt> a2 = matmul(am, am);
    std::vector<Elt> a3 = matmul(a2, am);
    Elt w = ring.sqrt_int(Int(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Elt expect = (j == negperm[i]) ? CycRing::scale(w, n) : ring.zero();
            if (!ring.equal(a3[i * n + j], expect)) return false;
        }
    return true;
}

bool zhu_relations_numeric(const FinQuadForm& d, long rank, double tol) {
    ModularData s = zhu_S(d), t = zhu_T(d, rank);
    long n = s.n;
    auto elems = d.elements();
    std::vector<std::complex<double>> sc((size_t)n * n), tc((size_t)n * n);
    for (long i = 0; i < n * n; ++i) {
        sc[i] = s.entries[i].to_complex();
        tc[i] = t.entries[i].to_complex();
    }
    auto matmul = [&](const std::vector<std::complex<double>>& x,
                      const std::vector<std::complex<double>>& y) {
        std::vector<std::complex<double>> r((size_t)n * n, 0.0);
        for (long i = 0; i < n; ++i)
            for (long k = 0; k < n; ++k) {
                if (std::abs(x[i * n + k]) < 1e-15) continue;
                for (long j = 0; j < n; ++j) r[i * n + j] += x[i * n + k] * y[k * n + j];
            }
        return r;
    };
    std::vector<long> negperm(n);
    for (long i = 0; i < n; ++i) negperm[i] = d.index_of(d.neg(elems[i])).get_si();
    auto s2 = matmul(sc, sc);
    double err = 0;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            err = std::max(err, std::abs(s2[i * n + j] - (j == negperm[i] ? 1.0 : 0.0)));
    auto s4 = matmul(s2, s2);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            err = std::max(err, std::abs(s4[i * n + j] - (i == j ? 1.0 : 0.0)));
    auto st = matmul(sc, tc);
    auto st3 = matmul(matmul(st, st), st);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            err = std::max(err, std::abs(st3[i * n + j] - s2[i * n + j]));
    return err <= tol;
}

}  // namespace latvac
