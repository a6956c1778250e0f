#include "latvac/discform.hpp"

#include <algorithm>
#include <bit>

#include "latvac/cyclotomic.hpp"

namespace latvac {

FinQuadForm::FinQuadForm(std::vector<long long> orders, std::vector<Phase> q_gen,
                         std::vector<std::vector<Phase>> b_gen, std::vector<QVec> lifts)
    : orders_(std::move(orders)), qgen_(std::move(q_gen)), bgen_(std::move(b_gen)),
      lifts_(std::move(lifts)) {
    long k = (long)orders_.size();
    require((long)qgen_.size() == k, "q_gen size mismatch");
    require((long)bgen_.size() == k, "b_gen size mismatch");
    for (auto& row : bgen_) require((long)row.size() == k, "b_gen row size mismatch");
    for (long i = 0; i + 1 < k; ++i)
        require(orders_[i + 1] % orders_[i] == 0, "orders must form a divisibility chain");
    for (long i = 0; i < k; ++i) {
        require(orders_[i] > 1, "orders must exceed 1");
        bgen_[i][i] = qgen_[i] + qgen_[i];  // b(g,g) = 2 q(g)
        for (long j = 0; j < i; ++j) require(bgen_[i][j] == bgen_[j][i], "b_gen not symmetric");
    }
    validate();
}

void FinQuadForm::validate() const {
    long k = ngens();
    for (long i = 0; i < k; ++i) {
        require(qgen_[i].times(orders_[i] * orders_[i]).is_zero(),
                "q(g_i) is not well defined: d_i^2 q(g_i) != 0");
        for (long j = 0; j < k; ++j)
            require(bgen_[i][j].times(orders_[i]).is_zero(),
                    "b(g_i, g_j) is not well defined: d_i b(g_i, g_j) != 0");
    }
}

DFElement FinQuadForm::reduce(std::vector<long long> c) const {
    require(c.size() == orders_.size(), "element length mismatch");
    for (size_t i = 0; i < c.size(); ++i) {
        c[i] %= orders_[i];
        if (c[i] < 0) c[i] += orders_[i];
    }
    return c;
}

DFElement FinQuadForm::add(const DFElement& a, const DFElement& b) const {
    DFElement c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return reduce(std::move(c));
}

DFElement FinQuadForm::neg(const DFElement& a) const {
    DFElement c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return reduce(std::move(c));
}

DFElement FinQuadForm::smul(long long k, const DFElement& a) const {
    DFElement c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = (k % orders_[i]) * a[i];
    return reduce(std::move(c));
}

long long FinQuadForm::elem_order(const DFElement& a) const {
    long long o = 1;
    for (size_t i = 0; i < a.size(); ++i) {
        long long oi = orders_[i] / std::gcd(a[i], orders_[i]);
        o = std::lcm(o, oi);
    }
    return o;
}

Phase FinQuadForm::q(const DFElement& a) const {
    require(a.size() == orders_.size(), "element length mismatch");
    Phase s;
    long k = ngens();
    for (long i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        s = s + qgen_[i].times(a[i]).times(a[i]);
        for (long j = i + 1; j < k; ++j) {
            if (a[j] == 0) continue;
            s = s + bgen_[i][j].times(a[i]).times(a[j]);
        }
    }
    return s;
}

Phase FinQuadForm::b(const DFElement& x, const DFElement& y) const {
    Phase s;
    long k = ngens();
    for (long i = 0; i < k; ++i) {
        if (x[i] == 0) continue;
        for (long j = 0; j < k; ++j) {
            if (y[j] == 0) continue;
            s = s + bgen_[i][j].times(x[i]).times(y[j]);
        }
    }
    return s;
}

Int FinQuadForm::index_of(const DFElement& a) const {
    Int idx = 0;
    for (size_t i = 0; i < orders_.size(); ++i) idx = idx * orders_[i] + a[i];
    return idx;
}

DFElement FinQuadForm::elem_at(Int idx) const {
    DFElement a(orders_.size(), 0);
    for (long i = (long)orders_.size() - 1; i >= 0; --i) {
        Int r = idx % orders_[i];
        a[i] = r.get_si();
        idx /= orders_[i];
    }
    return a;
}

std::vector<DFElement> FinQuadForm::elements() const {
    Int n = size();
    require(n <= Int(1) << 20, "group too large to enumerate");
    std::vector<DFElement> out;
    out.reserve(n.get_ui());
    DFElement a = zero_elem();
    out.push_back(a);
    long k = ngens();
    for (Int i = 1; i < n; ++i) {
        for (long t = k - 1; t >= 0; --t) {
            if (++a[t] < orders_[t]) break;
            a[t] = 0;
        }
        out.push_back(a);
    }
    return out;
}

bool FinQuadForm::is_two_elementary() const {
    for (long long d : orders_)
        if (d != 2) return false;
    return true;
}

bool FinQuadForm::is_even_two_elementary() const {
    if (!is_two_elementary()) return false;
    for (const Phase& p : qgen_)
        if (!(p.den() == 1 || (p.den() == 2 && p.num() == 1))) return false;
    return true;
}

std::vector<Phase> FinQuadForm::q_values() const {
    std::vector<Phase> vals;
    for (const DFElement& a : elements()) vals.push_back(q(a));
    return vals;
}

bool FinQuadForm::is_nondegenerate() const {
    long k = ngens();
    if (k == 0) return true;
    if (is_two_elementary()) {
        // F2 rank of the b-parity matrix
        auto s = f2::quad_space(*this);
        std::vector<uint32_t> rows = s.brows;
        int rank = 0;
        for (int c = 0; c < k; ++c) {
            int p = -1;
            for (int i = rank; i < k; ++i)
                if (rows[i] >> c & 1) { p = i; break; }
            if (p < 0) continue;
            std::swap(rows[rank], rows[p]);
            for (int i = 0; i < k; ++i)
                if (i != rank && (rows[i] >> c & 1)) rows[i] ^= rows[rank];
            ++rank;
        }
        return rank == k;
    }
    require(size() <= Int(1) << 16, "nondegeneracy check too large");
    std::vector<DFElement> gens;
    for (long i = 0; i < k; ++i) {
        DFElement g = zero_elem();
        g[i] = 1;
        gens.push_back(g);
    }
    for (const DFElement& a : elements()) {
        bool zero_elt = std::all_of(a.begin(), a.end(), [](long long v) { return v == 0; });
        if (zero_elt) continue;
        bool in_radical = true;
        for (const DFElement& g : gens)
            if (!b(a, g).is_zero()) { in_radical = false; break; }
        if (in_radical) return false;
    }
    return true;
}

FinQuadForm FinQuadForm::negated() const {
    std::vector<Phase> q2;
    for (const Phase& p : qgen_) q2.push_back(-p);
    std::vector<std::vector<Phase>> b2 = bgen_;
    for (auto& row : b2)
        for (Phase& p : row) p = -p;
    return FinQuadForm(orders_, q2, b2, lifts_);
}

// Rebuild a presentation with arbitrary orders (>= 2, no chain requirement)
// into elementary-divisor form: split generators into primary cyclic pieces,
// sort each prime's chain, and recombine aligned slots by CRT. Cross-prime
// b-values vanish identically (their order divides two coprime numbers).
static FinQuadForm normalize_presentation(const std::vector<long long>& orders,
                                          const std::vector<Phase>& qg,
                                          const std::vector<std::vector<Phase>>& bg) {
    long k = (long)orders.size();
    auto q_of = [&](const std::vector<long long>& c) {
        Phase s;
        for (long i = 0; i < k; ++i) {
            if (c[i] == 0) continue;
            s = s + qg[i].times(c[i]).times(c[i]);
            for (long j = i + 1; j < k; ++j)
                if (c[j] != 0) s = s + bg[i][j].times(c[i]).times(c[j]);
        }
        return s;
    };
    auto b_of = [&](const std::vector<long long>& x, const std::vector<long long>& y) {
        Phase s;
        for (long i = 0; i < k; ++i) {
            if (x[i] == 0) continue;
            for (long j = 0; j < k; ++j) {
                if (y[j] == 0) continue;
                Phase v = i == j ? qg[i] + qg[i] : bg[i][j];
                s = s + v.times(x[i]).times(y[j]);
            }
        }
        return s;
    };
    // primary pieces per prime: (p^a, coefficient vector of the piece)
    std::map<long, std::vector<std::pair<long long, std::vector<long long>>>> prim;
    for (long i = 0; i < k; ++i) {
        for (auto& [p, e] : factorize(orders[i])) {
            long long pa = 1;
            for (int t = 0; t < e; ++t) pa *= p;
            std::vector<long long> c(k, 0);
            c[i] = orders[i] / pa;
            prim[p].push_back({pa, c});
        }
    }
    size_t slots = 0;
    for (auto& [p, list] : prim) {
        std::stable_sort(list.begin(), list.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        slots = std::max(slots, list.size());
    }
    std::vector<long long> new_orders(slots, 1);
    std::vector<std::vector<long long>> new_gens(slots, std::vector<long long>(k, 0));
    for (auto& [p, list] : prim) {
        size_t off = slots - list.size();  // align chains at the top
        for (size_t j = 0; j < list.size(); ++j) {
            new_orders[off + j] *= list[j].first;
            for (long t = 0; t < k; ++t) new_gens[off + j][t] += list[j].second[t];
        }
    }
    std::vector<long long> fo;
    std::vector<Phase> fq;
    std::vector<std::vector<Phase>> fb;
    std::vector<std::vector<long long>> fg;
    for (size_t j = 0; j < slots; ++j) {
        if (new_orders[j] <= 1) continue;
        fo.push_back(new_orders[j]);
        fg.push_back(new_gens[j]);
    }
    long kk = (long)fo.size();
    fq.resize(kk);
    fb.assign(kk, std::vector<Phase>(kk));
    for (long i = 0; i < kk; ++i) {
        fq[i] = q_of(fg[i]);
        for (long j = 0; j < kk; ++j) fb[i][j] = b_of(fg[i], fg[j]);
    }
    return FinQuadForm(fo, fq, fb);
}

FinQuadForm direct_sum(const FinQuadForm& a, const FinQuadForm& b) {
    long ka = a.ngens(), kb = b.ngens();
    std::vector<long long> orders;
    std::vector<Phase> qg;
    std::vector<std::vector<Phase>> bg(ka + kb, std::vector<Phase>(ka + kb));
    for (long i = 0; i < ka; ++i) {
        orders.push_back(a.orders()[i]);
        qg.push_back(a.q_gen()[i]);
        for (long j = 0; j < ka; ++j) bg[i][j] = a.b_gen()[i][j];
    }
    for (long i = 0; i < kb; ++i) {
        orders.push_back(b.orders()[i]);
        qg.push_back(b.q_gen()[i]);
        for (long j = 0; j < kb; ++j) bg[ka + i][ka + j] = b.b_gen()[i][j];
    }
    return normalize_presentation(orders, qg, bg);
}

// ---------------------------------------------------------------------------
// from_gram / quarter_form

DFElement DiscForm::classify(const QVec& x) const {
    long r = gram.rows();
    require((long)x.size() == r, "vector length mismatch");
    // dual coordinates y = G x must be integral
    IVec y(r);
    for (long i = 0; i < r; ++i) {
        Rat s = 0;
        for (long j = 0; j < r; ++j) s += Rat(gram(i, j)) * x[j];
        require(s.get_den() == 1, "vector is not in the dual lattice");
        y[i] = s.get_num();
    }
    std::vector<long long> c;
    for (long t : kept) {
        Int s = 0;
        for (long j = 0; j < r; ++j) s += snf_u(t, j) * y[j];
        Int m = s % all_d[t];
        if (m < 0) m += all_d[t];
        c.push_back(m.get_si());
    }
    return c;
}

DiscForm from_gram(const Lattice& l) {
    require(is_even(l), "lattice not even");
    DiscForm df;
    df.gram = l.gram();
    df.ginv = l.rank() > 0 ? inverse(l.gram()) : QMat(0, 0);
    SmithForm sf = snf(l.gram());
    df.snf_u = sf.u;
    df.all_d = sf.d;
    for (long i = 0; i < (long)sf.d.size(); ++i)
        if (sf.d[i] > 1) df.kept.push_back(i);
    if (df.kept.empty()) {
        df.form = FinQuadForm();
        return df;
    }
    long r = l.rank();
    QMat uinv = inverse(sf.u);
    std::vector<long long> orders;
    std::vector<QVec> lifts;
    for (long t : df.kept) {
        require(sf.d[t].fits_slong_p(), "discriminant group order too large");
        orders.push_back(sf.d[t].get_si());
        // generator lift: x = G^{-1} U^{-1} e_t
        QVec y(r, Rat(0));
        for (long i = 0; i < r; ++i) y[i] = uinv(i, t);
        QVec x(r, Rat(0));
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j) x[i] += df.ginv(i, j) * y[j];
        lifts.push_back(x);
    }
    long k = (long)orders.size();
    std::vector<Phase> qg(k);
    std::vector<std::vector<Phase>> bg(k, std::vector<Phase>(k));
    for (long i = 0; i < k; ++i) {
        qg[i] = phase_mod1(l.norm(lifts[i]) / 2);
        for (long j = 0; j < k; ++j) bg[i][j] = phase_mod1(l.inner(lifts[i], lifts[j]));
    }
    df.form = FinQuadForm(orders, qg, bg, lifts);
    require(df.form.is_nondegenerate(), "discriminant form is degenerate");
    return df;
}

// solve z with z * B = m over the rationals (consistent overdetermined system)
static QVec solve_in_rowspace(const QMat& bmat, const QVec& m) {
    long k = bmat.rows(), n = bmat.cols();
    QMat w(n, k + 1);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < k; ++j) w(i, j) = bmat(j, i);
        w(i, k) = m[i];
    }
    // Gaussian elimination on the (n x k) system w z = rhs
    long row = 0;
    std::vector<long> pivot_of_col(k, -1);
    for (long c = 0; c < k && row < n; ++c) {
        long p = -1;
        for (long i = row; i < n; ++i)
            if (w(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        w.swap_rows(row, p);
        Rat d = w(row, c);
        for (long j = 0; j <= k; ++j) w(row, j) /= d;
        for (long i = 0; i < n; ++i) {
            if (i == row || w(i, c) == 0) continue;
            Rat f = w(i, c);
            for (long j = 0; j <= k; ++j) w(i, j) -= f * w(row, j);
        }
        pivot_of_col[c] = row;
        ++row;
    }
    for (long i = row; i < n; ++i)
        require(w(i, k) == 0, "vector not in the sublattice span");
    QVec z(k, Rat(0));
    for (long c = 0; c < k; ++c)
        if (pivot_of_col[c] >= 0) z[c] = w(pivot_of_col[c], k);
    return z;
}

FinQuadForm quarter_form(const Lattice& n, const Lattice& m) {
    require(n.rank() == m.rank(), "N/M must be finite: ranks differ");
    long k = n.rank();
    if (k == 0) return FinQuadForm();
    require(n.basis_in_parent().cols() == m.basis_in_parent().cols(),
            "N and M must sit in the same parent lattice");
    // M(1/2) even: all pairings even, norms divisible by 4
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) {
            require(m.gram()(i, j) % 2 == 0, "M(1/2) is not integral");
            if (i == j) require(m.gram()(i, i) % 4 == 0, "M(1/2) is not even");
        }
    // express the M-basis in N-coordinates
    IMat c(k, k);
    for (long i = 0; i < k; ++i) {
        QVec mi(m.basis_in_parent().cols());
        for (long j = 0; j < m.basis_in_parent().cols(); ++j) mi[j] = m.basis_in_parent()(i, j);
        QVec z = solve_in_rowspace(n.basis_in_parent(), mi);
        for (long j = 0; j < k; ++j) {
            require(z[j].get_den() == 1, "M is not contained in N");
            c(i, j) = z[j].get_num();
        }
    }
    // (N, M) in 2Z
    IMat pair_nm = n.gram() * c.transpose();
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j)
            require(pair_nm(i, j) % 2 == 0, "(N, M) pairing is not even");

    SmithForm sf = snf(c);
    QMat vinv = inverse(sf.v);
    std::vector<long long> orders;
    std::vector<QVec> lifts;  // in N-coordinates
    for (long t = 0; t < k; ++t) {
        require(sf.d[t] != 0, "M does not have finite index in N");
        if (sf.d[t] == 1) continue;
        require(sf.d[t].fits_slong_p(), "quotient order too large");
        orders.push_back(sf.d[t].get_si());
        QVec row(k, Rat(0));
        for (long j = 0; j < k; ++j) row[j] = vinv(t, j);
        lifts.push_back(row);
    }
    long kk = (long)orders.size();
    std::vector<Phase> qg(kk);
    std::vector<std::vector<Phase>> bg(kk, std::vector<Phase>(kk));
    for (long i = 0; i < kk; ++i) {
        qg[i] = phase_mod1(n.norm(lifts[i]) / 4);
        for (long j = 0; j < kk; ++j) bg[i][j] = phase_mod1(n.inner(lifts[i], lifts[j]) / 2);
    }
    FinQuadForm f(orders, qg, bg, lifts);
    return f;
}

// ---------------------------------------------------------------------------
// subgroups, isotropy

std::vector<DFElement> subgroup_elements(const FinQuadForm& d, const std::vector<DFElement>& gens) {
    std::vector<DFElement> elems{d.zero_elem()};
    std::map<DFElement, bool> seen;
    seen[d.zero_elem()] = true;
    std::vector<DFElement> frontier = elems;
    while (!frontier.empty()) {
        std::vector<DFElement> next;
        for (const DFElement& e : frontier)
            for (const DFElement& g : gens) {
                DFElement s = d.add(e, g);
                if (!seen.count(s)) {
                    seen[s] = true;
                    elems.push_back(s);
                    next.push_back(s);
                    require(elems.size() <= (1u << 20), "subgroup too large to enumerate");
                }
            }
        frontier = std::move(next);
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

bool is_isotropic(const FinQuadForm& d, const std::vector<DFElement>& gens) {
    auto elems = subgroup_elements(d, gens);
    for (const auto& x : elems)
        for (const auto& y : elems)
            if (!d.b(x, y).is_zero()) return false;
    return true;
}

bool is_totally_isotropic(const FinQuadForm& d, const std::vector<DFElement>& gens) {
    auto elems = subgroup_elements(d, gens);
    for (const auto& x : elems)
        if (!d.q(x).is_zero()) return false;
    // totally isotropic implies isotropic
    require(is_isotropic(d, gens), "totally isotropic subgroup is not isotropic");
    return true;
}

// ---------------------------------------------------------------------------
// F2 machinery

namespace f2 {

QuadSpace quad_space(const FinQuadForm& d) {
    require(d.is_two_elementary(), "F2 reduction needs a 2-elementary form");
    require(d.ngens() <= 32, "2-elementary form too large");
    QuadSpace s;
    s.k = (int)d.ngens();
    s.qbits.resize(s.k);
    s.brows.assign(s.k, 0);
    for (int i = 0; i < s.k; ++i) {
        const Phase& qi = d.q_gen()[i];
        require(qi.den() <= 2, "form is not of even type");
        s.qbits[i] = qi.den() == 2 ? 1 : 0;
        for (int j = 0; j < s.k; ++j) {
            const Phase& bij = d.b_gen()[i][j];
            require(bij.den() <= 2, "b value has unexpected denominator");
            if (bij.den() == 2) s.brows[i] |= (1u << j);
        }
    }
    return s;
}

int QuadSpace::q(uint32_t mask) const {
    int acc = 0;
    for (int t = 0; t < k; ++t) {
        if (!(mask >> t & 1)) continue;
        acc ^= qbits[t];
        acc ^= std::popcount(brows[t] & mask & ((1u << t) - 1)) & 1;
    }
    return acc;
}

int QuadSpace::b(uint32_t x, uint32_t y) const {
    int acc = 0;
    for (int t = 0; t < k; ++t)
        if (y >> t & 1) acc ^= std::popcount(brows[t] & x) & 1;
    return acc;
}

Reduction reduce(const QuadSpace& s, bool q_aware) {
    Reduction red;
    std::vector<uint32_t> vecs;
    for (int i = 0; i < s.k; ++i) vecs.push_back(1u << i);
    while (!vecs.empty()) {
        uint32_t v = vecs[0];
        int wj = -1;
        for (size_t j = 1; j < vecs.size(); ++j)
            if (s.b(v, vecs[j])) { wj = (int)j; break; }
        require(wj > 0, "form is degenerate");
        uint32_t w = vecs[wj];
        std::vector<uint32_t> rest;
        for (size_t j = 1; j < vecs.size(); ++j)
            if ((int)j != wj) rest.push_back(vecs[j]);
        for (uint32_t& u : rest) {
            if (s.b(u, w)) u ^= v;
            if (s.b(u, v)) u ^= w;
        }
        if (q_aware) {
            // normalise to q(v) = q(w) = 0 unless the block is anisotropic
            if (s.q(v) && !s.q(w)) std::swap(v, w);
            if (!s.q(v) && s.q(w)) w ^= v;
        }
        red.pairs.push_back({v, w});
        vecs = std::move(rest);
    }
    if (!q_aware) return red;
    // pair up minus blocks (q = 1 on all three nonzero elements) and convert
    // (2-)^2 into (2+)^2
    std::vector<size_t> minus;
    for (size_t i = 0; i < red.pairs.size(); ++i)
        if (s.q(red.pairs[i].first)) minus.push_back(i);
    for (size_t t = 0; t + 1 < minus.size(); t += 2) {
        auto& [a, bb] = red.pairs[minus[t]];
        auto& [c, dd] = red.pairs[minus[t + 1]];
        uint32_t a2 = a ^ c ^ dd, b2 = bb ^ c ^ dd;
        uint32_t c2 = a ^ bb ^ c, d2 = a ^ bb ^ dd;
        a = a2; bb = b2; c = c2; dd = d2;
    }
    if (minus.size() % 2) {
        size_t last = minus.back();
        red.tail.push_back(red.pairs[last].first);
        red.tail.push_back(red.pairs[last].second);
        red.pairs.erase(red.pairs.begin() + last);
    }
    // sanity: every remaining pair is hyperbolic with isotropic members
    for (auto& [v, w] : red.pairs) {
        require(s.b(v, w) == 1, "hyperbolic pairing lost");
        require(s.q(v) == 0 && s.q(w) == 0, "block normalisation failed");
    }
    return red;
}

}  // namespace f2

// ---------------------------------------------------------------------------
// primary decomposition, Gauss sums, splitness

std::vector<std::pair<long, FinQuadForm>> primary_components(const FinQuadForm& d) {
    std::vector<std::pair<long, FinQuadForm>> parts;
    if (d.ngens() == 0) return parts;
    std::map<long, int> top = factorize(d.orders().back());
    for (auto& [p, e_unused] : top) {
        std::vector<long long> orders;
        std::vector<Phase> qg;
        std::vector<std::vector<Phase>> bg;
        std::vector<long> idx;
        std::vector<long long> cof;
        for (long i = 0; i < d.ngens(); ++i) {
            long long di = d.orders()[i];
            long long pa = 1;
            while (di % p == 0) { di /= p; pa *= p; }
            if (pa == 1) continue;
            idx.push_back(i);
            cof.push_back(d.orders()[i] / pa);
            orders.push_back(pa);
        }
        if (orders.empty()) continue;
        long kk = (long)orders.size();
        qg.resize(kk);
        bg.assign(kk, std::vector<Phase>(kk));
        for (long a = 0; a < kk; ++a) {
            qg[a] = d.q_gen()[idx[a]].times(cof[a]).times(cof[a]);
            for (long b2 = 0; b2 < kk; ++b2)
                bg[a][b2] = d.b_gen()[idx[a]][idx[b2]].times(cof[a]).times(cof[b2]);
        }
        parts.push_back({p, FinQuadForm(orders, qg, bg)});
    }
    return parts;
}

// Gauss sum exponent of a primary component by explicit cyclotomic summation.
static Phase gauss_exponent_enumerate(const FinQuadForm& part) {
    Int sz = part.size();
    require(sz <= Int(1) << 20, "primary component too large to enumerate");
    long long level = 1;
    for (const Phase& p : part.q_gen()) level = std::lcm(level, p.den());
    for (auto& row : part.b_gen())
        for (const Phase& p : row) level = std::lcm(level, p.den());
    long m = (long)std::lcm(level, 8ll);
    CycRing ring(m);
    CycRing::Elt sum = ring.zero();
    // odometer over elements with incremental q updates:
    // q(a + e_t) = q(a) + q(g_t) + b(a, g_t)
    long k = part.ngens();
    DFElement a = part.zero_elem();
    std::vector<Phase> brow(k);  // b(a, g_j)
    Phase qa;
    long long n = sz.get_si();
    for (long long it = 0;; ++it) {
        ring.add_root(sum, qa, 1);
        if (it + 1 == n) break;
        for (long t = k - 1; t >= 0; --t) {
            if (a[t] + 1 < part.orders()[t]) {
                qa = qa + part.q_gen()[t] + brow[t];
                for (long j = 0; j < k; ++j) brow[j] = brow[j] + part.b_gen()[t][j];
                ++a[t];
                break;
            }
            // roll over coordinate t: subtract (d_t - 1) steps of g_t
            long long steps = part.orders()[t] - 1;
            // q(a - s g_t) and b-row updates via multiples
            qa = qa + part.q_gen()[t].times(steps * steps) - brow[t].times(steps);
            for (long j = 0; j < k; ++j) brow[j] = brow[j] - part.b_gen()[t][j].times(steps);
            a[t] = 0;
        }
    }
    CycRing::Elt root_scale = ring.sqrt_int(sz);
    for (long long k8 = 0; k8 < 8; ++k8) {
        CycRing::Elt cand = ring.mul(root_scale, ring.root(Phase(k8, 8)));
        if (ring.equal(sum, cand)) return Phase(k8, 8);
    }
    throw std::domain_error("Gauss sum is not sqrt|E| times an 8th root of unity");
}

Phase gauss_sum_gamma2(const FinQuadForm& d) {
    Phase total;
    for (auto& [p, part] : primary_components(d)) {
        if (p == 2 && part.is_even_two_elementary() && part.size() > (Int(1) << 16)) {
            auto red = f2::reduce(f2::quad_space(part), true);
            if (!red.tail.empty()) total = total + Phase(1, 2);
            continue;
        }
        total = total + gauss_exponent_enumerate(part);
    }
    return total;
}

SplitResult is_split(const FinQuadForm& d) {
    require(d.is_even_two_elementary(), "unsupported form type");
    SplitResult res;
    if (d.ngens() == 0) {
        res.split = true;
        return res;
    }
    auto red = f2::reduce(f2::quad_space(d), true);
    if (!red.tail.empty()) {
        res.split = false;
        return res;
    }
    res.split = true;
    for (auto& [v, w] : red.pairs) {
        DFElement e = d.zero_elem();
        for (int t = 0; t < d.ngens(); ++t)
            if (v >> t & 1) e[t] = 1;
        res.witness.push_back(e);
    }
    require(is_totally_isotropic(d, res.witness), "split witness fails the isotropy check");
    return res;
}

}  // namespace latvac
