#include "latvac/orbifold.hpp"

#include <algorithm>

#include "latvac/enumerate.hpp"

namespace latvac {

static Rat twisted_weight_of_power(const Lattice& l, const IMat& u) {
    LatticeAutomorphism pw(l, u);
    long n = pw.order();
    if (n == 1) return Rat(0);
    auto mult = eigenspace_multiplicities(pw);
    Rat s = 0;
    for (long j = 1; j < n; ++j) s += Rat(j * (n - j)) * eigenvalue_dim(mult, n, j);
    return s / Rat(4 * n * n);
}

Rat twisted_conformal_weight(const Lattice& l, const LatticeAutomorphism& sigma) {
    require(is_even(l), "twisted weight formula needs an even lattice");
    return twisted_weight_of_power(l, sigma.matrix());
}

static void check_no_order_doubling(const Lattice& l, const LatticeAutomorphism& sigma) {
    IMat gu = l.gram() * sigma.matrix();
    for (long i = 0; i < l.rank(); ++i)
        require(gu(i, i) % 2 == 0,
                "standard lift order condition fails: (alpha, sigma alpha) is odd on a "
                "basis vector");
}

TypeReport automorphism_type(const Lattice& l, const LatticeAutomorphism& sigma,
                             bool attested_lift_order) {
    long n = sigma.order();
    if (n % 2 == 0) {
        if (n == 2) check_no_order_doubling(l, sigma);
        else require(attested_lift_order,
                     "even order > 2: caller must attest that the standard lift has order n");
    }
    TypeReport rep;
    Rat rho = twisted_conformal_weight(l, sigma);
    rep.type.n = n;
    rep.type.rho = rho;
    Rat rr = rho * n * n;
    require(rr.get_den() == 1, "n^2 rho is not an integer");
    Int r = rr.get_num() % n;
    if (r < 0) r += n;
    rep.type.r = r.get_si();
    rep.rho_i.push_back(Rat(0));
    for (long i = 1; i < n; ++i) rep.rho_i.push_back(twisted_weight_of_power(l, sigma.power(i)));
    return rep;
}

FinQuadForm fusion_group_of_type(long n, long r) {
    require(n >= 1 && r >= 0 && r < n, "type requires 0 <= r < n");
    IMat g(2, 2);
    g(0, 0) = -2 * r;
    g(0, 1) = n;
    g(1, 0) = n;
    g(1, 1) = 0;
    Lattice l(g);
    DiscForm df = from_gram(l);
    require(df.form.size() == Int(n) * n, "fusion group has wrong order");
    if (n > 1) {
        // extension invariant d = 2r: with f1 = [(0, 1/n)] and f2 = [(1/n, 2r/n^2)],
        // f1 generates the untwisted Z/n (q = 0) and n * f2 = 2r * f1
        QVec f1{Rat(0), Rat(1, n)}, f2{Rat(1, n), Rat(2 * r, (long)n * n)};
        DFElement c1 = df.classify(f1), c2 = df.classify(f2);
        require(df.form.elem_order(c1) == n, "untwisted subgroup has wrong order");
        for (long k = 0; k < n; ++k)
            require(df.form.q(df.form.smul(k, c1)).is_zero(), "untwisted subgroup not isotropic");
        DFElement lhs = df.form.smul(n, c2);
        DFElement rhs = df.form.smul(2 * r, c1);
        require(lhs == rhs, "extension invariant d = 2r fails");
    }
    return df.form;
}

IsotropicPair isotropic_pair(const FinQuadForm& fusion, long n) {
    if (n == 1) return IsotropicPair{{}, {}};
    auto elems = fusion.elements();
    // cyclic totally isotropic subgroups of order n, deterministic order
    std::vector<std::vector<DFElement>> found;
    std::vector<DFElement> gens_found;
    for (const DFElement& a : elems) {
        if (fusion.elem_order(a) != n) continue;
        bool iso = true;
        for (long k = 0; k < n && iso; ++k)
            if (!fusion.q(fusion.smul(k, a)).is_zero()) iso = false;
        if (!iso) continue;
        auto sub = subgroup_elements(fusion, {a});
        if (std::find(found.begin(), found.end(), sub) == found.end()) {
            found.push_back(sub);
            gens_found.push_back(a);
        }
    }
    for (size_t i = 0; i < found.size(); ++i)
        for (size_t j = i + 1; j < found.size(); ++j) {
            // trivial intersection?
            std::vector<DFElement> inter;
            std::set_intersection(found[i].begin(), found[i].end(), found[j].begin(),
                                  found[j].end(), std::back_inserter(inter));
            if (inter.size() == 1) {
                return IsotropicPair{{gens_found[i]}, {gens_found[j]}};
            }
        }
    throw std::domain_error("no isotropic pair: the automorphism type has r != 0");
}

long dimension_formula(long n, const std::map<long, long>& dims, PhiMode mode) {
    require(n >= 1, "order must be positive");
    if (n == 1) {
        require(dims.count(1), "dims must contain the divisor 1");
        return dims.at(1);  // identity orbifold returns V itself
    }
    static const std::vector<long> genus_zero{2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25};
    require(std::find(genus_zero.begin(), genus_zero.end(), n) != genus_zero.end(),
            "dimension formula requires Gamma_0(n) of genus zero");
    Rat total = 24;
    for (long d : divisors(n)) {
        require(dims.count(d), "dims must contain every divisor of n");
        long g = std::gcd(d, n / d);
        long phi_g = mode == PhiMode::Totient ? euler_phi(g) : divisor_sum(g);
        Rat cd = Rat(prime_sign_product(d), d) * Rat(phi_g, g) * Rat(dedekind_psi(n / d));
        total += cd * dims.at(d);
    }
    require(total.get_den() == 1, "inconsistent dims: formula value is not an integer");
    require(total >= 0, "inconsistent dims: formula value is negative");
    return (long)total.get_num().get_si();
}

long lattice_v1_dim(const Lattice& l) {
    Int roots = count_vectors_of_norm(l, 2);
    return l.rank() + (long)roots.get_si();
}

long fixed_v1_dim(const Lattice& l, const LatticeAutomorphism& sigma) {
    require(sigma.order() <= 2, "unsupported order: fixed dimension needs an involution");
    if (sigma.order() == 1) return lattice_v1_dim(l);
    check_no_order_doubling(l, sigma);
    long tr = 0;
    for (long i = 0; i < l.rank(); ++i) tr += (long)sigma.matrix()(i, i).get_si();
    long fixed_roots = 0;
    for (const QVec& v : vectors_of_norm(l, 2)) {
        QVec w = apply(sigma.matrix(), v);
        if (w == v) ++fixed_roots;
    }
    long dim = lattice_v1_dim(l);
    long num = dim + tr + fixed_roots;
    require(num % 2 == 0, "fixed dimension is not integral");
    return num / 2;
}

OrbifoldReport orbifold_report(const Lattice& l, const LatticeAutomorphism& sigma, PhiMode mode) {
    OrbifoldReport rep;
    TypeReport tr = automorphism_type(l, sigma);
    rep.type = tr.type;
    rep.rho_i = tr.rho_i;
    rep.fusion = fusion_group_of_type(rep.type.n, rep.type.r);
    if (rep.type.r == 0 && rep.type.n >= 1) rep.pair = isotropic_pair(rep.fusion, rep.type.n);
    rep.lattice_v1 = lattice_v1_dim(l);
    if (sigma.order() <= 2) {
        rep.fixed_v1 = fixed_v1_dim(l, sigma);
        std::map<long, long> dims;
        if (sigma.order() == 1) dims[1] = rep.lattice_v1;
        else {
            dims[1] = *rep.fixed_v1;
            dims[2] = rep.lattice_v1;
        }
        rep.dim_v1_orbifold = dimension_formula(sigma.order(), dims, mode);
    }
    return rep;
}

}  // namespace latvac
