#pragma once

#include <optional>

#include "latvac/discform.hpp"
#include "latvac/lattice.hpp"

namespace latvac {

struct OrbifoldType {
    long n = 1;    // order of the automorphism
    long r = 0;    // residue mod n from the twisted grading
    Rat rho;       // conformal weight of V(g)
};

// rho(V(g)) = (1/4n^2) sum_{j=1}^{n-1} j(n-j) dim h[zeta^j]
Rat twisted_conformal_weight(const Lattice& l, const LatticeAutomorphism& sigma);

// Type n{r} of the standard lift, plus the weights of all twisted modules
// V(sigma^i). For even order the no-order-doubling condition (alpha,
// sigma alpha) in 2Z is checked when sigma is an involution; for other even
// orders the caller must attest the lift order via the flag.
struct TypeReport {
    OrbifoldType type;
    std::vector<Rat> rho_i;  // rho(V(sigma^i)), i = 0..n-1 (rho_0 = 0)
};
TypeReport automorphism_type(const Lattice& l, const LatticeAutomorphism& sigma,
                             bool attested_lift_order = false);

// Discriminant form of the Gram matrix [[-2r, n], [n, 0]]; |E| = n^2.
// Asserts the extension invariant d = 2r on the explicit generators.
FinQuadForm fusion_group_of_type(long n, long r);

struct IsotropicPair {
    std::vector<DFElement> i_gens;       // generator of I (cyclic of order n)
    std::vector<DFElement> i_dual_gens;  // generator of I^vee
};
// Two totally isotropic subgroups of order n with trivial intersection;
// throws "no isotropic pair" when none exist (r != 0).
IsotropicPair isotropic_pair(const FinQuadForm& fusion, long n);

enum class PhiMode { Totient, DivisorSum };

// dim V1 of the orbifold: 24 + sum_{d | n} c_d dims[d], with
// c_d = lambda(d)/d * phi((d, n/d))/(d, n/d) * psi(n/d).
// n must have genus-zero Gamma_0(n); n = 1 returns dims[1] directly.
long dimension_formula(long n, const std::map<long, long>& dims,
                       PhiMode mode = PhiMode::Totient);

// dim (V_L)_1 = rank + #roots
long lattice_v1_dim(const Lattice& l);

// Fixed-point dimension under the standard lift of an involution satisfying
// (alpha, sigma alpha) in 2Z: (dim V1 + tr(sigma on h) + #fixed roots) / 2.
long fixed_v1_dim(const Lattice& l, const LatticeAutomorphism& sigma);

struct OrbifoldReport {
    OrbifoldType type;
    std::vector<Rat> rho_i;
    FinQuadForm fusion;
    std::optional<IsotropicPair> pair;          // present when r = 0
    std::optional<long> dim_v1_orbifold;        // involutions (or identity) only
    long lattice_v1 = 0;
    std::optional<long> fixed_v1;
};

OrbifoldReport orbifold_report(const Lattice& l, const LatticeAutomorphism& sigma,
                               PhiMode mode = PhiMode::Totient);

}  // namespace latvac
