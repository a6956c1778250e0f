#pragma once

#include <cstdint>
#include <optional>

#include "latvac/discform.hpp"
#include "latvac/lattice.hpp"

namespace latvac {

// The finite Heisenberg group attached to an even self dual lattice with an
// involution: central extension of A = N/M by C^x with commutator
// B(alpha, beta) = (-1)^{(alpha, beta)}. A is 2-elementary; elements are
// masks over the quarter-form generators. The 2-cocycle eps is the
// upper-triangular bilinear splitting eps(a, b) = (-1)^{sum_{s>t} a_s b_t m_st}
// with m_st the pairing parities of the stored lifts.
struct HeisenbergData {
    Lattice lattice;       // ambient L
    Lattice m_lat, n_lat;  // M = (1 - sigma) L and its saturation N
    FinQuadForm a_form;    // quarter form q(alpha) = alpha^2/4, lifts in N-coords
    int k = 0;             // generator count, |A| = 2^k
    std::vector<uint32_t> pair_rows;  // bit s of pair_rows[t]: parity of (g_t, g_s)
    std::vector<IVec> lifts;          // integer lifts of generators in N-coordinates

    int b_exp(uint32_t a, uint32_t b) const;    // exponent of B(a, b) in F2
    int eps_exp(uint32_t a, uint32_t b) const;  // exponent of eps(a, b) in F2
    // alpha^2 mod 4 of the canonical lift (well defined by the Lemma)
    long norm_mod4(uint32_t a) const;
};

HeisenbergData build_heisenberg(const Lattice& l, const LatticeAutomorphism& sigma);

// The unique irreducible module X = C[I] over a maximal B-isotropic I.
// The section chi -> s(chi) is the linear map sending the dual basis of I
// to the complementary Lagrangian from the symplectic reduction; e^alpha acts
// by a monomial matrix with phases in {1, i, -1, -i}.
struct HeisenbergModule {
    int mdim = 0;                   // dim X = 2^mdim
    std::vector<uint32_t> i_basis;  // Lagrangian basis v_a
    std::vector<uint32_t> w_basis;  // complement w_a with B(v_a, w_b) = delta_ab
    std::vector<uint32_t> i_elems;  // elements of I, index = bits over i_basis
    std::map<uint32_t, long> index_of;
    bool i_totally_isotropic = false;  // q = 0 on all of I
    // correction c(alpha) = i^{W(alpha)} splitting eps against the
    // section-adapted bilinear cocycle; stored as the symmetric F2 matrix
    std::vector<uint32_t> corr_rows;

    long dim() const { return (long)i_elems.size(); }
};

HeisenbergModule build_module(const HeisenbergData& h);

// action of e^alpha on the basis vector [x]: a single basis target with an
// exact phase (quarter-integer exponent)
struct MonomialAction {
    Phase phase;
    long target;
};
MonomialAction heisenberg_act(const HeisenbergData& h, const HeisenbergModule& x, uint32_t alpha,
                              long basis_index);

// sum over A of |trace e^alpha|^2, which must equal |A| for an irreducible
// module (character orthogonality certificate)
bool irreducibility_certificate(const HeisenbergData& h, const HeisenbergModule& x);

enum class FormVerdict { SYMMETRIC, ALTERNATING };

struct InvariantFormResult {
    long nullity = 0;
    FormVerdict verdict = FormVerdict::SYMMETRIC;
    bool via_shortcut = false;  // coset argument instead of the linear solve
};

// Solve the invariance constraints (e^alpha x, y) = (-1)^{alpha^2/2} (x, e^alpha y)
// for bilinear forms F on X, by exact propagation of the monomial
// constraints over all generators. Throws if the solution space dimension
// differs from 1. For dim X > max_dense_dim, requires the coset shortcut
// (I totally isotropic) and returns the verdict it certifies.
InvariantFormResult invariant_form(const HeisenbergData& h, const HeisenbergModule& x,
                                   long max_dense_dim = 512);

struct SchurReport {
    Int a_size;
    Phase gamma2;
    bool split = false;
    Int witness_order;
    long dim_x = 0;
    long nullity = 0;
    FormVerdict verdict = FormVerdict::SYMMETRIC;
    bool via_shortcut = false;
    long q_zero_count = -1;  // #{alpha : q(alpha) = 0}, for |A| <= 2^20
    int indicator = 0;       // +1 / -1
};

// Full pipeline of Theorem hypotheses and the indicator computation; any
// -1 outcome raises an error (it would contradict the theorem and signals a
// convention discrepancy).
SchurReport schur_indicator_involution(const Lattice& l, const LatticeAutomorphism& sigma);

// nu * e^{2 pi i Delta} for half-integral Delta (exponent 0 or 1/2)
Phase braiding_from_indicator(const Rat& delta, int nu);

}  // namespace latvac
