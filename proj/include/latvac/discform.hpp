#pragma once

#include <cstdint>
#include <optional>

#include "latvac/lattice.hpp"
#include "latvac/phase.hpp"

namespace latvac {

// Element of a finite quadratic form, as canonical coefficients mod orders.
using DFElement = std::vector<long long>;

// A finite abelian group E = (+) Z/d_i with a Q/Z-valued quadratic form,
// presented on generators: q(g_i) and the bilinear values b(g_i, g_j).
// b is derived from q by b(x, y) = q(x+y) - q(x) - q(y); the stored diagonal
// is b(g_i, g_i) = 2 q(g_i).
class FinQuadForm {
  public:
    FinQuadForm() = default;  // trivial group

    FinQuadForm(std::vector<long long> orders, std::vector<Phase> q_gen,
                std::vector<std::vector<Phase>> b_gen, std::vector<QVec> lifts = {});

    long ngens() const { return (long)orders_.size(); }
    const std::vector<long long>& orders() const { return orders_; }
    const std::vector<Phase>& q_gen() const { return qgen_; }
    const std::vector<std::vector<Phase>>& b_gen() const { return bgen_; }

    // generator lifts in the coordinates of the lattice the form was built
    // from (empty if not built from a lattice)
    const std::vector<QVec>& lifts() const { return lifts_; }

    Int size() const {
        Int s = 1;
        for (long long d : orders_) s *= d;
        return s;
    }

    DFElement zero_elem() const { return DFElement(orders_.size(), 0); }
    DFElement reduce(std::vector<long long> c) const;
    DFElement add(const DFElement& a, const DFElement& b) const;
    DFElement neg(const DFElement& a) const;
    DFElement smul(long long k, const DFElement& a) const;
    long long elem_order(const DFElement& a) const;

    Phase q(const DFElement& a) const;
    Phase b(const DFElement& x, const DFElement& y) const;

    // deterministic enumeration: lexicographic on coefficient tuples with the
    // first coordinate most significant
    Int index_of(const DFElement& a) const;
    DFElement elem_at(Int idx) const;
    std::vector<DFElement> elements() const;  // guarded, |E| <= 2^20

    bool is_two_elementary() const;
    // all orders 2 and q-values in {0, 1/2}
    bool is_even_two_elementary() const;

    std::vector<Phase> q_values() const;  // q at every element, enumeration order

    bool is_nondegenerate() const;

    FinQuadForm negated() const;

  private:
    void validate() const;

    std::vector<long long> orders_;
    std::vector<Phase> qgen_;
    std::vector<std::vector<Phase>> bgen_;
    std::vector<QVec> lifts_;
};

FinQuadForm direct_sum(const FinQuadForm& a, const FinQuadForm& b);

// Discriminant form of an even lattice with the classification maps attached.
struct DiscForm {
    FinQuadForm form;
    // classify a dual vector (rational coordinates in the source lattice
    // basis, gram * x integral) to its class in L^vee / L
    DFElement classify(const QVec& x) const;

    IMat snf_u;               // SNF transform of the Gram matrix
    QMat ginv;
    std::vector<Int> all_d;   // full SNF diagonal including trivial entries
    std::vector<long> kept;   // indices with d_i > 1
    IMat gram;
};

DiscForm from_gram(const Lattice& l);

// The quarter form on A = N/M with q(alpha) = alpha^2/4 (Lemma hypotheses:
// M(1/2) even and (N, M) in 2Z are checked). Generator lifts are stored in
// N-coordinates.
FinQuadForm quarter_form(const Lattice& n, const Lattice& m);

std::vector<DFElement> subgroup_elements(const FinQuadForm& d, const std::vector<DFElement>& gens);
bool is_isotropic(const FinQuadForm& d, const std::vector<DFElement>& gens);
bool is_totally_isotropic(const FinQuadForm& d, const std::vector<DFElement>& gens);

// gamma_2 invariant: the Gauss sum (1/sqrt|E|) sum_alpha e^{2 pi i q(alpha)}
// evaluated exactly as a cyclotomic number; returns the exponent k/8 of the
// resulting 8th root of unity. Computed per orthogonal primary component
// (the sum is multiplicative over them).
Phase gauss_sum_gamma2(const FinQuadForm& d);

struct SplitResult {
    bool split = false;
    std::vector<DFElement> witness;  // generators of a totally isotropic
                                     // subgroup of order sqrt|E| when split
};

// Splitness of an even 2-elementary form via hyperbolic reduction over F_2.
SplitResult is_split(const FinQuadForm& d);

// orthogonal primary (Sylow) components, ascending primes
std::vector<std::pair<long, FinQuadForm>> primary_components(const FinQuadForm& d);

namespace f2 {

// F_2 quadratic space data extracted from an even 2-elementary form
struct QuadSpace {
    int k = 0;
    std::vector<uint32_t> brows;  // bit s of brows[t]: parity of b(g_t, g_s)
    std::vector<int> qbits;

    int q(uint32_t mask) const;
    int b(uint32_t x, uint32_t y) const;
};

QuadSpace quad_space(const FinQuadForm& d);

struct Reduction {
    std::vector<std::pair<uint32_t, uint32_t>> pairs;  // hyperbolic pairs
    std::vector<uint32_t> tail;                        // anisotropic tail (0 or 2 vectors)
};

// Symplectic reduction; with q_aware the pairs are normalised so both members
// are q-isotropic whenever possible, leaving at most one anisotropic block.
Reduction reduce(const QuadSpace& s, bool q_aware);

}  // namespace f2

}  // namespace latvac
