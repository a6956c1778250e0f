#pragma once

#include <map>
#include <optional>

#include "latvac/arith.hpp"
#include "latvac/intmat.hpp"

namespace latvac {

// An integral lattice given by the Gram matrix of a basis. Vectors are
// coordinate tuples in that basis; rational coordinates describe elements of
// Q (x) L (dual vectors, cosets, rescaled lifts). basis_in_parent records how
// a derived lattice sits inside the lattice it was computed from.
class Lattice {
  public:
    Lattice() = default;

    explicit Lattice(IMat gram) : gram_(std::move(gram)) {
        require(gram_.rows() == gram_.cols(), "Gram matrix must be square");
        require(gram_.is_symmetric(), "Gram matrix must be symmetric");
        if (rank() > 0) require(latvac::det(gram_) != 0, "Gram matrix is degenerate");
        basis_in_parent_ = to_rational(IMat::identity(gram_.rows()));
    }

    Lattice(IMat gram, QMat basis_in_parent) : Lattice(std::move(gram)) {
        require(basis_in_parent.rows() == gram_.rows(), "basis_in_parent row count mismatch");
        basis_in_parent_ = std::move(basis_in_parent);
    }

    long rank() const { return gram_.rows(); }
    const IMat& gram() const { return gram_; }
    const QMat& basis_in_parent() const { return basis_in_parent_; }

    Int det() const { return rank() == 0 ? Int(1) : latvac::det(gram_); }

    // (x, y) for coordinate vectors, bilinear form given by the Gram matrix
    Rat inner(const QVec& x, const QVec& y) const {
        require((long)x.size() == rank() && (long)y.size() == rank(), "vector length mismatch");
        Rat s = 0;
        for (long i = 0; i < rank(); ++i) {
            if (x[i] == 0) continue;
            Rat t = 0;
            for (long j = 0; j < rank(); ++j) t += Rat(gram_(i, j)) * y[j];
            s += x[i] * t;
        }
        return s;
    }

    Rat norm(const QVec& x) const { return inner(x, x); }

    // coordinates in the parent lattice's basis
    QVec to_parent(const QVec& x) const {
        require((long)x.size() == rank(), "vector length mismatch");
        QVec y(basis_in_parent_.cols(), Rat(0));
        for (long i = 0; i < rank(); ++i)
            for (long j = 0; j < basis_in_parent_.cols(); ++j)
                y[j] += x[i] * basis_in_parent_(i, j);
        return y;
    }

  private:
    IMat gram_;
    QMat basis_in_parent_;
};

inline bool is_even(const Lattice& l) {
    for (long i = 0; i < l.rank(); ++i)
        if (l.gram()(i, i) % 2 != 0) return false;
    return true;
}

inline bool is_self_dual(const Lattice& l) { return abs(l.det()) == 1; }

inline bool is_positive_definite(const Lattice& l) {
    // leading principal minors all positive
    for (long k = 1; k <= l.rank(); ++k) {
        IMat b(k, k);
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j) b(i, j) = l.gram()(i, j);
        if (det(b) <= 0) return false;
    }
    return true;
}

// Rows are coordinates, in the basis of L, of the dual basis of L^vee.
inline QMat dual_basis(const Lattice& l) { return inverse(l.gram()); }

// Membership of a rational coordinate vector in L^vee: gram * x integral.
inline bool in_dual(const Lattice& l, const QVec& x) {
    require((long)x.size() == l.rank(), "vector length mismatch");
    for (long i = 0; i < l.rank(); ++i) {
        Rat s = 0;
        for (long j = 0; j < l.rank(); ++j) s += Rat(l.gram()(i, j)) * x[j];
        if (s.get_den() != 1) return false;
    }
    return true;
}

inline bool is_integral_vector(const QVec& x) {
    for (const Rat& c : x)
        if (c.get_den() != 1) return false;
    return true;
}

inline Lattice rescale(const Lattice& l, const Rat& c) {
    require(c > 0, "rescaling factor must be positive");
    IMat g(l.rank(), l.rank());
    for (long i = 0; i < l.rank(); ++i)
        for (long j = 0; j < l.rank(); ++j) {
            Rat v = c * Rat(l.gram()(i, j));
            require(v.get_den() == 1, "rescaling not integral");
            g(i, j) = v.get_num();
        }
    return Lattice(std::move(g), l.basis_in_parent());
}

class LatticeAutomorphism {
  public:
    LatticeAutomorphism(const Lattice& l, IMat matrix) : matrix_(std::move(matrix)) {
        require(matrix_.rows() == l.rank() && matrix_.cols() == l.rank(),
                "automorphism size mismatch");
        require(matrix_.transpose() * l.gram() * matrix_ == l.gram(),
                "matrix is not an isometry of the lattice");
        IMat p = matrix_;
        long ord = 1;
        const long cap = 10000;
        while (!p.is_identity()) {
            p = p * matrix_;
            ++ord;
            require(ord <= cap, "automorphism has order > 10000 or infinite order");
        }
        order_ = ord;
    }

    const IMat& matrix() const { return matrix_; }
    long order() const { return order_; }

    IMat power(long k) const {
        long n = ((k % order_) + order_) % order_;
        IMat p = IMat::identity(matrix_.rows());
        for (long i = 0; i < n; ++i) p = p * matrix_;
        return p;
    }

  private:
    IMat matrix_;
    long order_;
};

// Sublattice of L spanned by integer rows (in L-coordinates); rows need not
// be independent, the HNF basis is taken.
inline Lattice sublattice_from_rows(const Lattice& l, const IMat& rows) {
    IMat b = hnf_basis(rows);
    IMat g(b.rows(), b.rows());
    // G' = B G B^T
    IMat bg = b * l.gram();
    for (long i = 0; i < b.rows(); ++i)
        for (long j = 0; j < b.rows(); ++j) {
            Int s = 0;
            for (long k = 0; k < l.rank(); ++k) s += bg(i, k) * b(j, k);
            g(i, j) = s;
        }
    return Lattice(std::move(g), to_rational(b));
}

struct SigmaSublattices {
    Lattice m;       // (1 - sigma) L
    Lattice n;       // saturation of M in L
    Lattice fixed;   // L^sigma
};

inline SigmaSublattices sublattices_M_N(const Lattice& l, const LatticeAutomorphism& sigma) {
    long r = l.rank();
    IMat one_minus_u = IMat::identity(r) - sigma.matrix();
    // image of (1 - sigma): column space = row space of the transpose
    IMat m_rows = hnf_basis(one_minus_u.transpose());
    SigmaSublattices s;
    s.m = sublattice_from_rows(l, m_rows);
    s.n = sublattice_from_rows(l, saturate_rowspace(m_rows));
    s.fixed = sublattice_from_rows(l, right_kernel(sigma.matrix() - IMat::identity(r)));
    return s;
}

// For each divisor d of ord(sigma), the dimension of ker Phi_d(U) over Q.
// dim h[zeta^j] is recovered as m_{n/gcd(j,n)} / phi(n/gcd(j,n)).
inline std::map<long, long> eigenspace_multiplicities(const LatticeAutomorphism& sigma) {
    long n = sigma.order();
    long r = sigma.matrix().rows();
    std::map<long, long> m;
    long total = 0;
    for (long d : divisors(n)) {
        IMat phi_u = eval_poly(cyclotomic_poly(d), sigma.matrix());
        long dim = r - rank(phi_u);
        m[d] = dim;
        total += dim;
    }
    require(total == r, "eigenspace multiplicities do not sum to the rank");
    return m;
}

inline Rat eigenvalue_dim(const std::map<long, long>& mult, long n, long j) {
    long d = n / std::gcd(j, n);
    auto it = mult.find(d);
    if (it == mult.end() || it->second == 0) return Rat(0);
    return Rat(it->second, euler_phi(d));
}

}  // namespace latvac
