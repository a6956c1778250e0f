#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace latvac {

using Int = mpz_class;
using Rat = mpq_class;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Dense row-major matrix. Rows are the natural unit: lattice bases are
// stored as rows, automorphisms act on column vectors.
template <typename T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(long rows, long cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Mat identity(long n) {
        Mat m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    T& operator()(long i, long j) { return data_[i * cols_ + j]; }
    const T& operator()(long i, long j) const { return data_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        require(cols_ == o.rows_, "matrix dimension mismatch");
        Mat r(rows_, o.cols_);
        for (long i = 0; i < rows_; ++i)
            for (long k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (long j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix dimension mismatch");
        Mat r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix dimension mismatch");
        Mat r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (long i = 0; i < rows_; ++i)
            for (long j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    std::vector<T> row(long i) const {
        std::vector<T> r(cols_);
        for (long j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void set_row(long i, const std::vector<T>& v) {
        require((long)v.size() == cols_, "row length mismatch");
        for (long j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }

    void swap_rows(long i, long j) {
        for (long k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(long i, long j) {
        for (long k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

  private:
    long rows_, cols_;
    std::vector<T> data_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

inline QMat to_rational(const IMat& a) {
    QMat q(a.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) q(i, j) = Rat(a(i, j));
    return q;
}

// Integer matrix from a rational one; throws if any entry has denominator > 1.
inline IMat to_integer(const QMat& a, const char* what = "matrix") {
    IMat m(a.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) {
            require(a(i, j).get_den() == 1, std::string(what) + " not integral");
            m(i, j) = a(i, j).get_num();
        }
    return m;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IMat& a) {
    require(a.rows() == a.cols(), "det of non-square matrix");
    long n = a.rows();
    if (n == 0) return 1;
    IMat b = a;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (b(k, k) == 0) {
            long p = -1;
            for (long i = k + 1; i < n; ++i)
                if (b(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            b.swap_rows(k, p);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int t = b(k, k) * b(i, j) - b(i, k) * b(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                b(i, j) = t;
            }
        prev = b(k, k);
    }
    return sign > 0 ? b(n - 1, n - 1) : -b(n - 1, n - 1);
}

// Rank over the rationals (Gaussian elimination).
inline long rank(QMat a) {
    long r = 0;
    long m = a.rows(), n = a.cols();
    for (long c = 0; c < n && r < m; ++c) {
        long p = -1;
        for (long i = r; i < m; ++i)
            if (a(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        a.swap_rows(r, p);
        for (long i = r + 1; i < m; ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(r, c);
            for (long j = c; j < n; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

inline long rank(const IMat& a) { return rank(to_rational(a)); }

// Exact inverse via Gauss-Jordan; throws on singular input.
inline QMat inverse(const QMat& a) {
    require(a.rows() == a.cols(), "inverse of non-square matrix");
    long n = a.rows();
    QMat w = a, inv = QMat::identity(n);
    for (long c = 0; c < n; ++c) {
        long p = -1;
        for (long i = c; i < n; ++i)
            if (w(i, c) != 0) { p = i; break; }
        require(p >= 0, "matrix is singular");
        w.swap_rows(c, p);
        inv.swap_rows(c, p);
        Rat d = w(c, c);
        for (long j = 0; j < n; ++j) { w(c, j) /= d; inv(c, j) /= d; }
        for (long i = 0; i < n; ++i) {
            if (i == c || w(i, c) == 0) continue;
            Rat f = w(i, c);
            for (long j = 0; j < n; ++j) { w(i, j) -= f * w(c, j); inv(i, j) -= f * inv(c, j); }
        }
    }
    return inv;
}

inline QMat inverse(const IMat& a) { return inverse(to_rational(a)); }

// Row Hermite normal form. Returns H (same shape, canonical: pivot entries
// positive, entries above a pivot reduced into [0, pivot)); if U is given it
// accumulates the unimodular row transform with U*A = H.
inline IMat hnf(const IMat& a, IMat* transform = nullptr) {
    IMat h = a;
    long m = h.rows(), n = h.cols();
    IMat u = IMat::identity(m);
    long r = 0;
    for (long c = 0; c < n && r < m; ++c) {
        // clear column c below row r by gcd steps
        while (true) {
            long p = -1;
            for (long i = r; i < m; ++i)
                if (h(i, c) != 0) {
                    if (p < 0 || abs(h(i, c)) < abs(h(p, c))) p = i;
                }
            if (p < 0) break;
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            bool cleared = true;
            for (long i = r + 1; i < m; ++i) {
                if (h(i, c) == 0) continue;
                Int q = h(i, c) / h(r, c);  // truncated division is fine for the loop
                for (long j = 0; j < n; ++j) h(i, j) -= q * h(r, j);
                for (long j = 0; j < m; ++j) u(i, j) -= q * u(r, j);
                if (h(i, c) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) {
            for (long j = 0; j < n; ++j) h(r, j) = -h(r, j);
            for (long j = 0; j < m; ++j) u(r, j) = -u(r, j);
        }
        // reduce entries above the pivot
        for (long i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            if (q == 0) continue;
            for (long j = 0; j < n; ++j) h(i, j) -= q * h(r, j);
            for (long j = 0; j < m; ++j) u(i, j) -= q * u(r, j);
        }
        ++r;
    }
    if (transform) *transform = u;
    return h;
}

// Nonzero rows of the HNF: canonical basis of the row span.
inline IMat hnf_basis(const IMat& a) {
    IMat h = hnf(a);
    long r = 0;
    for (long i = 0; i < h.rows(); ++i) {
        bool z = true;
        for (long j = 0; j < h.cols(); ++j)
            if (h(i, j) != 0) { z = false; break; }
        if (!z) ++r;
    }
    IMat b(r, h.cols());
    long k = 0;
    for (long i = 0; i < h.rows(); ++i) {
        bool z = true;
        for (long j = 0; j < h.cols(); ++j)
            if (h(i, j) != 0) { z = false; break; }
        if (!z) { for (long j = 0; j < h.cols(); ++j) b(k, j) = h(i, j); ++k; }
    }
    return b;
}

// Basis (as rows) of { x in Z^m : x * A = 0 }.
inline IMat left_kernel(const IMat& a) {
    IMat u;
    IMat h = hnf(a, &u);
    std::vector<long> zr;
    for (long i = 0; i < h.rows(); ++i) {
        bool z = true;
        for (long j = 0; j < h.cols(); ++j)
            if (h(i, j) != 0) { z = false; break; }
        if (z) zr.push_back(i);
    }
    IMat k((long)zr.size(), a.rows());
    for (size_t t = 0; t < zr.size(); ++t)
        for (long j = 0; j < a.rows(); ++j) k((long)t, j) = u(zr[t], j);
    return hnf_basis(k);
}

// Basis (as rows) of { x in Z^n : A * x^T = 0 }.
inline IMat right_kernel(const IMat& a) { return left_kernel(a.transpose()); }

// Saturation of the row span of B inside Z^n: the set of integer vectors
// lying in the rational row space, as an HNF basis.
inline IMat saturate_rowspace(const IMat& b) {
    IMat k = right_kernel(b);          // rows y with B y^T = 0
    if (k.rows() == 0) return IMat::identity(b.cols());
    return right_kernel(k);            // x with K x^T = 0  <=>  x in rowspace_Q(B)
}

struct SmithForm {
    IMat u, v;             // unimodular, u*a*v = diag(d)
    std::vector<Int> d;    // d_1 | d_2 | ..., nonnegative; zeros trail
};

// Smith normal form with transforms. At each diagonal position the pivot is
// made to divide every entry of the remaining block, which yields the
// divisibility chain directly.
inline SmithForm snf(const IMat& a) {
    long m = a.rows(), n = a.cols();
    IMat s = a, u = IMat::identity(m), v = IMat::identity(n);
    long dim = std::min(m, n);
    for (long t = 0; t < dim; ++t) {
        bool nonzero = false;
        for (long i = t; i < m && !nonzero; ++i)
            for (long j = t; j < n; ++j)
                if (s(i, j) != 0) { nonzero = true; break; }
        if (!nonzero) break;
        while (true) {
            // move a minimal-absolute-value nonzero entry to (t, t)
            long pi = -1, pj = -1;
            for (long i = t; i < m; ++i)
                for (long j = t; j < n; ++j)
                    if (s(i, j) != 0 &&
                        (pi < 0 || abs(s(i, j)) < abs(s(pi, pj)))) { pi = i; pj = j; }
            s.swap_rows(t, pi); u.swap_rows(t, pi);
            s.swap_cols(t, pj); v.swap_cols(t, pj);
            // reduce column t and row t
            bool dirty = false;
            for (long i = t + 1; i < m; ++i) {
                if (s(i, t) == 0) continue;
                Int q = s(i, t) / s(t, t);
                for (long j = 0; j < n; ++j) s(i, j) -= q * s(t, j);
                for (long j = 0; j < m; ++j) u(i, j) -= q * u(t, j);
                if (s(i, t) != 0) dirty = true;
            }
            if (dirty) continue;
            for (long j = t + 1; j < n; ++j) {
                if (s(t, j) == 0) continue;
                Int q = s(t, j) / s(t, t);
                for (long i = 0; i < m; ++i) s(i, j) -= q * s(i, t);
                for (long i = 0; i < n; ++i) v(i, j) -= q * v(i, t);
                if (s(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // pivot must divide the whole remaining block
            long bi = -1, bj = -1;
            for (long i = t + 1; i < m && bi < 0; ++i)
                for (long j = t + 1; j < n; ++j)
                    if (s(i, j) % s(t, t) != 0) { bi = i; bj = j; break; }
            if (bi < 0) break;
            for (long j = 0; j < n; ++j) s(t, j) += s(bi, j);
            for (long j = 0; j < m; ++j) u(t, j) += u(bi, j);
        }
    }
    for (long i = 0; i < dim; ++i) {
        if (s(i, i) < 0) {
            for (long k = 0; k < m; ++k) u(i, k) = -u(i, k);
            s(i, i) = -s(i, i);
        }
    }
    SmithForm f;
    f.u = u;
    f.v = v;
    f.d.resize(dim);
    for (long i = 0; i < dim; ++i) f.d[i] = s(i, i);
    return f;
}

inline Rat dot(const QVec& a, const QVec& b) {
    require(a.size() == b.size(), "vector length mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline QVec apply(const QMat& m, const QVec& x) {
    require((long)x.size() == m.cols(), "vector length mismatch");
    QVec y(m.rows(), Rat(0));
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
    return y;
}

inline QVec apply(const IMat& m, const QVec& x) { return apply(to_rational(m), x); }

}  // namespace latvac
