#pragma once

#include <complex>

#include "latvac/discform.hpp"
#include "latvac/enumerate.hpp"
#include "latvac/phase.hpp"
#include "latvac/qseries.hpp"

namespace latvac {

// eta^r to prec terms (integer q-steps); the q^{r/24} prefactor is carried in
// the series offset.
QSeries eta_power(long r, long prec);

// Theta series of the coset mu + L: coefficient of q^m counts vectors of
// norm 2m, for m = q(mu) + k, k = 0..prec-1.
QSeries theta_series(const Lattice& l, const QVec& mu, long prec);

// Theta_mu / eta^rank
QSeries module_character(const Lattice& l, const QVec& mu, long prec);

// The unique holomorphic c = 24 character shape: j - 744 + dim V1,
// computed from E_4^3 / eta^24.
QSeries c24_character(long dim_v1, long prec);

// value = scale_num * (1/sqrt(scale_root)) * e^{2 pi i phase}
struct ScaledPhase {
    Phase phase;
    Rat scale_num = Rat(1);
    long long scale_root = 1;

    std::complex<double> to_complex() const {
        return scale_num.get_d() / std::sqrt((double)scale_root) * phase.to_complex();
    }
};

struct ModularData {
    long n = 0;
    std::vector<ScaledPhase> entries;  // row-major n x n

    ScaledPhase& at(long i, long j) { return entries[i * n + j]; }
    const ScaledPhase& at(long i, long j) const { return entries[i * n + j]; }
};

// Zhu's T and S matrices on C[D] in the deterministic element order of D.
ModularData zhu_T(const FinQuadForm& d, long rank);
ModularData zhu_S(const FinQuadForm& d);

// S^2 [alpha] = [-alpha], S^4 = 1, (S T)^3 = S^2, verified in exact
// cyclotomic arithmetic.
bool zhu_relations_exact(const FinQuadForm& d, long rank);

// same relations numerically, max-norm tolerance
bool zhu_relations_numeric(const FinQuadForm& d, long rank, double tol);

}  // namespace latvac
