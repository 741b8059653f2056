#pragma once

#include "fracdiff/problem.hpp"

namespace fracdiff {

/// Dirichlet eigenpair of -d^2/dx^2 on (0,1).
struct SpectralMode
{
    int j;

    double eigenvalue() const;            // (j pi)^2
    double eigenfunction(double x) const; // sqrt(2) sin(j pi x)
};

/// E_alpha(z) = sum_k z^k / Gamma(alpha k + 1) for 0 < alpha <= 1, z <= 0.
///
/// Branches: exp(z) for alpha = 1; the power series for |z| <= 1; the
/// asymptotic expansion for z < -10 when its first dropped term is below
/// 1e-10; otherwise the Laplace-type integral
///   E_alpha(-x) = sin(alpha pi)/(alpha pi) int_0^inf exp(-u^(1/alpha) x^(1/alpha))
///                 / (u^2 + 2u cos(alpha pi) + 1) du.
/// Absolute accuracy is about 1e-10 on (-inf, 0].
double mittag_leffler(double alpha, double z);

namespace ml_branch {

/// Power series with compensated summation. Loses accuracy to cancellation
/// once |z| grows beyond a few units.
double series(double alpha, double z);
/// -sum_{k=1}^{terms} z^-k / Gamma(1 - alpha k), skipping the poles of Gamma.
double asymptotic(double alpha, double z, int terms = 10);
/// Magnitude of the first non-vanishing term dropped by asymptotic().
double asymptotic_tail(double alpha, double z, int terms = 10);
/// Integral representation, valid for 0 < alpha < 1 and z < 0.
double integral(double alpha, double z);

} // namespace ml_branch

/// W(x,t) for W0 = sin(j pi x), f = 0 and constant diffusivity kappa:
/// E_alpha(-kappa (j pi)^2 t^alpha) sin(j pi x).
double exact_solution(double alpha, double kappa, int mode, double x, double t);

/// As above; rejects non-constant coefficient laws.
double exact_solution(double alpha, const CoefficientLaw& kappa, int mode, double x, double t);

} // namespace fracdiff
