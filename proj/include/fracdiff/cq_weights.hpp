#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace fracdiff {

/// Backward-Euler convolution quadrature weights for a Riemann-Liouville
/// derivative of order 1 - alpha.
///
/// The weights are the Taylor coefficients of ((1 - zeta)/tau)^(1 - alpha):
/// d_i = tau^(alpha - 1) g_i with g_i = (-1)^i binom(1 - alpha, i).
template <typename Scalar = double>
class CQWeights
{
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    CQWeights(Scalar alpha, Scalar tau, Eigen::Index count)
        : m_alpha(alpha), m_tau(tau)
    {
        if (!(alpha > Scalar(0) && alpha <= Scalar(1)))
            throw std::invalid_argument("CQWeights: alpha must lie in (0,1], got " +
                                        std::to_string(static_cast<double>(alpha)));
        if (!(tau > Scalar(0)))
            throw std::invalid_argument("CQWeights: tau must be positive");
        if (count < 1)
            throw std::invalid_argument("CQWeights: count must be >= 1");

        m_g = binomial_series(Scalar(1) - alpha, count);
        using std::pow;
        m_d = pow(tau, alpha - Scalar(1)) * m_g;
    }

    /// Coefficients of (1 - zeta)^exponent, i.e. (-1)^i binom(exponent, i),
    /// by the recurrence c_i = c_{i-1} (i - 1 - exponent) / i.
    static Vector binomial_series(Scalar exponent, Eigen::Index count)
    {
        Vector c(count);
        c[0] = Scalar(1);
        for (Eigen::Index i = 1; i < count; ++i)
            c[i] = c[i - 1] * (Scalar(i - 1) - exponent) / Scalar(i);
        return c;
    }

    Scalar alpha() const noexcept { return m_alpha; }
    Scalar tau() const noexcept { return m_tau; }
    Eigen::Index size() const noexcept { return m_g.size(); }

    /// Dimensionless coefficients g_i.
    const Vector& g() const noexcept { return m_g; }
    /// Scaled weights d_i = tau^(alpha-1) g_i.
    const Vector& d() const noexcept { return m_d; }
    Scalar operator[](Eigen::Index i) const { return m_d[i]; }

private:
    Scalar m_alpha;
    Scalar m_tau;
    Vector m_g;
    Vector m_d;
};

template <typename Scalar = double>
CQWeights<Scalar> generate(Scalar alpha, Scalar tau, Eigen::Index count)
{
    return CQWeights<Scalar>(alpha, tau, count);
}

enum class HistoryTerm
{
    include_current,
    exclude_current
};

/// sum_{i=0}^{n-1} d_i W^{n-i}, where states[k] holds W^k (states[0] is W^0).
/// With exclude_current the i = 0 term is dropped so the caller can keep
/// d_0 W^n on the implicit side.
template <typename Scalar, typename VectorT>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> history_sum(const CQWeights<Scalar>& weights,
                                                     std::span<const VectorT> states,
                                                     Eigen::Index n, HistoryTerm term)
{
    if (n < 1)
        throw std::invalid_argument("history_sum: n must be >= 1");
    if (weights.size() < n)
        throw std::invalid_argument("history_sum: " + std::to_string(weights.size()) +
                                    " weights cannot cover " + std::to_string(n) + " terms");
    const bool with_current = term == HistoryTerm::include_current;
    if (static_cast<Eigen::Index>(states.size()) < (with_current ? n + 1 : n))
        throw std::invalid_argument("history_sum: not enough states");

    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> acc =
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(states[0].size());
    for (Eigen::Index i = with_current ? 0 : 1; i < n; ++i)
        acc.noalias() += weights[i] * states[n - i];
    return acc;
}

} // namespace fracdiff
