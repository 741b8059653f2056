#pragma once

#include "fracdiff/piecewise.hpp"

namespace fracdiff {

/// Time-dependent diffusivity kappa(t) = 1/a^2(t) multiplying the Laplacian.
struct CoefficientLaw
{
    enum class Kind
    {
        constant,
        power
    };

    Kind kind = Kind::constant;
    double scale = 1.0;
    double exponent = 0.0;

    static CoefficientLaw constant(double s) { return {Kind::constant, s, 0.0}; }
    /// s * t^p
    static CoefficientLaw power(double s, double p) { return {Kind::power, s, p}; }

    double operator()(double t) const;
    bool is_constant() const noexcept { return kind == Kind::constant || exponent == 0.0; }
    void validate() const;
};

/// f(x,t) = c t^q g(x), or zero.
struct SourceTerm
{
    double scale = 0.0;
    double time_exponent = 0.0;
    PiecewiseFn spatial = PiecewiseFn::zero();

    static SourceTerm zero() { return {}; }
    static SourceTerm separable(PiecewiseFn g, double q, double c = 1.0)
    {
        return {c, q, std::move(g)};
    }

    bool is_zero() const noexcept { return scale == 0.0 || spatial.is_zero(); }
    /// c t^q, with t^0 = 1 for every t >= 0.
    double time_factor(double t) const;
    void validate() const;
};

/// Data of one initial-boundary value problem on (0,1) x (0,T].
/// The smoothness flag of `w0` selects Ritz (smooth) or L^2 projection of the
/// initial datum.
struct ProblemSpec
{
    double alpha = 0.5;
    double final_time = 1.0;
    CoefficientLaw coefficient = CoefficientLaw::constant(1.0);
    PiecewiseFn w0 = PiecewiseFn::zero();
    SourceTerm source = SourceTerm::zero();

    /// Throws std::invalid_argument on the first violated precondition.
    void validate() const;
};

} // namespace fracdiff
