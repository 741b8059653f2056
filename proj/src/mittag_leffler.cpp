#include "fracdiff/mittag_leffler.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace fracdiff {

namespace {

constexpr double pi = std::numbers::pi;

void check_arguments(double alpha, double z)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("mittag_leffler: alpha must lie in (0,1], got " +
                                    std::to_string(alpha));
    if (!(z <= 0.0))
        throw std::invalid_argument("mittag_leffler: z must be <= 0, got " + std::to_string(z));
}

// 1 - alpha k is a pole of Gamma, so 1/Gamma vanishes there
bool gamma_pole(double x)
{
    return x <= 0.0 && std::abs(x - std::round(x)) < 1e-12;
}

} // namespace

double SpectralMode::eigenvalue() const
{
    if (j < 1)
        throw std::invalid_argument("SpectralMode: j must be >= 1");
    return (j * pi) * (j * pi);
}

double SpectralMode::eigenfunction(double x) const
{
    return std::numbers::sqrt2 * std::sin(j * pi * x);
}

namespace ml_branch {

double series(double alpha, double z)
{
    double sum = 1.0;
    double carry = 0.0;
    double power = 1.0;
    for (int k = 1; k < 2000; ++k) {
        power *= z;
        const double term = power / std::tgamma(alpha * k + 1.0);
        if (!std::isfinite(term))
            break;
        // Kahan
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        if (std::abs(term) <= std::numeric_limits<double>::epsilon() * 1e-2 * std::abs(sum) &&
            k > std::abs(z))
            break;
    }
    return sum;
}

double asymptotic(double alpha, double z, int terms)
{
    double sum = 0.0;
    for (int k = 1; k <= terms; ++k) {
        const double arg = 1.0 - alpha * k;
        if (gamma_pole(arg))
            continue;
        sum -= std::pow(z, -k) / std::tgamma(arg);
    }
    return sum;
}

double asymptotic_tail(double alpha, double z, int terms)
{
    for (int k = terms + 1; k <= terms + 4; ++k) {
        const double arg = 1.0 - alpha * k;
        if (!gamma_pole(arg))
            return std::abs(std::pow(z, -k) / std::tgamma(arg));
    }
    return 0.0;
}

double integral(double alpha, double z)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ml_branch::integral: alpha must lie in (0,1)");
    if (!(z < 0.0))
        throw std::invalid_argument("ml_branch::integral: z must be < 0");

    const double rate = std::pow(-z, 1.0 / alpha);
    const double c = std::cos(alpha * pi);
    auto f = [=](double u) {
        const double decay = std::exp(-std::pow(u, 1.0 / alpha) * rate);
        return decay == 0.0 ? 0.0 : decay / (u * u + 2.0 * u * c + 1.0);
    };

    // split at u = 1, where the denominator is smallest for alpha near 1
    boost::math::quadrature::tanh_sinh<double> finite;
    boost::math::quadrature::exp_sinh<double> tail;
    const double head = finite.integrate(f, 0.0, 1.0, 1e-14);
    const double rest = tail.integrate([&](double s) { return f(1.0 + s); }, 1e-14);
    return std::sin(alpha * pi) / (alpha * pi) * (head + rest);
}

} // namespace ml_branch

double mittag_leffler(double alpha, double z)
{
    check_arguments(alpha, z);
    if (z == 0.0)
        return 1.0;
    if (alpha == 1.0)
        return std::exp(z);
    if (z >= -1.0)
        return ml_branch::series(alpha, z);
    if (z < -10.0 && ml_branch::asymptotic_tail(alpha, z) < 1e-10)
        return ml_branch::asymptotic(alpha, z);
    return ml_branch::integral(alpha, z);
}

double exact_solution(double alpha, double kappa, int mode, double x, double t)
{
    if (t < 0.0)
        throw std::invalid_argument("exact_solution: t must be >= 0");
    const SpectralMode m{mode};
    const double z = -kappa * m.eigenvalue() * std::pow(t, alpha);
    return mittag_leffler(alpha, z) * std::sin(mode * pi * x);
}

double exact_solution(double alpha, const CoefficientLaw& kappa, int mode, double x, double t)
{
    if (!kappa.is_constant())
        throw std::invalid_argument("exact_solution: closed form needs a constant coefficient");
    return exact_solution(alpha, kappa.scale, mode, x, t);
}

} // namespace fracdiff
