#pragma once

#include <array>
#include <span>
#include <vector>

namespace fracdiff {

/// A real function on [0,1] made of a piecewise cubic part plus a finite sum
/// of sine modes a_k sin(m_k pi x).
///
/// The cubic part is described by sorted breakpoints 0 = b_0 < ... < b_P = 1
/// and one cubic per subinterval, so characteristic functions and other
/// discontinuous data are represented exactly. Quadrature code splits
/// elements at the breakpoints, which makes element integrals of the cubic
/// part exact.
///
/// The `smooth` flag says derivative data is meaningful (the function is
/// globally C^1 and may be Ritz projected). It is set by the constructors.
class PiecewiseFn
{
public:
    /// c0 + c1 x + c2 x^2 + c3 x^3
    using Cubic = std::array<double, 4>;

    struct SineMode
    {
        int mode;
        double amplitude;
    };

    static PiecewiseFn zero();
    static PiecewiseFn constant(double c);
    /// chi_[a,b]; endpoint inclusion is irrelevant in L^2.
    static PiecewiseFn indicator(double a, double b);
    /// A single cubic on [0,1]; smooth.
    static PiecewiseFn polynomial(const Cubic& coeffs);
    /// Arbitrary piecewise cubic; `breaks` includes 0 and 1. Not smooth.
    static PiecewiseFn piecewise(std::vector<double> breaks, std::vector<Cubic> pieces);
    /// amplitude * sin(mode * pi * x); smooth.
    static PiecewiseFn sine(int mode, double amplitude = 1.0);

    double operator()(double x) const;
    /// Throws std::invalid_argument unless smooth().
    double derivative(double x) const;

    bool smooth() const noexcept { return m_smooth; }
    bool is_zero() const noexcept;

    /// Breakpoints of the cubic part, including 0 and 1.
    std::span<const double> breakpoints() const noexcept { return m_breaks; }
    std::span<const Cubic> pieces() const noexcept { return m_pieces; }
    std::span<const SineMode> sines() const noexcept { return m_sines; }

    /// Same function with the smooth flag cleared (selects L^2 projection).
    PiecewiseFn rough() const;

    PiecewiseFn scaled(double s) const;
    friend PiecewiseFn operator+(const PiecewiseFn& a, const PiecewiseFn& b);
    friend PiecewiseFn operator*(double s, const PiecewiseFn& f) { return f.scaled(s); }

private:
    PiecewiseFn(std::vector<double> breaks, std::vector<Cubic> pieces,
                std::vector<SineMode> sines, bool smooth);

    std::size_t piece_index(double x) const;

    std::vector<double> m_breaks;
    std::vector<Cubic> m_pieces;
    std::vector<SineMode> m_sines;
    bool m_smooth;
};

} // namespace fracdiff
