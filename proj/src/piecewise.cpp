#include "fracdiff/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracdiff {

namespace {

double horner(const PiecewiseFn::Cubic& c, double x)
{
    return ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
}

double horner_derivative(const PiecewiseFn::Cubic& c, double x)
{
    return (3.0 * c[3] * x + 2.0 * c[2]) * x + c[1];
}

} // namespace

PiecewiseFn::PiecewiseFn(std::vector<double> breaks, std::vector<Cubic> pieces,
                         std::vector<SineMode> sines, bool smooth)
    : m_breaks(std::move(breaks)), m_pieces(std::move(pieces)), m_sines(std::move(sines)),
      m_smooth(smooth)
{
    if (m_breaks.size() < 2 || m_pieces.size() + 1 != m_breaks.size())
        throw std::invalid_argument("PiecewiseFn: need one piece per subinterval");
    if (m_breaks.front() != 0.0 || m_breaks.back() != 1.0)
        throw std::invalid_argument("PiecewiseFn: breakpoints must start at 0 and end at 1");
    for (std::size_t i = 1; i < m_breaks.size(); ++i)
        if (!(m_breaks[i] > m_breaks[i - 1]))
            throw std::invalid_argument("PiecewiseFn: breakpoints must be strictly increasing");
    for (const auto& s : m_sines)
        if (s.mode < 1)
            throw std::invalid_argument("PiecewiseFn: sine mode must be >= 1");
}

PiecewiseFn PiecewiseFn::zero()
{
    return constant(0.0);
}

PiecewiseFn PiecewiseFn::constant(double c)
{
    return polynomial({c, 0.0, 0.0, 0.0});
}

PiecewiseFn PiecewiseFn::indicator(double a, double b)
{
    if (!(0.0 <= a && a < b && b <= 1.0))
        throw std::invalid_argument("PiecewiseFn::indicator: need 0 <= a < b <= 1, got [" +
                                    std::to_string(a) + ", " + std::to_string(b) + "]");
    std::vector<double> breaks{0.0};
    std::vector<Cubic> pieces;
    if (a > 0.0) {
        breaks.push_back(a);
        pieces.push_back({0.0, 0.0, 0.0, 0.0});
    }
    pieces.push_back({1.0, 0.0, 0.0, 0.0});
    if (b < 1.0) {
        breaks.push_back(b);
        pieces.push_back({0.0, 0.0, 0.0, 0.0});
    }
    breaks.push_back(1.0);
    return PiecewiseFn(std::move(breaks), std::move(pieces), {}, false);
}

PiecewiseFn PiecewiseFn::polynomial(const Cubic& coeffs)
{
    return PiecewiseFn({0.0, 1.0}, {coeffs}, {}, true);
}

PiecewiseFn PiecewiseFn::piecewise(std::vector<double> breaks, std::vector<Cubic> pieces)
{
    return PiecewiseFn(std::move(breaks), std::move(pieces), {}, false);
}

PiecewiseFn PiecewiseFn::sine(int mode, double amplitude)
{
    return PiecewiseFn({0.0, 1.0}, {Cubic{}}, {SineMode{mode, amplitude}}, true);
}

std::size_t PiecewiseFn::piece_index(double x) const
{
    // right-continuous; x = 1 belongs to the last piece
    auto it = std::upper_bound(m_breaks.begin() + 1, m_breaks.end() - 1, x);
    return static_cast<std::size_t>(it - (m_breaks.begin() + 1));
}

double PiecewiseFn::operator()(double x) const
{
    double v = horner(m_pieces[piece_index(x)], x);
    for (const auto& s : m_sines)
        v += s.amplitude * std::sin(s.mode * std::numbers::pi * x);
    return v;
}

double PiecewiseFn::derivative(double x) const
{
    if (!m_smooth)
        throw std::invalid_argument("PiecewiseFn: derivative requested for non-smooth data");
    double v = horner_derivative(m_pieces[piece_index(x)], x);
    for (const auto& s : m_sines) {
        const double k = s.mode * std::numbers::pi;
        v += s.amplitude * k * std::cos(k * x);
    }
    return v;
}

bool PiecewiseFn::is_zero() const noexcept
{
    for (const auto& p : m_pieces)
        for (double c : p)
            if (c != 0.0)
                return false;
    for (const auto& s : m_sines)
        if (s.amplitude != 0.0)
            return false;
    return true;
}

PiecewiseFn PiecewiseFn::rough() const
{
    PiecewiseFn out = *this;
    out.m_smooth = false;
    return out;
}

PiecewiseFn PiecewiseFn::scaled(double s) const
{
    PiecewiseFn out = *this;
    for (auto& p : out.m_pieces)
        for (double& c : p)
            c *= s;
    for (auto& m : out.m_sines)
        m.amplitude *= s;
    return out;
}

PiecewiseFn operator+(const PiecewiseFn& a, const PiecewiseFn& b)
{
    std::vector<double> breaks;
    std::set_union(a.m_breaks.begin(), a.m_breaks.end(), b.m_breaks.begin(), b.m_breaks.end(),
                   std::back_inserter(breaks));
    std::vector<PiecewiseFn::Cubic> pieces;
    pieces.reserve(breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
        const auto& pa = a.m_pieces[a.piece_index(mid)];
        const auto& pb = b.m_pieces[b.piece_index(mid)];
        pieces.push_back({pa[0] + pb[0], pa[1] + pb[1], pa[2] + pb[2], pa[3] + pb[3]});
    }
    std::vector<PiecewiseFn::SineMode> sines = a.m_sines;
    sines.insert(sines.end(), b.m_sines.begin(), b.m_sines.end());
    return PiecewiseFn(std::move(breaks), std::move(pieces), std::move(sines),
                       a.m_smooth && b.m_smooth);
}

} // namespace fracdiff
