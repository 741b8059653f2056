#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "fracdiff/mesh.hpp"
#include "fracdiff/piecewise.hpp"
#include "fracdiff/tridiag.hpp"

namespace fracdiff {

namespace detail {

// 4-point Gauss-Legendre on [-1,1]; exact for polynomials of degree <= 7.
inline constexpr std::array<double, 4> gauss4_nodes{-0.86113631159405257522,
                                                    -0.33998104358485626480,
                                                    0.33998104358485626480,
                                                    0.86113631159405257522};
inline constexpr std::array<double, 4> gauss4_weights{0.34785484513745385737,
                                                      0.65214515486254614263,
                                                      0.65214515486254614263,
                                                      0.34785484513745385737};

/// Calls visit(x, w) for every Gauss point of [a,b].
template <typename Visitor>
void gauss4(double a, double b, Visitor&& visit)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t q = 0; q < 4; ++q)
        visit(mid + half * gauss4_nodes[q], half * gauss4_weights[q]);
}

template <typename Scalar>
void require_dofs(const Mesh1D<Scalar>& mesh, Eigen::Index size, const char* who)
{
    if (size != mesh.n_dofs())
        throw std::invalid_argument(std::string(who) + ": vector has " + std::to_string(size) +
                                    " entries, mesh has " + std::to_string(mesh.n_dofs()) +
                                    " interior dofs");
}

} // namespace detail

/// Mass matrix (phi_i, phi_j) over interior hat functions.
template <typename Scalar>
TriDiagMatrix<Scalar> assemble_mass(const Mesh1D<Scalar>& mesh)
{
    const Scalar h = mesh.h();
    return TriDiagMatrix<Scalar>::toeplitz(mesh.n_dofs(), h / Scalar(6), Scalar(4) * h / Scalar(6));
}

/// Stiffness matrix (phi_i', phi_j').
template <typename Scalar>
TriDiagMatrix<Scalar> assemble_stiffness(const Mesh1D<Scalar>& mesh)
{
    const Scalar h = mesh.h();
    return TriDiagMatrix<Scalar>::toeplitz(mesh.n_dofs(), Scalar(-1) / h, Scalar(2) / h);
}

/// b_j = integral of g * phi_j over (0,1).
///
/// Elements are split at the breakpoints of g, and each piece is integrated
/// with 4-point Gauss, so the piecewise cubic part is integrated exactly.
template <typename Scalar>
NodalVector<Scalar> load_integrals(const PiecewiseFn& g, const Mesh1D<Scalar>& mesh)
{
    NodalVector<Scalar> b = NodalVector<Scalar>::Zero(mesh.n_dofs());
    if (g.is_zero())
        return b;

    const auto breaks = g.breakpoints();
    const int n = mesh.n_cells();
    const double h = static_cast<double>(mesh.h());
    std::size_t k = 1; // first breakpoint that may lie inside the current element

    for (int e = 0; e < n; ++e) {
        const double xl = static_cast<double>(mesh.node(e));
        const double xr = static_cast<double>(mesh.node(e + 1));
        double left_acc = 0.0;  // against the hat of node e
        double right_acc = 0.0; // against the hat of node e+1

        auto integrate = [&](double a, double b) {
            detail::gauss4(a, b, [&](double x, double w) {
                const double gx = g(x) * w;
                right_acc += gx * (x - xl) / h;
                left_acc += gx * (xr - x) / h;
            });
        };

        while (k < breaks.size() && breaks[k] <= xl)
            ++k;
        double lo = xl;
        for (std::size_t j = k; j < breaks.size() && breaks[j] < xr; ++j) {
            integrate(lo, breaks[j]);
            lo = breaks[j];
        }
        integrate(lo, xr);

        if (e >= 1)
            b[e - 1] += static_cast<Scalar>(left_acc);
        if (e + 1 <= n - 1)
            b[e] += static_cast<Scalar>(right_acc);
    }
    return b;
}

/// L^2 projection P_h g: solves M c = (g, phi_j).
template <typename Scalar>
NodalVector<Scalar> l2_project(const PiecewiseFn& g, const Mesh1D<Scalar>& mesh)
{
    return solve_tridiag(assemble_mass(mesh), load_integrals(g, mesh));
}

/// Ritz projection R_h g: solves S c = (g', phi_j'). Requires smooth g.
template <typename Scalar>
NodalVector<Scalar> ritz_project(const PiecewiseFn& g, const Mesh1D<Scalar>& mesh)
{
    if (!g.smooth())
        throw std::invalid_argument("ritz_project: data has no derivative (not smooth-flagged)");

    const int n = mesh.n_cells();
    const double h = static_cast<double>(mesh.h());
    NodalVector<Scalar> b = NodalVector<Scalar>::Zero(mesh.n_dofs());
    if (g.is_zero())
        return b;
    for (int e = 0; e < n; ++e) {
        // integral of g' over the element; 4-point Gauss gives the same value
        // on the cubic pieces but not on the sine modes of coarse meshes
        const double acc = g(static_cast<double>(mesh.node(e + 1))) - g(static_cast<double>(mesh.node(e)));
        // phi_e' = -1/h and phi_{e+1}' = +1/h on element e
        if (e >= 1)
            b[e - 1] -= static_cast<Scalar>(acc / h);
        if (e + 1 <= n - 1)
            b[e] += static_cast<Scalar>(acc / h);
    }
    return solve_tridiag(assemble_stiffness(mesh), b);
}

/// Nodal interpolant at the interior nodes.
template <typename Scalar>
NodalVector<Scalar> interpolate(const PiecewiseFn& g, const Mesh1D<Scalar>& mesh)
{
    NodalVector<Scalar> v(mesh.n_dofs());
    for (int j = 1; j < mesh.n_cells(); ++j)
        v[j - 1] = static_cast<Scalar>(g(static_cast<double>(mesh.node(j))));
    return v;
}

/// (u, v)_{L^2} of two P1 functions.
template <typename Scalar>
Scalar l2_inner(const Mesh1D<Scalar>& mesh, const NodalVector<Scalar>& u,
                const NodalVector<Scalar>& v)
{
    detail::require_dofs(mesh, u.size(), "l2_inner");
    detail::require_dofs(mesh, v.size(), "l2_inner");
    return u.dot(apply(assemble_mass(mesh), v));
}

/// Exact L^2 norm sqrt(v^T M v) of a P1 function vanishing at 0 and 1.
template <typename Scalar>
Scalar l2_norm(const Mesh1D<Scalar>& mesh, const NodalVector<Scalar>& v)
{
    using std::sqrt;
    return sqrt(std::max(Scalar(0), l2_inner(mesh, v, v)));
}

/// L^2 distance between a P1 function and a callable, 4-point Gauss per element.
template <typename Scalar, typename Fn>
Scalar l2_error(const Mesh1D<Scalar>& mesh, const NodalVector<Scalar>& v, Fn&& exact)
{
    detail::require_dofs(mesh, v.size(), "l2_error");
    const int n = mesh.n_cells();
    const double h = static_cast<double>(mesh.h());
    double acc = 0.0;
    for (int e = 0; e < n; ++e) {
        const double xl = static_cast<double>(mesh.node(e));
        const double vl = e >= 1 ? static_cast<double>(v[e - 1]) : 0.0;
        const double vr = e + 1 <= n - 1 ? static_cast<double>(v[e]) : 0.0;
        detail::gauss4(xl, static_cast<double>(mesh.node(e + 1)), [&](double x, double w) {
            const double t = (x - xl) / h;
            const double d = vl + (vr - vl) * t - static_cast<double>(exact(x));
            acc += w * d * d;
        });
    }
    return static_cast<Scalar>(std::sqrt(acc));
}

/// Exact P1 refinement from `coarse` to a mesh with twice as many cells.
template <typename Scalar>
NodalVector<Scalar> prolong(const NodalVector<Scalar>& v, const Mesh1D<Scalar>& coarse,
                            const Mesh1D<Scalar>& fine)
{
    if (fine.n_cells() != 2 * coarse.n_cells())
        throw std::invalid_argument("prolong: fine mesh must have exactly twice the cells (" +
                                    std::to_string(fine.n_cells()) + " vs " +
                                    std::to_string(coarse.n_cells()) + ")");
    detail::require_dofs(coarse, v.size(), "prolong");

    const int nc = coarse.n_cells();
    NodalVector<Scalar> out(fine.n_dofs());
    auto coarse_value = [&](int j) { return (j == 0 || j == nc) ? Scalar(0) : v[j - 1]; };
    for (int j = 1; j < fine.n_cells(); ++j) {
        out[j - 1] = (j % 2 == 0) ? coarse_value(j / 2)
                                  : (coarse_value(j / 2) + coarse_value(j / 2 + 1)) / Scalar(2);
    }
    return out;
}

} // namespace fracdiff
