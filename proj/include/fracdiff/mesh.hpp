#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace fracdiff {

/// Uniform partition of the unit interval (0,1) into `n_cells` elements.
/// Only interior nodes x_j = j*h, j = 1..n_cells-1, carry degrees of freedom;
/// the two Dirichlet end nodes are eliminated.
template <typename Scalar = double>
class Mesh1D
{
public:
    explicit Mesh1D(int n_cells) : m_cells(n_cells)
    {
        if (n_cells < 2)
            throw std::invalid_argument("Mesh1D: n_cells must be >= 2, got " +
                                        std::to_string(n_cells));
        m_h = Scalar(1) / Scalar(n_cells);
    }

    int n_cells() const noexcept { return m_cells; }
    int n_dofs() const noexcept { return m_cells - 1; }
    Scalar h() const noexcept { return m_h; }

    /// Coordinate of node j, 0 <= j <= n_cells (interior dofs are 1..n_cells-1).
    Scalar node(int j) const noexcept { return Scalar(j) / Scalar(m_cells); }

    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> interior_nodes() const
    {
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(n_dofs());
        for (int j = 1; j < m_cells; ++j)
            x[j - 1] = node(j);
        return x;
    }

    friend bool operator==(const Mesh1D& a, const Mesh1D& b) noexcept
    {
        return a.m_cells == b.m_cells;
    }

private:
    int m_cells;
    Scalar m_h;
};

template <typename Scalar = double>
inline Mesh1D<Scalar> build_mesh(int n_cells)
{
    return Mesh1D<Scalar>(n_cells);
}

/// Coefficient vector of a P1 function over the interior nodes of a mesh.
template <typename Scalar = double>
using NodalVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

} // namespace fracdiff
