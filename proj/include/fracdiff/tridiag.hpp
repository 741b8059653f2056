#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace fracdiff {

/// Raised when Thomas elimination meets a zero (or non-finite) pivot.
class SingularMatrixError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Tridiagonal n x n matrix stored by its three diagonals.
/// sub(i) sits at (i+1, i) and super(i) at (i, i+1).
template <typename Scalar = double>
struct TriDiagMatrix
{
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Vector sub;
    Vector diag;
    Vector super;

    TriDiagMatrix() = default;

    TriDiagMatrix(Vector sub_, Vector diag_, Vector super_)
        : sub(std::move(sub_)), diag(std::move(diag_)), super(std::move(super_))
    {
        const Eigen::Index n = diag.size();
        if (n < 1 || sub.size() != n - 1 || super.size() != n - 1)
            throw std::invalid_argument("TriDiagMatrix: diagonal lengths must be (n-1, n, n-1)");
    }

    /// Constant-coefficient (Toeplitz) tridiagonal matrix.
    static TriDiagMatrix toeplitz(Eigen::Index n, Scalar off, Scalar center)
    {
        return TriDiagMatrix(Vector::Constant(n - 1, off), Vector::Constant(n, center),
                             Vector::Constant(n - 1, off));
    }

    Eigen::Index size() const noexcept { return diag.size(); }

    bool is_symmetric() const { return sub == super; }

    Scalar norm_inf() const
    {
        const Eigen::Index n = size();
        Scalar best = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            Scalar row = std::abs(diag[i]);
            if (i > 0)
                row += std::abs(sub[i - 1]);
            if (i + 1 < n)
                row += std::abs(super[i]);
            best = std::max(best, row);
        }
        return best;
    }

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense() const
    {
        const Eigen::Index n = size();
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
            Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
        a.diagonal() = diag;
        if (n > 1) {
            a.template diagonal<-1>() = sub;
            a.template diagonal<1>() = super;
        }
        return a;
    }
};

/// y = A x
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply(const TriDiagMatrix<Scalar>& a,
                                               const Eigen::MatrixBase<Derived>& x)
{
    const Eigen::Index n = a.size();
    if (x.size() != n)
        throw std::invalid_argument("apply: vector length does not match matrix");
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Scalar acc = a.diag[i] * x[i];
        if (i > 0)
            acc += a.sub[i - 1] * x[i - 1];
        if (i + 1 < n)
            acc += a.super[i] * x[i + 1];
        y[i] = acc;
    }
    return y;
}

/// alpha*A + beta*B, diagonal by diagonal.
template <typename Scalar>
TriDiagMatrix<Scalar> combine(Scalar alpha, const TriDiagMatrix<Scalar>& a, Scalar beta,
                              const TriDiagMatrix<Scalar>& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("combine: size mismatch");
    return TriDiagMatrix<Scalar>(alpha * a.sub + beta * b.sub, alpha * a.diag + beta * b.diag,
                                 alpha * a.super + beta * b.super);
}

/// Pivots d_0..d_{n-1} of Gaussian elimination without pivoting. All positive
/// for a symmetric matrix means all leading minors are positive.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> elimination_pivots(const TriDiagMatrix<Scalar>& a)
{
    const Eigen::Index n = a.size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> piv(n);
    piv[0] = a.diag[0];
    for (Eigen::Index i = 1; i < n; ++i)
        piv[i] = a.diag[i] - a.sub[i - 1] * a.super[i - 1] / piv[i - 1];
    return piv;
}

/// Thomas algorithm. No pivoting: intended for diagonally dominant systems.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve_tridiag(const TriDiagMatrix<Scalar>& a,
                                                       const Eigen::MatrixBase<Derived>& rhs)
{
    const Eigen::Index n = a.size();
    if (rhs.size() != n)
        throw std::invalid_argument("solve_tridiag: rhs length does not match matrix");

    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> c(n);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(n);

    auto check = [](Scalar pivot, Eigen::Index row) {
        if (pivot == Scalar(0) || !std::isfinite(static_cast<double>(pivot)))
            throw SingularMatrixError("solve_tridiag: zero pivot at row " + std::to_string(row));
    };

    Scalar pivot = a.diag[0];
    check(pivot, 0);
    c[0] = n > 1 ? a.super[0] / pivot : Scalar(0);
    x[0] = rhs[0] / pivot;
    for (Eigen::Index i = 1; i < n; ++i) {
        pivot = a.diag[i] - a.sub[i - 1] * c[i - 1];
        check(pivot, i);
        c[i] = i + 1 < n ? a.super[i] / pivot : Scalar(0);
        x[i] = (rhs[i] - a.sub[i - 1] * x[i - 1]) / pivot;
    }
    for (Eigen::Index i = n - 2; i >= 0; --i)
        x[i] -= c[i] * x[i + 1];
    return x;
}

} // namespace fracdiff
