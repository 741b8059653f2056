#pragma once

#include <span>
#include <vector>

#include "fracdiff/cq_weights.hpp"
#include "fracdiff/fem1d.hpp"
#include "fracdiff/mesh.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/tridiag.hpp"

namespace fracdiff {

/// Fully discrete trajectory W^0..W^L on a fixed mesh with step tau = T/L.
struct DiscreteRun
{
    Mesh1D<double> mesh;
    int n_steps;
    double tau;
    std::vector<NodalVector<double>> trajectory;

    double time(int n) const noexcept { return n * tau; }
    const NodalVector<double>& final_state() const { return trajectory.back(); }
};

/// R_h w0 for smooth-flagged data, P_h w0 otherwise.
NodalVector<double> project_initial(const ProblemSpec& spec, const Mesh1D<double>& mesh);

/// Load vector (f(t), phi_j) with the spatial integrals computed once.
class SourceLoad
{
public:
    SourceLoad(const SourceTerm& source, const Mesh1D<double>& mesh);

    NodalVector<double> at(double t) const;

private:
    SourceTerm m_source;
    NodalVector<double> m_spatial;
};

inline NodalVector<double> load_vector(const SourceTerm& source, const Mesh1D<double>& mesh,
                                       double t)
{
    return SourceLoad(source, mesh).at(t);
}

/// Backward-Euler convolution-quadrature stepper. Step n solves
///
///   (M/tau + d_0 k(t_n) S) W^n = M W^{n-1}/tau + b(t_n) - k(t_n) S sum_{i=1}^{n-1} d_i W^{n-i}
///
/// which is the scheme with the frozen coefficient A_h(t_m) already cancelled.
class TimeStepper
{
public:
    TimeStepper(const ProblemSpec& spec, const Mesh1D<double>& mesh, int n_steps);

    /// W^n from states[0..n-1] = W^0..W^{n-1}.
    NodalVector<double> step(std::span<const NodalVector<double>> states, int n) const;

    const CQWeights<double>& weights() const noexcept { return m_weights; }
    const TriDiagMatrix<double>& mass() const noexcept { return m_mass; }
    const TriDiagMatrix<double>& stiffness() const noexcept { return m_stiffness; }
    double tau() const noexcept { return m_tau; }

private:
    CoefficientLaw m_coefficient;
    double m_tau;
    int m_steps;
    CQWeights<double> m_weights;
    TriDiagMatrix<double> m_mass;
    TriDiagMatrix<double> m_stiffness;
    SourceLoad m_load;
};

/// Single step W^n of `run` using freshly assembled operators.
NodalVector<double> step(const DiscreteRun& run, const ProblemSpec& spec,
                         const CQWeights<double>& weights, int n);

/// Runs the scheme for n = 1..n_steps and keeps the whole trajectory.
DiscreteRun solve(const ProblemSpec& spec, int n_cells, int n_steps);

} // namespace fracdiff
