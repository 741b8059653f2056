#include "fracdiff/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracdiff {

double CoefficientLaw::operator()(double t) const
{
    if (kind == Kind::constant || exponent == 0.0)
        return scale;
    return scale * std::pow(t, exponent);
}

void CoefficientLaw::validate() const
{
    if (!(scale >= 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("coefficient scale must be finite and >= 0");
    if (kind == Kind::power && (!(exponent >= 0.0) || !std::isfinite(exponent)))
        throw std::invalid_argument("coefficient exponent must be finite and >= 0");
}

double SourceTerm::time_factor(double t) const
{
    if (time_exponent == 0.0)
        return scale;
    return scale * std::pow(t, time_exponent);
}

void SourceTerm::validate() const
{
    if (!std::isfinite(scale))
        throw std::invalid_argument("source scale must be finite");
    if (!(time_exponent >= 0.0) || !std::isfinite(time_exponent))
        throw std::invalid_argument("source time exponent must be finite and >= 0");
}

void ProblemSpec::validate() const
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in (0,1]");
    if (!(final_time > 0.0) || !std::isfinite(final_time))
        throw std::invalid_argument("final time must be positive, got " +
                                    std::to_string(final_time));
    coefficient.validate();
    source.validate();
}

NodalVector<double> project_initial(const ProblemSpec& spec, const Mesh1D<double>& mesh)
{
    if (spec.w0.is_zero())
        return NodalVector<double>::Zero(mesh.n_dofs());
    return spec.w0.smooth() ? ritz_project(spec.w0, mesh) : l2_project(spec.w0, mesh);
}

SourceLoad::SourceLoad(const SourceTerm& source, const Mesh1D<double>& mesh)
    : m_source(source),
      m_spatial(source.is_zero() ? NodalVector<double>::Zero(mesh.n_dofs())
                                 : load_integrals(source.spatial, mesh))
{
}

NodalVector<double> SourceLoad::at(double t) const
{
    if (t < 0.0)
        throw std::invalid_argument("load_vector: t must be >= 0");
    if (m_source.is_zero())
        return NodalVector<double>::Zero(m_spatial.size());
    return m_source.time_factor(t) * m_spatial;
}

TimeStepper::TimeStepper(const ProblemSpec& spec, const Mesh1D<double>& mesh, int n_steps)
    : m_coefficient(spec.coefficient),
      m_tau(spec.final_time / n_steps),
      m_steps(n_steps),
      m_weights(spec.alpha, m_tau, n_steps + 1),
      m_mass(assemble_mass(mesh)),
      m_stiffness(assemble_stiffness(mesh)),
      m_load(spec.source, mesh)
{
}

NodalVector<double> TimeStepper::step(std::span<const NodalVector<double>> states, int n) const
{
    if (n < 1 || n > m_steps)
        throw std::invalid_argument("step: index " + std::to_string(n) + " outside 1.." +
                                    std::to_string(m_steps));
    if (static_cast<int>(states.size()) < n)
        throw std::invalid_argument("step: W^0..W^{n-1} required");

    const double t = n * m_tau;
    const double kappa = m_coefficient(t);

    NodalVector<double> rhs = apply(m_mass, states[n - 1]) / m_tau + m_load.at(t);
    // alpha = 1 leaves only d_0, so the history vanishes
    if (n > 1 && kappa != 0.0 && m_weights.alpha() < 1.0) {
        const NodalVector<double> hist =
            history_sum(m_weights, states, n, HistoryTerm::exclude_current);
        rhs.noalias() -= kappa * apply(m_stiffness, hist);
    }

    const auto system = combine(1.0 / m_tau, m_mass, m_weights[0] * kappa, m_stiffness);
    return solve_tridiag(system, rhs);
}

NodalVector<double> step(const DiscreteRun& run, const ProblemSpec& spec,
                         const CQWeights<double>& weights, int n)
{
    if (weights.size() < n)
        throw std::invalid_argument("step: not enough convolution weights");
    if (weights.alpha() != spec.alpha || weights.tau() != run.tau)
        throw std::invalid_argument("step: weights do not match the run");
    return TimeStepper(spec, run.mesh, run.n_steps)
        .step(std::span<const NodalVector<double>>(run.trajectory), n);
}

DiscreteRun solve(const ProblemSpec& spec, int n_cells, int n_steps)
{
    spec.validate();
    if (n_steps < 1)
        throw std::invalid_argument("solve: n_steps must be >= 1");

    DiscreteRun run{Mesh1D<double>(n_cells), n_steps, spec.final_time / n_steps, {}};
    const TimeStepper stepper(spec, run.mesh, n_steps);

    run.trajectory.reserve(static_cast<std::size_t>(n_steps) + 1);
    run.trajectory.push_back(project_initial(spec, run.mesh));
    for (int n = 1; n <= n_steps; ++n)
        run.trajectory.push_back(
            stepper.step(std::span<const NodalVector<double>>(run.trajectory), n));
    return run;
}

} // namespace fracdiff
