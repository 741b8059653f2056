#include "fracdiff/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fracdiff/fem1d.hpp"
#include "fracdiff/mittag_leffler.hpp"
#include "fracdiff/solver.hpp"

namespace fracdiff {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void require_halving(std::span<const double> values, const char* what)
{
    if (values.empty())
        throw std::invalid_argument(std::string(what) + " must not be empty");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!(values[k] > 0.0))
            throw std::invalid_argument(std::string(what) + " entries must be positive");
        if (k > 0 && std::abs(values[k] * 2.0 - values[k - 1]) > 1e-12 * values[k - 1])
            throw std::invalid_argument(std::string(what) + " must halve at every entry");
    }
}

// Runs job(k) for k = 0..count-1 concurrently; results stay in index order.
template <typename Job>
auto parallel_map(std::size_t count, Job job)
{
    using Result = decltype(job(std::size_t{0}));
    std::vector<std::future<Result>> pending;
    pending.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        pending.push_back(std::async(std::launch::async, job, k));
    std::vector<Result> out;
    out.reserve(count);
    for (auto& f : pending)
        out.push_back(f.get());
    return out;
}

std::string fraction_label(double value)
{
    const double inv = 1.0 / value;
    char buf[64];
    if (std::abs(inv - std::round(inv)) < 1e-9 * inv)
        std::snprintf(buf, sizeof buf, "1/%.0f", std::round(inv));
    else
        std::snprintf(buf, sizeof buf, "%.4g", value);
    return buf;
}

std::vector<double> reciprocals(std::initializer_list<int> denominators)
{
    std::vector<double> out;
    for (int d : denominators)
        out.push_back(1.0 / d);
    return out;
}

} // namespace

std::vector<double> RateTable::observed_rates(std::span<const double> errors)
{
    std::vector<double> rates;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        if (errors[k] > 0.0 && errors[k + 1] > 0.0)
            rates.push_back(std::log(errors[k] / errors[k + 1]) / std::log(2.0));
        else
            rates.push_back(nan);
    }
    return rates;
}

int steps_for(double final_time, double tau)
{
    const double ratio = final_time / tau;
    const double steps = std::round(ratio);
    if (steps < 1.0 || std::abs(ratio - steps) > 1e-9 * ratio)
        throw std::invalid_argument("time step " + std::to_string(tau) +
                                    " does not divide the final time " +
                                    std::to_string(final_time));
    return static_cast<int>(steps);
}

int cells_for(double h)
{
    const double ratio = 1.0 / h;
    const double cells = std::round(ratio);
    if (cells < 2.0 || std::abs(ratio - cells) > 1e-9 * ratio)
        throw std::invalid_argument("mesh size " + std::to_string(h) +
                                    " must be 1/n with n >= 2");
    return static_cast<int>(cells);
}

RateTable temporal_study(const ProblemSpec& spec, int n_cells, std::span<const double> tau_list,
                         std::string label)
{
    spec.validate();
    require_halving(tau_list, "tau list");
    const Mesh1D<double> mesh(n_cells);

    std::vector<int> steps;
    for (double tau : tau_list)
        steps.push_back(steps_for(spec.final_time, tau));
    steps.push_back(2 * steps.back());

    const auto finals = parallel_map(steps.size(), [&](std::size_t k) {
        return solve(spec, n_cells, steps[k]).final_state();
    });

    RateTable table{std::move(label), Axis::temporal, {tau_list.begin(), tau_list.end()}, {}, {}};
    for (std::size_t k = 0; k < tau_list.size(); ++k)
        table.errors.push_back(l2_norm(mesh, NodalVector<double>(finals[k] - finals[k + 1])));
    table.rates = RateTable::observed_rates(table.errors);
    return table;
}

RateTable spatial_study(const ProblemSpec& spec, double tau, std::span<const double> h_list,
                        std::string label)
{
    spec.validate();
    require_halving(h_list, "h list");
    const int n_steps = steps_for(spec.final_time, tau);

    std::vector<int> cells;
    for (double h : h_list)
        cells.push_back(cells_for(h));
    cells.push_back(2 * cells.back());

    const auto finals = parallel_map(cells.size(), [&](std::size_t k) {
        return solve(spec, cells[k], n_steps).final_state();
    });

    RateTable table{std::move(label), Axis::spatial, {h_list.begin(), h_list.end()}, {}, {}};
    for (std::size_t k = 0; k < h_list.size(); ++k) {
        const Mesh1D<double> coarse(cells[k]);
        const Mesh1D<double> fine(cells[k + 1]);
        const NodalVector<double> diff = prolong(finals[k], coarse, fine) - finals[k + 1];
        table.errors.push_back(l2_norm(fine, diff));
    }
    table.rates = RateTable::observed_rates(table.errors);
    return table;
}

ProblemSpec oracle_problem(const OracleSpec& oracle)
{
    ProblemSpec spec;
    spec.alpha = oracle.alpha;
    spec.final_time = oracle.final_time;
    spec.coefficient = CoefficientLaw::constant(oracle.kappa);
    spec.w0 = PiecewiseFn::sine(oracle.mode);
    spec.source = SourceTerm::zero();
    return spec;
}

namespace {

struct OracleError
{
    double l2;
    double max_nodal;
};

OracleError oracle_error(const OracleSpec& oracle, int n_cells, int n_steps)
{
    const ProblemSpec spec = oracle_problem(oracle);
    const DiscreteRun run = solve(spec, n_cells, n_steps);
    // separable closed form: one Mittag-Leffler evaluation per run
    const SpectralMode mode{oracle.mode};
    const double decay = mittag_leffler(
        oracle.alpha, -oracle.kappa * mode.eigenvalue() * std::pow(oracle.final_time, oracle.alpha));
    auto exact = [&](double x) { return decay * std::sin(oracle.mode * std::numbers::pi * x); };

    const auto& w = run.final_state();
    double max_err = 0.0;
    for (int j = 1; j < run.mesh.n_cells(); ++j)
        max_err = std::max(max_err, std::abs(w[j - 1] - exact(run.mesh.node(j))));
    return {l2_error(run.mesh, w, exact), max_err};
}

OracleTables assemble(std::vector<double> resolutions, const std::vector<OracleError>& errs,
                      Axis axis, const std::string& label)
{
    OracleTables out{{label + " (L2)", axis, resolutions, {}, {}},
                     {label + " (max nodal)", axis, resolutions, {}, {}}};
    for (const auto& e : errs) {
        out.l2.errors.push_back(e.l2);
        out.max_nodal.errors.push_back(e.max_nodal);
    }
    out.l2.rates = RateTable::observed_rates(out.l2.errors);
    out.max_nodal.rates = RateTable::observed_rates(out.max_nodal.errors);
    return out;
}

std::string oracle_label(const OracleSpec& o, const char* axis)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "oracle %s alpha=%g", axis, o.alpha);
    return buf;
}

} // namespace

OracleTables oracle_temporal_study(const OracleSpec& oracle, int n_cells,
                                   std::span<const double> tau_list)
{
    oracle_problem(oracle).validate();
    require_halving(tau_list, "tau list");
    std::vector<int> steps;
    for (double tau : tau_list)
        steps.push_back(steps_for(oracle.final_time, tau));
    const auto errs = parallel_map(steps.size(), [&](std::size_t k) {
        return oracle_error(oracle, n_cells, steps[k]);
    });
    return assemble({tau_list.begin(), tau_list.end()}, errs, Axis::temporal,
                    oracle_label(oracle, "temporal"));
}

OracleTables oracle_spatial_study(const OracleSpec& oracle, double tau,
                                  std::span<const double> h_list)
{
    oracle_problem(oracle).validate();
    require_halving(h_list, "h list");
    const int n_steps = steps_for(oracle.final_time, tau);
    std::vector<int> cells;
    for (double h : h_list)
        cells.push_back(cells_for(h));
    const auto errs = parallel_map(cells.size(), [&](std::size_t k) {
        return oracle_error(oracle, cells[k], n_steps);
    });
    return assemble({h_list.begin(), h_list.end()}, errs, Axis::spatial,
                    oracle_label(oracle, "spatial"));
}

namespace presets {

ProblemSpec table1(double alpha)
{
    ProblemSpec spec;
    spec.alpha = alpha;
    spec.final_time = 1.0;
    spec.coefficient = CoefficientLaw::power(1.0, 1.01);
    spec.w0 = PiecewiseFn::zero();
    spec.source = SourceTerm::separable(PiecewiseFn::indicator(0.0, 0.5), 0.1);
    return spec;
}

ProblemSpec table2(double alpha)
{
    ProblemSpec spec;
    spec.alpha = alpha;
    spec.final_time = 1.0;
    spec.coefficient = CoefficientLaw::power(1.0, 2.01);
    spec.w0 = PiecewiseFn::indicator(0.5, 1.0);
    spec.source = SourceTerm::zero();
    return spec;
}

ProblemSpec table3(double alpha)
{
    ProblemSpec spec;
    spec.alpha = alpha;
    spec.final_time = 2.0;
    spec.coefficient = CoefficientLaw::power(10.0, 1.01);
    spec.w0 = PiecewiseFn::indicator(0.5, 1.0);
    spec.source = SourceTerm::separable(PiecewiseFn::indicator(0.0, 0.5), 0.1);
    return spec;
}

std::vector<double> temporal_taus() { return reciprocals({50, 100, 200, 400, 800}); }
std::vector<double> spatial_hs() { return reciprocals({32, 64, 128, 256, 512}); }
std::vector<double> oracle_temporal_taus() { return reciprocals({50, 100, 200, 400}); }
std::vector<double> oracle_spatial_hs() { return reciprocals({16, 32, 64, 128}); }

std::vector<double> table1_alphas() { return {0.3, 0.7}; }
std::vector<double> table2_alphas() { return {0.4, 0.6}; }
std::vector<double> table3_alphas() { return {0.2, 0.7}; }
std::vector<double> oracle_alphas() { return {0.5, 0.8}; }

namespace {
std::string label_for(const char* name, double alpha)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s alpha=%g", name, alpha);
    return buf;
}
} // namespace

RateTable run_table1(double alpha)
{
    return temporal_study(table1(alpha), temporal_cells, temporal_taus(),
                          label_for("table1", alpha));
}

RateTable run_table2(double alpha)
{
    return temporal_study(table2(alpha), temporal_cells, temporal_taus(),
                          label_for("table2", alpha));
}

RateTable run_table3(double alpha)
{
    return spatial_study(table3(alpha), spatial_tau, spatial_hs(), label_for("table3", alpha));
}

} // namespace presets

void write_csv(std::ostream& out, std::span<const RateTable> tables)
{
    out << "resolution,error,rate\n";
    char buf[128];
    for (const auto& table : tables) {
        if (table.errors.size() != table.resolutions.size() ||
            (!table.errors.empty() && table.rates.size() + 1 != table.errors.size()))
            throw std::invalid_argument("write_csv: inconsistent table '" + table.label + "'");
        for (std::size_t k = 0; k < table.errors.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.16e,%.16e,", table.resolutions[k], table.errors[k]);
            out << buf;
            if (k > 0) {
                const double r = table.rates[k - 1];
                if (std::isnan(r))
                    out << "nan";
                else {
                    std::snprintf(buf, sizeof buf, "%.16e", r);
                    out << buf;
                }
            }
            out << '\n';
        }
    }
}

std::vector<RateTable> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != "resolution,error,rate")
        throw std::runtime_error("read_csv: missing header 'resolution,error,rate'");

    std::vector<RateTable> tables;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::stringstream row(line);
        std::string cells[3];
        for (auto& cell : cells)
            std::getline(row, cell, ',');

        auto parse = [&](const std::string& s) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != s.size())
                throw std::runtime_error("read_csv: bad number '" + s + "' on line " +
                                         std::to_string(line_no));
            return v;
        };

        const bool starts_table = cells[2].empty();
        if (starts_table)
            tables.emplace_back();
        else if (tables.empty())
            throw std::runtime_error("read_csv: first row must have an empty rate");
        auto& t = tables.back();
        t.resolutions.push_back(parse(cells[0]));
        t.errors.push_back(parse(cells[1]));
        if (!starts_table)
            t.rates.push_back(parse(cells[2]));
    }
    return tables;
}

std::string format_table(const RateTable& table)
{
    std::ostringstream out;
    char buf[64];
    out << table.label << (table.axis == Axis::temporal ? "  (tau)" : "  (h)") << '\n';
    std::snprintf(buf, sizeof buf, "%-8s", table.axis == Axis::temporal ? "tau" : "h");
    out << buf;
    for (double r : table.resolutions) {
        std::snprintf(buf, sizeof buf, " %10s", fraction_label(r).c_str());
        out << buf;
    }
    out << "\n" << std::string(8, ' ');
    for (double e : table.errors) {
        std::snprintf(buf, sizeof buf, " %10.3E", e);
        out << buf;
    }
    out << "\n" << "Rate    " << std::string(11, ' ');
    for (double r : table.rates) {
        if (std::isnan(r))
            std::snprintf(buf, sizeof buf, " %10s", "-");
        else
            std::snprintf(buf, sizeof buf, " %10.4f", r);
        out << buf;
    }
    out << '\n';
    return out.str();
}

} // namespace fracdiff
