// Acceptance suite: reproduces the three published convergence tables, the
// closed-form oracle comparison, the alpha = 1 reduction and the property
// checks. Prints one PASS/FAIL line per criterion; exit status is the number
// of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracdiff/experiments.hpp"
#include "fracdiff/solver.hpp"
#include "reference_solvers.hpp"

using namespace fracdiff;
using Clock = std::chrono::steady_clock;

namespace {

struct Published
{
    double alpha;
    std::vector<double> errors;
    std::vector<double> rates;
};

const std::vector<Published> table1_published{
    {0.3, {7.038e-04, 3.269e-04, 1.506e-04, 6.899e-05, 3.150e-05}, {1.1063, 1.1186, 1.1259, 1.1310}},
    {0.7, {2.661e-04, 1.225e-04, 5.646e-05, 2.601e-05, 1.197e-05}, {1.1186, 1.1180, 1.1183, 1.1192}},
};
const std::vector<Published> table2_published{
    {0.4, {8.319e-03, 4.193e-03, 1.997e-03, 9.421e-04, 4.534e-04}, {0.9885, 1.0705, 1.0835, 1.0552}},
    {0.6, {3.802e-03, 1.873e-03, 9.194e-04, 4.542e-04, 2.256e-04}, {1.0217, 1.0262, 1.0172, 1.0095}},
};
const std::vector<Published> table3_published{
    {0.2, {9.828e-04, 2.483e-04, 6.224e-05, 1.557e-05, 3.893e-06}, {1.9848, 1.9962, 1.9990, 1.9998}},
    {0.7, {1.196e-04, 3.341e-05, 8.675e-06, 2.192e-06, 5.494e-07}, {1.8395, 1.9453, 1.9849, 1.9961}},
};

struct Verdict
{
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what)
    {
        if (!condition) {
            ok = false;
            detail << "\n      violated: " << what;
        }
    }
};

int failures = 0;

void report(int id, const std::string& name, const Verdict& v, double seconds)
{
    std::printf("[%s] criterion %d: %s (%.1f s)%s\n", v.ok ? "PASS" : "FAIL", id, name.c_str(),
                seconds, v.detail.str().c_str());
    std::fflush(stdout);
    if (!v.ok)
        ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

void compare_table(Verdict& v, const RateTable& got, const Published& ref, double error_rel_tol,
                   double rate_abs_tol, double rate_lo, double rate_hi)
{
    v.detail << "\n    " << got.label << ": errors";
    for (double e : got.errors)
        v.detail << ' ' << fmt("%.3E", e);
    v.detail << " | rates";
    for (double r : got.rates)
        v.detail << ' ' << fmt("%.4f", r);

    for (std::size_t k = 0; k < ref.errors.size(); ++k) {
        const double rel = std::abs(got.errors[k] - ref.errors[k]) / ref.errors[k];
        v.require(rel <= error_rel_tol,
                  fmt("alpha=%g error %.0f off by %.1f%%", ref.alpha, double(k), 100 * rel));
        if (k > 0)
            v.require(got.errors[k] < got.errors[k - 1],
                      fmt("alpha=%g errors not decreasing at %.0f", ref.alpha, double(k)));
    }
    for (std::size_t k = 0; k < ref.rates.size(); ++k) {
        v.require(std::abs(got.rates[k] - ref.rates[k]) <= rate_abs_tol,
                  fmt("alpha=%g rate %.4f vs published %.4f", ref.alpha, got.rates[k], ref.rates[k]));
        v.require(got.rates[k] >= rate_lo && got.rates[k] <= rate_hi,
                  fmt("alpha=%g rate %.4f outside bracket", ref.alpha, got.rates[k]));
    }
}

double elapsed(Clock::time_point since)
{
    return std::chrono::duration<double>(Clock::now() - since).count();
}

void table_criterion(int id, const char* name, const std::vector<Published>& published,
                     const std::function<RateTable(double)>& run_one, double error_rel_tol,
                     double rate_abs_tol, double rate_lo, double rate_hi, double budget_seconds)
{
    const auto start = Clock::now();
    Verdict v;
    for (const auto& ref : published)
        compare_table(v, run_one(ref.alpha), ref, error_rel_tol, rate_abs_tol, rate_lo, rate_hi);
    const double seconds = elapsed(start);
    v.require(seconds < budget_seconds, fmt("runtime %.1f s over budget %.0f s", seconds, budget_seconds));
    report(id, name, v, seconds);
}

void oracle_criterion()
{
    const auto start = Clock::now();
    Verdict v;
    for (double alpha : presets::oracle_alphas()) {
        const OracleSpec spec{alpha, 1.0, 1, 1.0};
        const auto in_time = oracle_temporal_study(spec, presets::oracle_temporal_cells,
                                                   presets::oracle_temporal_taus());
        const auto in_space = oracle_spatial_study(spec, presets::oracle_spatial_tau,
                                                   presets::oracle_spatial_hs());
        for (const RateTable* t : {&in_time.l2, &in_space.l2}) {
            const bool temporal = t->axis == Axis::temporal;
            const double min_order = temporal ? 0.9 : 1.9;
            v.detail << "\n    " << t->label << ": errors";
            for (double e : t->errors)
                v.detail << ' ' << fmt("%.3E", e);
            v.detail << " | orders";
            for (double r : t->rates)
                v.detail << ' ' << fmt("%.4f", r);
            for (std::size_t k = 0; k < t->rates.size(); ++k) {
                v.require(t->errors[k + 1] < t->errors[k],
                          fmt("alpha=%g error does not decrease at step %.0f", alpha, double(k)) +
                              (temporal ? " (time)" : " (space)"));
                v.require(t->rates[k] >= min_order,
                          fmt("alpha=%g order %.4f below %.1f", alpha, t->rates[k], min_order) +
                              (temporal ? " (time)" : " (space)"));
            }
        }
    }
    report(4, "closed-form oracle: time order >= 0.9 (h=1/256), space order >= 1.9 (tau=1/2000)",
           v, elapsed(start));
}

void heat_reduction_criterion()
{
    const auto start = Clock::now();
    Verdict v;
    ProblemSpec spec;
    spec.alpha = 1.0;
    spec.final_time = 1.0;
    spec.coefficient = CoefficientLaw::power(2.0, 1.01);
    spec.w0 = PiecewiseFn::sine(1);
    spec.source = SourceTerm::separable(PiecewiseFn::indicator(0.0, 0.5), 0.1);

    const int cells = 128, steps = 100;
    const auto run = solve(spec, cells, steps);
    Eigen::VectorXd w0(cells - 1);
    for (int j = 1; j < cells; ++j)
        w0[j - 1] = std::sin(M_PI * j / cells);
    const auto ref = reference::backward_euler_heat(
        cells, steps, spec.final_time, [](double t) { return 2.0 * std::pow(t, 1.01); }, w0,
        [](double t) { return std::pow(t, 0.1); }, 0.0, 0.5);
    double worst = 0.0;
    for (int n = 0; n <= steps; ++n)
        worst = std::max(worst, (run.trajectory[n] - ref[n]).lpNorm<Eigen::Infinity>());
    v.detail << "\n    max nodal difference " << fmt("%.3e", worst);
    v.require(worst <= 1e-12, "difference above 1e-12");
    report(5, "alpha=1 matches independent backward-Euler heat solver (100 steps, 1e-12)", v,
           elapsed(start));
}

void property_criterion()
{
    const auto start = Clock::now();
    Verdict v;

    // CQ weights
    {
        double worst_inverse = 0.0;
        bool signs = true;
        for (double alpha : {0.2, 0.5, 0.8}) {
            const auto w = generate(alpha, 1.0, 513);
            double partial = 1.0;
            for (int i = 1; i < 513; ++i) {
                signs &= w.g()[i] < 0.0 && partial + w.g()[i] > 0.0;
                partial += w.g()[i];
            }
            for (int k = 0; k < 513; ++k) {
                double c = 0.0;
                for (int i = 0; i <= k; ++i)
                    c += w.g()[i] * std::exp(std::lgamma(k - i + 1.0 - alpha) -
                                             std::lgamma(1.0 - alpha) - std::lgamma(k - i + 1.0));
                worst_inverse = std::max(worst_inverse, std::abs(c - (k == 0 ? 1.0 : 0.0)));
            }
        }
        v.detail << "\n    CQ inverse convolution " << fmt("%.2e", worst_inverse);
        v.require(signs, "weight signs / positive partial sums");
        v.require(worst_inverse <= 1e-10, "generating-function inverse above 1e-10");
    }

    ProblemSpec spec = presets::table3(0.4);
    spec.final_time = 1.0;
    const int cells = 64, steps = 80;
    const auto run = solve(spec, cells, steps);

    // frozen coefficient index
    {
        double worst = 0.0;
        for (int m : {0, steps / 2, steps}) {
            const auto literal = reference::frozen_coefficient_run(spec, cells, steps, m);
            for (int n = 0; n <= steps; ++n)
                worst = std::max(worst, (run.trajectory[n] - literal[n]).lpNorm<Eigen::Infinity>());
        }
        v.detail << "\n    frozen-index independence " << fmt("%.2e", worst);
        v.require(worst <= 1e-11, "frozen-index independence above 1e-11");
    }

    // superposition
    {
        ProblemSpec a = spec, b = spec, ab = spec;
        a.source = SourceTerm::zero();
        b.w0 = PiecewiseFn::zero();
        ab.w0 = 2.5 * spec.w0;
        ab.source = SourceTerm::separable(PiecewiseFn::indicator(0.0, 0.5), 0.1, -0.75);
        const auto ra = solve(a, cells, steps), rb = solve(b, cells, steps), rab = solve(ab, cells, steps);
        double worst = 0.0;
        for (int n = 0; n <= steps; ++n)
            worst = std::max(worst, (rab.trajectory[n] - 2.5 * ra.trajectory[n] + 0.75 * rb.trajectory[n])
                                        .lpNorm<Eigen::Infinity>());
        v.detail << "\n    superposition " << fmt("%.2e", worst);
        v.require(worst <= 1e-11, "superposition above 1e-11");
    }

    // symmetry
    {
        ProblemSpec sym = spec;
        sym.w0 = PiecewiseFn::indicator(0.25, 0.75);
        sym.source = SourceTerm::separable(PiecewiseFn::indicator(0.375, 0.625), 0.1);
        const auto r = solve(sym, cells, steps);
        double worst = 0.0;
        for (const auto& w : r.trajectory)
            worst = std::max(worst, (w - w.reverse().eval()).lpNorm<Eigen::Infinity>());
        v.detail << "\n    symmetry " << fmt("%.2e", worst);
        v.require(worst <= 1e-12, "symmetry above 1e-12");
    }

    // prolongation
    {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> g;
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 2 + trial * 3;
            const Mesh1D<double> coarse(n), fine(2 * n);
            NodalVector<double> x(coarse.n_dofs());
            for (auto& e : x)
                e = g(rng);
            worst = std::max(worst, std::abs(l2_norm(fine, prolong(x, coarse, fine)) - l2_norm(coarse, x)));
        }
        v.detail << "\n    prolongation norm drift " << fmt("%.2e", worst);
        v.require(worst <= 1e-13, "prolongation norm drift above 1e-13");
    }

    // determinism
    {
        const auto again = solve(spec, cells, steps);
        bool same = true;
        for (int n = 0; n <= steps; ++n)
            same &= std::memcmp(run.trajectory[n].data(), again.trajectory[n].data(),
                                sizeof(double) * run.trajectory[n].size()) == 0;
        std::ostringstream a, b;
        const auto t1 = presets::run_table2(0.6), t2 = presets::run_table2(0.6);
        write_csv(a, std::vector<RateTable>{t1});
        write_csv(b, std::vector<RateTable>{t2});
        same &= a.str() == b.str();
        v.require(same, "reruns differ");
    }

    report(6, "property suites (CQ weights, frozen index, superposition, symmetry, prolongation, determinism)",
           v, elapsed(start));
}

} // namespace

int main()
{
    table_criterion(1, "Table 1 (temporal, inhomogeneous): errors 10%, rates +-0.10, in [0.9,1.25], < 2 min",
                    table1_published, presets::run_table1, 0.10, 0.10, 0.9, 1.25, 120.0);
    table_criterion(2, "Table 2 (temporal, homogeneous): errors 10%, rates +-0.10, in [0.9,1.25], < 2 min",
                    table2_published, presets::run_table2, 0.10, 0.10, 0.9, 1.25, 120.0);
    table_criterion(3, "Table 3 (spatial): errors 10%, rates +-0.05, in [1.80,2.05], < 5 min",
                    table3_published, presets::run_table3, 0.10, 0.05, 1.80, 2.05, 300.0);
    oracle_criterion();
    heat_reduction_criterion();
    property_criterion();

    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
