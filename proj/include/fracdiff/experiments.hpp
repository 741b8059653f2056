#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fracdiff/problem.hpp"

namespace fracdiff {

enum class Axis
{
    temporal,
    spatial
};

/// Errors at successive resolutions and the observed orders between them.
/// rates[k] = log2(errors[k] / errors[k+1]), NaN when either error is zero.
struct RateTable
{
    std::string label;
    Axis axis = Axis::temporal;
    std::vector<double> resolutions;
    std::vector<double> errors;
    std::vector<double> rates;

    static std::vector<double> observed_rates(std::span<const double> errors);
};

/// Self-convergence in time on a fixed mesh: E_tau = ||W^L_tau - W^{2L}_{tau/2}||
/// at the final time. `tau_list` must halve at each entry and divide T.
RateTable temporal_study(const ProblemSpec& spec, int n_cells, std::span<const double> tau_list,
                         std::string label = {});

/// Self-convergence in space at fixed tau: E_h = ||prolong(W^L_h) - W^L_{h/2}||
/// measured on the finer mesh.
RateTable spatial_study(const ProblemSpec& spec, double tau, std::span<const double> h_list,
                        std::string label = {});

/// Constant-coefficient, source-free problem with W0 = sin(j pi x).
struct OracleSpec
{
    double alpha = 0.5;
    double kappa = 1.0;
    int mode = 1;
    double final_time = 1.0;
};

ProblemSpec oracle_problem(const OracleSpec& oracle);

/// Errors against the closed-form solution at the final time.
struct OracleTables
{
    RateTable l2;
    RateTable max_nodal;
};

OracleTables oracle_temporal_study(const OracleSpec& oracle, int n_cells,
                                   std::span<const double> tau_list);
OracleTables oracle_spatial_study(const OracleSpec& oracle, double tau,
                                  std::span<const double> h_list);

/// Number of steps L with L * tau = T; throws if tau does not divide T.
int steps_for(double final_time, double tau);
/// Number of cells n with n * h = 1; throws if h does not divide 1.
int cells_for(double h);

namespace presets {

/// kappa = t^1.01, f = t^0.1 chi_[0,1/2], W0 = 0, T = 1.
ProblemSpec table1(double alpha);
/// kappa = t^2.01, f = 0, W0 = chi_(1/2,1], T = 1.
ProblemSpec table2(double alpha);
/// kappa = 10 t^1.01, f = t^0.1 chi_[0,1/2], W0 = chi_(1/2,1], T = 2.
ProblemSpec table3(double alpha);

inline constexpr int temporal_cells = 128;
inline constexpr double spatial_tau = 1.0 / 1000.0;
inline constexpr int oracle_temporal_cells = 256;
inline constexpr double oracle_spatial_tau = 1.0 / 2000.0;

std::vector<double> temporal_taus();        // 1/50 ... 1/800
std::vector<double> spatial_hs();           // 1/32 ... 1/512
std::vector<double> oracle_temporal_taus(); // 1/50 ... 1/400
std::vector<double> oracle_spatial_hs();    // 1/16 ... 1/128

std::vector<double> table1_alphas(); // 0.3, 0.7
std::vector<double> table2_alphas(); // 0.4, 0.6
std::vector<double> table3_alphas(); // 0.2, 0.7
std::vector<double> oracle_alphas(); // 0.5, 0.8

RateTable run_table1(double alpha);
RateTable run_table2(double alpha);
RateTable run_table3(double alpha);

} // namespace presets

/// CSV with header `resolution,error,rate`; the rate cell is empty on the
/// first row of each table, so consecutive tables can share one file.
void write_csv(std::ostream& out, std::span<const RateTable> tables);
/// Inverse of write_csv. Labels and axes are not stored and come back empty.
std::vector<RateTable> read_csv(std::istream& in);

/// Fixed-width console rendering: resolutions, errors, then rates.
std::string format_table(const RateTable& table);

} // namespace fracdiff
