#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracdiff/problem.hpp"

namespace fracdiff {

enum class Preset
{
    table1,
    table2,
    table3,
    oracle,
    custom
};

std::optional<Preset> preset_from_name(std::string_view name);
std::string_view preset_name(Preset preset);

/// One experiment, read from a `key = value` document.
///
/// For the table and oracle presets only `alpha` (restricting the run to one
/// order) and `output` are meaningful. A custom experiment describes the
/// problem in full and asks for a temporal study (`cells` + `tau_list`), a
/// spatial study (`steps` + `h_list`), or both.
struct ExperimentConfig
{
    Preset preset = Preset::custom;
    std::optional<double> alpha;
    std::optional<std::string> output;

    // custom only
    double final_time = 1.0;
    std::optional<int> cells;
    std::optional<int> steps;
    std::vector<double> tau_list;
    std::vector<double> h_list;
    CoefficientLaw coefficient = CoefficientLaw::constant(1.0);
    PiecewiseFn w0 = PiecewiseFn::zero();
    SourceTerm source = SourceTerm::zero();

    /// Problem of a custom experiment; alpha must be set.
    ProblemSpec problem() const;
};

struct ConfigIssue
{
    int line; // 0 when the issue is not tied to a line
    std::string message;
};

/// Every problem found in a config document, not just the first.
class ConfigError : public std::runtime_error
{
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);

    const std::vector<ConfigIssue>& issues() const noexcept { return m_issues; }

private:
    std::vector<ConfigIssue> m_issues;
};

/// Parses and validates; throws ConfigError listing all issues.
ExperimentConfig parse_config(std::string_view text);

/// Re-checks a config after command-line overrides; throws ConfigError.
void validate_config(const ExperimentConfig& config);

/// Runs the experiment, prints console tables to `console` and writes the CSV
/// (default path `<preset>.csv`). The CSV appears only if every solve
/// succeeded. Returns the process exit status.
int run(const ExperimentConfig& config, std::ostream& console, std::ostream& errors);

} // namespace fracdiff
