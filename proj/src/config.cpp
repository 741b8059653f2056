#include "fracdiff/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "fracdiff/experiments.hpp"

namespace fracdiff {

namespace {

const std::set<std::string, std::less<>> known_keys{
    "preset",        "alpha",          "final_time", "cells",    "steps",    "tau_list",
    "h_list",        "coeff.kind",     "coeff.scale", "coeff.exponent", "w0.kind", "w0.a",
    "w0.b",          "w0.mode",        "w0.smooth",  "source.kind", "source.exponent",
    "source.a",      "source.b",       "output"};

const std::set<std::string, std::less<>> preset_keys{"preset", "alpha", "output"};

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

struct Entry
{
    std::string value;
    int line;
};

class Reader
{
public:
    Reader(const std::map<std::string, Entry, std::less<>>& entries, std::vector<ConfigIssue>& issues)
        : m_entries(entries), m_issues(issues)
    {
    }

    bool has(std::string_view key) const { return m_entries.find(key) != m_entries.end(); }

    int line(std::string_view key) const
    {
        auto it = m_entries.find(key);
        return it == m_entries.end() ? 0 : it->second.line;
    }

    void issue(std::string_view key, std::string message)
    {
        m_issues.push_back({line(key), std::move(message)});
    }

    std::optional<std::string> text(std::string_view key) const
    {
        auto it = m_entries.find(key);
        if (it == m_entries.end())
            return std::nullopt;
        return it->second.value;
    }

    // accepts decimals and simple fractions such as 1/50
    std::optional<double> number(std::string_view key)
    {
        auto s = text(key);
        if (!s)
            return std::nullopt;
        auto v = parse_number(*s);
        if (!v)
            issue(key, "'" + std::string(key) + "': malformed number '" + *s + "'");
        return v;
    }

    std::optional<int> integer(std::string_view key)
    {
        auto v = number(key);
        if (!v)
            return std::nullopt;
        if (*v != std::floor(*v) || std::abs(*v) > 1e9) {
            issue(key, "'" + std::string(key) + "' must be an integer");
            return std::nullopt;
        }
        return static_cast<int>(*v);
    }

    std::optional<bool> boolean(std::string_view key)
    {
        auto s = text(key);
        if (!s)
            return std::nullopt;
        if (*s == "true" || *s == "yes" || *s == "1")
            return true;
        if (*s == "false" || *s == "no" || *s == "0")
            return false;
        issue(key, "'" + std::string(key) + "' must be true or false");
        return std::nullopt;
    }

    std::vector<double> list(std::string_view key)
    {
        std::vector<double> out;
        auto s = text(key);
        if (!s)
            return out;
        std::stringstream items(*s);
        std::string item;
        while (std::getline(items, item, ',')) {
            auto v = parse_number(trim(item));
            if (!v) {
                issue(key, "'" + std::string(key) + "': malformed entry '" + trim(item) + "'");
                return {};
            }
            out.push_back(*v);
        }
        if (out.empty())
            issue(key, "'" + std::string(key) + "' must list at least one value");
        return out;
    }

    static std::optional<double> parse_number(const std::string& s)
    {
        auto one = [](const std::string& part) -> std::optional<double> {
            if (part.empty())
                return std::nullopt;
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(part, &used);
            } catch (const std::exception&) {
                return std::nullopt;
            }
            if (used != part.size() || !std::isfinite(v))
                return std::nullopt;
            return v;
        };
        const auto slash = s.find('/');
        if (slash == std::string::npos)
            return one(s);
        auto num = one(trim(s.substr(0, slash)));
        auto den = one(trim(s.substr(slash + 1)));
        if (!num || !den || *den == 0.0)
            return std::nullopt;
        return *num / *den;
    }

private:
    const std::map<std::string, Entry, std::less<>>& m_entries;
    std::vector<ConfigIssue>& m_issues;
};

std::string format_issues(const std::vector<ConfigIssue>& issues)
{
    std::string out = "invalid configuration:";
    for (const auto& i : issues) {
        out += "\n  ";
        if (i.line > 0)
            out += "line " + std::to_string(i.line) + ": ";
        out += i.message;
    }
    return out;
}

void check_halving(const std::vector<double>& values, const char* key, int line,
                   std::vector<ConfigIssue>& issues)
{
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!(values[k] > 0.0)) {
            issues.push_back({line, std::string(key) + " entries must be positive"});
            return;
        }
        if (k > 0 && std::abs(2.0 * values[k] - values[k - 1]) > 1e-12 * values[k - 1]) {
            issues.push_back({line, std::string(key) + " must halve at every entry"});
            return;
        }
    }
}

void collect_semantic_issues(const ExperimentConfig& c, std::vector<ConfigIssue>& issues)
{
    if (c.alpha && !(*c.alpha > 0.0 && *c.alpha <= 1.0))
        issues.push_back({0, "alpha must lie in (0,1]"});
    if (c.preset != Preset::custom)
        return;

    if (!c.alpha)
        issues.push_back({0, "custom experiment requires 'alpha'"});
    if (!(c.final_time > 0.0))
        issues.push_back({0, "final_time must be positive"});
    if (c.tau_list.empty() && c.h_list.empty())
        issues.push_back({0, "custom experiment requires 'tau_list' (with 'cells') or "
                             "'h_list' (with 'steps')"});
    if (!c.tau_list.empty()) {
        if (!c.cells)
            issues.push_back({0, "'tau_list' requires 'cells'"});
        check_halving(c.tau_list, "tau_list", 0, issues);
        if (c.final_time > 0.0)
            for (double tau : c.tau_list)
                if (tau > 0.0) {
                    try {
                        steps_for(c.final_time, tau);
                    } catch (const std::invalid_argument& e) {
                        issues.push_back({0, std::string("tau_list: ") + e.what()});
                        break;
                    }
                }
    }
    if (!c.h_list.empty()) {
        if (!c.steps)
            issues.push_back({0, "'h_list' requires 'steps'"});
        check_halving(c.h_list, "h_list", 0, issues);
        for (double h : c.h_list)
            if (h > 0.0) {
                try {
                    cells_for(h);
                } catch (const std::invalid_argument& e) {
                    issues.push_back({0, std::string("h_list: ") + e.what()});
                    break;
                }
            }
    }
    if (c.cells && *c.cells < 2)
        issues.push_back({0, "cells must be >= 2"});
    if (c.steps && *c.steps < 1)
        issues.push_back({0, "steps must be >= 1"});
    try {
        c.coefficient.validate();
    } catch (const std::invalid_argument& e) {
        issues.push_back({0, e.what()});
    }
    try {
        c.source.validate();
    } catch (const std::invalid_argument& e) {
        issues.push_back({0, e.what()});
    }
}

} // namespace

std::optional<Preset> preset_from_name(std::string_view name)
{
    if (name == "table1")
        return Preset::table1;
    if (name == "table2")
        return Preset::table2;
    if (name == "table3")
        return Preset::table3;
    if (name == "oracle")
        return Preset::oracle;
    if (name == "custom")
        return Preset::custom;
    return std::nullopt;
}

std::string_view preset_name(Preset preset)
{
    switch (preset) {
    case Preset::table1: return "table1";
    case Preset::table2: return "table2";
    case Preset::table3: return "table3";
    case Preset::oracle: return "oracle";
    case Preset::custom: return "custom";
    }
    return "custom";
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(format_issues(issues)), m_issues(std::move(issues))
{
}

ProblemSpec ExperimentConfig::problem() const
{
    ProblemSpec spec;
    spec.alpha = alpha.value_or(0.0);
    spec.final_time = final_time;
    spec.coefficient = coefficient;
    spec.w0 = w0;
    spec.source = source;
    return spec;
}

ExperimentConfig parse_config(std::string_view text)
{
    std::vector<ConfigIssue> issues;
    std::map<std::string, Entry, std::less<>> entries;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back({line_no, "expected 'key = value', got '" + line + "'"});
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys.contains(key)) {
            issues.push_back({line_no, "unknown key '" + key + "'"});
            continue;
        }
        if (value.empty()) {
            issues.push_back({line_no, "'" + key + "' has no value"});
            continue;
        }
        if (entries.contains(key)) {
            issues.push_back({line_no, "duplicate key '" + key + "'"});
            continue;
        }
        entries.emplace(key, Entry{value, line_no});
    }

    Reader r(entries, issues);
    ExperimentConfig c;

    if (entries.empty() && issues.empty())
        throw ConfigError({{0, "empty configuration: preset or full custom spec required"}});

    if (auto name = r.text("preset")) {
        if (auto p = preset_from_name(*name))
            c.preset = *p;
        else
            r.issue("preset", "unknown preset '" + *name +
                                  "' (expected table1, table2, table3, oracle or custom)");
    } else {
        issues.push_back({0, "missing 'preset' (table1, table2, table3, oracle or custom)"});
    }

    if (auto a = r.number("alpha")) {
        c.alpha = *a;
        if (!(*a > 0.0 && *a <= 1.0))
            r.issue("alpha", "alpha must lie in (0,1]");
    }
    c.output = r.text("output");

    if (c.preset != Preset::custom) {
        for (const auto& [key, entry] : entries)
            if (!preset_keys.contains(key))
                issues.push_back({entry.line, "'" + key + "' applies to preset = custom only"});
    } else {
        if (auto t = r.number("final_time"))
            c.final_time = *t;
        else if (!r.has("final_time"))
            issues.push_back({0, "custom experiment requires 'final_time'"});
        c.cells = r.integer("cells");
        c.steps = r.integer("steps");
        c.tau_list = r.list("tau_list");
        c.h_list = r.list("h_list");

        const std::string coeff_kind = r.text("coeff.kind").value_or("constant");
        const double scale = r.number("coeff.scale").value_or(1.0);
        const auto exponent = r.number("coeff.exponent");
        if (coeff_kind == "constant") {
            c.coefficient = CoefficientLaw::constant(scale);
            if (exponent)
                r.issue("coeff.exponent", "coeff.exponent needs coeff.kind = power");
        } else if (coeff_kind == "power") {
            c.coefficient = CoefficientLaw::power(scale, exponent.value_or(0.0));
        } else {
            r.issue("coeff.kind", "coeff.kind must be constant or power");
        }

        const std::string w0_kind = r.text("w0.kind").value_or("zero");
        const auto smooth = r.boolean("w0.smooth");
        if (w0_kind == "zero") {
            c.w0 = PiecewiseFn::zero();
        } else if (w0_kind == "chi") {
            auto a = r.number("w0.a");
            auto b = r.number("w0.b");
            if (!a || !b)
                r.issue("w0.kind", "w0.kind = chi requires w0.a and w0.b");
            else if (!(0.0 <= *a && *a < *b && *b <= 1.0))
                r.issue("w0.a", "w0 support must satisfy 0 <= w0.a < w0.b <= 1");
            else
                c.w0 = PiecewiseFn::indicator(*a, *b);
            if (smooth.value_or(false))
                r.issue("w0.smooth", "characteristic-function data cannot be smooth");
        } else if (w0_kind == "sine") {
            auto mode = r.integer("w0.mode");
            if (!mode || *mode < 1)
                r.issue(mode ? "w0.mode" : "w0.kind", "w0.kind = sine requires w0.mode >= 1");
            else
                c.w0 = smooth.value_or(true) ? PiecewiseFn::sine(*mode)
                                             : PiecewiseFn::sine(*mode).rough();
        } else {
            r.issue("w0.kind", "w0.kind must be zero, chi or sine");
        }

        const std::string source_kind = r.text("source.kind").value_or("zero");
        if (source_kind == "zero") {
            c.source = SourceTerm::zero();
        } else if (source_kind == "chi") {
            auto a = r.number("source.a");
            auto b = r.number("source.b");
            const double q = r.number("source.exponent").value_or(0.0);
            if (!a || !b)
                r.issue("source.kind", "source.kind = chi requires source.a and source.b");
            else if (!(0.0 <= *a && *a < *b && *b <= 1.0))
                r.issue("source.a", "source support must satisfy 0 <= source.a < source.b <= 1");
            else
                c.source = SourceTerm::separable(PiecewiseFn::indicator(*a, *b), q);
            if (q < 0.0)
                r.issue("source.exponent", "source.exponent must be >= 0");
        } else {
            r.issue("source.kind", "source.kind must be zero or chi");
        }
    }

    if (issues.empty())
        collect_semantic_issues(c, issues);
    if (!issues.empty())
        throw ConfigError(std::move(issues));
    return c;
}

void validate_config(const ExperimentConfig& config)
{
    std::vector<ConfigIssue> issues;
    collect_semantic_issues(config, issues);
    if (!issues.empty())
        throw ConfigError(std::move(issues));
}

namespace {

std::vector<double> alphas_for(const ExperimentConfig& c, std::vector<double> defaults)
{
    if (c.alpha)
        return {*c.alpha};
    return defaults;
}

std::vector<RateTable> compute(const ExperimentConfig& c, std::ostream& console)
{
    std::vector<RateTable> tables;
    auto emit = [&](RateTable t) {
        console << format_table(t) << '\n';
        tables.push_back(std::move(t));
    };

    switch (c.preset) {
    case Preset::table1:
        for (double a : alphas_for(c, presets::table1_alphas()))
            emit(presets::run_table1(a));
        break;
    case Preset::table2:
        for (double a : alphas_for(c, presets::table2_alphas()))
            emit(presets::run_table2(a));
        break;
    case Preset::table3:
        for (double a : alphas_for(c, presets::table3_alphas()))
            emit(presets::run_table3(a));
        break;
    case Preset::oracle:
        for (double a : alphas_for(c, presets::oracle_alphas())) {
            const OracleSpec spec{a, 1.0, 1, 1.0};
            auto in_time = oracle_temporal_study(spec, presets::oracle_temporal_cells,
                                                 presets::oracle_temporal_taus());
            auto in_space = oracle_spatial_study(spec, presets::oracle_spatial_tau,
                                                 presets::oracle_spatial_hs());
            console << format_table(in_time.max_nodal) << '\n';
            console << format_table(in_space.max_nodal) << '\n';
            emit(std::move(in_time.l2));
            emit(std::move(in_space.l2));
        }
        break;
    case Preset::custom: {
        const ProblemSpec spec = c.problem();
        if (!c.tau_list.empty())
            emit(temporal_study(spec, *c.cells, c.tau_list, "custom temporal"));
        if (!c.h_list.empty())
            emit(spatial_study(spec, spec.final_time / *c.steps, c.h_list, "custom spatial"));
        break;
    }
    }
    return tables;
}

} // namespace

int run(const ExperimentConfig& config, std::ostream& console, std::ostream& errors)
{
    namespace fs = std::filesystem;
    try {
        validate_config(config);
    } catch (const ConfigError& e) {
        errors << e.what() << '\n';
        return 1;
    }

    const fs::path output = config.output.value_or(std::string(preset_name(config.preset)) + ".csv");
    fs::path staging = output;
    staging += ".partial";
    {
        std::ofstream probe(staging);
        if (!probe) {
            errors << "cannot write output file " << output << '\n';
            return 1;
        }
    }

    std::error_code ec;
    try {
        const auto tables = compute(config, console);
        {
            std::ofstream out(staging, std::ios::trunc);
            write_csv(out, tables);
            out.flush();
            if (!out)
                throw std::runtime_error("write to " + staging.string() + " failed");
        }
        fs::rename(staging, output);
    } catch (const std::exception& e) {
        fs::remove(staging, ec);
        errors << "error: " << e.what() << '\n';
        return 1;
    }
    console << "wrote " << output.string() << '\n';
    return 0;
}

} // namespace fracdiff
