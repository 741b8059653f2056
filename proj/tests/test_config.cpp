#include <cmath>
#include <stdexcept>
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracdiff/config.hpp"
#include "fracdiff/experiments.hpp"

using namespace fracdiff;
namespace fs = std::filesystem;

namespace {

std::vector<ConfigIssue> issues_of(std::string_view text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.issues();
    }
    return {};
}

bool mentions(const std::vector<ConfigIssue>& issues, std::string_view needle)
{
    for (const auto& i : issues)
        if (i.message.find(needle) != std::string::npos)
            return true;
    return false;
}

fs::path scratch_dir()
{
    auto dir = fs::temp_directory_path() / "fracdiff_config_tests";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("parse_config: presets")
{
    const auto c = parse_config("preset = table1\nalpha = 0.3");
    CHECK(c.preset == Preset::table1);
    REQUIRE(c.alpha);
    CHECK(*c.alpha == 0.3);

    const auto d = parse_config("# Table 3\npreset = table3   # both orders\n\noutput = out.csv\n");
    CHECK(d.preset == Preset::table3);
    CHECK_FALSE(d.alpha);
    CHECK(d.output == "out.csv");
}

TEST_CASE("parse_config: errors")
{
    CHECK(mentions(issues_of(""), "preset or full custom spec required"));
    CHECK(mentions(issues_of("  # only a comment\n"), "preset or full custom spec required"));
    CHECK(mentions(issues_of("alpha = 1.5"), "alpha must lie in (0,1]"));

    const auto many = issues_of("preset = custom\nalpah = 0.3\nalpha = x\nfinal_time = 1\nfoo\n");
    CHECK(many.size() >= 3);
    CHECK(mentions(many, "unknown key 'alpah'"));
    CHECK(mentions(many, "malformed number"));
    CHECK(mentions(many, "expected 'key = value'"));
    bool line_two = false;
    for (const auto& i : many)
        line_two |= i.line == 2;
    CHECK(line_two);

    CHECK(mentions(issues_of("preset = table9"), "unknown preset"));
    CHECK(mentions(issues_of("preset = table1\ncells = 64"), "custom only"));
    CHECK(mentions(issues_of("preset = table1\npreset = table2"), "duplicate key"));
}

TEST_CASE("parse_config: custom experiments")
{
    const auto c = parse_config(R"(
preset = custom
alpha = 0.3
final_time = 1
cells = 128
tau_list = 1/50, 1/100, 1/200
coeff.kind = power
coeff.scale = 1
coeff.exponent = 1.01
source.kind = chi
source.a = 0
source.b = 0.5
source.exponent = 0.1
)");
    CHECK(c.preset == Preset::custom);
    CHECK(c.tau_list == std::vector<double>{1.0 / 50, 1.0 / 100, 1.0 / 200});
    CHECK(c.cells == 128);
    const auto spec = c.problem();
    CHECK(spec.coefficient(2.0) == doctest::Approx(std::pow(2.0, 1.01)));
    CHECK(spec.source.time_exponent == 0.1);
    CHECK(spec.w0.is_zero());

    const auto sine = parse_config(
        "preset = custom\nalpha = 0.5\nfinal_time = 1\nsteps = 100\nh_list = 0.25, 0.125\n"
        "w0.kind = sine\nw0.mode = 2\n");
    CHECK(sine.problem().w0.smooth());
    const auto rough = parse_config(
        "preset = custom\nalpha = 0.5\nfinal_time = 1\nsteps = 100\nh_list = 0.25, 0.125\n"
        "w0.kind = sine\nw0.mode = 2\nw0.smooth = false\n");
    CHECK_FALSE(rough.problem().w0.smooth());

    CHECK(mentions(issues_of("preset = custom\nalpha = 0.5\nfinal_time = 1\n"), "requires 'tau_list'"));
    CHECK(mentions(issues_of("preset = custom\nalpha = 0.5\nfinal_time = 1\ntau_list = 0.1, 0.05\n"),
                   "requires 'cells'"));
    CHECK(mentions(issues_of("preset = custom\nalpha = 0.5\nfinal_time = 1\ncells = 8\n"
                             "tau_list = 0.1, 0.04\n"),
                   "halve"));
    CHECK(mentions(issues_of("preset = custom\nalpha = 0.5\nfinal_time = 1\ncells = 8\n"
                             "tau_list = 0.3, 0.15\n"),
                   "does not divide"));
    CHECK(mentions(issues_of("preset = custom\nalpha = 0.5\nfinal_time = 1\nsteps = 8\n"
                             "h_list = 0.25\nw0.kind = chi\nw0.a = 0.5\nw0.b = 1\nw0.smooth = true\n"),
                   "cannot be smooth"));
    CHECK(mentions(issues_of("preset = custom\nalpha = 0.5\nfinal_time = 1\nsteps = 8\n"
                             "h_list = 0.25\ncoeff.kind = power\ncoeff.scale = -2\n"),
                   "scale"));
}

TEST_CASE("run: custom study writes the CSV")
{
    const auto out = scratch_dir() / "custom.csv";
    fs::remove(out);
    auto c = parse_config("preset = custom\nalpha = 0.6\nfinal_time = 1\ncells = 16\n"
                          "tau_list = 0.1, 0.05\nw0.kind = chi\nw0.a = 0.5\nw0.b = 1\n");
    c.output = out.string();
    std::ostringstream console, errors;
    CHECK(run(c, console, errors) == 0);
    std::ifstream in(out);
    const auto tables = read_csv(in);
    REQUIRE(tables.size() == 1);
    CHECK(tables[0].errors.size() == 2);
    CHECK(console.str().find("custom temporal") != std::string::npos);
}

TEST_CASE("run: failures leave no CSV behind")
{
    const auto out = scratch_dir() / "never.csv";
    fs::remove(out);

    ExperimentConfig bad;
    bad.preset = Preset::table1;
    bad.alpha = 1.5;
    bad.output = out.string();
    std::ostringstream console, errors;
    CHECK(run(bad, console, errors) != 0);
    CHECK_FALSE(fs::exists(out));
    CHECK(errors.str().find("alpha") != std::string::npos);

    ExperimentConfig unwritable;
    unwritable.preset = Preset::table1;
    unwritable.alpha = 0.3;
    unwritable.output = (scratch_dir() / "missing_dir" / "x.csv").string();
    CHECK(run(unwritable, console, errors) != 0);
}
