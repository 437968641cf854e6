// Command-line front end: analyze scenario files and run the built-in demos.
//
// Exit codes: 0 success, 1 invalid input (usage, syntax, validation),
// 2 engine failure while answering a valid scenario.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qdt/qdt.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_engine = 2;

const std::map<std::string, qdt::ReportFormat> formats{
    {"text", qdt::ReportFormat::Text},
    {"csv", qdt::ReportFormat::Csv},
    {"structured", qdt::ReportFormat::Structured},
};

void add_format_option(CLI::App *cmd, std::string &format) {
    cmd->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "csv", "structured"}))
        ->capture_default_str();
}

int print_tolerances() {
    for (const auto &[name, value] : qdt::default_tolerances().listing())
        std::cout << name << " " << qdt::format_number(value) << "\n";
    return exit_ok;
}

int analyze(const std::string &path, const std::string &format, std::uint64_t seed) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return exit_invalid;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    qdt::Scenario scenario;
    try {
        scenario = qdt::parse_scenario(buf.str());
    } catch (const qdt::Error &e) {
        std::cerr << path << ": " << e.what() << "\n";
        return exit_invalid;
    }
    try {
        const auto report = qdt::run_scenario(scenario, seed);
        std::cout << qdt::emit_report(report, formats.at(format));
    } catch (const qdt::Error &e) {
        std::cerr << path << ": " << e.what() << "\n";
        return qdt::is_input_error(e.kind()) ? exit_invalid : exit_engine;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum decision engine: Born probabilities, order and conjunction effects, density reconstruction"};
    app.set_version_flag("--version", std::string(qdt::engine_version));
    bool show_tolerances = false;
    app.add_flag("--tolerances", show_tolerances, "Print every numeric default and exit");

    std::string format = "text";
    std::uint64_t seed = 0;

    auto *analyze_cmd = app.add_subcommand("analyze", "Run the queries of a scenario file");
    std::string scenario_path;
    analyze_cmd->add_option("file", scenario_path, "Scenario document")->required();
    add_format_option(analyze_cmd, format);
    analyze_cmd->add_option("--seed", seed, "Seed recorded in the report")->capture_default_str();

    auto *demo_cmd = app.add_subcommand("demo", "Built-in demonstrations");
    demo_cmd->require_subcommand(1);

    auto *medical_cmd = demo_cmd->add_subcommand("medical", "Doctor choosing between two medicines");
    double angle_a = 40.0, angle_b = 70.0;
    medical_cmd->add_option("--angle-a", angle_a, "Angle of the 'A helps' direction, degrees")->capture_default_str();
    medical_cmd->add_option("--angle-b", angle_b, "Angle of the 'B helps' direction, degrees")->capture_default_str();
    add_format_option(medical_cmd, format);

    auto *spin_cmd = demo_cmd->add_subcommand("spin", "Hidden-variable spin model against Born's rule");
    double delta = 60.0;
    std::size_t samples = 1000000;
    unsigned threads = 1;
    spin_cmd->add_option("--delta-degrees", delta, "Separation of the two directions")->capture_default_str();
    spin_cmd->add_option("--samples", samples, "Monte Carlo sample count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    spin_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    spin_cmd->add_option("--threads", threads, "Worker threads; output does not depend on it")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    add_format_option(spin_cmd, format);

    auto *recon_cmd = demo_cmd->add_subcommand("reconstruct", "Recover a random density from effect probabilities");
    std::size_t dim = 3;
    recon_cmd->add_option("--dim", dim, "Hilbert space dimension")->check(CLI::Range(2, 32))->capture_default_str();
    recon_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    add_format_option(recon_cmd, format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_invalid;
    }

    if (show_tolerances)
        return print_tolerances();

    try {
        if (analyze_cmd->parsed())
            return analyze(scenario_path, format, seed);
        if (medical_cmd->parsed()) {
            std::cout << qdt::emit_report(qdt::demos::medical_report(angle_a, angle_b), formats.at(format));
            return exit_ok;
        }
        if (spin_cmd->parsed()) {
            qdt::spin::SamplingOptions opts;
            opts.threads = threads;
            std::cout << qdt::emit_report(qdt::demos::spin_report(delta, samples, seed, opts), formats.at(format));
            return exit_ok;
        }
        if (recon_cmd->parsed()) {
            std::cout << qdt::emit_report(qdt::demos::reconstruct_report(dim, seed), formats.at(format));
            return exit_ok;
        }
    } catch (const qdt::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return qdt::is_input_error(e.kind()) ? exit_invalid : exit_engine;
    }

    std::cout << app.help();
    return exit_invalid;
}
