// Command-line front end: run, validate, battery.

#include "wcop/battery.hpp"
#include "wcop/errors.hpp"
#include "wcop/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace wcop;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

std::string default_out_dir() {
    const char* env = std::getenv("WCOP_OUT_DIR");
    return env && *env ? env : "wcop-out";
}

std::vector<std::string> split_formats(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (part != "json" && part != "csv") throw ValidationError("unknown format \"" + part + "\" (json or csv)");
        out.push_back(part);
    }
    if (out.empty()) throw ValidationError("--format needs at least one of json, csv");
    return out;
}

void print_summary(const Report& report, std::ostream& os) {
    if (!report.config.name.empty()) os << report.config.name << "\n";
    for (const auto& t : report.tasks) {
        os << "  " << to_string(t.task) << ": ";
        if (t.classification) {
            os << to_string(t.classification->overall);
            for (const auto& v : t.classification->parts) {
                os << " [" << v.quantity << " " << to_string(v.status);
                if (v.vacuous) os << ", vacuous";
                os << "]";
            }
        } else if (!t.refused.empty()) {
            os << "Refused (" << t.refused << ")";
        } else if (t.task == Task::LemmaProbes) {
            for (const auto& p : t.probes)
                os << "[" << p.name << " " << to_string(p.lhs_status) << "/" << to_string(p.rhs_status)
                   << (p.decided ? (p.agree ? " agree" : " DISAGREE") : " undecided") << "] ";
        } else if (t.oracle) {
            os << "lower bound " << to_string(t.oracle->lower_bound.trend) << ", compactness "
               << to_string(t.oracle->compactness.evidence);
        }
        os << "\n";
    }
    for (const auto& d : report.disagreements) os << "  disagreement: " << d << "\n";
    for (const auto& u : report.uncorroborated) os << "  uncorroborated: " << u << "\n";
}

int report_error(const std::exception& e) {
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        std::cerr << "parse error";
        if (pe->line() > 0) std::cerr << " at line " << pe->line();
        if (!pe->field().empty()) std::cerr << " (field " << pe->field() << ")";
        std::cerr << ": " << pe->what() << "\n";
    } else if (dynamic_cast<const ValidationError*>(&e)) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
    } else {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted composition operators into the Bloch spaces: classifiers and oracles"};
    app.require_subcommand(1);

    std::string config_path, out_dir = default_out_dir(), formats_text = "json,csv", grid_text;
    bool strict = false, serial = false;

    auto* run_cmd = app.add_subcommand("run", "Run the tasks of a configuration and write a report");
    run_cmd->add_option("config", config_path, "Configuration file (JSON)")->required();
    auto* run_out = run_cmd->add_option("--out", out_dir, "Output directory (default: config output.dir, $WCOP_OUT_DIR or ./wcop-out)");
    auto* run_format = run_cmd->add_option("--format", formats_text, "Comma-separated output formats: json,csv (default: config output.formats)");
    run_cmd->add_flag("--strict", strict, "Exit with status 3 when a classifier and an oracle disagree");
    run_cmd->add_option("--grid", grid_text, "Grid override K,M,ORDER");
    run_cmd->add_flag("--serial", serial, "Use the serial reference kernels");

    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a configuration");
    validate_cmd->add_option("config", config_path, "Configuration file (JSON)")->required();

    auto* battery_cmd = app.add_subcommand("battery", "Run the curated battery and the randomized agreement battery");
    battery_cmd->add_option("--out", out_dir, "Output directory (default $WCOP_OUT_DIR or ./wcop-out)");
    battery_cmd->add_option("--format", formats_text, "Comma-separated output formats: json,csv");
    battery_cmd->add_flag("--strict", strict, "Exit with status 3 on any disagreement");
    battery_cmd->add_option("--grid", grid_text, "Grid override K,M,ORDER for the curated configurations");
    battery_cmd->add_flag("--serial", serial, "Use the serial reference kernels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version report success; every other usage error maps to one status.
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }
    const Execution exec = serial ? Execution::Serial : Execution::Parallel;

    try {
        if (*validate_cmd) {
            const RunConfig config = load_config(config_path);
            std::cout << "ok: " << config.symbol.u.describe() << " with " << config.symbol.phi.describe() << ", tasks";
            for (Task t : config.tasks) std::cout << " " << to_string(t);
            std::cout << "\n";
            return 0;
        }
        if (*run_cmd) {
            RunConfig config = load_config(config_path);
            if (!grid_text.empty()) override_grid(config, parse_grid_triple(grid_text));
            // Command-line flags win over the config file.
            if (run_out->count() == 0 && config.output_dir) out_dir = *config.output_dir;
            const auto formats =
                run_format->count() == 0 && !config.formats.empty() ? config.formats : split_formats(formats_text);
            const Report report = run(config, exec);
            emit(report, out_dir, formats);
            print_summary(report, std::cout);
            std::cout << "report written to " << out_dir << "\n";
            return exit_code(report, strict);
        }
        if (*battery_cmd) {
            const auto formats = split_formats(formats_text);
            bool disagreement = false;
            for (const auto& named : curated_configs()) {
                RunConfig config = parse_config(named.text);
                if (!grid_text.empty()) override_grid(config, parse_grid_triple(grid_text));
                const Report report = run(config, exec);
                emit(report, std::filesystem::path(out_dir) / named.name, formats);
                print_summary(report, std::cout);
                disagreement = disagreement || !report.disagreements.empty();
            }
            const auto summary = run_random_battery(random_battery(), SpaceSpec::bergman(2.0), battery_grid(), exec);
            std::filesystem::create_directories(out_dir);
            std::ofstream(std::filesystem::path(out_dir) / "random_battery.json") << summary_json(summary).dump(2)
                                                                                   << "\n";
            std::cout << "random battery: " << summary.agreeing << "/" << summary.decided
                      << " decided boundedness verdicts corroborated, " << summary.inconclusive << " inconclusive; "
                      << summary.probes_agreeing << "/" << summary.probes_decided
                      << " decided limit-equivalence probes agree\n";
            disagreement = disagreement || summary.agreeing != summary.decided ||
                           summary.probes_agreeing != summary.probes_decided;
            return strict && disagreement ? 3 : 0;
        }
    } catch (const std::exception& e) {
        return report_error(e);
    }
    return 0;
}
