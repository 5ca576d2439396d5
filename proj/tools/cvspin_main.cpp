#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvspin/cvspin.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;  // numeric failures, failed checks, I/O errors
constexpr int kExitUsage = 2;    // bad flags, ranges, or combinations

std::vector<cvspin::DegeneracyLevel> parse_levels(const std::string& text) {
    std::vector<cvspin::DegeneracyLevel> levels;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item == "inf") {
            levels.push_back(cvspin::DegeneracyLevel::full());
        } else {
            std::size_t used = 0;
            int value = -1;
            try {
                value = std::stoi(item, &used);
            } catch (const std::exception&) {
                throw CLI::ValidationError("--levels",
                                           "'" + item + "' is not a level (integer >= 0 or 'inf')");
            }
            if (used != item.size() || value < 0)
                throw CLI::ValidationError("--levels",
                                           "'" + item + "' is not a level (integer >= 0 or 'inf')");
            levels.push_back(cvspin::DegeneracyLevel::finite(value));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return levels;
}

std::optional<int> parse_cutoff(const std::string& text) {
    if (text == "auto") return std::nullopt;
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--cutoff", "'" + text + "' is not 'auto' or an integer >= 1");
    }
    if (used != text.size() || value < 1)
        throw CLI::ValidationError("--cutoff", "'" + text + "' is not 'auto' or an integer >= 1");
    return value;
}

int write_records(const std::vector<cvspin::SweepRecord>& records, const std::string& output,
                  cvspin::OutputFormat format) {
    const std::string content = format == cvspin::OutputFormat::csv ? cvspin::format_csv(records)
                                                                    : cvspin::format_json(records);
    cvspin::write_file_atomic(output, content);
    std::fprintf(stderr, "wrote %s (%zu records)\n", output.c_str(), records.size());
    return kExitSuccess;
}

int run_verify_command(double tolerance, const std::string& cutoff_text) {
    cvspin::VerifyOptions opts;
    opts.tolerance = tolerance;
    opts.cutoff = parse_cutoff(cutoff_text);
    const auto results = cvspin::run_verification(opts);
    int failed = 0;
    for (const auto& r : results) {
        const char* tag = "INFO";
        if (r.status == cvspin::CheckStatus::pass) tag = "PASS";
        if (r.status == cvspin::CheckStatus::fail) {
            tag = "FAIL";
            ++failed;
        }
        std::printf("%s  %-36s %s\n", tag, r.name.c_str(), r.detail.c_str());
    }
    const int judged = static_cast<int>(results.size()) -
                       static_cast<int>(std::count_if(results.begin(), results.end(),
                                                      [](const cvspin::CheckResult& r) {
                                                          return r.status == cvspin::CheckStatus::info;
                                                      }));
    std::printf("%d checks: %d passed, %d failed\n", judged, judged - failed, failed);
    return failed == 0 ? kExitSuccess : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-CHSH correlations of two-mode squeezed vacuum under pseudospin "
                 "and parity observables"};
    app.set_version_flag("--version", "cvspin 1.0.0");
    app.set_config("--config", "", "Read options from an INI file; command-line flags win");
    app.require_subcommand(1);

    double zeta_min = 0.0, zeta_max = 1.0, tolerance = 1e-8;
    int steps = 11;
    std::string levels_text = "inf";
    std::string family_text = "pseudospin";
    std::string method_text = "closed";
    std::string cutoff_text = "auto";
    std::string output;
    std::string format_text = "csv";

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep correlators over zeta and levels");
    sweep->add_option("--zeta-min", zeta_min, "Lowest squeezing strength")->capture_default_str();
    sweep->add_option("--zeta-max", zeta_max, "Highest squeezing strength")->capture_default_str();
    sweep->add_option("--steps", steps, "Number of grid points (>= 2)")->capture_default_str();
    sweep->add_option("--levels", levels_text, "Comma-separated degeneracy levels; 'inf' keeps all pairs")
        ->capture_default_str();
    sweep->add_option("--family", family_text, "Observable family: pseudospin or parity")
        ->check(CLI::IsMember({"pseudospin", "parity"}))
        ->capture_default_str();
    sweep->add_option("--method", method_text, "Evaluation method: closed, matrix, or both")
        ->check(CLI::IsMember({"closed", "matrix", "both"}))
        ->capture_default_str();
    sweep->add_option("--cutoff", cutoff_text, "Fock cutoff n_max, or 'auto' for the tail rule")
        ->capture_default_str();
    sweep->add_option("--tolerance", tolerance, "Numeric sanity tolerance")->capture_default_str();
    sweep->add_option("--output", output, "Output file path")->required();
    sweep->add_option("--format", format_text, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    std::string figure_which;
    std::string figure_output;
    CLI::App* figure = app.add_subcommand("figure", "Emit the dataset behind a violation figure");
    figure->add_option("which", figure_which, "fig1 (violation) or fig2 (ratio to the quantum bound)")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2"}));
    figure->add_option("--output", figure_output, "Output CSV path")->required();

    double verify_tolerance = 1e-8;
    std::string verify_cutoff_text = "auto";
    CLI::App* verify = app.add_subcommand("verify", "Run the library self-check suite");
    verify->add_option("--tolerance", verify_tolerance, "Check tolerance")->capture_default_str();
    verify->add_option("--cutoff", verify_cutoff_text,
                       "Cutoff for truncation-sensitive checks, or 'auto'")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sweep->parsed()) {
            cvspin::SweepConfig config;
            config.zeta_min = zeta_min;
            config.zeta_max = zeta_max;
            config.steps = steps;
            config.levels = parse_levels(levels_text);
            config.family = family_text == "parity" ? cvspin::ObservableFamily::parity
                                                    : cvspin::ObservableFamily::pseudospin;
            config.method = method_text == "closed"   ? cvspin::SweepMethod::closed
                            : method_text == "matrix" ? cvspin::SweepMethod::matrix
                                                      : cvspin::SweepMethod::both;
            config.cutoff = parse_cutoff(cutoff_text);
            config.tolerance = tolerance;
            const auto records = cvspin::run_sweep(config);
            return write_records(records, output,
                                 format_text == "json" ? cvspin::OutputFormat::json
                                                       : cvspin::OutputFormat::csv);
        }
        if (figure->parsed()) {
            const auto kind = figure_which == "fig1" ? cvspin::FigureKind::fig1
                                                     : cvspin::FigureKind::fig2;
            const auto records = cvspin::run_sweep(cvspin::figure_sweep_config(kind));
            return write_records(records, figure_output, cvspin::OutputFormat::csv);
        }
        return run_verify_command(verify_tolerance, verify_cutoff_text);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
}
