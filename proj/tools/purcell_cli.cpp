// purcell: command-line front end.
//
//   purcell run --config scenario.json [--out DIR] [--format csv|json|both] [--verbose]
//   purcell check [--verbose] [--inject-fault NAME]
//
// Exit codes: 0 success, 1 failed self-check, 2 configuration error, 3 runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "purcell/kernels/kernels.hpp"
#include "purcell/parallel.hpp"
#include "purcell/scenario.hpp"
#include "purcell/selfcheck.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

bool write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return static_cast<bool>(out);
}

int run_command(const std::string& config_path, const std::string& out_dir, const std::string& format_flag,
                bool verbose) {
    purcell::ScenarioConfig config;
    try {
        config = purcell::load_scenario(config_path);
    } catch (const purcell::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    const std::string format = format_flag.empty() ? config.format : format_flag;

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "config error: --out: cannot create directory '" << out_dir << "': " << ec.message() << "\n";
        return kExitConfig;
    }

    if (verbose)
        std::cerr << "kernels: " << purcell::kernels::active_kernels().name
                  << ", workers: " << purcell::default_worker_count() << "\n";

    purcell::ScenarioResult result;
    try {
        result = purcell::run_scenario(config);
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }

    const std::filesystem::path base = std::filesystem::path(out_dir) / config.name;
    if (format == "csv" || format == "both") {
        const auto path = base.string() + ".csv";
        if (!write_file(path, purcell::format_csv(result))) {
            std::cerr << "runtime error: cannot write " << path << "\n";
            return kExitRuntime;
        }
        if (verbose)
            std::cerr << "wrote " << path << "\n";
    }
    const purcell::ScenarioSummary summary = purcell::summarize(result);
    if (format == "json" || format == "both") {
        const auto path = base.string() + ".json";
        if (!write_file(path, purcell::format_summary_json(summary))) {
            std::cerr << "runtime error: cannot write " << path << "\n";
            return kExitRuntime;
        }
        if (verbose)
            std::cerr << "wrote " << path << "\n";
    }

    std::cout << config.name << ": min=" << purcell::format_real(summary.gamma_ratio_min)
              << " max=" << purcell::format_real(summary.gamma_ratio_max) << " argmax("
              << (result.is_length ? "d_nm" : "k") << ")=" << purcell::format_real(summary.k_or_d_at_extremum)
              << "\n";
    return 0;
}

int check_command(bool verbose, const std::string& fault) {
    const auto reports = purcell::run_self_check({fault});
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.passed;
        if (verbose || !r.passed)
            std::printf("%-28s %s  residual=%.3e  tolerance=%.1e\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                        r.residual, r.tolerance);
    }
    std::printf("%s (%zu invariants)\n", ok ? "all invariants pass" : "invariant check FAILED", reports.size());
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Purcell enhancement of point and extended coherent sources"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string format;
    bool verbose = false;
    auto* run = app.add_subcommand("run", "Run a scenario file and write CSV/JSON outputs");
    run->add_option("--config", config_path, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json", "both"}));
    run->add_flag("--verbose", verbose, "Report kernels, workers and written files");

    bool check_verbose = false;
    std::string fault;
    auto* check = app.add_subcommand("check", "Run the built-in invariant suite");
    check->add_flag("--verbose", check_verbose, "List every invariant with its residual");
    check->add_option("--inject-fault", fault, "Force the named invariant to fail (test hook)")
        ->check(CLI::IsMember(purcell::self_check_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (*run)
        return run_command(config_path, out_dir, format, verbose);
    return check_command(check_verbose, fault);
}
