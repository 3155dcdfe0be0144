/**
 * kstab: exact stability checks for polarized spherical varieties given
 * by their polytope datum.
 *
 * Exit codes: 0 a report/verdict was produced (any verdict), 2 input or
 * schema error, 3 internal invariant violation.
 */

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "kstab/report.hpp"

namespace {

struct Flags {
    std::string file;
    std::string param;
    std::string pl_file;
    std::vector<std::string> range;
    std::string width;
    int chi = -1;
    int steps = 0;
    bool bisect = false;
    int depth = 12;
    int jobs = 1;
    bool json = false;
};

kstab::RunOptions run_options(const kstab::InputFile& input, const Flags& flags) {
    kstab::RunOptions opts;
    if (!flags.param.empty()) {
        auto eq = flags.param.find('=');
        if (eq == std::string::npos)
            throw kstab::SchemaError("--param expects NAME=P/Q");
        std::string name = flags.param.substr(0, eq);
        if (!input.param_name || *input.param_name != name)
            throw kstab::SchemaError("unknown parameter '" + name + "'");
        opts.param = kstab::parse_rational(flags.param.substr(eq + 1));
    }
    if (flags.chi >= 0) opts.chi_index = flags.chi;
    opts.depth = flags.depth;
    opts.jobs = flags.jobs;
    return opts;
}

void emit(const nlohmann::ordered_json& report, bool json) {
    if (json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << kstab::render_text(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact stability criteria for polarized spherical varieties"};
    app.require_subcommand(1);

    Flags flags;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", flags.file, "input JSON file")->required();
        cmd->add_option("--param", flags.param, "parameter value, NAME=P/Q");
        cmd->add_option("--chi", flags.chi, "chi candidate index");
        cmd->add_option("--depth", flags.depth, "certificate subdivision depth");
        cmd->add_option("--jobs", flags.jobs, "parallel scan workers");
        cmd->add_flag("--json", flags.json, "emit the JSON report");
    };

    CLI::App* info = app.add_subcommand("info", "datum summary: V, 2a, P, Q, facet data");
    add_common(info);
    CLI::App* check = app.add_subcommand("check", "run the full stability criterion");
    add_common(check);
    CLI::App* eval = app.add_subcommand("eval", "evaluate L, J, MNA, JNA on a PL function");
    add_common(eval);
    eval->add_option("--pl", flags.pl_file, "PL function JSON file")->required();
    CLI::App* scan = app.add_subcommand("scan", "verdicts over a parameter range");
    add_common(scan);
    scan->add_option("--range", flags.range, "range endpoints A B")->expected(2);
    scan->add_option("--steps", flags.steps, "number of grid samples");
    scan->add_flag("--bisect", flags.bisect, "bracket the certificate flip");
    scan->add_option("--width", flags.width, "bracket width P/Q for --bisect");

    CLI11_PARSE(app, argc, argv);

    const auto started = std::chrono::steady_clock::now();
    try {
        kstab::InputFile input = kstab::load_input_file(flags.file);
        kstab::RunOptions opts = run_options(input, flags);
        if (info->parsed()) {
            emit(kstab::info_report(input, opts), flags.json);
        } else if (check->parsed()) {
            emit(kstab::check_report(input, opts), flags.json);
        } else if (eval->parsed()) {
            kstab::PLConcave g = kstab::load_pl_file(flags.pl_file, input.rank);
            emit(kstab::eval_report(input, g, opts), flags.json);
        } else if (scan->parsed()) {
            if (flags.range.size() != 2) throw kstab::SchemaError("scan requires --range A B");
            kstab::ScanOptions sopts;
            sopts.lo = kstab::parse_rational(flags.range[0]);
            sopts.hi = kstab::parse_rational(flags.range[1]);
            sopts.bisect = flags.bisect;
            if (flags.bisect) {
                if (flags.width.empty())
                    throw kstab::SchemaError("scan --bisect requires --width P/Q");
                sopts.width = kstab::parse_rational(flags.width);
            } else {
                if (flags.steps < 2) throw kstab::SchemaError("scan requires --steps N (N >= 2)");
                sopts.steps = flags.steps;
            }
            emit(kstab::scan_report(input, opts, sopts), flags.json);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    std::cerr << "elapsed: " << elapsed.count() << " ms\n";
    return 0;
}
