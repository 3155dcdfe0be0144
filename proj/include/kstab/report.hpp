/**
 * Report assembly for the command line front end. Reports are built as
 * ordered JSON (deterministic key and value order) and rendered to
 * text; given identical inputs the bytes are identical, independent of
 * scan parallelism.
 */

#ifndef KSTAB_REPORT_HPP
#define KSTAB_REPORT_HPP

#include "kstab/io.hpp"
#include "kstab/verdict.hpp"

namespace kstab {

struct RunOptions {
    std::optional<Rational> param;
    std::optional<int> chi_index;
    int depth = 12;
    int jobs = 1;
};

nlohmann::ordered_json info_report(const InputFile& input, const RunOptions& opts);
nlohmann::ordered_json check_report(const InputFile& input, const RunOptions& opts);
nlohmann::ordered_json eval_report(const InputFile& input, const PLConcave& g,
                                   const RunOptions& opts);

struct ScanOptions {
    Rational lo, hi;
    int steps = 0;          // grid mode when > 0
    bool bisect = false;    // bracket mode
    Rational width;         // bracket width for bisect
};

nlohmann::ordered_json scan_report(const InputFile& input, const RunOptions& opts,
                                   const ScanOptions& scan);

/// Human-readable rendering of any of the above reports.
std::string render_text(const nlohmann::ordered_json& report);

/// Deterministic concatenated report over a list of input files (info +
/// check per file, plus a fixed five-step scan for parametric files).
/// Used by the determinism checks.
std::string gallery_report(const std::vector<std::string>& paths, int jobs);

}  // namespace kstab

#endif  // KSTAB_REPORT_HPP
