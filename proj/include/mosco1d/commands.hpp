#pragma once

#include <string>
#include <vector>

#include "mosco1d/config.hpp"

namespace mosco1d {

// Boundary classification and global properties of the configured spec,
// its sequence members and its limit.
std::string classify_report(const ScenarioConfig& cfg);

ConvergenceReport run_mosco_config(const ScenarioConfig& cfg, int threads = 1);
// errors.csv and report.md; IoError when the directory is not writable.
void write_mosco_outputs(const ConvergenceReport& report, const std::string& dir);

struct ExampleResult {
    std::string name;
    ExpectedOutcome expected;
    GlobalClassification approximants;
    bool approximants_agree = true;
    GlobalClassification limit;
    std::optional<CorollaryStatus> corollary;
    ConvergenceReport report;
    std::vector<std::string> mismatches;
};

ExampleResult run_paper_example(const std::string& name, int threads = 1);
std::vector<ExampleResult> run_paper_examples(int threads = 1);
std::string paper_summary_markdown(const std::vector<ExampleResult>& results);
// One sub-directory per example plus summary.md.
void write_paper_outputs(const std::vector<ExampleResult>& results, const std::string& dir);

} // namespace mosco1d
