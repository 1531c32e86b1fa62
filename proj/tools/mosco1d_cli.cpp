#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "mosco1d/mosco1d.h"

namespace {

int exit_code(m1d_status s)
{
    switch (s) {
    case M1D_OK: return 0;
    case M1D_ERR_CONFIG:
    case M1D_ERR_ARGUMENT: return 2;
    case M1D_ERR_IO: return 4;
    default: return 3;
    }
}

int report_failure(m1d_status s)
{
    std::fprintf(stderr, "error: %s\n", m1d_last_error());
    return exit_code(s);
}

int cmd_classify(const std::string& config)
{
    m1d_scenario* scn = nullptr;
    m1d_status s = m1d_scenario_load(config.c_str(), &scn);
    if (s != M1D_OK) return report_failure(s);
    char* text = nullptr;
    s = m1d_classify(scn, &text);
    m1d_scenario_free(scn);
    if (s != M1D_OK) return report_failure(s);
    std::fputs(text, stdout);
    m1d_string_free(text);
    return 0;
}

int cmd_mosco(const std::string& config, const std::string& out, int threads)
{
    m1d_scenario* scn = nullptr;
    m1d_status s = m1d_scenario_load(config.c_str(), &scn);
    if (s != M1D_OK) return report_failure(s);
    m1d_report* rep = nullptr;
    s = m1d_run_mosco(scn, threads, &rep);
    m1d_scenario_free(scn);
    if (s != M1D_OK) return report_failure(s);
    s = m1d_report_write(rep, out.c_str());
    if (s == M1D_OK) {
        const char* verdict = nullptr;
        m1d_report_verdict(rep, &verdict);
        std::printf("verdict: %s\nwrote %s/errors.csv and %s/report.md\n", verdict, out.c_str(), out.c_str());
    }
    m1d_report_free(rep);
    return s == M1D_OK ? 0 : report_failure(s);
}

int cmd_paper_examples(const std::string& out, int threads)
{
    char* summary = nullptr;
    const m1d_status s = m1d_paper_examples(out.c_str(), threads, &summary);
    if (summary) {
        std::fputs(summary, stdout);
        m1d_string_free(summary);
    }
    return s == M1D_OK ? 0 : report_failure(s);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mosco convergence experiments for one-dimensional diffusions"};
    app.require_subcommand(1);
    std::string config, out = "out";
    int threads = 1;

    auto* classify = app.add_subcommand("classify", "Boundary classification and global properties");
    classify->add_option("--config", config, "Scenario file (JSON)")->required();

    auto* mosco = app.add_subcommand("mosco", "Resolvent convergence run; writes errors.csv and report.md");
    mosco->add_option("--config", config, "Scenario file (JSON)")->required();
    mosco->add_option("--out", out, "Output directory")->capture_default_str();
    mosco->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

    auto* examples = app.add_subcommand("paper-examples", "Run every named example with default parameters");
    examples->add_option("--out", out, "Output directory")->capture_default_str();
    examples->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (classify->parsed()) return cmd_classify(config);
    if (mosco->parsed()) return cmd_mosco(config, out, threads);
    return cmd_paper_examples(out, threads);
}
