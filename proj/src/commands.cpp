#include "mosco1d/commands.hpp"
#include "mosco1d/error.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace mosco1d {

namespace fs = std::filesystem;

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void describe_boundary(std::ostringstream& os, const BoundaryClassification& c)
{
    os << (c.side == Side::Lower ? "lower" : "upper") << " boundary: s-approachable=" << yes_no(c.s_approachable)
       << " s-regular=" << yes_no(c.s_regular) << " finite-time=" << yes_no(c.finite_time_approachable)
       << " scale-limit=" << format_extended(c.scale_limit) << " feller=" << format_extended(c.feller_value)
       << "\n";
}

std::string same_or_mixed(const std::vector<GlobalClassification>& v, bool* agree)
{
    *agree = true;
    for (const auto& g : v)
        if (g.summary() != v.front().summary()) *agree = false;
    return *agree ? v.front().summary() : "mixed";
}

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out) fail(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

void make_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) fail(ErrorCode::IoError, "cannot create directory '" + dir.string() + "'");
}

} // namespace

std::string classify_report(const ScenarioConfig& cfg)
{
    std::ostringstream os;
    const DirichletSpaceSpec spec = build_spec(cfg);
    os << "spec: " << spec.describe() << "\n";
    describe_boundary(os, spec.boundary(Side::Lower));
    describe_boundary(os, spec.boundary(Side::Upper));
    os << "global: " << classify_global(spec).summary() << "\n";
    if (cfg.sequence) {
        const Scenario scn = build_scenario(cfg);
        os << "sequence (" << cfg.sequence->kind << "):\n";
        for (int n : scn.indices) {
            const DirichletSpaceSpec s(scale_from_set(scn.set_at(n)), scn.speed, scn.bc_sequence);
            os << "  n=" << n << ": " << classify_global(s).summary() << "\n";
        }
        const ScaleFunction s_lim =
            scn.limit_set ? scale_from_set(*scn.limit_set) : ScaleFunction::identity(scn.interval());
        os << "limit: " << classify_global(DirichletSpaceSpec(s_lim, scn.speed, scn.bc_limit)).summary() << "\n";
    }
    return os.str();
}

ConvergenceReport run_mosco_config(const ScenarioConfig& cfg, int threads)
{
    return run_convergence(build_scenario(cfg), threads);
}

void write_mosco_outputs(const ConvergenceReport& report, const std::string& dir)
{
    std::ostringstream csv, md;
    write_errors_csv(csv, report);
    write_report_markdown(md, report);
    make_dir(dir);
    write_file(fs::path(dir) / "errors.csv", csv.str());
    write_file(fs::path(dir) / "report.md", md.str());
}

ExampleResult run_paper_example(const std::string& name, int threads)
{
    const PaperExample ex = paper_example(name);
    ExampleResult r{name, ex.expected, {}, true, {}, std::nullopt, {}, {}};
    const SpecScenario scn = resolve(ex.scenario);
    std::vector<GlobalClassification> approx;
    for (const auto& s : scn.sequence) approx.push_back(classify_global(s));
    same_or_mixed(approx, &r.approximants_agree);
    r.approximants = approx.front();
    const auto& lim = scn.limits[scn.bc_limit == BoundaryCondition::Absorbing ? 0 : 1];
    r.limit = classify_global(lim);
    r.corollary = scn.corollary;
    r.report = run_resolved(scn, threads);

    const ExpectedOutcome& x = ex.expected;
    if (!r.approximants_agree || r.approximants.summary() != x.approximants.summary())
        r.mismatches.push_back("approximant classification");
    if (r.limit.summary() != x.limit.summary()) r.mismatches.push_back("limit classification");
    if (x.corollary && r.corollary != x.corollary) r.mismatches.push_back("corollary status");
    if (x.verdict_F && r.report.verdict_F != *x.verdict_F) r.mismatches.push_back("verdict F");
    if (x.verdict_F0 && r.report.verdict_F0 != *x.verdict_F0) r.mismatches.push_back("verdict F0");
    return r;
}

std::vector<ExampleResult> run_paper_examples(int threads)
{
    std::vector<ExampleResult> out;
    for (const auto& name : paper_example_names()) out.push_back(run_paper_example(name, threads));
    return out;
}

std::string paper_summary_markdown(const std::vector<ExampleResult>& results)
{
    auto opt_c = [](const std::optional<CorollaryStatus>& c) { return c ? std::string(to_string(*c)) : "-"; };
    auto opt_v = [](const std::optional<Verdict>& v) { return v ? std::string(to_string(*v)) : "-"; };
    std::ostringstream os;
    os << "# Named examples\n\n";
    os << "| example | approximants (expected / observed) | limit (expected / observed) | corollary | verdict F "
          "| verdict F0 | match |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : results) {
        os << "| " << r.name << " | " << r.expected.approximants.summary() << " / "
           << (r.approximants_agree ? r.approximants.summary() : "mixed") << " | " << r.expected.limit.summary()
           << " / " << r.limit.summary() << " | " << opt_c(r.expected.corollary) << " / " << opt_c(r.corollary)
           << " | " << opt_v(r.expected.verdict_F) << " / " << to_string(r.report.verdict_F) << " | "
           << opt_v(r.expected.verdict_F0) << " / " << to_string(r.report.verdict_F0) << " | ";
        if (r.mismatches.empty()) {
            os << "yes";
        } else {
            os << "no:";
            for (size_t i = 0; i < r.mismatches.size(); ++i) os << (i ? ", " : " ") << r.mismatches[i];
        }
        os << " |\n";
    }
    return os.str();
}

void write_paper_outputs(const std::vector<ExampleResult>& results, const std::string& dir)
{
    make_dir(dir);
    for (const auto& r : results) write_mosco_outputs(r.report, (fs::path(dir) / r.name).string());
    write_file(fs::path(dir) / "summary.md", paper_summary_markdown(results));
}

} // namespace mosco1d
