#include "mosco1d/mosco1d.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "mosco1d/commands.hpp"
#include "mosco1d/error.hpp"

struct m1d_scenario {
    mosco1d::ScenarioConfig cfg;
};

struct m1d_report {
    mosco1d::ConvergenceReport report;
};

namespace {

thread_local std::string g_last_error;

m1d_status status_of(mosco1d::ErrorCode code)
{
    using mosco1d::ErrorCode;
    if (code == ErrorCode::IoError) return M1D_ERR_IO;
    if (mosco1d::is_numerical(code)) return M1D_ERR_NUMERICAL;
    return M1D_ERR_CONFIG;
}

template <class F>
m1d_status guarded(F&& f)
{
    try {
        g_last_error.clear();
        return f();
    } catch (const mosco1d::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return M1D_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return M1D_ERR_INTERNAL;
    }
}

m1d_status null_arg(const char* what)
{
    g_last_error = std::string("null argument: ") + what;
    return M1D_ERR_ARGUMENT;
}

char* dup(const std::string& s)
{
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

} // namespace

extern "C" {

const char* m1d_version(void) { return "1.0.0"; }

const char* m1d_last_error(void) { return g_last_error.c_str(); }

m1d_status m1d_scenario_load(const char* path, m1d_scenario** out)
{
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    return guarded([&] {
        *out = new m1d_scenario{mosco1d::load_config(path)};
        return M1D_OK;
    });
}

m1d_status m1d_scenario_parse(const char* json_text, m1d_scenario** out)
{
    if (!json_text) return null_arg("json_text");
    if (!out) return null_arg("out");
    return guarded([&] {
        *out = new m1d_scenario{mosco1d::parse_config(json_text)};
        return M1D_OK;
    });
}

m1d_status m1d_scenario_serialize(const m1d_scenario* scenario, char** out_json)
{
    if (!scenario) return null_arg("scenario");
    if (!out_json) return null_arg("out_json");
    return guarded([&] {
        *out_json = dup(mosco1d::serialize_config(scenario->cfg));
        return M1D_OK;
    });
}

void m1d_scenario_free(m1d_scenario* scenario) { delete scenario; }

m1d_status m1d_classify(const m1d_scenario* scenario, char** out_text)
{
    if (!scenario) return null_arg("scenario");
    if (!out_text) return null_arg("out_text");
    return guarded([&] {
        *out_text = dup(mosco1d::classify_report(scenario->cfg));
        return M1D_OK;
    });
}

m1d_status m1d_run_mosco(const m1d_scenario* scenario, int threads, m1d_report** out)
{
    if (!scenario) return null_arg("scenario");
    if (!out) return null_arg("out");
    if (threads < 1) {
        g_last_error = "threads must be >= 1";
        return M1D_ERR_ARGUMENT;
    }
    return guarded([&] {
        *out = new m1d_report{mosco1d::run_mosco_config(scenario->cfg, threads)};
        return M1D_OK;
    });
}

m1d_status m1d_report_write(const m1d_report* report, const char* out_dir)
{
    if (!report) return null_arg("report");
    if (!out_dir) return null_arg("out_dir");
    return guarded([&] {
        mosco1d::write_mosco_outputs(report->report, out_dir);
        return M1D_OK;
    });
}

m1d_status m1d_report_verdict(const m1d_report* report, const char** out_verdict)
{
    if (!report) return null_arg("report");
    if (!out_verdict) return null_arg("out_verdict");
    *out_verdict = mosco1d::to_string(report->report.verdict());
    return M1D_OK;
}

m1d_status m1d_report_csv(const m1d_report* report, char** out_csv)
{
    if (!report) return null_arg("report");
    if (!out_csv) return null_arg("out_csv");
    return guarded([&] {
        std::ostringstream os;
        mosco1d::write_errors_csv(os, report->report);
        *out_csv = dup(os.str());
        return M1D_OK;
    });
}

void m1d_report_free(m1d_report* report) { delete report; }

m1d_status m1d_paper_examples(const char* out_dir, int threads, char** out_summary)
{
    if (!out_dir) return null_arg("out_dir");
    if (threads < 1) {
        g_last_error = "threads must be >= 1";
        return M1D_ERR_ARGUMENT;
    }
    return guarded([&] {
        std::vector<mosco1d::ExampleResult> results;
        for (const auto& name : mosco1d::paper_example_names()) {
            try {
                results.push_back(mosco1d::run_paper_example(name, threads));
            } catch (const mosco1d::Error& e) {
                throw mosco1d::Error(e.code(), name + ": " + e.what());
            }
        }
        mosco1d::write_paper_outputs(results, out_dir);
        if (out_summary) *out_summary = dup(mosco1d::paper_summary_markdown(results));
        std::string failed;
        for (const auto& r : results)
            if (!r.mismatches.empty()) failed += (failed.empty() ? "" : ", ") + r.name;
        if (!failed.empty()) {
            g_last_error = "outcomes differ from the expected ones in: " + failed;
            return M1D_ERR_MISMATCH;
        }
        return M1D_OK;
    });
}

void m1d_string_free(char* s) { std::free(s); }

} // extern "C"
