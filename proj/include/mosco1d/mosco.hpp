#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mosco1d/discretize.hpp"

namespace mosco1d {

enum class Direction { Decreasing, Increasing };
enum class Verdict { ConvergenceObserved, NoConvergence, Inconclusive };
enum class CorollaryStatus { Condition1, Condition2, Neither };

const char* to_string(Direction d);
const char* to_string(Verdict v);
const char* to_string(CorollaryStatus c);

using SetGenerator = std::function<CharacteristicSet(int)>;

struct Scenario {
    Scenario(std::string name_, SpeedMeasure speed_) : name(std::move(name_)), speed(std::move(speed_)) {}

    std::string name;
    SpeedMeasure speed;
    SetGenerator set_at;
    Direction direction = Direction::Decreasing;
    std::optional<CharacteristicSet> limit_set; // empty: the full interval
    BoundaryCondition bc_sequence = BoundaryCondition::Full;
    BoundaryCondition bc_limit = BoundaryCondition::Full;
    std::vector<double> alphas{0.5, 1.0, 2.0};
    std::vector<TestFunction> test_functions;
    std::vector<int> indices{1, 2, 4, 8, 16, 32};
    GridConfig grid;
    double tolerance = 1e-2;

    const Interval& interval() const { return speed.interval(); }
    void validate() const;
};

struct NestingResult {
    bool ok = true;
    std::optional<InclusionViolation> violation;
    std::string message;
};

// Decreasing: limit within the last set and each set within its
// predecessor. Increasing: each set within its successor and the limit,
// with the coverage deficit on [e-1, e+1] shrinking to zero.
NestingResult check_nested_domains(const std::vector<CharacteristicSet>& seq,
                                   const std::optional<CharacteristicSet>& limit, Direction direction);

CorollaryStatus corollary31_check(const SpeedMeasure& m, const std::optional<CharacteristicSet>& G,
                                  const std::vector<CharacteristicSet>& seq);

// Scenario with every spec assembled and the common skeleton fixed.
struct SpecScenario {
    std::string name;
    std::vector<int> indices;
    std::vector<DirichletSpaceSpec> sequence;
    std::vector<DirichletSpaceSpec> limits; // {Absorbing, Full}
    BoundaryCondition bc_limit = BoundaryCondition::Full;
    std::vector<double> alphas;
    std::vector<TestFunction> test_functions;
    std::vector<double> skeleton;
    GridConfig grid;
    double tolerance = 1e-2;
    NestingResult nesting;
    std::optional<CorollaryStatus> corollary;
};

SpecScenario resolve(const Scenario& scn);
// Image of every spec, test function and the skeleton window under j.
SpecScenario transform(const SpecScenario& scn, const ScaleFunction& j);

struct ErrorColumn {
    std::vector<double> errors;
    bool monotone_tail = false;
    double final_error = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

struct CellReport {
    double alpha = 0.0;
    std::string test_fn;
    ErrorColumn to_F0, to_F;
};

struct SpecMeta {
    int n = 0;
    int nodes = 0;
    double R = 0.0;
    int merged_cells = 0;
    double max_residual = 0.0;
};

struct ConvergenceReport {
    std::string scenario;
    std::vector<int> indices;
    BoundaryCondition bc_limit = BoundaryCondition::Full;
    double tolerance = 1e-2;
    std::vector<CellReport> cells;
    std::vector<SpecMeta> meta;       // one per index
    std::vector<SpecMeta> limit_meta; // {Absorbing, Full}
    NestingResult nesting;
    std::optional<CorollaryStatus> corollary;
    Verdict verdict_F0 = Verdict::Inconclusive;
    Verdict verdict_F = Verdict::Inconclusive;

    // column matching the scenario's limit boundary condition
    const ErrorColumn& primary(const CellReport& c) const
    {
        return bc_limit == BoundaryCondition::Absorbing ? c.to_F0 : c.to_F;
    }
    Verdict verdict() const { return bc_limit == BoundaryCondition::Absorbing ? verdict_F0 : verdict_F; }
};

inline constexpr double kSolverTolerance = 1e-10;

bool monotone_tail(const std::vector<double>& errors, double floor = 10.0 * kSolverTolerance);

ConvergenceReport run_resolved(const SpecScenario& scn, int threads = 1);
ConvergenceReport run_convergence(const Scenario& scn, int threads = 1);

void write_errors_csv(std::ostream& os, const ConvergenceReport& report);
void write_report_markdown(std::ostream& os, const ConvergenceReport& report);

struct ExpectedOutcome {
    GlobalClassification approximants;
    GlobalClassification limit;
    std::optional<CorollaryStatus> corollary;
    std::optional<Verdict> verdict_F;
    std::optional<Verdict> verdict_F0;
};

struct PaperExample {
    Scenario scenario;
    ExpectedOutcome expected;
};

std::vector<std::string> paper_example_names();
PaperExample paper_example(const std::string& name);

// Building blocks shared with the config loader.
CharacteristicSet default_fat_cantor(const Interval& I);
std::vector<TestFunction> default_battery();

} // namespace mosco1d
