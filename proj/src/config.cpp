#include "mosco1d/config.hpp"
#include "mosco1d/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mosco1d {

using nlohmann::json;

bool SetConfig::operator==(const SetConfig& o) const
{
    return kind == o.kind && lead == o.lead && ratio == o.ratio && depth == o.depth && spans == o.spans &&
           n == o.n && base == o.base;
}

namespace {

[[noreturn]] void config_error(const std::string& key, const std::string& what)
{
    fail(ErrorCode::ConfigError, "key '" + key + "': " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    if (!j.is_object()) config_error(path.empty() ? "<root>" : path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
        if (!ok) config_error(join(path, it.key()), "unknown key");
    }
}

double as_extended(const json& v, const std::string& key)
{
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    config_error(key, "expected a number, \"inf\" or \"-inf\"");
}

double get_number(const json& j, const std::string& path, const char* key, double def)
{
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_number()) config_error(join(path, key), "expected a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& path, const char* key, int def)
{
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_number_integer()) config_error(join(path, key), "expected an integer");
    return v.get<int>();
}

std::string get_string(const json& j, const std::string& path, const char* key, const std::string& def)
{
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_string()) config_error(join(path, key), "expected a string");
    return v.get<std::string>();
}

std::string get_choice(const json& j, const std::string& path, const char* key, const std::string& def,
                       std::initializer_list<const char*> choices)
{
    const std::string v = get_string(j, path, key, def);
    if (std::none_of(choices.begin(), choices.end(), [&](const char* c) { return v == c; })) {
        std::string list;
        for (const char* c : choices) list += (list.empty() ? "" : ", ") + std::string(c);
        config_error(join(path, key), "'" + v + "' is not one of " + list);
    }
    return v;
}

const json& get_array(const json& j, const std::string& path, const char* key)
{
    const json& v = j.at(key);
    if (!v.is_array()) config_error(join(path, key), "expected an array");
    return v;
}

SetConfig parse_set(const json& j, const std::string& path)
{
    check_keys(j, path, {"kind", "lead", "ratio", "depth", "spans", "n", "base"});
    SetConfig s;
    s.kind = get_choice(j, path, "kind", "fat_cantor", {"fat_cantor", "interval_union", "full", "comb", "window"});
    if (s.kind == "fat_cantor") {
        s.lead = get_number(j, path, "lead", s.lead);
        s.ratio = get_number(j, path, "ratio", s.ratio);
        s.depth = get_int(j, path, "depth", s.depth);
        if (!(s.lead > 0.0 && s.lead <= 1.0)) config_error(join(path, "lead"), "must lie in (0, 1]");
        if (!(s.ratio > 0.0 && s.ratio <= 1.0)) config_error(join(path, "ratio"), "must lie in (0, 1]");
        if (s.depth < 1 || s.depth > 40) config_error(join(path, "depth"), "must lie in [1, 40]");
    } else if (s.kind == "interval_union") {
        if (!j.contains("spans")) config_error(join(path, "spans"), "required for interval_union");
        const json& spans = get_array(j, path, "spans");
        for (size_t i = 0; i < spans.size(); ++i) {
            const std::string key = join(path, "spans") + "[" + std::to_string(i) + "]";
            if (!spans[i].is_array() || spans[i].size() != 2) config_error(key, "expected [lo, hi]");
            const double lo = as_extended(spans[i][0], key), hi = as_extended(spans[i][1], key);
            if (!(lo < hi)) config_error(key, "needs lo < hi");
            s.spans.emplace_back(lo, hi);
        }
        if (s.spans.empty()) config_error(join(path, "spans"), "must not be empty");
    } else if (s.kind == "comb" || s.kind == "window") {
        s.n = get_int(j, path, "n", s.n);
        if (s.n < 1) config_error(join(path, "n"), "must be >= 1");
        if (!j.contains("base")) config_error(join(path, "base"), "required for " + s.kind);
        s.base.push_back(parse_set(j.at("base"), join(path, "base")));
    }
    return s;
}

SpeedConfig parse_speed(const json& j, const std::string& path)
{
    check_keys(j, path, {"kind", "density", "p", "alpha", "atoms"});
    SpeedConfig s;
    s.kind = get_choice(j, path, "kind", "lebesgue", {"lebesgue", "density", "stieltjes_F"});
    if (s.kind == "density") {
        if (!j.contains("density")) config_error(join(path, "density"), "required for kind density");
        s.density = get_choice(j, path, "density", "", {"cauchy", "gaussian", "rational"});
        if (s.density == "rational") {
            s.p = get_number(j, path, "p", s.p);
            if (!(s.p > 0.0)) config_error(join(path, "p"), "must be > 0");
        }
    }
    if (s.kind == "stieltjes_F") {
        s.alpha = get_number(j, path, "alpha", s.alpha);
        if (!(s.alpha > 0.0 && s.alpha < 1.0)) config_error(join(path, "alpha"), "must lie in (0, 1)");
    }
    if (j.contains("atoms")) {
        const json& atoms = get_array(j, path, "atoms");
        for (size_t i = 0; i < atoms.size(); ++i) {
            const std::string key = join(path, "atoms") + "[" + std::to_string(i) + "]";
            check_keys(atoms[i], key, {"at", "mass"});
            if (!atoms[i].contains("at") || !atoms[i].contains("mass")) config_error(key, "needs 'at' and 'mass'");
            const double at = get_number(atoms[i], key, "at", 0.0), mass = get_number(atoms[i], key, "mass", 0.0);
            if (!(mass > 0.0)) config_error(join(key, "mass"), "must be > 0");
            s.atoms.emplace_back(at, mass);
        }
    }
    return s;
}

json set_to_json(const SetConfig& s)
{
    json j;
    j["kind"] = s.kind;
    if (s.kind == "fat_cantor") {
        j["lead"] = s.lead;
        j["ratio"] = s.ratio;
        j["depth"] = s.depth;
    } else if (s.kind == "interval_union") {
        json spans = json::array();
        auto ext = [](double v) -> json {
            if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
            return v;
        };
        for (const auto& [lo, hi] : s.spans) spans.push_back(json::array({ext(lo), ext(hi)}));
        j["spans"] = spans;
    } else if (s.kind == "comb" || s.kind == "window") {
        j["n"] = s.n;
        j["base"] = set_to_json(s.base.front());
    }
    return j;
}

} // namespace

ScenarioConfig parse_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::ConfigError, std::string("malformed JSON: ") + e.what());
    }
    check_keys(root, "",
               {"version", "name", "interval", "speed", "set", "boundary", "sequence", "limit", "solver", "run"});
    ScenarioConfig c;
    if (!root.contains("version")) config_error("version", "missing");
    c.version = get_int(root, "", "version", 0);
    if (c.version != kConfigVersion) config_error("version", "unsupported version " + std::to_string(c.version));
    c.name = get_string(root, "", "name", c.name);

    if (root.contains("interval")) {
        const json& I = root.at("interval");
        check_keys(I, "interval", {"a", "b", "e"});
        if (I.contains("a")) c.a = as_extended(I.at("a"), "interval.a");
        if (I.contains("b")) c.b = as_extended(I.at("b"), "interval.b");
        if (I.contains("e")) c.e = as_extended(I.at("e"), "interval.e");
        if (!(c.a < c.e && c.e < c.b)) config_error("interval", "needs a < e < b");
    }
    if (root.contains("speed")) c.speed = parse_speed(root.at("speed"), "speed");
    if (root.contains("set")) c.set = parse_set(root.at("set"), "set");
    c.boundary = get_choice(root, "", "boundary", c.boundary, {"absorbing", "full"});

    if (root.contains("sequence")) {
        const json& s = root.at("sequence");
        check_keys(s, "sequence", {"kind", "indices"});
        SequenceConfig q;
        q.kind = get_choice(s, "sequence", "kind", q.kind, {"comb", "window", "constant"});
        if (s.contains("indices")) {
            q.indices.clear();
            const json& idx = get_array(s, "sequence", "indices");
            for (const auto& v : idx) {
                if (!v.is_number_integer() || v.get<int>() < 1)
                    config_error("sequence.indices", "entries must be positive integers");
                q.indices.push_back(v.get<int>());
            }
        }
        if (q.indices.empty()) config_error("sequence.indices", "must not be empty");
        for (size_t i = 1; i < q.indices.size(); ++i)
            if (q.indices[i] <= q.indices[i - 1]) config_error("sequence.indices", "must increase strictly");
        c.sequence = q;
    }
    if (root.contains("limit")) {
        const json& l = root.at("limit");
        check_keys(l, "limit", {"set", "boundary"});
        c.limit.set = get_choice(l, "limit", "set", c.limit.set, {"base", "full"});
        c.limit.boundary = get_choice(l, "limit", "boundary", c.limit.boundary, {"absorbing", "full"});
    }
    if (root.contains("solver")) {
        const json& s = root.at("solver");
        check_keys(s, "solver", {"N", "R", "steps", "grading", "blend", "truncation"});
        c.solver.N = get_int(s, "solver", "N", c.solver.N);
        c.solver.R = get_number(s, "solver", "R", c.solver.R);
        c.solver.steps = get_int(s, "solver", "steps", c.solver.steps);
        c.solver.grading = get_choice(s, "solver", "grading", c.solver.grading, {"scale", "uniform", "blend"});
        c.solver.blend = get_number(s, "solver", "blend", c.solver.blend);
        c.solver.truncation = get_choice(s, "solver", "truncation", c.solver.truncation, {"zero_flux", "dirichlet"});
        if (c.solver.N < 16 || c.solver.N > 1000000) config_error("solver.N", "must lie in [16, 1000000]");
        if (!(c.solver.R > 0.0) || !std::isfinite(c.solver.R)) config_error("solver.R", "must be finite and > 0");
        if (c.solver.steps < 1) config_error("solver.steps", "must be >= 1");
        if (!(c.solver.blend >= 0.0 && c.solver.blend <= 1.0)) config_error("solver.blend", "must lie in [0, 1]");
    }
    if (root.contains("run")) {
        const json& r = root.at("run");
        check_keys(r, "run", {"alphas", "test_functions", "tolerance"});
        if (r.contains("alphas")) {
            c.run.alphas.clear();
            for (const auto& v : get_array(r, "run", "alphas")) {
                if (!v.is_number() || !(v.get<double>() > 0.0)) config_error("run.alphas", "entries must be > 0");
                c.run.alphas.push_back(v.get<double>());
            }
            if (c.run.alphas.empty()) config_error("run.alphas", "must not be empty");
        }
        if (r.contains("test_functions")) {
            c.run.test_functions.clear();
            for (const auto& v : get_array(r, "run", "test_functions")) {
                if (!v.is_string()) config_error("run.test_functions", "entries must be strings");
                const auto name = v.get<std::string>();
                if (name != "gaussian" && name != "tent" && name != "mollified_indicator" && name != "zero")
                    config_error("run.test_functions", "unknown test function '" + name + "'");
                c.run.test_functions.push_back(name);
            }
            if (c.run.test_functions.empty()) config_error("run.test_functions", "must not be empty");
        }
        c.run.tolerance = get_number(r, "run", "tolerance", c.run.tolerance);
        if (!(c.run.tolerance > 0.0)) config_error("run.tolerance", "must be > 0");
    }
    return c;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigError, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c)
{
    auto ext = [](double v) -> json {
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return v;
    };
    json root;
    root["version"] = c.version;
    root["name"] = c.name;
    root["interval"] = {{"a", ext(c.a)}, {"b", ext(c.b)}, {"e", ext(c.e)}};
    json sp;
    sp["kind"] = c.speed.kind;
    if (c.speed.kind == "density") {
        sp["density"] = c.speed.density;
        if (c.speed.density == "rational") sp["p"] = c.speed.p;
    }
    if (c.speed.kind == "stieltjes_F") sp["alpha"] = c.speed.alpha;
    if (!c.speed.atoms.empty()) {
        json atoms = json::array();
        for (const auto& [at, mass] : c.speed.atoms) atoms.push_back({{"at", at}, {"mass", mass}});
        sp["atoms"] = atoms;
    }
    root["speed"] = sp;
    root["set"] = set_to_json(c.set);
    root["boundary"] = c.boundary;
    if (c.sequence) root["sequence"] = {{"kind", c.sequence->kind}, {"indices", c.sequence->indices}};
    root["limit"] = {{"set", c.limit.set}, {"boundary", c.limit.boundary}};
    root["solver"] = {{"N", c.solver.N},           {"R", c.solver.R},         {"steps", c.solver.steps},
                      {"grading", c.solver.grading}, {"blend", c.solver.blend}, {"truncation", c.solver.truncation}};
    root["run"] = {{"alphas", c.run.alphas}, {"test_functions", c.run.test_functions}, {"tolerance", c.run.tolerance}};
    return root.dump(2) + "\n";
}

// ---------------------------------------------------------------- builders

Interval build_interval(const ScenarioConfig& c) { return Interval(c.a, c.b, c.e); }

CharacteristicSet build_set(const SetConfig& s, const Interval& I)
{
    if (s.kind == "fat_cantor") return CharacteristicSet::fat_cantor(I, CellMasses{s.lead, s.ratio, {}}, s.depth);
    if (s.kind == "full") return CharacteristicSet::full(I);
    if (s.kind == "interval_union") {
        std::vector<OpenSpan> spans;
        for (const auto& [lo, hi] : s.spans) spans.push_back({lo, hi});
        return CharacteristicSet::interval_union(I, spans);
    }
    if (s.kind == "comb") return comb_sequence(build_set(s.base.front(), I), s.n);
    if (s.kind == "window") return window_sequence(build_set(s.base.front(), I), s.n);
    fail(ErrorCode::ConfigError, "key 'set.kind': unknown kind '" + s.kind + "'");
}

SpeedMeasure build_speed(const ScenarioConfig& c)
{
    const Interval I = build_interval(c);
    SpeedMeasure m = SpeedMeasure::lebesgue(I);
    if (c.speed.kind == "density") {
        if (c.speed.density == "cauchy") m = SpeedMeasure::cauchy(I);
        else if (c.speed.density == "gaussian") m = SpeedMeasure::gaussian(I);
        else m = SpeedMeasure::rational(I, c.speed.p);
    } else if (c.speed.kind == "stieltjes_F") {
        m = SpeedMeasure::stieltjes_F(scale_from_set(build_set(c.set, I)), c.speed.alpha);
    }
    if (!c.speed.atoms.empty()) {
        std::vector<Atom> atoms;
        for (const auto& [at, mass] : c.speed.atoms) {
            if (!I.contains(at)) config_error("speed.atoms", "atom at " + format_extended(at) + " outside I");
            atoms.push_back({at, mass});
        }
        m = m.with_atoms(atoms);
    }
    return m;
}

namespace {

BoundaryCondition bc_of(const std::string& s)
{
    return s == "absorbing" ? BoundaryCondition::Absorbing : BoundaryCondition::Full;
}

} // namespace

DirichletSpaceSpec build_spec(const ScenarioConfig& c)
{
    const Interval I = build_interval(c);
    return DirichletSpaceSpec(scale_from_set(build_set(c.set, I)), build_speed(c), bc_of(c.boundary));
}

GridConfig build_grid_config(const ScenarioConfig& c)
{
    GridConfig g;
    g.N = c.solver.N;
    g.R = c.solver.R;
    g.grading = c.solver.grading == "scale" ? Grading::Scale
                                            : (c.solver.grading == "uniform" ? Grading::Uniform : Grading::Blend);
    g.blend = c.solver.blend;
    g.truncation_row = c.solver.truncation == "dirichlet" ? RowType::Dirichlet : RowType::ZeroFlux;
    return g;
}

Scenario build_scenario(const ScenarioConfig& c)
{
    if (!c.sequence) config_error("sequence", "required for convergence runs");
    const Interval I = build_interval(c);
    const CharacteristicSet G = build_set(c.set, I);
    Scenario s(c.name, build_speed(c));
    const std::string kind = c.sequence->kind;
    if (kind == "comb") {
        s.set_at = [G](int n) { return comb_sequence(G, n); };
    } else if (kind == "window") {
        s.set_at = [G](int n) { return window_sequence(G, n); };
        s.direction = Direction::Increasing;
    } else {
        s.set_at = [G](int) { return G; };
    }
    if (c.limit.set == "base" && !G.is_full()) s.limit_set = G;
    s.bc_sequence = bc_of(c.boundary);
    s.bc_limit = bc_of(c.limit.boundary);
    s.alphas = c.run.alphas;
    for (const auto& name : c.run.test_functions) s.test_functions.push_back(TestFunction::by_name(name));
    s.indices = c.sequence->indices;
    s.grid = build_grid_config(c);
    s.tolerance = c.run.tolerance;
    return s;
}

} // namespace mosco1d
