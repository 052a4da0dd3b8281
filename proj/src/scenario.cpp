#include "nevlab/scenario.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nevlab/errors.hpp"
#include "nevlab/foliation.hpp"
#include "nevlab/quotient.hpp"
#include "nevlab/regularity.hpp"
#include "nevlab/sweep.hpp"

namespace nevlab {
namespace {

using json = nlohmann::json;

/// Task output could not be written: maps to process exit code 1.
struct IoFailure : std::runtime_error {
    explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ArgumentError(where + ": " + what);
}

double need_number(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) fail(where, std::string(key) + " must be a number");
    return j[key].get<double>();
}

double opt_number(const json& j, const std::string& where, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number()) fail(where, std::string(key) + " must be a number");
    return j[key].get<double>();
}

std::string need_string(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) fail(where, std::string(key) + " must be a string");
    return j[key].get<std::string>();
}

std::vector<double> need_number_array(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].empty())
        fail(where, std::string(key) + " must be a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) fail(where, std::string(key) + " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

// ------------------------------------------------------------------ //
// object builders
// ------------------------------------------------------------------ //

Measure::Component parse_component(const json& j, const std::string& where) {
    std::string kind = need_string(j, where, "kind");
    if (kind == "atoms") {
        if (!j.contains("points") || !j["points"].is_array())
            fail(where, "atoms need a points array of [position, mass] pairs");
        Measure::Atoms a;
        for (const auto& p : j["points"]) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                fail(where, "each atom must be a [position, mass] pair");
            a.points.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        return a;
    }
    if (kind == "polynomial") {
        if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty())
            fail(where, "polynomial needs a non-empty pieces array");
        Measure::PolynomialDensity d;
        for (const auto& p : j["pieces"]) {
            Measure::PolynomialDensity::Piece piece{};
            piece.lo = need_number(p, where, "lo");
            piece.hi = need_number(p, where, "hi");
            auto c = need_number_array(p, where, "coeff");
            if (c.size() > 4) fail(where, "coeff holds at most 4 entries (cubic density)");
            piece.coeff = {0.0, 0.0, 0.0, 0.0};
            for (std::size_t i = 0; i < c.size(); ++i) piece.coeff[i] = c[i];
            d.pieces.push_back(piece);
        }
        return d;
    }
    if (kind == "power") {
        Measure::PowerDensity d;
        d.center = opt_number(j, where, "center", 0.0);
        d.exponent = need_number(j, where, "exponent");
        d.coeff = opt_number(j, where, "coeff", 1.0);
        d.radius = opt_number(j, where, "radius", 1.0);
        return d;
    }
    if (kind == "self-similar") {
        Measure::SelfSimilar s;
        if (!j.contains("maps") || !j["maps"].is_array())
            fail(where, "self-similar needs a maps array of [ratio, offset] pairs");
        for (const auto& m : j["maps"]) {
            if (!m.is_array() || m.size() != 2 || !m[0].is_number() || !m[1].is_number())
                fail(where, "each map must be a [ratio, offset] pair");
            s.maps.push_back({m[0].get<double>(), m[1].get<double>()});
        }
        s.weights = need_number_array(j, where, "weights");
        s.total = opt_number(j, where, "total", 1.0);
        return s;
    }
    if (kind == "cantor") {
        Measure::SelfSimilar s;
        s.maps = {{1.0 / 3.0, 0.0}, {1.0 / 3.0, 2.0 / 3.0}};
        s.weights = {0.5, 0.5};
        s.total = opt_number(j, where, "total", 1.0);
        return s;
    }
    if (kind == "lebesgue-line") return Measure::LebesgueLine{};
    fail(where, "unknown component kind '" + kind + "'");
}

Measure parse_measure(const json& j, const std::string& where) {
    if (!j.contains("components") || !j["components"].is_array())
        fail(where, "a measure needs a components array");
    std::vector<Measure::Component> comps;
    std::size_t i = 0;
    for (const auto& c : j["components"]) {
        comps.push_back(parse_component(c, where + ".components[" + std::to_string(i) + "]"));
        ++i;
    }
    try {
        return Measure::from_components(std::move(comps));
    } catch (const ArgumentError& e) {
        fail(where, e.what());
    }
}

Gauge parse_gauge(const json& j, const std::string& where) {
    try {
        if (j.contains("table")) {
            if (!j["table"].is_array() || j["table"].empty())
                fail(where, "table must be a non-empty array of [t, value] pairs");
            std::vector<std::pair<double, double>> samples;
            for (const auto& p : j["table"]) {
                if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                    fail(where, "each table entry must be a [t, value] pair");
                samples.emplace_back(p[0].get<double>(), p[1].get<double>());
            }
            return Gauge::tabulated(std::move(samples));
        }
        double power = need_number(j, where, "power");
        double logpow = opt_number(j, where, "log", 0.0);
        double coeff = opt_number(j, where, "coeff", 1.0);
        return Gauge::power_law(coeff, power, logpow);
    } catch (const ArgumentError& e) {
        std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw; // already prefixed
        fail(where, msg);
    }
}

PickFunction parse_function(const json& j, const std::string& where,
                            const std::map<std::string, Measure>& measures,
                            const std::map<std::string, PickFunction>& functions) {
    std::string form = need_string(j, where, "form");
    try {
        if (form == "nevanlinna") {
            double a = opt_number(j, where, "a", 0.0);
            double b = opt_number(j, where, "b", 0.0);
            std::string mname = need_string(j, where, "measure");
            auto it = measures.find(mname);
            if (it == measures.end()) fail(where, "unknown measure '" + mname + "'");
            return PickFunction::from_nevanlinna(a, b, it->second);
        }
        if (form == "resolvent") {
            auto diag = need_number_array(j, where, "diag");
            std::vector<double> offdiag;
            if (j.contains("offdiag")) offdiag = need_number_array(j, where, "offdiag");
            Eigen::MatrixXd A = jacobi_matrix(diag, offdiag);
            Eigen::VectorXd phi = Eigen::VectorXd::Zero(A.rows());
            if (j.contains("phi")) {
                auto p = need_number_array(j, where, "phi");
                if (static_cast<Eigen::Index>(p.size()) != A.rows())
                    fail(where, "phi length must match the matrix dimension");
                for (std::size_t i = 0; i < p.size(); ++i)
                    phi[static_cast<Eigen::Index>(i)] = p[i];
            } else {
                phi[0] = 1.0;
            }
            return PickFunction::from_resolvent(std::move(A), std::move(phi));
        }
        if (form == "mobius") {
            auto c = need_number_array(j, where, "coeffs");
            if (c.size() != 4) fail(where, "coeffs must hold exactly 4 reals");
            std::string iname = need_string(j, where, "inner");
            auto it = functions.find(iname);
            if (it == functions.end()) fail(where, "unresolved inner function '" + iname + "'");
            return PickFunction::mobius({c[0], c[1], c[2], c[3]}, it->second);
        }
        if (form == "negative-reciprocal") {
            std::string iname = need_string(j, where, "inner");
            auto it = functions.find(iname);
            if (it == functions.end()) fail(where, "unresolved inner function '" + iname + "'");
            return PickFunction::negative_reciprocal(it->second);
        }
    } catch (const ArgumentError& e) {
        std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw;
        fail(where, msg);
    }
    fail(where, "unknown function form '" + form + "'");
}

// ------------------------------------------------------------------ //
// task validation (references, grids, outputs)
// ------------------------------------------------------------------ //

const std::map<std::string, std::vector<const char*>>& task_gauge_keys() {
    static const std::map<std::string, std::vector<const char*>> keys{
        {"sweep", {"scale", "height"}},   {"augur", {"scale", "height"}},
        {"classify", {}},                 {"foliate", {"scale", "height"}},
        {"enigma", {"scale", "height"}},  {"equivalence", {"gamma"}},
        {"horocycle", {"gamma"}},
    };
    return keys;
}

void validate_task(const json& j, const std::string& where, const Scenario& s) {
    std::string op = need_string(j, where, "op");
    auto it = task_gauge_keys().find(op);
    if (it == task_gauge_keys().end()) fail(where, "unknown task op '" + op + "'");
    std::string fname = need_string(j, where, "function");
    if (!s.functions.count(fname)) fail(where, "unknown function '" + fname + "'");
    for (const char* key : it->second) {
        std::string gname = need_string(j, where, key);
        if (!s.gauges.count(gname)) fail(where, std::string("unknown gauge '") + gname + "'");
    }
    if (op == "classify" || op == "foliate") need_number_array(j, where, "taus");
    if (op == "horocycle") {
        auto betas = need_number_array(j, where, "betas");
        for (std::size_t i = 1; i < betas.size(); ++i)
            if (!(betas[i] > betas[i - 1])) fail(where, "betas must be strictly increasing");
    }
    if (op == "sweep" && j.contains("method")) {
        std::string m = need_string(j, where, "method");
        if (m != "both" && m != "direct" && m != "kernel")
            fail(where, "method must be 'both', 'direct' or 'kernel'");
    }
    std::string out = need_string(j, where, "output");
    if (out.empty()) fail(where, "output must be a non-empty relative path");
    if (std::filesystem::path(out).is_absolute())
        fail(where, "output must be relative to the output directory");
}

// ------------------------------------------------------------------ //
// artifact writers
// ------------------------------------------------------------------ //

/// Full-precision scientific notation: 17 significant digits survive a
/// round-trip, so identical runs diff byte-for-byte.
std::string fmt(double v) {
    if (v == kDivergent) return "divergent";
    if (v == -kDivergent) return "-divergent";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

class ArtifactFile {
public:
    ArtifactFile(const std::filesystem::path& dir, const std::string& rel) : path_(dir / rel) {
        std::error_code ec;
        std::filesystem::create_directories(path_.parent_path(), ec);
        if (ec) throw IoFailure("cannot create " + path_.parent_path().string() + ": " + ec.message());
        out_.open(path_);
        if (!out_) throw IoFailure("cannot open " + path_.string() + " for writing");
    }
    void line(const std::string& s) { out_ << s << '\n'; }
    void close() {
        out_.close();
        if (!out_) throw IoFailure("failed to write " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    return row;
}

// ------------------------------------------------------------------ //
// task execution
// ------------------------------------------------------------------ //

struct TaskContext {
    const Scenario& s;
    std::filesystem::path out_dir;
    double rel_tol;
    unsigned seed;
    int jobs;
};

const PickFunction& task_function(const json& j, const TaskContext& ctx) {
    return ctx.s.functions.at(j["function"].get<std::string>());
}

const Gauge& task_gauge(const json& j, const TaskContext& ctx, const char* key) {
    return ctx.s.gauges.at(j[key].get<std::string>());
}

void run_sweep(const json& j, const TaskContext& ctx, ArtifactFile& out) {
    const PickFunction& f = task_function(j, ctx);
    const Gauge& scale = task_gauge(j, ctx, "scale");
    const Gauge& height = task_gauge(j, ctx, "height");
    double tau = j.value("tau", 0.0);
    std::string method = j.value("method", std::string("both"));
    bool direct = method != "kernel";
    bool kernel = method != "direct";

    QuotientSeries d, k;
    if (direct)
        d = build_series(f, scale, height, tau, ctx.s.eps_grid, QuotientMethod::Direct,
                         ctx.rel_tol, ctx.jobs);
    if (kernel)
        k = build_series(f, scale, height, tau, ctx.s.eps_grid, QuotientMethod::Kernel,
                         ctx.rel_tol, ctx.jobs);

    std::vector<std::string> head{"eps"};
    if (direct) head.push_back("direct");
    if (kernel) head.push_back("kernel");
    out.line(csv_row(head));
    for (std::size_t i = 0; i < ctx.s.eps_grid.size(); ++i) {
        std::vector<std::string> row{fmt(ctx.s.eps_grid[i])};
        if (direct) row.push_back(fmt(d.values[i]));
        if (kernel) row.push_back(fmt(k.values[i]));
        out.line(csv_row(row));
    }
}

void run_augur(const json& j, const TaskContext& ctx, ArtifactFile& out) {
    const PickFunction& f = task_function(j, ctx);
    const Gauge& scale = task_gauge(j, ctx, "scale");
    const Gauge& height = task_gauge(j, ctx, "height");
    double tau = j.value("tau", 0.0);
    const auto* triple = f.nevanlinna();
    if (!triple)
        throw UnsupportedFormError(
            "the sandwich bounds need the explicit (a, b, mu) representation");
    AugurConstants consts =
        fit_augur_constants(triple->mu, triple->b, height, ctx.s.eps_grid.front());
    out.line("eps,lower,quotient,upper_density,upper_tail,upper");
    for (double eps : ctx.s.eps_grid) {
        AugurBounds b = augur_bounds(triple->mu, triple->b, scale, height, tau, eps, consts);
        double A = averaged_quotient_kernel(f, scale, height, tau, eps);
        out.line(csv_row({fmt(eps), fmt(b.lower), fmt(A), fmt(b.upper_density_term),
                          fmt(b.upper_tail_term), fmt(b.upper())}));
    }
}

void run_classify(const json& j, const TaskContext& ctx, ArtifactFile& out) {
    const PickFunction& f = task_function(j, ctx);
    auto taus = j["taus"].get<std::vector<double>>();
    auto verdicts = classify_many(f, taus, ctx.jobs);
    out.line("tau,class,limit_re,limit_im,heuristic");
    for (const auto& v : verdicts) {
        std::string re, im;
        if (v.nt_limit_estimate) {
            re = fmt(v.nt_limit_estimate->real());
            im = fmt(v.nt_limit_estimate->imag());
        }
        out.line(csv_row({fmt(v.tau), to_string(v.cls), re, im, v.heuristic ? "1" : "0"}));
    }
}

void run_foliate(const json& j, const TaskContext& ctx, ArtifactFile& out) {
    const PickFunction& f = task_function(j, ctx);
    const Gauge& scale = task_gauge(j, ctx, "scale");
    const Gauge& height = task_gauge(j, ctx, "height");
    auto taus = j["taus"].get<std::vector<double>>();
    auto verdicts = classify_many(f, taus, ctx.jobs);
    out.line("tau,class,enigma_member,direct_limsup,reciprocal_limsup");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        EnigmaVerdict e = enigma_member(f, scale, height, taus[i], ctx.jobs);
        out.line(csv_row({fmt(taus[i]), to_string(verdicts[i].cls), e.member ? "1" : "0",
                          fmt(e.direct_branch.limsup), fmt(e.reciprocal_branch.limsup)}));
    }
}

void run_enigma(const json& j, const TaskContext& ctx, ArtifactFile& out) {
    const PickFunction& f = task_function(j, ctx);
    const Gauge& scale = task_gauge(j, ctx, "scale");
    const Gauge& height = task_gauge(j, ctx, "height");
    double tau = j.value("tau", 0.0);
    EnigmaVerdict e = enigma_member(f, scale, height, tau, ctx.jobs);
    out.line("branch,limsup,bounded,trend,member");
    std::string member = e.member ? "1" : "0";
    out.line(csv_row({"direct", fmt(e.direct_branch.limsup), e.direct_branch.bounded ? "1" : "0",
                      fmt(e.direct_branch.trend), member}));
    out.line(csv_row({"reciprocal", fmt(e.reciprocal_branch.limsup),
                      e.reciprocal_branch.bounded ? "1" : "0", fmt(e.reciprocal_branch.trend),
                      member}));
}

json verdict_json(const RegularityVerdict& v) {
    return {{"kind", to_string(v.kind)},
            {"holds", v.holds},
            {"C", v.C_used},
            {"statistic", v.statistic},
            {"heuristic", v.heuristic}};
}

void run_equivalence(const json& j, const TaskContext& ctx, ArtifactFile& out) {
    const PickFunction& f = task_function(j, ctx);
    const Gauge& gamma = task_gauge(j, ctx, "gamma");
    double tau = j.value("tau", 0.0);
    EquivalenceReport r = regfort_equivalence_check(f, gamma, tau);
    json doc{{"regular", verdict_json(r.regular)},
             {"augury", {{"holds", r.augury.holds},
                         {"heuristic", r.augury.heuristic},
                         {"detail", r.augury.detail}}},
             {"fortunate", verdict_json(r.fortunate)},
             {"witness", r.witness.describe()},
             {"fitted", r.fitted.describe()},
             {"agree", r.agree},
             {"heuristic", r.heuristic}};
    out.line(doc.dump(2));
}

void run_horocycle(const json& j, const TaskContext& ctx, ArtifactFile& out) {
    const PickFunction& f = task_function(j, ctx);
    const Gauge& gamma = task_gauge(j, ctx, "gamma");
    double tau = j.value("tau", 0.0);
    double alpha = j.value("alpha", 1.0);
    int net = j.value("net", 2048);
    auto betas = j["betas"].get<std::vector<double>>();
    HorocycleProfile p = horocyclic_profile(f, gamma, alpha, tau, betas, net, ctx.seed, ctx.jobs);
    out.line("beta,sup_deviation");
    for (std::size_t i = 0; i < p.beta.size(); ++i)
        out.line(csv_row({fmt(p.beta[i]), fmt(p.sup_deviation[i])}));
}

void run_task(const ScenarioTask& t, const TaskContext& ctx) {
    json j = json::parse(t.raw);
    ArtifactFile out(ctx.out_dir, t.output);
    if (t.op == "sweep") run_sweep(j, ctx, out);
    else if (t.op == "augur") run_augur(j, ctx, out);
    else if (t.op == "classify") run_classify(j, ctx, out);
    else if (t.op == "foliate") run_foliate(j, ctx, out);
    else if (t.op == "enigma") run_enigma(j, ctx, out);
    else if (t.op == "equivalence") run_equivalence(j, ctx, out);
    else if (t.op == "horocycle") run_horocycle(j, ctx, out);
    out.close();
}

} // namespace

// ------------------------------------------------------------------ //
// loading
// ------------------------------------------------------------------ //

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open scenario file " + path);
    json doc;
    try {
        doc = json::parse(in); // exception message carries line and column
    } catch (const json::parse_error& e) {
        throw ArgumentError(path + ": " + e.what());
    }
    if (!doc.is_object()) throw ArgumentError(path + ": top level must be a JSON object");

    Scenario s;
    s.seed = static_cast<unsigned>(opt_number(doc, path, "seed", 0.0));
    s.jobs = static_cast<int>(opt_number(doc, path, "jobs", 0.0));
    s.rel_tol = opt_number(doc, path, "tolerance", 1e-9);
    if (!(s.rel_tol > 0.0)) fail(path, "tolerance must be positive");

    if (!doc.contains("eps_grid")) {
        s.eps_grid = dyadic_eps_grid();
    } else if (doc["eps_grid"].is_array()) {
        s.eps_grid = need_number_array(doc, path, "eps_grid");
        for (std::size_t i = 0; i < s.eps_grid.size(); ++i) {
            if (!(s.eps_grid[i] > 0.0)) fail(path, "eps_grid entries must be positive");
            if (i && !(s.eps_grid[i] < s.eps_grid[i - 1]))
                fail(path, "eps_grid must be strictly decreasing");
        }
    } else if (doc["eps_grid"].is_object()) {
        const json& g = doc["eps_grid"];
        double start = opt_number(g, path + ".eps_grid", "start", 0.125);
        double count = opt_number(g, path + ".eps_grid", "count", 18.0);
        if (!(start > 0.0) || count < 1 || count > 60)
            fail(path + ".eps_grid", "need start > 0 and 1 <= count <= 60");
        s.eps_grid = dyadic_eps_grid(start, static_cast<int>(count));
    } else {
        fail(path + ".eps_grid", "must be an array or {start, count}");
    }

    if (doc.contains("measures")) {
        if (!doc["measures"].is_object()) fail(path, "measures must be an object");
        for (const auto& [name, body] : doc["measures"].items())
            s.measures.emplace(name, parse_measure(body, path + ".measures." + name));
    }
    if (doc.contains("gauges")) {
        if (!doc["gauges"].is_object()) fail(path, "gauges must be an object");
        for (const auto& [name, body] : doc["gauges"].items())
            s.gauges.emplace(name, parse_gauge(body, path + ".gauges." + name));
    }
    if (doc.contains("functions")) {
        if (!doc["functions"].is_object()) fail(path, "functions must be an object");
        // Functions may reference each other (mobius / negative-reciprocal
        // inners) in any declaration order: resolve by fixpoint iteration.
        std::vector<std::pair<std::string, json>> pending;
        for (const auto& [name, body] : doc["functions"].items()) pending.emplace_back(name, body);
        bool progress = true;
        while (!pending.empty() && progress) {
            progress = false;
            for (auto it = pending.begin(); it != pending.end();) {
                const json& body = it->second;
                bool ready = true;
                if (body.is_object() && body.contains("inner") && body["inner"].is_string())
                    ready = s.functions.count(body["inner"].get<std::string>()) > 0;
                if (ready) {
                    s.functions.emplace(it->first, parse_function(body, path + ".functions." + it->first,
                                                                  s.measures, s.functions));
                    it = pending.erase(it);
                    progress = true;
                } else {
                    ++it;
                }
            }
        }
        if (!pending.empty())
            fail(path + ".functions." + pending.front().first,
                 "inner function reference cannot be resolved (unknown name or reference cycle)");
    }

    if (doc.contains("tasks")) {
        if (!doc["tasks"].is_array()) fail(path, "tasks must be an array");
        std::set<std::string> outputs;
        std::size_t i = 0;
        for (const auto& t : doc["tasks"]) {
            std::string where = path + ".tasks[" + std::to_string(i) + "]";
            validate_task(t, where, s);
            ScenarioTask task;
            task.op = t["op"].get<std::string>();
            task.output = t["output"].get<std::string>();
            task.raw = t.dump();
            if (!outputs.insert(task.output).second)
                fail(where, "output path '" + task.output + "' is not distinct");
            s.tasks.push_back(std::move(task));
            ++i;
        }
    }
    return s;
}

// ------------------------------------------------------------------ //
// running
// ------------------------------------------------------------------ //

int run_scenario(const Scenario& s, const std::string& out_dir, const ScenarioOverrides& ov,
                 const std::string& only_op) {
    TaskContext ctx{s, std::filesystem::path(out_dir), ov.has_tol ? ov.rel_tol : s.rel_tol,
                    ov.has_seed ? ov.seed : s.seed, ov.has_jobs ? ov.jobs : s.jobs};

    int ran = 0, failed_precondition = 0, failed_io = 0;
    std::printf("%-12s %-28s %-8s %s\n", "op", "output", "seconds", "status");
    for (const ScenarioTask& t : s.tasks) {
        if (!only_op.empty() && t.op != only_op) continue;
        ++ran;
        auto t0 = std::chrono::steady_clock::now();
        std::string status = "ok";
        try {
            run_task(t, ctx);
        } catch (const PreconditionError& e) {
            ++failed_precondition;
            status = std::string("precondition [") + e.hypothesis() + "]: " + e.what();
        } catch (const IoFailure& e) {
            ++failed_io;
            status = std::string("io: ") + e.what();
        } catch (const NumericError& e) {
            ++failed_precondition;
            status = std::string("numeric: ") + e.what();
        } catch (const std::runtime_error& e) {
            // classification / singularity / unsupported-form / domain:
            // the requested verdict is undefined for these inputs
            ++failed_precondition;
            status = std::string("verdict: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%-12s %-28s %-8.2f %s\n", t.op.c_str(), t.output.c_str(), secs,
                    status.c_str());
    }
    std::printf("%d task%s, %d failed\n", ran, ran == 1 ? "" : "s",
                failed_precondition + failed_io);
    if (failed_io) return 1;
    if (failed_precondition) return 2;
    return 0;
}

int run_scenario_file(const std::string& path, const std::string& out_dir,
                      const ScenarioOverrides& ov, const std::string& only_op) {
    try {
        Scenario s = load_scenario(path);
        return run_scenario(s, out_dir, ov, only_op);
    } catch (const ArgumentError& e) {
        std::fprintf(stderr, "scenario error: %s\n", e.what());
        return 1;
    }
}

} // namespace nevlab
