#pragma once

#include <map>
#include <string>
#include <vector>

#include "nevlab/gauge.hpp"
#include "nevlab/measure.hpp"
#include "nevlab/pick.hpp"

namespace nevlab {

// ------------------------------------------------------------------ //
// Scenario: a batch of named objects plus a task list, loaded from JSON
// ------------------------------------------------------------------ //
//
// Top-level schema (all sections optional unless a task references them):
//
//   {
//     "seed": 0,                     // quasi-random net seed (default 0)
//     "jobs": 0,                     // parallelism degree (0 = NEVLAB_JOBS / hardware)
//     "tolerance": 1e-9,             // relative tolerance for adaptive sweeps
//     "eps_grid": {"start": 0.125, "count": 18},   // or an explicit array
//     "measures":  { name: {"components": [component, ...]}, ... },
//     "functions": { name: function, ... },
//     "gauges":    { name: gauge, ... },
//     "tasks": [ task, ... ]
//   }
//
// Components:
//   {"kind": "atoms", "points": [[t, mass], ...]}
//   {"kind": "polynomial", "pieces": [{"lo": a, "hi": b, "coeff": [c0,c1,c2,c3]}, ...]}
//   {"kind": "power", "center": 0, "exponent": 0.5, "coeff": 1, "radius": 1}
//   {"kind": "self-similar", "maps": [[ratio, offset], ...], "weights": [...], "total": 1}
//   {"kind": "cantor", "total": 1}
//   {"kind": "lebesgue-line"}
//
// Functions:
//   {"form": "nevanlinna", "a": 0, "b": 0, "measure": "name"}
//   {"form": "resolvent", "diag": [...], "offdiag": [...], "phi": [...]}
//      (phi optional: defaults to the first coordinate vector)
//   {"form": "mobius", "coeffs": [m0, m1, m2, m3], "inner": "name"}
//   {"form": "negative-reciprocal", "inner": "name"}
//
// Gauges:
//   {"power": p, "log": q, "coeff": c}      (log and coeff optional)
//   {"table": [[t, value], ...]}
//
// Tasks (each writes one artifact under the output directory):
//   {"op": "sweep", "function": f, "scale": g, "height": g, "tau": 0,
//    "method": "both" | "direct" | "kernel", "output": "file.csv"}
//   {"op": "augur", "function": f, "scale": g, "height": g, "tau": 0,
//    "output": "file.csv"}
//   {"op": "classify", "function": f, "taus": [...], "output": "file.csv"}
//   {"op": "foliate", "function": f, "scale": g, "height": g,
//    "taus": [...], "output": "file.csv"}
//   {"op": "enigma", "function": f, "scale": g, "height": g, "tau": 0,
//    "output": "file.csv"}
//   {"op": "equivalence", "function": f, "gamma": g, "tau": 0,
//    "output": "file.json"}
//   {"op": "horocycle", "function": f, "gamma": g, "alpha": 1, "tau": 0,
//    "betas": [...], "net": 2048, "output": "file.csv"}
//
// Load-time validation: every referenced name must resolve, the eps grid
// must be strictly decreasing positives, and output paths must be distinct.
// Violations throw ArgumentError carrying the JSON path of the offender;
// malformed JSON reports the parse location (line and column).

struct ScenarioTask {
    std::string op;
    std::string raw;    ///< the task's JSON object, re-serialized
    std::string output; ///< artifact path, relative to the output directory
};

struct Scenario {
    unsigned seed = 0;
    int jobs = 0;
    double rel_tol = 1e-9;
    std::vector<double> eps_grid;
    std::map<std::string, Measure> measures;
    std::map<std::string, PickFunction> functions;
    std::map<std::string, Gauge> gauges;
    std::vector<ScenarioTask> tasks;
};

/// Parse and validate a scenario file. Throws ArgumentError with a parse
/// location or a JSON-path diagnostic on malformed input.
Scenario load_scenario(const std::string& path);

/// Optional command-line overrides of the scenario's global settings.
struct ScenarioOverrides {
    bool has_seed = false;
    unsigned seed = 0;
    bool has_jobs = false;
    int jobs = 0;
    bool has_tol = false;
    double rel_tol = 0.0;
};

/// Execute the scenario's tasks in declaration order (data-parallel within a
/// task), writing artifacts under out_dir and printing a one-line summary per
/// task. `only_op` restricts execution to tasks of one kind (empty = all).
/// Returns the process exit code: 0 when every task succeeded, 2 when some
/// task failed a verdict precondition (the summary names the hypothesis),
/// 1 on I/O failures. Identical scenario + seed yields byte-identical
/// artifacts; parallel and serial runs produce identical numbers.
int run_scenario(const Scenario& s, const std::string& out_dir,
                 const ScenarioOverrides& overrides = {}, const std::string& only_op = "");

/// load + run, mapping load failures to exit code 1 (message on stderr).
int run_scenario_file(const std::string& path, const std::string& out_dir,
                      const ScenarioOverrides& overrides = {}, const std::string& only_op = "");

} // namespace nevlab
