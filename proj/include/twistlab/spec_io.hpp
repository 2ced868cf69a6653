#pragma once

// Job specifications and the batch commands behind the command line tool.
//
// A job is a JSON object:
//   {"gram": [[2,-1],[-1,2]], "sigma": [[-1,0],[0,-1]],
//    "eps": [["1","1"],["-1","1"]],        optional seed matrix (scalar strings)
//    "phi": ["1","-1"],                    optional phi on the lattice basis
//    "mu": ["1","*"],                      optional root per orbit, "*" = any
//    "trunc": "4", "command": "classify", "out": "",
//    "alpha": [1,0], "beta": [0,1],        vectors for the kappa command
//    "deep": true}                         check also runs the slow oracles

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/cocycle.hpp"

namespace twistlab {

struct JobSpec {
    IMat gram;
    IMat sigma;
    std::optional<std::vector<std::vector<std::string>>> eps;
    std::optional<std::vector<std::string>> phi;
    std::vector<std::string> mu;
    std::string trunc = "4";
    std::string command = "check";
    std::string out;
    IVec alpha;
    IVec beta;
    bool deep = false;

    bool operator==(const JobSpec&) const = default;
};

// Throws InputError; JSON syntax errors carry "line L, column C".
JobSpec parse_job(const std::string& text);
std::string serialize_job(const JobSpec& spec);

// Lattice, cocycle seeds and phi of a job; throws InputError on invalid data
// (shape, S^T G S != G, infinite order) and ScalarError on unsupported scalars.
std::shared_ptr<const TwistData> make_twist(const JobSpec& spec);

enum ExitCode { kOk = 0, kInvariantFailure = 1, kInputError = 2, kScalarRefusal = 3 };

struct JobResult {
    int code = kOk;
    std::string report;  // JSON text, deterministic for a given spec
};

// Runs spec.command (check, classify, kappa or orbits); never throws.
JobResult run_job(const JobSpec& spec, bool parallel = true);

}  // namespace twistlab
