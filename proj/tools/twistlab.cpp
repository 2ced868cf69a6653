// twistlab: batch checks and classification reports for twisted lattice
// vertex algebras.
//
//   twistlab --spec job.json [--cmd check|classify|kappa|orbits] [--trunc T]
//            [--alpha 1,0 --beta 0,1] [--out report.json] [--serial] [--deep]
//
// Exit codes: 0 success, 1 invariant failure, 2 input error, 3 unsupported scalar.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "twistlab/spec_io.hpp"

using namespace twistlab;

namespace {

IVec parse_vector(const std::string& s) {
    IVec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        long long x = std::stoll(tok, &used);
        if (used != tok.size()) throw InputError("bad vector entry '" + tok + "'");
        v.push_back(x);
    }
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted lattice vertex algebra toolkit"};
    std::string spec_path, cmd, trunc, out, alpha, beta;
    bool serial = false, deep = false;
    app.add_option("--spec", spec_path, "job file (JSON)")->required();
    app.add_option("--cmd", cmd, "command")->check(CLI::IsMember({"check", "classify", "kappa", "orbits"}));
    app.add_option("--trunc", trunc, "truncation degree T");
    app.add_option("--out", out, "report file");
    app.add_option("--alpha", alpha, "first vector for kappa, comma separated");
    app.add_option("--beta", beta, "second vector for kappa, comma separated");
    app.add_flag("--serial", serial, "disable parallel verification");
    app.add_flag("--deep", deep, "check: also run the brute-force oracles");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    JobResult res;
    JobSpec spec;
    try {
        std::ifstream in(spec_path);
        if (!in) throw InputError("cannot read " + spec_path);
        std::stringstream buf;
        buf << in.rdbuf();
        spec = parse_job(buf.str());
        if (!cmd.empty()) spec.command = cmd;
        if (!trunc.empty()) spec.trunc = Rational::parse(trunc).str();
        if (!out.empty()) spec.out = out;
        if (!alpha.empty()) spec.alpha = parse_vector(alpha);
        if (!beta.empty()) spec.beta = parse_vector(beta);
        if (deep) spec.deep = true;
        res = run_job(spec, !serial);
    } catch (const std::exception& e) {
        std::cerr << "twistlab: " << e.what() << "\n";
        return kInputError;
    }

    if (spec.out.empty()) {
        std::cout << res.report << "\n";
    } else {
        std::ofstream f(spec.out);
        if (!f) {
            std::cerr << "twistlab: cannot write " << spec.out << "\n";
            return kInputError;
        }
        f << res.report << "\n";
    }
    if (res.code != kOk) std::cerr << "twistlab: exit " << res.code << "\n";
    return res.code;
}
