// Serial reference against the OpenMP kernels: slot verification of the
// vertex operator suite, the affine axioms and mu enumeration.
//
//   twistlab_bench [reps]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "twistlab/classify.hpp"
#include "twistlab/lie.hpp"
#include "twistlab/vertex.hpp"

using namespace twistlab;

namespace {

double seconds(const std::function<void()>& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

FockPtr free_module(IMat g, IMat s, Rational T) {
    auto L = std::make_shared<const TwistedLattice>(std::move(g), std::move(s));
    auto t = std::make_shared<const TwistData>(L);
    return std::make_shared<const FockModule>(t, std::make_shared<const FreeOmega>(t, RVec{}), T);
}

void row(const std::string& name, const std::function<std::string(bool)>& job, int reps) {
    std::string ks, kp;
    double ts = seconds([&] { ks = job(false); }, reps);
    double tp = seconds([&] { kp = job(true); }, reps);
    std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name.c_str(), ts, tp, tp > 0 ? ts / tp : 0.0,
                ks == kp ? "same" : "DIFFERENT");
}

std::string key(const CheckReport& r) { return r.summary(); }

}  // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::printf("threads: %d, reps: %d\n", omp_get_max_threads(), reps);
    std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

    SlotWindow w;
    w.depth = 1;
    auto rot = free_module({{2, 0}, {0, 2}}, {{0, -1}, {1, 0}}, Rational(5));
    row("vo_suite rotation, T = 5", [&](bool par) {
        VOSuite s = vo_suite(rot, {{1, 0}, {0, -1}, {1, 1}}, w, par);
        std::string k;
        for (auto* r : s.items()) k += key(*r);
        return k;
    }, reps);

    auto a2 = free_module({{2, -1}, {-1, 2}}, {{-1, 0}, {0, -1}}, Rational(6));
    row("vo_suite A2 sigma = -1, T = 6", [&](bool par) {
        VOSuite s = vo_suite(a2, {{1, 0}, {0, 1}, {1, 1}}, w, par);
        std::string k;
        for (auto* r : s.items()) k += key(*r);
        return k;
    }, reps);

    auto g = std::make_shared<QuadLie>(gl_inner(3, 3, {0, 1, 2}));
    AffFamily fam = tau_family(g);
    row("aff_axioms C3, gl_3 order 3", [&](bool par) { return key(aff_axioms(fam, Axiom::C3, 2, -2, 2, par)); }, reps);

    auto d4 = std::make_shared<const TwistData>(std::make_shared<const TwistedLattice>(
        IMat{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}},
        IMat{{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}));
    row("enumerate D4 sigma = -1", [&](bool par) {
        Classification c = enumerate_simple_twisted(d4, par);
        return std::to_string(c.classes.size());
    }, reps);

    auto e3 = std::make_shared<const TwistData>(std::make_shared<const TwistedLattice>(
        IMat{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, IMat{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
    row("enumerate A3 sigma = -1", [&](bool par) {
        Classification c = enumerate_simple_twisted(e3, par);
        return std::to_string(c.classes.size());
    }, reps);
    return 0;
}
