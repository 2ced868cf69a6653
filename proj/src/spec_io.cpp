#include "twistlab/spec_io.hpp"

#include <exception>
#include <set>

#include "json.hpp"
#include "twistlab/classify.hpp"
#include "twistlab/oracle.hpp"
#include "twistlab/vertex.hpp"

namespace twistlab {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys = {"gram", "sigma", "eps", "phi", "mu", "trunc", "command", "out", "alpha", "beta", "deep"};
const std::set<std::string> kCommands = {"check", "classify", "kappa", "orbits"};

std::string position(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

IMat int_matrix(const json& j, const std::string& key) {
    if (!j.is_array()) throw InputError(key + ": expected a matrix");
    IMat m;
    for (const auto& row : j) {
        if (!row.is_array()) throw InputError(key + ": expected rows");
        IVec r;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw InputError(key + ": entries must be integers");
            r.push_back(x.get<long long>());
        }
        m.push_back(std::move(r));
    }
    return m;
}

IVec int_vector(const json& j, const std::string& key) {
    if (!j.is_array()) throw InputError(key + ": expected a vector");
    IVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw InputError(key + ": entries must be integers");
        v.push_back(x.get<long long>());
    }
    return v;
}

std::vector<std::string> string_vector(const json& j, const std::string& key) {
    if (!j.is_array()) throw InputError(key + ": expected a list of strings");
    std::vector<std::string> v;
    for (const auto& x : j) {
        if (!x.is_string()) throw InputError(key + ": entries must be strings");
        v.push_back(x.get<std::string>());
    }
    return v;
}

CycScalar scalar_of(const std::string& s, const std::string& key) {
    try {
        return CycScalar::parse(s);
    } catch (const ScalarError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(key + ": cannot parse scalar '" + s + "'");
    }
}

json vec_json(const IVec& v) { return json(v); }

json rvec_json(const RVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

json check_json(const CheckReport& r) {
    json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["failed"] = r.failed;
    j["untestable"] = r.untestable;
    json f = json::array();
    for (size_t i = 0; i < r.failures.size() && i < 5; ++i) f.push_back(r.failures[i]);
    j["failures"] = f;
    return j;
}

std::vector<IVec> test_vectors(size_t l) {
    std::vector<IVec> out;
    for (size_t i = 0; i < l; ++i) {
        IVec e(l, 0);
        e[i] = 1;
        out.push_back(e);
    }
    if (l >= 2) {
        IVec e(l, 0);
        e[0] = 1;
        e[1] = -1;
        out.push_back(e);
    }
    return out;
}

JobResult cmd_orbits(const std::shared_ptr<const TwistData>& T) {
    const TwistedLattice& L = T->lattice();
    OrbitDecomposition d = L.reduce_generating_set();
    json j;
    j["command"] = "orbits";
    j["p"] = L.order();
    j["degree_nonzero_orbits"] = d.m;
    json os = json::array();
    for (const auto& o : d.orbits) {
        json x;
        x["rep"] = vec_json(o.rep);
        json mem = json::array();
        for (const auto& v : o.members) mem.push_back(vec_json(v));
        x["members"] = mem;
        x["length"] = o.length;
        x["degree"] = rvec_json(o.degree);
        x["degree_zero"] = o.degree_zero;
        json roots = json::array();
        for (const auto& r : T->mu_roots(o)) roots.push_back(r.str());
        x["mu_roots"] = roots;
        os.push_back(x);
    }
    j["orbits"] = os;
    return {kOk, j.dump(2)};
}

JobResult cmd_kappa(const JobSpec& spec, const std::shared_ptr<const TwistData>& T) {
    const TwistedLattice& L = T->lattice();
    if (spec.alpha.size() != L.rank() || spec.beta.size() != L.rank())
        throw InputError("kappa: alpha and beta must be lattice vectors of length " + std::to_string(L.rank()));
    json j;
    j["command"] = "kappa";
    j["alpha"] = vec_json(spec.alpha);
    j["beta"] = vec_json(spec.beta);
    j["pairing"] = L.pair(spec.alpha, spec.beta);
    j["m_values"] = vec_json(L.m_values(spec.alpha, spec.beta));
    j["eps"] = T->eps(spec.alpha, spec.beta).str();
    j["C"] = T->commutator_map(spec.alpha, spec.beta).str();
    j["kappa"] = T->kappa(spec.alpha, spec.beta).str();
    j["N"] = T->locality_order(spec.alpha, spec.beta);
    return {kOk, j.dump(2)};
}

bool mu_selected(const std::vector<CycScalar>& mu, const std::vector<std::optional<CycScalar>>& sel) {
    for (size_t i = 0; i < sel.size(); ++i)
        if (sel[i] && !(*sel[i] == mu[i])) return false;
    return true;
}

JobResult cmd_classify(const JobSpec& spec, const std::shared_ptr<const TwistData>& T, bool parallel) {
    Classification c = enumerate_simple_twisted(T, parallel);
    std::vector<std::optional<CycScalar>> sel;
    if (!spec.mu.empty()) {
        if (spec.mu.size() != c.orbits.orbits.size())
            throw InputError("mu: expected " + std::to_string(c.orbits.orbits.size()) + " entries, one per orbit");
        for (const auto& s : spec.mu) sel.push_back(s == "*" ? std::nullopt : std::optional<CycScalar>(scalar_of(s, "mu")));
    }
    json j;
    j["command"] = "classify";
    j["p"] = c.p;
    j["orbit_lengths"] = c.orbit_lengths;
    j["obstructed"] = c.obstructed;
    if (c.obstructed) {
        j["witness"] = {{"alpha", vec_json(c.witness.alpha)}, {"j", c.witness.j}, {"value", c.witness.value.str()}};
        j["classes"] = 0;
        j["summary"] = "0 classes, witness (alpha = " + json(c.witness.alpha).dump() + ", j = " + std::to_string(c.witness.j) + ")";
        return {kOk, j.dump(2)};
    }
    if (!c.refusal.empty()) {
        j["refusal"] = c.refusal;
        return {kScalarRefusal, j.dump(2)};
    }
    j["weight_cosets"] = c.eta_index;
    j["dual_quotient_index"] = c.dual_eta_index;
    j["nu_integral"] = c.nu_integral;
    bool fail = false;
    json rows = json::array();
    size_t total = 0;
    for (const auto& r : c.rows) {
        if (!sel.empty() && !mu_selected(r.mu, sel)) continue;
        json x;
        json mu = json::array();
        for (const auto& m : r.mu) mu.push_back(m.str());
        x["mu"] = mu;
        x["algebra_zero"] = r.A.zero;
        if (r.A.zero) {
            x["witness"] = r.A.witness;
        } else {
            x["dim_A"] = r.A.dim;  // -1: infinite
            x["dim_B0"] = r.D.E.size();
            x["radical"] = r.D.radical.size();
            x["blocks"] = r.D.blocks.size();
            x["block_dim"] = r.D.block_dim;
            x["omega_dim"] = r.D.module_dim;
            x["certified"] = r.D.certified;
            if (!r.D.certified) fail = true;
            json th = json::array();
            for (const auto& t : r.A.theta) th.push_back(t.str());
            x["theta"] = th;
        }
        x["weights_ok"] = r.weights_ok;
        if (r.weights_ok) x["y0"] = rvec_json(r.y0);
        if (!r.note.empty()) x["note"] = r.note;
        x["classes"] = r.classes;
        total += r.classes;
        rows.push_back(x);
    }
    j["rows"] = rows;
    j["classes"] = total;
    j["summary"] = std::to_string(total) + (total == 1 ? " class" : " classes");
    return {fail ? kInvariantFailure : kOk, j.dump(2)};
}

JobResult cmd_check(const JobSpec& spec, const std::shared_ptr<const TwistData>& T, bool parallel) {
    const TwistedLattice& L = T->lattice();
    size_t l = L.rank();
    Rational trunc = Rational::parse(spec.trunc);
    auto M = std::make_shared<const FockModule>(T, std::make_shared<const FreeOmega>(T, RVec{}), trunc);
    SlotWindow w;
    w.depth = 1;
    std::vector<IVec> vecs = test_vectors(l);
    std::vector<CheckReport> reps;

    VOSuite vo = vo_suite(M, vecs, w, parallel);
    const char* names[] = {"VO(a) commutator", "VO(b) Heisenberg products", "VO(c) derivative", "VO(d) Virasoro",
                           "VO(e) two-point"};
    auto items = vo.items();
    for (size_t i = 0; i < items.size(); ++i) {
        CheckReport r = *items[i];
        r.name = names[i];
        reps.push_back(r);
    }
    CheckReport vir = virasoro_element_checks(M, vecs, w);
    vir.name = "Virasoro element";
    reps.push_back(vir);

    CheckReport loc, prod;
    loc.name = "locality order";
    prod.name = "lattice products";
    for (size_t i = 0; i < l; ++i)
        for (size_t k = 0; k < l; ++k) {
            IVec a = L.basis(i), b = L.basis(k);
            loc.merge(locality_order_check(M, a, b, w));
            long long ab = L.pair(a, b);
            for (long long n = -ab - 2; n <= -ab; ++n) prod.merge(product_check(M, a, b, n, w));
        }
    loc.name = "locality order";
    prod.name = "lattice products";
    reps.push_back(loc);
    reps.push_back(prod);

    CheckReport kap;
    kap.name = "kappa commutator";
    for (const auto& a : vecs)
        for (const auto& b : vecs) {
            long long e = L.pair(a, a) * L.pair(b, b) + L.pair(a, b);
            CycScalar want(e % 2 == 0 ? 1 : -1);
            kap.record(T->kappa(a, b) / T->kappa(b, a) == want, false, json(a).dump() + json(b).dump());
        }
    reps.push_back(kap);

    CheckReport heis;
    heis.name = "Heisenberg degree";
    for (const auto& o : M->omega().seeds())
        for (const auto& m : M->monomials(o, trunc)) {
            Rational want = M->degree(m) + M->omega_degree(M->weight(m));
            heis.record(M->virasoro_one(m) == CycScalar(want), false, "degree " + M->degree(m).str());
        }
    reps.push_back(heis);

    json j;
    j["command"] = "check";
    j["trunc"] = trunc.str();
    json round;
    Classification c = enumerate_simple_twisted(T, parallel);
    if (c.obstructed) {
        round["obstructed"] = true;
        round["witness"] = {{"alpha", vec_json(c.witness.alpha)}, {"j", c.witness.j}};
    } else if (!c.refusal.empty()) {
        return {kScalarRefusal, json({{"command", "check"}, {"refusal", c.refusal}}).dump(2)};
    } else {
        CheckReport tw;
        tw.name = "twisted conditions on enumerated classes";
        for (const auto& s : c.classes) {
            ConditionReport cr = twisted_conditions(*instantiate(c, s, trunc));
            tw.record(cr.ok(), false, cr.witnesses.empty() ? "class" : cr.witnesses.front());
        }
        round["classes"] = c.classes.size();
        reps.push_back(tw);
    }
    j["classification"] = round;

    if (spec.deep) {
        // residue oracle on basis pairs, coset count when sigma = 1
        CheckReport orc;
        for (size_t i = 0; i < l; ++i)
            for (size_t k = 0; k < l; ++k)
                for (long long sgn : {1LL, -1LL}) {
                    IVec a = L.basis(i), b = vec_scale(L.basis(k), sgn);
                    long long ab = L.pair(a, b), N = T->locality_order(a, b);
                    OpPtr xa = vertex_series(M, a), xb = vertex_series(M, b);
                    for (long long n = -ab - 2; n < N; ++n) {
                        OpPtr o = oracle_product(xa, xb, n, N);
                        OpPtr rhs = n >= -ab ? sum_series({{CycScalar(0), o}}) : lattice_product_schur(M, a, b, -ab - n - 1);
                        orc.merge(compare_series("oracle", o, rhs, w));
                    }
                }
        orc.name = "oracle lattice products";
        reps.push_back(orc);
        if (L.order() == 1) {
            CheckReport dual;
            dual.name = "oracle dual index";
            long long want = oracle_dual_index(L.gram());
            dual.record(static_cast<long long>(c.classes.size()) == want, false,
                        std::to_string(c.classes.size()) + " classes vs " + std::to_string(want));
            reps.push_back(dual);
        }
    }

    bool fail = false;
    json checks = json::array();
    json untestable = json::array();
    for (const auto& r : reps) {
        checks.push_back(check_json(r));
        if (!r.ok()) fail = true;
        if (r.untestable > 0) untestable.push_back(r.name + ": " + std::to_string(r.untestable) + " untestable slots");
    }
    j["checks"] = checks;
    j["untestable"] = untestable;
    j["status"] = fail ? "fail" : "ok";
    return {fail ? kInvariantFailure : kOk, j.dump(2)};
}

}  // namespace

JobSpec parse_job(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("parse error at " + position(text, e.byte) + ": " + e.what());
    }
    if (!j.is_object()) throw InputError("job must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (!kKeys.count(k)) throw InputError("unknown key '" + k + "'");
    JobSpec s;
    if (!j.contains("gram") || !j.contains("sigma")) throw InputError("gram and sigma are required");
    s.gram = int_matrix(j["gram"], "gram");
    s.sigma = int_matrix(j["sigma"], "sigma");
    if (j.contains("eps")) {
        if (!j["eps"].is_array()) throw InputError("eps: expected a matrix of strings");
        std::vector<std::vector<std::string>> e;
        for (const auto& row : j["eps"]) e.push_back(string_vector(row, "eps"));
        s.eps = e;
    }
    if (j.contains("phi")) s.phi = string_vector(j["phi"], "phi");
    if (j.contains("mu")) s.mu = string_vector(j["mu"], "mu");
    if (j.contains("trunc")) {
        const json& t = j["trunc"];
        if (t.is_number_integer()) s.trunc = std::to_string(t.get<long long>());
        else if (t.is_string()) s.trunc = t.get<std::string>();
        else throw InputError("trunc: expected an integer or a rational string");
        try {
            s.trunc = Rational::parse(s.trunc).str();
        } catch (const std::exception&) {
            throw InputError("trunc: cannot parse '" + s.trunc + "'");
        }
    }
    if (j.contains("command")) {
        if (!j["command"].is_string()) throw InputError("command: expected a string");
        s.command = j["command"].get<std::string>();
    }
    if (!kCommands.count(s.command)) throw InputError("unknown command '" + s.command + "'");
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw InputError("out: expected a string");
        s.out = j["out"].get<std::string>();
    }
    if (j.contains("alpha")) s.alpha = int_vector(j["alpha"], "alpha");
    if (j.contains("beta")) s.beta = int_vector(j["beta"], "beta");
    if (j.contains("deep")) {
        if (!j["deep"].is_boolean()) throw InputError("deep: expected true or false");
        s.deep = j["deep"].get<bool>();
    }
    return s;
}

std::string serialize_job(const JobSpec& s) {
    json j;
    j["gram"] = s.gram;
    j["sigma"] = s.sigma;
    if (s.eps) j["eps"] = *s.eps;
    if (s.phi) j["phi"] = *s.phi;
    if (!s.mu.empty()) j["mu"] = s.mu;
    j["trunc"] = s.trunc;
    j["command"] = s.command;
    if (!s.out.empty()) j["out"] = s.out;
    if (!s.alpha.empty()) j["alpha"] = s.alpha;
    if (!s.beta.empty()) j["beta"] = s.beta;
    if (s.deep) j["deep"] = true;
    return j.dump(2);
}

std::shared_ptr<const TwistData> make_twist(const JobSpec& s) {
    auto L = std::make_shared<const TwistedLattice>(s.gram, s.sigma);
    size_t l = L->rank();
    TwistData T(L);
    if (s.eps) {
        if (s.eps->size() != l) throw InputError("eps: expected an l x l matrix");
        std::vector<std::vector<Phase>> seed;
        for (const auto& row : *s.eps) {
            if (row.size() != l) throw InputError("eps: expected an l x l matrix");
            std::vector<Phase> r;
            for (const auto& x : row) r.push_back(Phase::from_scalar(scalar_of(x, "eps")));
            seed.push_back(std::move(r));
        }
        T = T.with_eps_seed(seed);
    }
    if (s.phi) {
        if (s.phi->size() != l) throw InputError("phi: expected one value per basis vector");
        std::vector<Phase> ph;
        for (const auto& x : *s.phi) ph.push_back(Phase::from_scalar(scalar_of(x, "phi")));
        T = T.with_phi(ph);
    }
    return std::make_shared<const TwistData>(T);
}

JobResult run_job(const JobSpec& spec, bool parallel) {
    try {
        auto T = make_twist(spec);
        if (spec.command == "orbits") return cmd_orbits(T);
        if (spec.command == "kappa") return cmd_kappa(spec, T);
        if (spec.command == "classify") return cmd_classify(spec, T, parallel);
        return cmd_check(spec, T, parallel);
    } catch (const InputError& e) {
        return {kInputError, json({{"error", "input"}, {"message", e.what()}}).dump(2)};
    } catch (const ScalarError& e) {
        return {kScalarRefusal, json({{"error", "unsupported scalar"}, {"message", e.what()}}).dump(2)};
    } catch (const std::exception& e) {
        return {kInvariantFailure, json({{"error", "internal"}, {"message", e.what()}}).dump(2)};
    }
}

}  // namespace twistlab
