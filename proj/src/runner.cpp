#include "whtor/runner.hpp"

#include <sstream>

#include "json.hpp"
#include "whtor/fibering.hpp"

namespace whtor {

namespace {

std::vector<std::vector<long>> identity_alpha(const GroupSpecPtr& g) {
    int n = g->num_generators();
    std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

const std::vector<std::vector<long>>& doc_alpha(const ModelDocument& doc,
                                                std::vector<std::vector<long>>& scratch) {
    if (!doc.alpha.empty()) return doc.alpha;
    scratch = identity_alpha(doc.group);
    return scratch;
}

void put(TaskReport& r, const std::string& key, const std::string& value) {
    r.fields.emplace_back(key, value);
    r.lines.push_back(key + ": " + value);
}

void put_verdict(TaskReport& r, const std::string& key, TriState t,
                 bool failure_on_nontrivial = false) {
    put(r, key, tristate_name(t));
    if (failure_on_nontrivial && t == TriState::NonTrivial) r.pass = false;
}

void apply_expectation(TaskReport& r, const DocumentTask& t, const TorsionResult& res) {
    if (t.args.size() != 3 || !res.cls) return;
    TriState want = t.args[2] == "trivial" ? TriState::Trivial : TriState::NonTrivial;
    bool met = res.cls->classify() == want;
    put(r, "expected", t.args[2] + (met ? "  [met]" : "  [NOT MET]"));
    if (!met) r.pass = false;
}

void put_class(TaskReport& r, const std::string& key, const TorsionResult& res) {
    if (res.cls) {
        put(r, key, tristate_name(res.cls->classify()));
    } else {
        put(r, key, "stuck");
        if (!res.note.empty()) put(r, key + "_note", res.note);
        r.stuck = true;
    }
}

std::map<int, GRMatrix> map_matrices(const ChainMap& f) {
    std::map<int, GRMatrix> out;
    for (int k = f.src().lo(); k <= f.src().hi(); ++k) out.emplace(k, f.f(k));
    return out;
}

S1FiberingModel canonical_s1_model(const ModelDocument& doc, const ChainMap& f) {
    if (!(f.src() == f.tgt()))
        throw std::invalid_argument("s1 model needs a self-map as monodromy");
    std::vector<std::vector<long>> scratch;
    auto sd = GroupSpec::semidirect_with_z(doc.group, doc_alpha(doc, scratch));
    SelfEquivalenceWithTwist se(f.src(), map_matrices(f), sd);
    BasedChainComplex torus = mapping_torus(se);
    return S1FiberingModel(se, torus, ChainMap::identity(torus));
}

BasedChainComplex fiber_for_chi(long chi) {
    auto triv = GroupSpec::trivial();
    auto pt = BasedChainComplex::single(triv, 0, 1);
    if (chi == 1) return pt;
    if (chi == 2) return direct_sum(pt, BasedChainComplex::single(triv, 2, 1));
    if (chi == 0) return direct_sum(pt, BasedChainComplex::single(triv, 1, 1));
    throw std::invalid_argument("transfer fiber supports chi in {0, 1, 2}");
}

// ---- document task execution ----

TaskReport run_torsion(const ModelDocument& doc, const DocumentTask& t, bool with_invariants) {
    TaskReport r{with_invariants ? "invariants" : "torsion", t.args[0]};
    TorsionResult res = whitehead_torsion(doc.maps.at(t.args[0]));
    put_class(r, "tau", res);
    apply_expectation(r, t, res);
    if (res.cls) {
        put(r, "rank", std::to_string(res.cls->rep().rows()));
        if (with_invariants)
            for (const auto& rec : res.cls->invariants())
                put(r, rec.morphism,
                    rec.value.str() + (rec.trivial_unit_image ? "  [trivial unit]" : ""));
    }
    return r;
}

TaskReport run_rho(const ModelDocument& doc, const DocumentTask& t) {
    TaskReport r{"rho", t.args[0]};
    const PoincarePairData& p = doc.pairs.at(t.args[0]);
    put(r, "dimension", std::to_string(p.n));
    TorsionResult res = rho(p);
    put_class(r, "rho", res);
    apply_expectation(r, t, res);
    PoincareCheck inv = check_involution_identity(p);
    put_verdict(r, "involution_identity_defect", inv.verdict, true);
    return r;
}

TaskReport run_glue(const ModelDocument& doc, const DocumentTask& t) {
    TaskReport r{"glue", t.args[1] == "0" ? "trivial" : t.args[1]};
    std::vector<std::vector<long>> scratch;
    HCobordismAlgebraic h{doc.group, doc_alpha(doc, scratch),
                          static_cast<int>(std::stol(t.args[0])),
                          t.args[1] == "0" ? TorsionClass::trivial(doc.group)
                                           : TorsionClass::from_unit(doc.elements.at(t.args[1])),
                          +1};
    GlueResult g = glue_hcobordism(h);
    put(r, "dim_w", std::to_string(h.dim_w));
    put_verdict(r, "x", g.x_verdict);
    put_verdict(r, "theta", g.theta_verdict);
    put_verdict(r, "tau_fib_prime", g.tfp_verdict);
    put(r, "tau_fib", g.tau_fib ? tristate_name(g.tau_fib->classify()) : "undefined");
    put(r, "representative_identity", g.representative_identity ? "yes" : "no");
    if (!g.representative_identity) r.pass = false;
    put_verdict(r, "dual_form_defect", g.dual_form, true);
    if (g.vanishing_equivalences) {
        put(r, "vanishing_equivalences", *g.vanishing_equivalences ? "yes" : "no");
        if (!*g.vanishing_equivalences) r.pass = false;
    }
    return r;
}

TaskReport run_s1(const ModelDocument& doc, const DocumentTask& t) {
    TaskReport r{"s1", t.args[0]};
    S1FiberingModel m = canonical_s1_model(doc, doc.maps.at(t.args[0]));
    S1Invariants inv = s1_invariants(m);
    if (inv.stuck) {
        r.stuck = true;
        put(r, "stuck", inv.note);
        return r;
    }
    put_verdict(r, "theta", inv.theta_verdict);
    put_verdict(r, "tau_fib_prime", inv.tfp_verdict);
    put(r, "tau_fib", inv.tau_fib ? tristate_name(inv.tau_fib->classify()) : "undefined");
    put_verdict(r, "theta_vs_con_defect", check_theta_vs_con(m), true);
    return r;
}

TaskReport run_transfer(const ModelDocument& doc, const DocumentTask& t) {
    TaskReport r{"transfer", t.args[0]};
    long chi = std::stol(t.args[1]);
    S1FiberingModel m = canonical_s1_model(doc, doc.maps.at(t.args[0]));
    CompositeVerdict v = check_composite_transfer(m, fiber_for_chi(chi));
    if (v.stuck) {
        r.stuck = true;
        put(r, "stuck", v.note);
        return r;
    }
    put(r, "chi", std::to_string(v.chi_f));
    put_verdict(r, "transfer_identity_defect", v.identity, true);
    if (chi == 0) put_verdict(r, "chi_zero_defect", v.chi_zero, true);
    return r;
}

TaskReport run_task(const ModelDocument& doc, const DocumentTask& t) {
    if (t.kind == "torsion") return run_torsion(doc, t, false);
    if (t.kind == "invariants") return run_torsion(doc, t, true);
    if (t.kind == "rho") return run_rho(doc, t);
    if (t.kind == "glue") return run_glue(doc, t);
    if (t.kind == "s1") return run_s1(doc, t);
    if (t.kind == "transfer") return run_transfer(doc, t);
    throw std::invalid_argument("unknown task kind " + t.kind);
}

// ---- builtin verify suite ----

TaskReport verify_unit_oracle() {
    TaskReport r{"verify", "unit-oracle"};
    auto z5 = GroupSpec::cyclic(5);
    GRElement t = GRElement::from_group_element(z5, z5->generator(0));
    GRElement u = t + GRElement::from_group_element(z5, z5->normalize({{4}})) - GRElement::one(z5);
    GRElement v = GRElement::from_group_element(z5, z5->normalize({{2}})) +
                  GRElement::from_group_element(z5, z5->normalize({{3}})) - GRElement::one(z5);
    bool inverse_ok = (u * v - GRElement::one(z5)).is_zero();
    put(r, "uv_equals_1", inverse_ok ? "yes" : "no");
    TriState cls = TorsionClass::from_unit(u).classify();
    put(r, "class_of_u", tristate_name(cls));
    r.pass = inverse_ok && cls == TriState::NonTrivial;
    return r;
}

TaskReport verify_random_acyclic(std::mt19937_64& rng, int count) {
    TaskReport r{"verify", "random-acyclic"};
    std::vector<GroupSpecPtr> groups{GroupSpec::trivial(), GroupSpec::cyclic(2),
                                     GroupSpec::cyclic(5)};
    int trivial = 0, diffs = 0;
    for (int i = 0; i < count; ++i) {
        BasedChainComplex c = random_acyclic_complex(groups[i % groups.size()], rng);
        TorsionResult t0 = torsion_of_acyclic(c, 0);
        if (t0.cls && t0.cls->classify() == TriState::Trivial) ++trivial;
        if (i % 5 == 0) {
            TorsionResult t1 = torsion_of_acyclic(c, 1);
            if (t0.cls && t1.cls &&
                classify_equal(*t0.cls, *t1.cls) == TriState::Trivial)
                ++diffs;
        }
    }
    put(r, "trivial", std::to_string(trivial) + "/" + std::to_string(count));
    put(r, "strategy_agreement", std::to_string(diffs) + "/" + std::to_string((count + 4) / 5));
    r.pass = trivial == count && diffs == (count + 4) / 5;
    return r;
}

TaskReport verify_lemma_formulas(std::mt19937_64& rng, int count) {
    TaskReport r{"verify", "lemma-1.2"};
    std::vector<GroupSpecPtr> groups{GroupSpec::trivial(), GroupSpec::cyclic(2),
                                     GroupSpec::cyclic(5)};
    int comp = 0, sum = 0, prod = 0;
    for (int i = 0; i < count; ++i) {
        const auto& g = groups[i % groups.size()];
        BasedChainComplex c = random_based_complex(g, rng);
        ChainMap f = random_self_equivalence(c, rng);
        ChainMap h = random_self_equivalence(c, rng);
        if (check_composition_formula(f, h) == TriState::Trivial) ++comp;

        BasedChainComplex c2 = random_based_complex(g, rng);
        ChainMap f2 = random_self_equivalence(c2, rng);
        BasedChainComplex ds = direct_sum(c, c2);
        std::map<int, GRMatrix> block;
        std::vector<int> sub;
        for (int k = ds.lo(); k <= ds.hi(); ++k) {
            int r1 = (k < c.lo() || k > c.hi()) ? 0 : c.rank(k);
            int r2 = (k < c2.lo() || k > c2.hi()) ? 0 : c2.rank(k);
            sub.push_back(r1);
            GRMatrix m(g, r1 + r2, r1 + r2);
            for (int a = 0; a < r1; ++a)
                for (int b = 0; b < r1; ++b) m.at(a, b) = f.f(k).at(a, b);
            for (int a = 0; a < r2; ++a)
                for (int b = 0; b < r2; ++b) m.at(r1 + a, r1 + b) = f2.f(k).at(a, b);
            block.emplace(k, std::move(m));
        }
        ChainMap fsum(ds, ds, std::move(block));
        if (check_sum_formula(fsum, sub, sub) == TriState::Trivial) ++sum;

        BasedChainComplex cz = random_based_complex(GroupSpec::cyclic(i % 2 ? 2 : 5), rng);
        ChainMap fz = random_self_equivalence(cz, rng);
        BasedChainComplex ct = random_based_complex(GroupSpec::trivial(), rng);
        ChainMap ft = random_self_equivalence(ct, rng);
        if (check_product_formula(ft, fz) == TriState::Trivial) ++prod;
    }
    put(r, "composition", std::to_string(comp) + "/" + std::to_string(count));
    put(r, "sum", std::to_string(sum) + "/" + std::to_string(count));
    put(r, "product", std::to_string(prod) + "/" + std::to_string(count));
    r.pass = comp == count && sum == count && prod == count;
    return r;
}

TaskReport verify_glue_suite() {
    TaskReport r{"verify", "glue"};
    auto z5 = GroupSpec::cyclic(5);
    GRElement t = GRElement::from_group_element(z5, z5->generator(0));
    GRElement u = t + GRElement::from_group_element(z5, z5->normalize({{4}})) - GRElement::one(z5);
    GlueResult g0 = glue_hcobordism({z5, {{1}}, 5, TorsionClass::trivial(z5), +1});
    bool trivial_case = g0.theta_verdict == TriState::Trivial &&
                        g0.tfp_verdict == TriState::Trivial && g0.tau_fib &&
                        g0.tau_fib->classify() == TriState::Trivial;
    put(r, "trivial_tau_w", trivial_case ? "all trivial" : "FAILED");
    GlueResult gu = glue_hcobordism({z5, {{1}}, 5, TorsionClass::from_unit(u), +1});
    bool unit_case = gu.representative_identity && gu.dual_form != TriState::NonTrivial &&
                     gu.theta_verdict == TriState::Trivial;
    put(r, "unit_tau_w_odd", unit_case ? "consistent" : "FAILED");
    GlueResult ge = glue_hcobordism({z5, {{1}}, 6, TorsionClass::from_unit(u), +1});
    bool parity = ge.representative_identity && ge.dual_form != TriState::NonTrivial;
    put(r, "unit_tau_w_even", parity ? "consistent" : "FAILED");
    r.pass = trivial_case && unit_case && parity;
    return r;
}

TaskReport verify_s1_suite() {
    TaskReport r{"verify", "s1-models"};
    auto z5 = GroupSpec::cyclic(5);
    GRElement t = GRElement::from_group_element(z5, z5->generator(0));
    GRElement u = t + GRElement::from_group_element(z5, z5->normalize({{4}})) - GRElement::one(z5);
    auto c0 = BasedChainComplex::single(z5, 0, 1);
    bool ok = true;
    for (long a : {1L, 2L}) {
        auto sd = GroupSpec::semidirect_with_z(z5, {{a}});
        SelfEquivalenceWithTwist se(c0, {{0, GRMatrix::diagonal({u})}}, sd);
        BasedChainComplex torus = mapping_torus(se);
        S1FiberingModel m(se, torus, ChainMap::identity(torus));
        TriState v = check_theta_vs_con(m);
        put(r, "theta_vs_con_alpha_" + std::to_string(a), tristate_name(v));
        ok = ok && v == TriState::Trivial;
    }
    r.pass = ok;
    return r;
}

TaskReport verify_transfer_suite() {
    TaskReport r{"verify", "transfer"};
    auto z5 = GroupSpec::cyclic(5);
    auto sd = GroupSpec::semidirect_with_z(z5, {{1}});
    GRElement t = GRElement::from_group_element(z5, z5->generator(0));
    GRElement u = t + GRElement::from_group_element(z5, z5->normalize({{4}})) - GRElement::one(z5);
    auto c0 = BasedChainComplex::single(z5, 0, 1);
    SelfEquivalenceWithTwist se(c0, {{0, GRMatrix::identity(z5, 1)}}, sd);
    BasedChainComplex torus = mapping_torus(se);
    GRElement uu = u.induced(GroupHom::inclusion_into_semidirect(z5, sd));
    BasedChainComplex acy(sd, 0, {1, 1}, {GRMatrix::diagonal({uu})});
    BasedChainComplex d = direct_sum(torus, acy);
    std::map<int, GRMatrix> inc;
    for (int k = d.lo(); k <= d.hi(); ++k) {
        GRMatrix mk(sd, d.rank(k), torus.rank(k));
        for (int i = 0; i < torus.rank(k); ++i) mk.at(i, i) = GRElement::one(sd);
        inc.emplace(k, std::move(mk));
    }
    S1FiberingModel m(se, d, ChainMap(torus, d, inc));
    bool ok = true;
    for (long chi : {0L, 1L, 2L}) {
        CompositeVerdict v = check_composite_transfer(m, fiber_for_chi(chi));
        bool good = !v.stuck && v.identity != TriState::NonTrivial &&
                    (chi != 0 || v.chi_zero == TriState::Trivial);
        put(r, "chi_" + std::to_string(chi), good ? "consistent" : "FAILED");
        ok = ok && good;
    }
    r.pass = ok;
    return r;
}

TaskReport verify_poincare_suite() {
    TaskReport r{"verify", "poincare"};
    TorsionResult rs = rho(sphere_pair(3));
    bool sphere_ok = rs.cls && rs.cls->classify() == TriState::Trivial;
    put(r, "rho_sphere_3", sphere_ok ? "trivial" : "FAILED");
    PoincarePairData lens = lens_pair(5, {1, 1});
    PoincareCheck inv = check_involution_identity(lens);
    put(r, "lens_5_involution_defect", tristate_name(inv.verdict));
    r.pass = sphere_ok && inv.verdict != TriState::NonTrivial;
    return r;
}

}  // namespace

std::string VerdictReport::text() const {
    std::ostringstream os;
    os << command << " (seed " << seed << ")\n";
    for (const auto& t : tasks) {
        os << "== " << t.op << " " << t.subject << ": "
           << (t.stuck ? "STUCK" : t.pass ? "ok" : "FAIL") << "\n";
        for (const auto& l : t.lines) os << "   " << l << "\n";
    }
    os << "status " << static_cast<int>(status) << "\n";
    return os.str();
}

std::string VerdictReport::json() const {
    nlohmann::ordered_json root;
    root["command"] = command;
    root["seed"] = seed;
    root["tasks"] = nlohmann::ordered_json::array();
    for (const auto& t : tasks) {
        nlohmann::ordered_json jt;
        jt["op"] = t.op;
        jt["subject"] = t.subject;
        jt["result"] = t.stuck ? "stuck" : t.pass ? "ok" : "fail";
        nlohmann::ordered_json payload = nlohmann::ordered_json::object();
        for (const auto& [k, v] : t.fields) payload[k] = v;
        jt["data"] = std::move(payload);
        root["tasks"].push_back(std::move(jt));
    }
    root["status"] = static_cast<int>(status);
    return root.dump(2) + "\n";
}

VerdictReport run_command(const ModelDocument& doc, const std::string& subcommand,
                          unsigned long long seed) {
    VerdictReport out;
    out.command = subcommand;
    out.seed = seed;
    if (subcommand == "verify") {
        std::mt19937_64 rng(seed);
        out.tasks.push_back(verify_unit_oracle());
        out.tasks.push_back(verify_random_acyclic(rng, 20));
        out.tasks.push_back(verify_lemma_formulas(rng, 6));
        out.tasks.push_back(verify_glue_suite());
        out.tasks.push_back(verify_s1_suite());
        out.tasks.push_back(verify_transfer_suite());
        out.tasks.push_back(verify_poincare_suite());
        for (const auto& t : doc.tasks) out.tasks.push_back(run_task(doc, t));
    } else {
        // no matching task is a valid no-op run
        for (const auto& t : doc.tasks)
            if (t.kind == subcommand) out.tasks.push_back(run_task(doc, t));
    }
    bool any_stuck = false, any_fail = false;
    for (const auto& t : out.tasks) {
        any_stuck = any_stuck || t.stuck;
        any_fail = any_fail || !t.pass;
    }
    out.status = any_stuck  ? ExitStatus::StuckResult
                 : any_fail ? ExitStatus::VerificationFailure
                            : ExitStatus::Ok;
    return out;
}

}  // namespace whtor
