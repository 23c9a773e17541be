#include "whtor/fibering.hpp"

#include <stdexcept>

namespace whtor {

ThetaCocycle theta(const FiberTransportDatum& datum) {
    if (datum.generator_names.size() != datum.classes.size())
        throw std::invalid_argument("transport datum: one class per generator required");
    if (datum.cyclic_base_order > 0)
        for (size_t i = 0; i < datum.classes.size(); ++i)
            if (datum.classes[i].multiple(datum.cyclic_base_order).classify() ==
                TriState::NonTrivial)
                throw std::invalid_argument(
                    "transport datum inconsistent: order-" +
                    std::to_string(datum.cyclic_base_order) + " multiple of generator '" +
                    datum.generator_names[i] + "' is nontrivial");
    ThetaCocycle out{datum.classes, true};
    for (auto& c : out.classes)
        if (c.classify() != TriState::Trivial) out.is_simple = false;
    return out;
}

TorsionClass simple_structure_change(const SpiderLedger& ledger) {
    if (ledger.cells.empty())
        throw std::invalid_argument("spider ledger needs at least one cell");
    for (auto& c : ledger.cells)
        if (c.dim < 0 || c.dim > ledger.base_dimension)
            throw std::invalid_argument("cell dimension exceeds the base dimension");
    TorsionClass acc = TorsionClass::trivial(ledger.cells.front().cls.spec());
    for (auto& c : ledger.cells)
        acc = wh_add(acc, c.dim % 2 == 0 ? c.cls : c.cls.neg());
    return acc;
}

GlueResult glue_hcobordism(const HCobordismAlgebraic& h) {
    auto sd = GroupSpec::semidirect_with_z(h.group, h.phi, h.w_t);
    GroupHom incl = GroupHom::inclusion_into_semidirect(h.group, sd);
    TorsionClass x = h.tau_w.induced(incl);
    TorsionClass starx = x.involution();
    TorsionClass signed_star = h.dim_w % 2 == 0 ? starx : starx.neg();
    TorsionClass th = wh_add(signed_star, x);
    TorsionClass tfp = wh_sub(x, th);
    GlueResult r{sd,
                 x,
                 th,
                 tfp,
                 std::nullopt,
                 x.classify(),
                 th.classify(),
                 tfp.classify(),
                 false,
                 TriState::Unknown,
                 std::nullopt};
    r.representative_identity =
        tfp.rep() == GRMatrix::block_diag(x.rep(), th.inv()) &&
        tfp.inv() == GRMatrix::block_diag(x.inv(), th.rep());
    // tau'_fib = (-1)^{dim W - 1} * x, the dual reading of the same identity.
    r.dual_form = classify_equal(tfp, h.dim_w % 2 == 0 ? starx.neg() : starx);
    if (r.theta_verdict == TriState::Trivial) r.tau_fib = x.neg();
    if (r.x_verdict != TriState::Unknown && r.theta_verdict != TriState::Unknown &&
        r.tfp_verdict != TriState::Unknown) {
        bool a = r.x_verdict == TriState::Trivial;
        bool b = r.tfp_verdict == TriState::Trivial;
        bool c = r.theta_verdict == TriState::Trivial && a;  // tau_fib = -x
        r.vanishing_equivalences = (a == b) && (b == c);
    }
    return r;
}

BridgeResult farrell_bridge(const HCobordismAlgebraic& h) {
    GlueResult g = glue_hcobordism(h);
    if (g.theta_verdict != TriState::Trivial)
        throw std::invalid_argument("farrell bridge requires theta to classify trivial");
    std::vector<GroupElement> images;
    for (int i = 0; i < h.group->num_generators(); ++i) {
        GroupElement e = h.group->identity();
        for (int r = 0; r < h.group->num_generators(); ++r) e.exps[r] = h.phi[r][i];
        images.push_back(h.group->normalize(e));
    }
    GroupHom phi(h.group, h.group, std::move(images));
    WhTensorClass tensor(h.tau_w, phi);
    GroupHom incl = GroupHom::inclusion_into_semidirect(h.group, g.semidirect);
    TorsionClass star_tfp = g.tau_fib_prime.involution();
    TorsionClass target = h.dim_w % 2 == 0 ? star_tfp.neg() : star_tfp;
    TorsionClass cur = h.tau_w;
    bool saw_unknown = false;
    TriState verdict = TriState::NonTrivial;
    for (int k = 0; k <= 12; ++k) {
        TriState t = classify_equal(cur.induced(incl), target);
        if (t == TriState::Trivial) {
            verdict = TriState::Trivial;
            break;
        }
        if (t == TriState::Unknown) saw_unknown = true;
        cur = cur.induced(phi);
        if (k > 0 && cur.rep() == h.tau_w.rep()) break;
    }
    if (verdict != TriState::Trivial && saw_unknown) verdict = TriState::Unknown;
    return BridgeResult{std::move(tensor), verdict};
}

S1FiberingModel::S1FiberingModel(SelfEquivalenceWithTwist se_, BasedChainComplex d,
                                 ChainMap e)
    : se(std::move(se_)), d_complex(std::move(d)), e_hat(std::move(e)) {
    // The source is the mapping torus of v, possibly pushed forward along a
    // group identification; degreewise ranks must agree.
    BasedChainComplex torus = mapping_torus(se);
    if (e_hat.src().lo() != torus.lo() || e_hat.src().hi() != torus.hi())
        throw std::invalid_argument("e_hat must start at the mapping torus of v");
    for (int k = torus.lo(); k <= torus.hi(); ++k)
        if (e_hat.src().rank(k) != torus.rank(k))
            throw std::invalid_argument("e_hat must start at the mapping torus of v");
    if (!(e_hat.tgt() == d_complex))
        throw std::invalid_argument("e_hat must land in the manifold complex");
}

S1Invariants s1_invariants(const S1FiberingModel& model) {
    S1Invariants out;
    TorsionResult tv = whitehead_torsion(model.se.as_chain_map());
    if (!tv.cls) {
        out.stuck = true;
        out.note = "torsion of the monodromy is stuck: " + tv.note;
        return out;
    }
    GroupHom incl = GroupHom::inclusion_into_semidirect(model.se.complex.spec(),
                                                        model.se.semidirect);
    // The fiber transport along the standard base generator acts on the
    // infinite cyclic cover as the inverse of the torus monodromy.
    out.theta = tv.cls->induced(incl).neg();
    out.theta_verdict = out.theta->classify();
    TorsionResult te = whitehead_torsion(model.e_hat);
    if (!te.cls) {
        out.stuck = true;
        out.note = "torsion of e_hat is stuck: " + te.note;
        return out;
    }
    out.tau_fib_prime = te.cls;
    out.tfp_verdict = out.tau_fib_prime->classify();
    if (out.theta_verdict == TriState::Trivial) out.tau_fib = out.tau_fib_prime;
    return out;
}

S1FiberingModel con_model(const S1FiberingModel& model) {
    const auto& se = model.se;
    auto base = se.complex.spec();
    auto sd = se.semidirect;
    auto sd_con = GroupSpec::semidirect_with_z(
        base, sd->alpha_inverse(),
        sd->orientation().empty() ? +1 : sd->orientation().back());
    std::map<int, GRMatrix> v_con;
    for (int k = se.complex.lo(); k <= se.complex.hi(); ++k) {
        if (se.complex.rank(k) == 0) continue;
        auto inv = try_invert(se.v_at(k));
        if (!inv)
            throw std::invalid_argument(
                "con model requires a degreewise invertible monodromy (degree " +
                std::to_string(k) + ")");
        v_con.emplace(k, se.alpha_entrywise(*inv, -1));
    }
    SelfEquivalenceWithTwist se_con(se.complex, std::move(v_con), sd_con);
    // Push the reversed torus along s -> t^{-1} and compare with T_v via the
    // canonical iso diag(-V t, id).
    std::vector<GroupElement> images;
    for (int i = 0; i < base->num_generators(); ++i) {
        GroupElement e = sd->identity();
        e.exps[i] = 1;
        images.push_back(sd->normalize(e));
    }
    GroupElement tinv = sd->identity();
    tinv.exps[base->num_generators()] = -1;
    images.push_back(sd->normalize(tinv));
    GroupHom flip(sd_con, sd, std::move(images));
    BasedChainComplex t_con = mapping_torus(se_con).induced(flip);
    BasedChainComplex t_v = mapping_torus(se);
    GroupHom incl = GroupHom::inclusion_into_semidirect(base, sd);
    GroupElement t_ge = sd->identity();
    t_ge.exps[base->num_generators()] = 1;
    GRElement t_elt = GRElement::from_group_element(sd, t_ge);
    std::map<int, GRMatrix> lam;
    for (int k = t_v.lo(); k <= t_v.hi(); ++k) {
        int ra = se.complex.rank(k);        // target copy
        int rb = se.complex.rank(k - 1);    // shifted source copy
        GRMatrix vk = se.v_at(k).induced(incl);
        GRMatrix a(sd, ra, ra);
        for (int i = 0; i < ra; ++i)
            for (int j = 0; j < ra; ++j) a.at(i, j) = -(vk.at(i, j) * t_elt);
        GRMatrix block = GRMatrix::from_blocks(a, GRMatrix(sd, ra, rb),
                                               GRMatrix(sd, rb, ra),
                                               GRMatrix::identity(sd, rb));
        lam.emplace(k, std::move(block));
    }
    ChainMap lambda(t_con, t_v, std::move(lam));
    return S1FiberingModel(std::move(se_con), model.d_complex,
                           model.e_hat.after(lambda));
}

TriState check_theta_vs_con(const S1FiberingModel& model) {
    S1Invariants f = s1_invariants(model);
    S1Invariants c = s1_invariants(con_model(model));
    if (f.stuck || c.stuck || !f.theta || !f.tau_fib_prime || !c.tau_fib_prime)
        return TriState::Unknown;
    return classify_equal(*f.theta, wh_sub(*f.tau_fib_prime, *c.tau_fib_prime));
}

TorsionClass transfer_product(const TorsionClass& tau, long chi_f, const GroupHom& incl) {
    return tau.induced(incl).multiple(chi_f);
}

namespace {

int tensor_block_offset(const BasedChainComplex& c, const BasedChainComplex& d, int k,
                        int i) {
    int off = 0;
    for (int ii = c.lo(); ii < i; ++ii) off += c.rank(ii) * d.rank(k - ii);
    return off;
}

std::vector<std::vector<long>> product_alpha(const GroupSpecPtr& g_sd,
                                             const GroupSpecPtr& h,
                                             const GroupSpecPtr& p) {
    const auto& alpha = g_sd->alpha();
    const auto& g = g_sd->base();
    if (h->kind() == GroupKind::Trivial) return alpha;
    if (g->kind() == GroupKind::Trivial) {
        std::vector<std::vector<long>> id(h->num_generators(),
                                          std::vector<long>(h->num_generators(), 0));
        for (int i = 0; i < h->num_generators(); ++i) id[i][i] = 1;
        return id;
    }
    if (p->kind() == GroupKind::CyclicFinite) {
        long m = g->cyclic_order(), n = h->cyclic_order(), mn = p->cyclic_order();
        long e1 = 0, e2 = 0;
        for (long v = 0; v < mn; ++v) {
            if (v % m == 1 && v % n == 0) e1 = v;
            if (v % m == 0 && v % n == 1) e2 = v;
        }
        long am = alpha[0][0] % m;
        long c = (e1 * am + e2) % mn;
        return {{c}};
    }
    // both free abelian: block diagonal alpha (+) id
    int rg = g->num_generators(), rh = h->num_generators();
    std::vector<std::vector<long>> m(rg + rh, std::vector<long>(rg + rh, 0));
    for (int i = 0; i < rg; ++i)
        for (int j = 0; j < rg; ++j) m[i][j] = alpha[i][j];
    for (int i = 0; i < rh; ++i) m[rg + i][rg + i] = 1;
    return m;
}

struct ProductModelParts {
    S1FiberingModel model;
    GroupHom base_incl;  // G x| Z -> (G x H) x| Z
};

ProductModelParts build_product(const S1FiberingModel& base,
                                const BasedChainComplex& fiber) {
    const auto& se = base.se;
    auto g = se.complex.spec();
    auto g_sd = se.semidirect;
    auto h = fiber.spec();
    ProductGroup pg_base = product_group(g, h);
    auto p = pg_base.spec;
    int wt = g_sd->orientation().empty() ? +1 : g_sd->orientation().back();
    auto p_sd = GroupSpec::semidirect_with_z(p, product_alpha(g_sd, h, p), wt);
    GroupHom p_incl = GroupHom::inclusion_into_semidirect(p, p_sd);
    // G x| Z -> (G x H) x| Z and H -> (G x H) x| Z
    std::vector<GroupElement> li;
    for (int i = 0; i < g->num_generators(); ++i)
        li.push_back(p_sd->normalize(p_incl.apply(pg_base.left.apply(g->generator(i)))));
    {
        GroupElement t = p_sd->identity();
        t.exps[p->num_generators()] = 1;
        li.push_back(p_sd->normalize(t));
    }
    GroupHom big_left(g_sd, p_sd, std::move(li));
    std::vector<GroupElement> ri;
    for (int i = 0; i < h->num_generators(); ++i)
        ri.push_back(p_sd->normalize(p_incl.apply(pg_base.right.apply(h->generator(i)))));
    GroupHom big_right(h, p_sd, std::move(ri));
    ProductGroup pg_big{p_sd, big_left, big_right};

    // Product monodromy v (x) id over the product base group.
    ChainMap vt = tensor_map(se.as_chain_map(), ChainMap::identity(fiber), pg_base);
    std::map<int, GRMatrix> vprod;
    for (int k = vt.src().lo(); k <= vt.src().hi(); ++k)
        if (vt.src().rank(k) > 0) vprod.emplace(k, vt.f(k));
    SelfEquivalenceWithTwist se_prod(vt.src(), std::move(vprod), p_sd);

    // Regrouping iso: cone(u (x) id)  ->  cone(u) (x) F, a pure basis
    // permutation.
    BasedChainComplex torus_prod = mapping_torus(se_prod);
    BasedChainComplex t_base = mapping_torus(se);
    BasedChainComplex target = tensor_product(t_base, fiber, pg_big);
    const BasedChainComplex& x = se_prod.complex;  // tensor(C, F)
    const BasedChainComplex& c = se.complex;
    std::map<int, GRMatrix> sig;
    for (int n = torus_prod.lo(); n <= torus_prod.hi(); ++n) {
        GRMatrix m(p_sd, target.rank(n), torus_prod.rank(n));
        int row = 0;
        for (int a = t_base.lo(); a <= t_base.hi(); ++a) {
            int fb = fiber.rank(n - a);
            if (t_base.rank(a) == 0 || fb == 0) continue;
            for (int cidx = 0; cidx < t_base.rank(a); ++cidx)
                for (int j = 0; j < fb; ++j, ++row) {
                    int col;
                    if (cidx < c.rank(a)) {
                        col = tensor_block_offset(c, fiber, n, a) + cidx * fb + j;
                    } else {
                        int c2 = cidx - c.rank(a);
                        col = x.rank(n) + tensor_block_offset(c, fiber, n - 1, a - 1) +
                              c2 * fb + j;
                    }
                    m.at(row, col) = GRElement::one(p_sd);
                }
        }
        sig.emplace(n, std::move(m));
    }
    ChainMap sigma(torus_prod, target, std::move(sig));
    ChainMap e_prod = tensor_map(base.e_hat, ChainMap::identity(fiber), pg_big);
    ChainMap e_hat_prod = e_prod.after(sigma);
    return ProductModelParts{
        S1FiberingModel(std::move(se_prod), e_prod.tgt(), std::move(e_hat_prod)),
        big_left};
}

}  // namespace

S1FiberingModel product_s1_model(const S1FiberingModel& base,
                                 const BasedChainComplex& fiber) {
    return build_product(base, fiber).model;
}

CompositeVerdict check_composite_transfer(const S1FiberingModel& base,
                                          const BasedChainComplex& fiber) {
    CompositeVerdict out;
    out.chi_f = fiber.euler_characteristic();
    ProductModelParts parts = build_product(base, fiber);
    S1Invariants sp = s1_invariants(parts.model);
    S1Invariants sb = s1_invariants(base);
    if (sp.stuck || sb.stuck) {
        out.stuck = true;
        out.note = sp.stuck ? sp.note : sb.note;
        out.identity = out.chi_zero = TriState::Unknown;
        return out;
    }
    if (!sp.tau_fib || !sb.tau_fib) {
        out.note = "second obstruction undefined: theta did not classify trivial";
        out.identity = out.chi_zero = TriState::Unknown;
        return out;
    }
    TorsionClass rhs = transfer_product(*sb.tau_fib, out.chi_f, parts.base_incl);
    out.identity = classify_equal(*sp.tau_fib, rhs);
    out.chi_zero = out.chi_f == 0 ? sp.tau_fib->classify() : TriState::Trivial;
    return out;
}

}  // namespace whtor
