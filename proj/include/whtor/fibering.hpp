#ifndef WHTOR_FIBERING_HPP
#define WHTOR_FIBERING_HPP

#include "whtor/engine.hpp"

namespace whtor {

// Theta(p) as a cocycle: one Wh-class per generator of pi_1 of the base,
// already pushed into Wh(pi(E)).
struct FiberTransportDatum {
    std::vector<std::string> generator_names;
    std::vector<TorsionClass> classes;
    long cyclic_base_order = 0;  // 0 when the base group is free
};

struct ThetaCocycle {
    std::vector<TorsionClass> classes;
    bool is_simple = false;
};

// Validates the homomorphism property (order-n multiple trivial for a cyclic
// base) and reports the cocycle; throws on an inconsistent datum.
ThetaCocycle theta(const FiberTransportDatum& datum);

// Ledger for the simple-structure change formula: alternating sum over base
// cells of the recorded comparison torsions.
struct SpiderCell {
    int dim;
    TorsionClass cls;
};
struct SpiderLedger {
    int base_dimension = 0;
    std::vector<SpiderCell> cells;
};
TorsionClass simple_structure_change(const SpiderLedger& ledger);

// h-cobordism glued along an automorphism phi of G, evaluated over
// Z[G x|_phi Z].
struct HCobordismAlgebraic {
    GroupSpecPtr group;                   // G, carries the orientation w
    std::vector<std::vector<long>> phi;   // gluing automorphism, alpha-matrix form
    int dim_w = 2;
    TorsionClass tau_w;                   // tau(W) over Z[G]
    int w_t = +1;                         // orientation sign of the new circle
};

struct GlueResult {
    GroupSpecPtr semidirect;
    TorsionClass x;               // l_* tau(W)
    TorsionClass theta;           // x + (-1)^{dim W} * x
    TorsionClass tau_fib_prime;   // x - theta, exactly; equals (-1)^{dim W - 1} *x
    std::optional<TorsionClass> tau_fib;  // -x, reported when theta is trivial
    TriState x_verdict, theta_verdict, tfp_verdict;
    bool representative_identity = false;  // tau'_fib rep is literally (x - theta)'s
    TriState dual_form;  // tau'_fib vs (-1)^{dim W - 1} * x
    std::optional<bool> vanishing_equivalences;  // Lemma-7.1(4)-style, when decisive
};
GlueResult glue_hcobordism(const HCobordismAlgebraic& h);

// Farrell-side comparison: the tensor class of tau(W) mod x ~ phi_* x maps
// under j to (-1)^{dim W - 1} * tau'_fib.  Requires theta trivial.
struct BridgeResult {
    WhTensorClass tensor;
    TriState consistent;
};
BridgeResult farrell_bridge(const HCobordismAlgebraic& h);

// S^1 fibering model: monodromy data (C, v, alpha) plus the manifold-side
// complex D with a comparison equivalence e_hat: T_v -> D.
struct S1FiberingModel {
    SelfEquivalenceWithTwist se;
    BasedChainComplex d_complex;
    ChainMap e_hat;
    S1FiberingModel(SelfEquivalenceWithTwist se_, BasedChainComplex d, ChainMap e);
};

struct S1Invariants {
    std::optional<TorsionClass> theta, tau_fib_prime, tau_fib;
    TriState theta_verdict = TriState::Unknown;
    TriState tfp_verdict = TriState::Unknown;
    bool stuck = false;
    std::string note;
};
S1Invariants s1_invariants(const S1FiberingModel& model);

// Orientation-reversed model: v replaced by its (matrix) inverse, alpha by
// alpha^{-1}; e_hat composed with the canonical torus comparison.
S1FiberingModel con_model(const S1FiberingModel& model);

// Lemma-6.1(1)-style check: theta = tau'_fib(f) - tau'_fib(con o f).
TriState check_theta_vs_con(const S1FiberingModel& model);

// chi_F . wh_induced(tau) along the inclusion into the total group.
TorsionClass transfer_product(const TorsionClass& tau, long chi_f, const GroupHom& incl);

// Product model g o f for a fiber F over group H: monodromy v (x) id over
// (G x H) x| Z, with e_hat extended through the canonical regrouping iso.
S1FiberingModel product_s1_model(const S1FiberingModel& base,
                                 const BasedChainComplex& fiber);

struct CompositeVerdict {
    TriState identity;    // tau_fib(g o f) vs chi_F . induced(tau_fib(g))
    TriState chi_zero;    // when chi_F = 0: tau_fib(g o f) trivial
    long chi_f = 0;
    bool stuck = false;
    std::string note;
};
// Theorem-9.1-style composite check on a product model; the first-stage
// obstruction of the projection N x F -> N vanishes (it is a bundle), so the
// identity reduces to the transfer term.
CompositeVerdict check_composite_transfer(const S1FiberingModel& base,
                                          const BasedChainComplex& fiber);

}  // namespace whtor

#endif
