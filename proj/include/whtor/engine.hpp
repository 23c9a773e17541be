#ifndef WHTOR_ENGINE_HPP
#define WHTOR_ENGINE_HPP

#include <random>

#include "whtor/chain_complex.hpp"
#include "whtor/torsion_class.hpp"

namespace whtor {

// gamma_k : C_k -> C_{k+1} with d gamma + gamma d = id (asserted).
struct ContractionWitness {
    BasedChainComplex complex;
    std::map<int, GRMatrix> gamma;
    ContractionWitness(BasedChainComplex c, std::map<int, GRMatrix> g);
    GRMatrix gamma_at(int k) const;
};

// Searches for a contraction by iterated Gaussian (Morse) reduction with
// certified-unit pivots.  strategy selects the deterministic pivot order
// (0: first found scanning degrees ascending; 1: scanning descending), so two
// strategies give independently found witnesses.
std::optional<ContractionWitness> find_contraction(const BasedChainComplex& c,
                                                   int strategy = 0);

struct TorsionResult {
    std::optional<TorsionClass> cls;
    bool stuck = false;
    std::string note;
};

// Torsion of an acyclic based complex: class of (d + gamma)_odd, inverse
// assembled from (d + gamma)_even via the finite Neumann series of gamma^2.
TorsionResult torsion_of_acyclic(const BasedChainComplex& c, int strategy = 0);
TorsionResult torsion_from_witness(const ContractionWitness& w);

// tau(f) := torsion of cone(f).
TorsionResult whitehead_torsion(const ChainMap& f);

// Reidemeister-style fallback: torsion of the complex pushed through a
// morphism into a commutative field, defined up to the image of ±g (sign
// conventions folded into that ambiguity).  nullopt when not acyclic over
// the target.
std::optional<TargetValue> reidemeister_torsion(const BasedChainComplex& c,
                                                const RingMorphism& m);

// ---- Lemma 1.2 property checks ----

// (1) tau(f) = tau(g) for homotopic f, g.
TriState check_homotopy_invariance_torsion(const ChainHomotopy& ht);
// (2) tau(g∘f) = tau(g) + tau(f) over a common group ring.
TriState check_composition_formula(const ChainMap& f, const ChainMap& g);
// (3) prefix-compatible equivalence f of a based SES: tau(f) = tau(f') + tau(f'').
TriState check_sum_formula(const ChainMap& f, const std::vector<int>& sub_src,
                           const std::vector<int>& sub_tgt);
// (4) tau(f1 ⊗ f2) = chi(tgt1)·(i2)_* tau(f2) + chi(tgt2)·(i1)_* tau(f1).
TriState check_product_formula(const ChainMap& f1, const ChainMap& f2);

// ---- randomized instance generation (ground truth by construction) ----

GRElement random_small_element(const GroupSpecPtr& spec, std::mt19937_64& rng,
                               int max_terms = 3, int max_coeff = 2);
// (E, E^{-1}) built from random elementary operations.
std::pair<GRMatrix, GRMatrix> random_based_automorphism(const GroupSpecPtr& spec, int rank,
                                                        std::mt19937_64& rng, int nops);
// Acyclic complex: cone(id) on a random base, then random based changes.
BasedChainComplex random_acyclic_complex(const GroupSpecPtr& spec, std::mt19937_64& rng);
// Self-equivalence homotopic to the identity: id + d s + s d for random s.
ChainMap random_self_equivalence(const BasedChainComplex& c, std::mt19937_64& rng);
// Random based complex (not necessarily acyclic): direct sum of single-degree
// pieces and small elementary cones.
BasedChainComplex random_based_complex(const GroupSpecPtr& spec, std::mt19937_64& rng);

}  // namespace whtor

#endif
