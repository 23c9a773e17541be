#ifndef WHTOR_POINCARE_HPP
#define WHTOR_POINCARE_HPP

#include "whtor/engine.hpp"

namespace whtor {

// Chain-level Poincaré pair: C models C_*(X̃), the basis prefix B models the
// boundary, cap is the duality equivalence dual(C, n) → C/B.  The cap (and
// the boundary cap, when a boundary is present) is validated as a chain
// equivalence at construction.
struct PoincarePairData {
    GroupSpecPtr spec;
    int n;
    BasedChainComplex c;
    std::vector<int> boundary_ranks;       // per degree from c.lo()
    ChainMap cap;                          // dual_complex(c, n) → c/B
    std::optional<ChainMap> boundary_cap;  // dual(B, n-1) → B

    PoincarePairData(GroupSpecPtr spec_, int n_, BasedChainComplex c_,
                     std::vector<int> bnd, ChainMap cap_,
                     std::optional<ChainMap> bcap = std::nullopt);

    bool closed() const;
    BasedChainComplex boundary() const;
    BasedChainComplex quotient() const;
    PoincarePairData boundary_pair() const;  // the closed (n-1)-pair of B
    long relative_euler() const;             // chi(C) - chi(B)
    PoincarePairData induced(const GroupHom& hom) const;
};

// ---- built-in corpus ----
PoincarePairData sphere_pair(int n);  // n = 1 over Z; n >= 2 over the trivial group
// Two-cell model with zero differentials over an arbitrary group (synthetic base).
PoincarePairData sphere_pair_over(const GroupSpecPtr& spec, int n);
PoincarePairData disc_pair(int n);
PoincarePairData disc_pair_over(const GroupSpecPtr& spec, int n);
PoincarePairData lens_pair(long order, const std::vector<long>& rotations);
PoincarePairData surface_pair(int genus);
PoincarePairData product_pair(const PoincarePairData& x, const PoincarePairData& y);
// cap post-composed with the unit u acting on one degree of C/B.
PoincarePairData unit_twisted_pair(const PoincarePairData& p, const GRElement& u, int degree);

TorsionResult rho(const PoincarePairData& p);

struct PoincareCheck {
    TriState verdict = TriState::Unknown;
    std::string note;
};

// Thm-10.3(1)-style: (j_∂)_* rho(∂X) = (-1)^n * rho - rho (closed: rho = (-1)^n * rho).
PoincareCheck check_involution_identity(const PoincarePairData& p);
// Thm-10.3(2)-style for f : C_X → C_Y, boundary-prefix compatible.
PoincareCheck check_homotopy_invariance(const PoincarePairData& x, const PoincarePairData& y,
                                        const ChainMap& f);
// Thm-10.3(3)-style for a degreewise isomorphism f : ∂X → ∂Y.
PoincareCheck check_gluing(const PoincarePairData& x, const PoincarePairData& y,
                           const ChainMap& f);
// Thm-10.3(4)-style on the product pair.
PoincareCheck check_product(const PoincarePairData& x, const PoincarePairData& y);

struct RhoHatResult {
    TateVerdict tate;
    // Witness path: model with cap twisted by a representative of -y, rho = 0.
    std::optional<PoincarePairData> corrected;
};
RhoHatResult rho_hat(const PoincarePairData& p, const TorsionClass* witness = nullptr);

// The standard equivalence L(7,1) ≃ L(7,2): target transported along t → t²,
// so that a genuine Z[Z/7]-chain equivalence exists.
struct LensComparison {
    PoincarePairData src, tgt;
    ChainMap f;
};
LensComparison lens_7_comparison();

}  // namespace whtor

#endif
