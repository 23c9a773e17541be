#ifndef WHTOR_CHAIN_COMPLEX_HPP
#define WHTOR_CHAIN_COMPLEX_HPP

#include <map>

#include "whtor/matrix.hpp"

namespace whtor {

// Finite based free chain complex over Z[G].  d_k maps degree k to k-1;
// d∘d = 0 is asserted at construction.
class BasedChainComplex {
public:
    // diffs[i] is d_{lo+1+i} of shape ranks[i] x ranks[i+1].
    BasedChainComplex(GroupSpecPtr spec, int lo, std::vector<int> ranks,
                      std::vector<GRMatrix> diffs);
    static BasedChainComplex zero(GroupSpecPtr spec);
    static BasedChainComplex single(GroupSpecPtr spec, int degree, int rank);

    const GroupSpecPtr& spec() const { return spec_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    int rank(int k) const;
    int total_rank() const;
    long euler_characteristic() const;
    // Differential out of degree k; a correctly-shaped zero matrix outside
    // the populated range.
    GRMatrix d(int k) const;

    BasedChainComplex induced(const GroupHom& hom) const;
    // Degree shift C[s]: (C[s])_k = C_{k-s}, differentials scaled by (-1)^s.
    BasedChainComplex shifted(int s) const;

    friend bool operator==(const BasedChainComplex&, const BasedChainComplex&);

private:
    GroupSpecPtr spec_;
    int lo_;
    std::vector<int> ranks_;
    std::vector<GRMatrix> diffs_;
};

// Degreewise matrices commuting with the differentials.
class ChainMap {
public:
    ChainMap(BasedChainComplex src, BasedChainComplex tgt, std::map<int, GRMatrix> maps);
    static ChainMap identity(const BasedChainComplex& c);
    static ChainMap zero(BasedChainComplex src, BasedChainComplex tgt);

    const BasedChainComplex& src() const { return src_; }
    const BasedChainComplex& tgt() const { return tgt_; }
    GRMatrix f(int k) const;  // zero-shaped outside populated range

    ChainMap after(const ChainMap& first) const;  // this ∘ first
    ChainMap plus(const ChainMap& o) const;
    ChainMap negated() const;
    ChainMap induced(const GroupHom& hom) const;

private:
    BasedChainComplex src_, tgt_;
    std::map<int, GRMatrix> f_;
};

// Witness h for f ≃ g: f - g = d h + h d, degreewise.
class ChainHomotopy {
public:
    ChainHomotopy(ChainMap f, ChainMap g, std::map<int, GRMatrix> h);
    const ChainMap& f() const { return f_; }
    const ChainMap& g() const { return g_; }
    GRMatrix h(int k) const;

private:
    ChainMap f_, g_;
    std::map<int, GRMatrix> h_;
};

// Dual complex C^{n-*}: degree k is the dual of degree n-k, differential
// (d^{n-*})_k = (-1)^k bar_transpose(d_{n-k+1}).
BasedChainComplex dual_complex(const BasedChainComplex& c, int n);
// Dual of a chain map as a map dual(tgt, n) -> dual(src, n).
ChainMap dual_chain_map(const ChainMap& f, int n);

// cone(f)_k = D_k ⊕ C_{k-1}, d = [[d^D, f], [0, -d^C]].
BasedChainComplex cone(const ChainMap& f);
// cyl(f)_k = B_k ⊕ A_k ⊕ A_{k-1} for f: A -> B, Weibel's convention.
BasedChainComplex cylinder(const ChainMap& f);
// Inclusions/projections of the cylinder.
ChainMap cylinder_include_target(const ChainMap& f, const BasedChainComplex& cyl);
ChainMap cylinder_include_source(const ChainMap& f, const BasedChainComplex& cyl);
ChainMap cylinder_project(const ChainMap& f, const BasedChainComplex& cyl);

BasedChainComplex direct_sum(const BasedChainComplex& a, const BasedChainComplex& b);

// Product group G x H within the supported family, with the two inclusions.
// Supported: either factor trivial; both factors free abelian / infinite
// cyclic; finite cyclic factors of coprime order.
struct ProductGroup {
    GroupSpecPtr spec;
    GroupHom left, right;
};
ProductGroup product_group(const GroupSpecPtr& g, const GroupSpecPtr& h);

// Tensor product over the product group, Koszul signs, basis ordered by
// source degree then lexicographic pairs.
BasedChainComplex tensor_product(const BasedChainComplex& c, const BasedChainComplex& d,
                                 const ProductGroup& pg);
ChainMap tensor_map(const ChainMap& f, const ChainMap& g, const ProductGroup& pg);

// Self-equivalence v of C together with the twisting automorphism alpha,
// packaged through the semidirect-product group it induces over.  The chain
// condition D·V = V·alpha(D) is validated.
struct SelfEquivalenceWithTwist {
    BasedChainComplex complex;                 // over Z[G]
    std::map<int, GRMatrix> v;                 // self-map matrices
    GroupSpecPtr semidirect;                   // G ⋊_alpha Z
    SelfEquivalenceWithTwist(BasedChainComplex c, std::map<int, GRMatrix> v_,
                             GroupSpecPtr semidirect_);
    GRMatrix v_at(int k) const;
    // alpha applied to every entry of a matrix over Z[G].
    GRMatrix alpha_entrywise(const GRMatrix& m, long power = 1) const;
    // C with alpha applied to the differentials; v is a chain map C -> C^alpha.
    BasedChainComplex twisted_complex() const;
    ChainMap as_chain_map() const;  // v : C -> C^alpha over Z[G]
};

// Algebraic mapping torus: cone of (id - V·t) on the induced complex over
// Z[G ⋊_alpha Z], together with the map u itself.
BasedChainComplex mapping_torus(const SelfEquivalenceWithTwist& s);
ChainMap mapping_torus_u(const SelfEquivalenceWithTwist& s);

// Based sub/quotient along a basis prefix: sub_ranks[k - lo] columns of each
// degree span the subcomplex.
struct SubQuotient {
    BasedChainComplex sub, quotient;
    ChainMap inclusion, projection;
};
SubQuotient sub_quotient_sequence(const BasedChainComplex& c, const std::vector<int>& sub_ranks);

// Pushout of  Y <-f- B ⊆ X  along a basis-prefix inclusion: basis (Y, X\B).
BasedChainComplex pushout_along_prefix(const BasedChainComplex& x,
                                       const std::vector<int>& sub_ranks,
                                       const ChainMap& f);

}  // namespace whtor

#endif
