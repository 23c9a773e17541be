#ifndef WHTOR_TORSION_CLASS_HPP
#define WHTOR_TORSION_CLASS_HPP

#include "whtor/matrix.hpp"

namespace whtor {

enum class TriState { Trivial, NonTrivial, Unknown };

std::string tristate_name(TriState t);

// One cached invariant of a torsion class: determinant of the representative
// under a morphism into a commutative field, compared against the image of
// the trivial units.
struct InvariantRecord {
    std::string morphism;
    TargetValue value;
    bool trivial_unit_image;
};

// Element of Wh(G): invertible matrix over Z[G] up to stabilization,
// elementary operations and ±g scaling.  Always carries a verified two-sided
// inverse, so negation is free.
class TorsionClass {
public:
    TorsionClass(GRMatrix rep, GRMatrix inv);
    static TorsionClass trivial(GroupSpecPtr spec);
    static TorsionClass from_unit(const GRElement& u);         // certifies u
    static TorsionClass from_matrix(const GRMatrix& rep);      // inverts or throws
    // From an elimination log: replays to check, uses the log's matrix.
    static std::optional<TorsionClass> from_matrix_checked(const GRMatrix& rep);

    const GroupSpecPtr& spec() const { return rep_.spec(); }
    const GRMatrix& rep() const { return rep_; }
    const GRMatrix& inv() const { return inv_; }
    const std::vector<InvariantRecord>& invariants() const { return invariants_; }

    TorsionClass neg() const;                       // inverse class
    TorsionClass involution() const;                // w-twisted *
    TorsionClass induced(const GroupHom& hom) const;
    // k-fold (k may be negative): this added to itself.
    TorsionClass multiple(long k) const;

    TriState classify() const;

    std::string str() const;

private:
    GRMatrix rep_, inv_;
    std::vector<InvariantRecord> invariants_;
    void compute_invariants();
};

TorsionClass wh_add(const TorsionClass& a, const TorsionClass& b);
TorsionClass wh_sub(const TorsionClass& a, const TorsionClass& b);

// classify(x - y): tries representative equality, elimination on the
// difference in a few shapes, then invariant comparison.
TriState classify_equal(const TorsionClass& x, const TorsionClass& y);

// Torsion class modulo x ~ alpha_*(x) (Wh(G) ⊗_alpha Z of §8).
class WhTensorClass {
public:
    WhTensorClass(TorsionClass x, GroupHom alpha_star);
    const TorsionClass& rep() const { return x_; }
    // Comparison up to powers of alpha_*.
    TriState equal_to(const TorsionClass& y, int max_twists = 12) const;

private:
    TorsionClass x_;
    GroupHom alpha_star_;
};

struct TateVerdict {
    TriState verdict;
    std::string detail;
};

// The class of x in H^n-hat(Z/2; Wh): precondition *x = (-1)^n x at classify
// level; with a witness y verifies x = y + (-1)^n * (*y); otherwise returns
// NonTrivial only when the cyclotomic norm obstruction applies (even n over
// finite cyclic groups), else Unknown.
TateVerdict tate_class(const TorsionClass& x, int n,
                       const TorsionClass* witness = nullptr);

}  // namespace whtor

#endif
