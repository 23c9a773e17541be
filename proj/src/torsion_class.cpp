#include "whtor/torsion_class.hpp"

#include <sstream>
#include <stdexcept>

namespace whtor {

std::string tristate_name(TriState t) {
    switch (t) {
        case TriState::Trivial: return "trivial";
        case TriState::NonTrivial: return "nontrivial";
        case TriState::Unknown: return "unknown";
    }
    return "?";
}

TorsionClass::TorsionClass(GRMatrix rep, GRMatrix inv)
    : rep_(std::move(rep)), inv_(std::move(inv)) {
    if (rep_.rows() != rep_.cols() || inv_.rows() != inv_.cols() ||
        rep_.rows() != inv_.rows())
        throw std::invalid_argument("torsion representative must be square with square inverse");
    if (!(rep_ * inv_).is_identity() || !(inv_ * rep_).is_identity())
        throw std::invalid_argument("inverse certificate fails");
    compute_invariants();
}

TorsionClass TorsionClass::trivial(GroupSpecPtr spec) {
    return TorsionClass(GRMatrix(spec, 0, 0), GRMatrix(spec, 0, 0));
}

TorsionClass TorsionClass::from_unit(const GRElement& u) {
    auto inv = certify_unit(u);
    if (!inv) throw std::invalid_argument("element is not a certified unit: " + u.str());
    return TorsionClass(GRMatrix::diagonal({u}), GRMatrix::diagonal({*inv}));
}

TorsionClass TorsionClass::from_matrix(const GRMatrix& rep) {
    auto inv = try_invert(rep);
    if (!inv) throw std::invalid_argument("matrix could not be inverted by unit pivots");
    return TorsionClass(rep, *inv);
}

std::optional<TorsionClass> TorsionClass::from_matrix_checked(const GRMatrix& rep) {
    auto inv = try_invert(rep);
    if (!inv) return std::nullopt;
    return TorsionClass(rep, *inv);
}

void TorsionClass::compute_invariants() {
    auto spec = rep_.spec();
    std::vector<RingMorphism> ms;
    ms.push_back(RingMorphism::augmentation(spec));
    for (auto& m : RingMorphism::primitive_characters(spec)) ms.push_back(m);
    bool laurent_ok = spec->kind() == GroupKind::InfiniteCyclic ||
                      (spec->kind() == GroupKind::FreeAbelian && spec->rank() == 1) ||
                      (spec->kind() == GroupKind::SemidirectWithZ &&
                       spec->base()->kind() == GroupKind::Trivial);
    if (laurent_ok) ms.push_back(RingMorphism::laurent(spec));
    for (auto& m : ms) {
        TargetValue d = det_over_target(rep_, m);
        invariants_.push_back({m.describe(), d, m.is_trivial_unit_value(d)});
    }
}

TorsionClass TorsionClass::neg() const { return TorsionClass(inv_, rep_); }

TorsionClass TorsionClass::involution() const {
    return TorsionClass(rep_.bar_transpose(), inv_.bar_transpose());
}

TorsionClass TorsionClass::induced(const GroupHom& hom) const {
    return TorsionClass(rep_.induced(hom), inv_.induced(hom));
}

TorsionClass TorsionClass::multiple(long k) const {
    TorsionClass base = k >= 0 ? *this : neg();
    long times = k >= 0 ? k : -k;
    TorsionClass acc = trivial(spec());
    for (long i = 0; i < times; ++i) acc = wh_add(acc, base);
    return acc;
}

TriState TorsionClass::classify() const {
    if (rep_.rows() == 0) return TriState::Trivial;
    auto elim = unit_pivot_eliminate(rep_);
    if (elim.status == ElimStatus::Complete) return TriState::Trivial;
    for (auto& inv : invariants_)
        if (!inv.trivial_unit_image) return TriState::NonTrivial;
    return TriState::Unknown;
}

std::string TorsionClass::str() const {
    std::ostringstream os;
    os << "class of " << rep_.str();
    return os.str();
}

TorsionClass wh_add(const TorsionClass& a, const TorsionClass& b) {
    if (!a.spec()->same_as(*b.spec()))
        throw std::invalid_argument("wh_add over different groups");
    return TorsionClass(GRMatrix::block_diag(a.rep(), b.rep()),
                        GRMatrix::block_diag(a.inv(), b.inv()));
}

TorsionClass wh_sub(const TorsionClass& a, const TorsionClass& b) {
    return wh_add(a, b.neg());
}

TriState classify_equal(const TorsionClass& x, const TorsionClass& y) {
    if (x.rep() == y.rep()) return TriState::Trivial;  // Whitehead pair, explicit
    TorsionClass diff = wh_sub(x, y);
    if (diff.rep().rows() == 0) return TriState::Trivial;
    if (unit_pivot_eliminate(diff.rep()).status == ElimStatus::Complete)
        return TriState::Trivial;
    if (x.rep().rows() == y.rep().rows() && x.rep().rows() > 0) {
        GRMatrix prod = x.rep() * y.inv();
        if (unit_pivot_eliminate(prod).status == ElimStatus::Complete)
            return TriState::Trivial;
    }
    for (auto& inv : diff.invariants())
        if (!inv.trivial_unit_image) return TriState::NonTrivial;
    return TriState::Unknown;
}

WhTensorClass::WhTensorClass(TorsionClass x, GroupHom alpha_star)
    : x_(std::move(x)), alpha_star_(std::move(alpha_star)) {
    if (!alpha_star_.source()->same_as(*x_.spec()) ||
        !alpha_star_.target()->same_as(*x_.spec()))
        throw std::invalid_argument("tensor-class twist must be an automorphism of the group");
}

TriState WhTensorClass::equal_to(const TorsionClass& y, int max_twists) const {
    TorsionClass cur = x_;
    bool saw_unknown = false;
    for (int k = 0; k <= max_twists; ++k) {
        TriState t = classify_equal(cur, y);
        if (t == TriState::Trivial) return TriState::Trivial;
        if (t == TriState::Unknown) saw_unknown = true;
        cur = cur.induced(alpha_star_);
        if (k > 0 && cur.rep() == x_.rep()) break;  // twist orbit closed
    }
    // NonTrivial would need every twist decisively distinct; report it only
    // when no comparison was Unknown.
    return saw_unknown ? TriState::Unknown : TriState::NonTrivial;
}

namespace {

// Does some trivial-unit multiple of v make a totally positive element?
// If not, v cannot be a norm d·conj(d) up to trivial units.
bool some_trivial_multiple_totally_positive(const CycElt& v) {
    auto field = v.field();
    for (long k = 0; k < field->n(); ++k) {
        CycElt z = CycElt::zeta_power(field, k) * v;
        if (z.is_totally_positive() || (-z).is_totally_positive()) return true;
    }
    return false;
}

}  // namespace

TateVerdict tate_class(const TorsionClass& x, int n, const TorsionClass* witness) {
    int sign = (n % 2 == 0) ? 1 : -1;
    // Self-duality precondition: *x = (-1)^n x, i.e. x - (-1)^n * (*x) trivial.
    TorsionClass star = x.involution();
    TorsionClass dual_side = sign == 1 ? star : star.neg();
    TriState self_dual = classify_equal(x, dual_side);
    if (self_dual != TriState::Trivial)
        throw std::invalid_argument(
            "not a Tate class: self-duality check returned " + tristate_name(self_dual));
    if (witness) {
        TorsionClass wsum = sign == 1
                                ? wh_add(*witness, witness->involution())
                                : wh_sub(*witness, witness->involution());
        TriState t = classify_equal(x, wsum);
        if (t == TriState::Trivial)
            return {TriState::Trivial, "witness verified: x = y + (-1)^n * (*y)"};
        return {TriState::Unknown, "witness did not verify (difference " +
                                       tristate_name(t) + ")"};
    }
    if (x.classify() == TriState::Trivial)
        return {TriState::Trivial, "x trivial; witness y = 0"};
    if (sign == 1 && x.spec()->kind() == GroupKind::CyclicFinite &&
        x.spec()->orientation_trivial()) {
        // For even n, y + *y has character invariants of the form d·conj(d),
        // which are totally positive up to trivial units.
        for (auto& inv : x.invariants()) {
            if (!std::holds_alternative<CycElt>(inv.value.raw())) continue;
            const CycElt& v = std::get<CycElt>(inv.value.raw());
            if (v.is_zero()) continue;
            if (!some_trivial_multiple_totally_positive(v))
                return {TriState::NonTrivial,
                        "norm obstruction at " + inv.morphism + ": no trivial-unit "
                        "multiple of " + v.str() + " is totally positive"};
        }
        return {TriState::Unknown, "norm condition does not obstruct"};
    }
    return {TriState::Unknown, "no obstruction test applicable"};
}

}  // namespace whtor
