#ifndef WHTOR_MORPHISM_HPP
#define WHTOR_MORPHISM_HPP

#include <vector>

#include "whtor/group_ring.hpp"
#include "whtor/target_value.hpp"

namespace whtor {

enum class MorphismKind { Augmentation, Character, Laurent };

// Ring morphism Z[G] -> commutative target: Z ⊂ Q (augmentation), Q(zeta_n)
// (character), or Q(t) (Laurent evaluation of a free generator).
class RingMorphism {
public:
    static RingMorphism augmentation(GroupSpecPtr g);
    // Generator i maps to zeta^exponents[i].  Validated against group
    // relations (orders, semidirect twist).
    static RingMorphism character(GroupSpecPtr g, CycFieldPtr field,
                                  std::vector<long> exponents);
    // Requires exactly one infinite-order generator: t -> the variable.
    static RingMorphism laurent(GroupSpecPtr g);

    // All primitive characters t -> zeta_n^j, gcd(j, n) = 1, of Z/n; for a
    // semidirect product over Z/n with alpha = id, the same characters with
    // the Z generator sent to 1.
    static std::vector<RingMorphism> primitive_characters(GroupSpecPtr g);

    MorphismKind kind() const { return kind_; }
    const GroupSpecPtr& group() const { return group_; }
    const CycFieldPtr& field() const { return field_; }
    const std::vector<long>& exponents() const { return exponents_; }

    TargetValue apply(const GRElement& a) const;
    TargetValue zero() const;
    TargetValue one() const;
    // True when the value lies in the image of the trivial units ±g.
    bool is_trivial_unit_value(const TargetValue& v) const;

    std::string describe() const;

private:
    RingMorphism() = default;
    MorphismKind kind_ = MorphismKind::Augmentation;
    GroupSpecPtr group_;
    CycFieldPtr field_;
    std::vector<long> exponents_;
    TargetValue image_of(const GroupElement& g) const;
};

}  // namespace whtor

#endif
