#include "doctest.h"
#include "whtor/morphism.hpp"

using namespace whtor;

namespace {
GRElement power(const GroupSpecPtr& g, long k, mpz_class c = 1) {
    return GRElement::from_group_element(g, g->normalize({{k}}), c);
}
}  // namespace

TEST_CASE("the fundamental unit of Z[Z/5]") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement u = power(z5, 1) + power(z5, 4) - GRElement::one(z5);
    GRElement v = power(z5, 2) + power(z5, 3) - GRElement::one(z5);
    CHECK(u * v == GRElement::one(z5));
    CHECK(u.augmentation() == 1);
    CHECK_FALSE(u.trivial_unit().has_value());
    CHECK(u.involution() == u);  // t -> t^{-1} fixes t + t^4 - 1
}

TEST_CASE("ring operations") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement t = power(z5, 1);
    CHECK(t * t * t * t * t == GRElement::one(z5));
    CHECK((t - t).is_zero());
    CHECK((t + t) == t.scaled(2));
    CHECK((-t).coeff(z5->normalize({{1}})) == -1);
    auto tu = (-power(z5, 3)).trivial_unit();
    REQUIRE(tu.has_value());
    CHECK(tu->first == -1);
    CHECK(tu->second == GroupElement{{3}});
}

TEST_CASE("norm element") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement n = GRElement::norm_element(z5);
    CHECK(n.augmentation() == 5);
    CHECK(n * n == n.scaled(5));
    CHECK(power(z5, 1) * n == n);
}

TEST_CASE("orientation-twisted involution") {
    auto z = GroupSpec::infinite_cyclic(-1);
    GRElement t = GRElement::from_group_element(z, z->generator(0));
    // bar(t) = w(t) t^{-1} = -t^{-1}
    CHECK(t.involution() == -GRElement::from_group_element(z, z->normalize({{-1}})));
    CHECK((t * t).involution() == GRElement::from_group_element(z, z->normalize({{-2}})));
}

TEST_CASE("induced along homomorphisms") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement u = power(z5, 1) + power(z5, 4) - GRElement::one(z5);
    GroupHom sq(z5, z5, {z5->normalize({{2}})});
    CHECK(u.induced(sq) == power(z5, 2) + power(z5, 3) - GRElement::one(z5));
    auto sd = GroupSpec::semidirect_with_z(z5, {{1}});
    GRElement ui = u.induced(GroupHom::inclusion_into_semidirect(z5, sd));
    CHECK(ui.augmentation() == 1);
    CHECK(ui.terms().size() == 3);
}

TEST_CASE("morphism values") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement u = power(z5, 1) + power(z5, 4) - GRElement::one(z5);
    RingMorphism aug = RingMorphism::augmentation(z5);
    CHECK(aug.apply(u) == TargetValue(mpq_class(1)));
    CHECK(aug.is_trivial_unit_value(TargetValue(mpq_class(-1))));
    CHECK_FALSE(aug.is_trivial_unit_value(TargetValue(mpq_class(2))));

    auto chars = RingMorphism::primitive_characters(z5);
    CHECK(chars.size() == 4);
    for (const auto& chi : chars) {
        TargetValue uv = chi.apply(u);
        TargetValue vv = chi.apply(power(z5, 2) + power(z5, 3) - GRElement::one(z5));
        CHECK(uv * vv == chi.one());
        CHECK_FALSE(chi.is_trivial_unit_value(uv));
    }
}
