#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "whtor/group.hpp"

using namespace whtor;

TEST_CASE("trivial group") {
    auto g = GroupSpec::trivial();
    CHECK(g->num_generators() == 0);
    CHECK(g->is_finite());
    CHECK(g->group_order() == 1);
    CHECK(g->all_elements().size() == 1);
}

TEST_CASE("cyclic normal form and arithmetic") {
    auto g = GroupSpec::cyclic(5);
    CHECK(g->normalize({{7}}) == GroupElement{{2}});
    CHECK(g->normalize({{-1}}) == GroupElement{{4}});
    CHECK(g->multiply({{3}}, {{4}}) == GroupElement{{2}});
    CHECK(g->inverse({{2}}) == GroupElement{{3}});
    CHECK(g->group_order() == 5);
    CHECK(g->all_elements().size() == 5);
    CHECK(g->generator_names() == std::vector<std::string>{"t"});
}

TEST_CASE("free abelian and infinite cyclic") {
    auto f = GroupSpec::free_abelian(2);
    CHECK(f->num_generators() == 2);
    CHECK_FALSE(f->is_finite());
    CHECK(f->multiply({{1, -2}}, {{3, 2}}) == GroupElement{{4, 0}});
    CHECK(f->generator_names() == std::vector<std::string>{"a", "b"});

    auto z = GroupSpec::infinite_cyclic(-1);
    CHECK(z->w_sign({{1}}) == -1);
    CHECK(z->w_sign({{2}}) == +1);
    CHECK(z->w_sign({{-3}}) == -1);
}

TEST_CASE("semidirect product relations") {
    auto z5 = GroupSpec::cyclic(5);
    auto sd = GroupSpec::semidirect_with_z(z5, {{2}});
    CHECK(sd->num_generators() == 2);
    CHECK_FALSE(sd->is_abelian());
    // t g = alpha(g) t = g^2 t in normal form g^a t^b
    GroupElement t = sd->generator(1), g = sd->generator(0);
    CHECK(sd->multiply(t, g) == GroupElement{{2, 1}});
    CHECK(sd->multiply(g, t) == GroupElement{{1, 1}});
    CHECK(sd->alpha_power(z5->generator(0), 2) == GroupElement{{4}});
    CHECK(sd->alpha_power(z5->generator(0), -1) == GroupElement{{3}});
    GroupElement w{{1, 2}};
    CHECK(sd->multiply(w, sd->inverse(w)) == sd->identity());
}

TEST_CASE("semidirect rejects bad alpha") {
    CHECK_THROWS_AS(GroupSpec::semidirect_with_z(GroupSpec::free_abelian(2), {{2, 0}, {0, 1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec::semidirect_with_z(GroupSpec::cyclic(5), {{1, 0}}),
                    std::invalid_argument);
}

TEST_CASE("group homomorphisms validate relations") {
    auto z5 = GroupSpec::cyclic(5);
    GroupHom sq(z5, z5, {z5->normalize({{2}})});
    CHECK(sq.apply({{3}}) == GroupElement{{1}});
    auto z2 = GroupSpec::cyclic(2);
    CHECK_THROWS_AS(GroupHom(z5, z2, {z2->generator(0)}), std::invalid_argument);

    auto sd = GroupSpec::semidirect_with_z(z5, {{2}});
    GroupHom incl = GroupHom::inclusion_into_semidirect(z5, sd);
    CHECK(incl.apply({{3}}) == GroupElement{{3, 0}});
    GroupHom comp = incl.compose_after(sq);
    CHECK(comp.apply({{1}}) == GroupElement{{2, 0}});
}
