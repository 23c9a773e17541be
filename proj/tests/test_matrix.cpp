#include "doctest.h"
#include "whtor/matrix.hpp"

using namespace whtor;

namespace {
GRElement power(const GroupSpecPtr& g, long k, mpz_class c = 1) {
    return GRElement::from_group_element(g, g->normalize({{k}}), c);
}
GRElement unit_u(const GroupSpecPtr& z5) {
    return power(z5, 1) + power(z5, 4) - GRElement::one(z5);
}
}  // namespace

TEST_CASE("certify_unit is complete over finite commutative groups") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement u = unit_u(z5);
    auto inv = certify_unit(u);
    REQUIRE(inv.has_value());
    CHECK(u * *inv == GRElement::one(z5));
    CHECK_FALSE(certify_unit(GRElement::one(z5) + power(z5, 1)).has_value());
    CHECK_FALSE(certify_unit(GRElement::integer(z5, 2)).has_value());
    CHECK(certify_unit(-power(z5, 3)).has_value());
}

TEST_CASE("whitehead pair log reduces diag(u, u^-1)") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement u = unit_u(z5);
    GRMatrix m = GRMatrix::diagonal({u});
    GRMatrix minv = GRMatrix::diagonal({*certify_unit(u)});
    GRMatrix pair = GRMatrix::block_diag(m, minv);
    GRMatrix reduced = replay_ops(pair, whitehead_pair_log(m, minv));
    CHECK(reduced.rows() == 0);
}

TEST_CASE("unit_pivot_eliminate certifies trivial classes and sticks on [u]") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement u = unit_u(z5);
    GRMatrix pair = GRMatrix::block_diag(GRMatrix::diagonal({u}),
                                         GRMatrix::diagonal({*certify_unit(u)}));
    CHECK(unit_pivot_eliminate(pair).status == ElimStatus::Complete);
    CHECK(unit_pivot_eliminate(GRMatrix::identity(z5, 3)).status == ElimStatus::Complete);
    CHECK(unit_pivot_eliminate(GRMatrix::diagonal({u})).status == ElimStatus::Stuck);
}

TEST_CASE("try_invert") {
    auto z5 = GroupSpec::cyclic(5);
    GRMatrix m = GRMatrix::identity(z5, 2);
    m.at(0, 1) = unit_u(z5);
    auto inv = try_invert(m);
    REQUIRE(inv.has_value());
    CHECK((m * *inv).is_identity());
    CHECK((*inv * m).is_identity());
}

TEST_CASE("smith normal form") {
    ZMatrix a{{2, 4}, {6, 8}};
    SNFResult s = smith_normal_form(a);
    REQUIRE(s.diag.size() == 2);
    CHECK(s.diag[0] == 2);
    CHECK(s.diag[1] == 4);
}

TEST_CASE("integer solve") {
    ZMatrix a{{2, 0}, {0, 3}};
    auto x = solve_integer(a, {4, 9});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    CHECK_FALSE(solve_integer(a, {1, 0}).has_value());
}

TEST_CASE("group-ring solves via the regular representation") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement u = unit_u(z5);
    GRMatrix a = GRMatrix::diagonal({u});
    auto x = solve_right(a, GRMatrix::identity(z5, 1));
    REQUIRE(x.has_value());
    CHECK(x->at(0, 0) * u == GRElement::one(z5));
    // 2 is not invertible: X * diag(2) = 1 unsolvable
    CHECK_FALSE(solve_right(GRMatrix::diagonal({GRElement::integer(z5, 2)}),
                            GRMatrix::identity(z5, 1)).has_value());
}

TEST_CASE("determinant over a character") {
    auto z5 = GroupSpec::cyclic(5);
    auto chars = RingMorphism::primitive_characters(z5);
    GRMatrix m = GRMatrix::diagonal({unit_u(z5), power(z5, 2)});
    TargetValue d = det_over_target(m, chars[0]);
    CHECK(d == chars[0].apply(unit_u(z5) * power(z5, 2)));
}
