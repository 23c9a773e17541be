#include "doctest.h"
#include "whtor/chain_complex.hpp"

using namespace whtor;

namespace {
GRElement power(const GroupSpecPtr& g, long k, mpz_class c = 1) {
    return GRElement::from_group_element(g, g->normalize({{k}}), c);
}
}  // namespace

TEST_CASE("construction validates d o d = 0 and shapes") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement t = power(z5, 1);
    CHECK_THROWS_AS(BasedChainComplex(z5, 0, {1, 1, 1},
                                      {GRMatrix::diagonal({t}), GRMatrix::diagonal({t})}),
                    std::invalid_argument);
    // t-1, norm is the standard acyclic-free pattern piece
    GRElement tm1 = t - GRElement::one(z5);
    BasedChainComplex c(z5, 0, {1, 1, 1},
                        {GRMatrix::diagonal({tm1}),
                         GRMatrix::diagonal({GRElement::norm_element(z5)})});
    CHECK(c.lo() == 0);
    CHECK(c.hi() == 2);
    CHECK(c.total_rank() == 3);
    CHECK(c.euler_characteristic() == 1);
    CHECK(c.d(5).rows() == 0);
    CHECK_THROWS_AS(BasedChainComplex(z5, 0, {2, 1}, {GRMatrix::diagonal({t})}),
                    std::invalid_argument);
}

TEST_CASE("chain maps must commute with d") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement tm1 = power(z5, 1) - GRElement::one(z5);
    BasedChainComplex c(z5, 0, {1, 1}, {GRMatrix::diagonal({tm1})});
    CHECK_THROWS_AS(ChainMap(c, c, {{0, GRMatrix::diagonal({power(z5, 1)})},
                                    {1, GRMatrix::identity(z5, 1)}}),
                    std::invalid_argument);
    ChainMap ok(c, c, {{0, GRMatrix::diagonal({power(z5, 1)})},
                       {1, GRMatrix::diagonal({power(z5, 1)})}});
    CHECK(ok.after(ok).f(0) == GRMatrix::diagonal({power(z5, 2)}));
}

TEST_CASE("cone and cylinder") {
    auto z5 = GroupSpec::cyclic(5);
    BasedChainComplex c = BasedChainComplex::single(z5, 0, 2);
    ChainMap id = ChainMap::identity(c);
    BasedChainComplex cn = cone(id);
    CHECK(cn.rank(0) == 2);
    CHECK(cn.rank(1) == 2);
    CHECK(cn.d(1).is_identity());
    BasedChainComplex cyl = cylinder(id);
    CHECK(cyl.total_rank() == 6);
    // cylinder projection is a chain map by construction
    ChainMap p = cylinder_project(id, cyl);
    CHECK(p.src() == cyl);
}

TEST_CASE("duality conventions") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement tm1 = power(z5, 1) - GRElement::one(z5);
    BasedChainComplex c(z5, 0, {1, 1}, {GRMatrix::diagonal({tm1})});
    BasedChainComplex dc = dual_complex(c, 3);
    CHECK(dc.lo() == 2);
    CHECK(dc.hi() == 3);
    // (d^dual)_3 = (-1)^3 bar(d_1)^T = -(t^{-1} - 1)
    CHECK(dc.d(3) == GRMatrix::diagonal({-(power(z5, -1) - GRElement::one(z5))}));
    ChainMap f(c, c, {{0, GRMatrix::diagonal({power(z5, 1)})},
                      {1, GRMatrix::diagonal({power(z5, 1)})}});
    ChainMap df = dual_chain_map(f, 3);
    CHECK(df.f(3) == GRMatrix::diagonal({power(z5, -1)}));
}

TEST_CASE("tensor products multiply Euler characteristics") {
    auto z5 = GroupSpec::cyclic(5);
    auto z2 = GroupSpec::cyclic(2);
    ProductGroup pg = product_group(z5, z2);
    CHECK(pg.spec->group_order() == 10);
    GRElement tm1 = power(z5, 1) - GRElement::one(z5);
    BasedChainComplex a(z5, 0, {1, 1}, {GRMatrix::diagonal({tm1})});
    BasedChainComplex b = direct_sum(BasedChainComplex::single(z2, 0, 1),
                                     BasedChainComplex::single(z2, 2, 2));
    BasedChainComplex ab = tensor_product(a, b, pg);
    CHECK(ab.euler_characteristic() ==
          a.euler_characteristic() * b.euler_characteristic());
    CHECK(ab.total_rank() == a.total_rank() * b.total_rank());
    CHECK_THROWS(product_group(z5, GroupSpec::cyclic(5)));
}

TEST_CASE("mapping torus of a twisted self-equivalence") {
    auto z5 = GroupSpec::cyclic(5);
    auto sd = GroupSpec::semidirect_with_z(z5, {{2}});
    BasedChainComplex c = BasedChainComplex::single(z5, 0, 1);
    SelfEquivalenceWithTwist se(c, {{0, GRMatrix::identity(z5, 1)}}, sd);
    BasedChainComplex torus = mapping_torus(se);
    CHECK(torus.spec()->kind() == GroupKind::SemidirectWithZ);
    CHECK(torus.rank(0) == 1);
    CHECK(torus.rank(1) == 1);
    // d_1 = 1 - v t
    GRElement expect = GRElement::one(sd) -
                       GRElement::from_group_element(sd, sd->generator(1));
    CHECK(torus.d(1) == GRMatrix::diagonal({expect}));
}

TEST_CASE("sub/quotient along a prefix") {
    auto z5 = GroupSpec::cyclic(5);
    BasedChainComplex c = direct_sum(BasedChainComplex::single(z5, 0, 1),
                                     BasedChainComplex::single(z5, 1, 2));
    SubQuotient sq = sub_quotient_sequence(c, {1, 1});
    CHECK(sq.sub.rank(0) == 1);
    CHECK(sq.sub.rank(1) == 1);
    CHECK(sq.quotient.rank(0) == 0);
    CHECK(sq.quotient.rank(1) == 1);
}

TEST_CASE("chain homotopy witnesses are validated") {
    auto z5 = GroupSpec::cyclic(5);
    GRElement tm1 = power(z5, 1) - GRElement::one(z5);
    BasedChainComplex c(z5, 0, {1, 1}, {GRMatrix::diagonal({tm1})});
    ChainMap id = ChainMap::identity(c);
    // f = id + d s + s d with s_0 = 1: f_0 = 1 + (t-1), f_1 = 1 + (t-1)
    GRMatrix s0 = GRMatrix::identity(z5, 1);
    GRElement t = power(z5, 1);
    ChainMap f(c, c, {{0, GRMatrix::diagonal({t})}, {1, GRMatrix::diagonal({t})}});
    ChainHomotopy h(f, id, {{0, s0}});
    CHECK(h.h(0) == s0);
    CHECK_THROWS_AS(ChainHomotopy(f, id, {{0, GRMatrix::diagonal({t})}}),
                    std::invalid_argument);
}
