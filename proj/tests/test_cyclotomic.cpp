#include "doctest.h"
#include "whtor/cyclotomic.hpp"

using namespace whtor;

namespace {
Poly poly_of(std::vector<mpq_class> c) {
    Poly p{std::move(c)};
    p.normalize();
    return p;
}
}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == poly_of({-1, 1}));
    CHECK(cyclotomic_polynomial(2) == poly_of({1, 1}));
    CHECK(cyclotomic_polynomial(5) == poly_of({1, 1, 1, 1, 1}));
    CHECK(cyclotomic_polynomial(6) == poly_of({1, -1, 1}));
    CHECK(cyclotomic_polynomial(12) == poly_of({1, 0, -1, 0, 1}));
}

TEST_CASE("field arithmetic in Q(zeta_5)") {
    auto f = std::make_shared<CycField>(5);
    CycElt z = CycElt::zeta_power(f, 1);
    CHECK(z.pow(5) == CycElt::from_rational(f, 1));
    // 1 + z + z^2 + z^3 + z^4 = 0
    CycElt s = CycElt::from_rational(f, 1) + z + z.pow(2) + z.pow(3) + z.pow(4);
    CHECK(s.is_zero());
    CHECK(z * z.inverse() == CycElt::from_rational(f, 1));
    CHECK(z.conj() == z.pow(4));
    CHECK((z.pow(3) + z.pow(2)).conj() == z.pow(2) + z.pow(3));
}

TEST_CASE("trivial unit image detection") {
    auto f = std::make_shared<CycField>(5);
    CycElt z = CycElt::zeta_power(f, 1);
    CHECK(z.pow(3).is_trivial_unit_image());
    CHECK((-z.pow(2)).is_trivial_unit_image());
    CHECK_FALSE((CycElt::from_rational(f, 1) + z).is_trivial_unit_image());
    CHECK_FALSE(CycElt::from_rational(f, 2).is_trivial_unit_image());
}

TEST_CASE("total positivity via the characteristic polynomial") {
    auto f = std::make_shared<CycField>(5);
    CycElt z = CycElt::zeta_power(f, 1);
    CycElt r = z + z.pow(4);  // 2 cos(2 pi / 5), a conjugate is negative
    CHECK(r.char_poly().degree() == 4);
    CHECK_FALSE(r.is_totally_positive());
    CHECK((r * r).is_totally_positive());
    CHECK_FALSE(z.is_totally_positive());  // not real
}
