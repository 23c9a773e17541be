#include "whtor/cyclotomic.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace whtor {

Poly cyclotomic_polynomial(long n) {
    if (n < 1) throw std::invalid_argument("cyclotomic index must be >= 1");
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    Poly num = poly_sub(Poly::monomial(1, static_cast<int>(n)), Poly::constant(1));
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_divmod(num, cyclotomic_polynomial(d)).first;
    }
    return num;
}

CycField::CycField(long n) : n_(n), phi_(cyclotomic_polynomial(n)) {}

CycElt::CycElt(CycFieldPtr field, Poly rep) : field_(std::move(field)), rep_(std::move(rep)) {
    if (rep_.degree() >= field_->degree())
        rep_ = poly_divmod(rep_, field_->phi()).second;
}

CycElt CycElt::from_rational(CycFieldPtr field, const mpq_class& a) {
    return CycElt(std::move(field), Poly::constant(a));
}

CycElt CycElt::zeta_power(CycFieldPtr field, long k) {
    long n = field->n();
    long e = ((k % n) + n) % n;
    return CycElt(std::move(field), Poly::monomial(1, static_cast<int>(e)));
}

CycElt CycElt::operator+(const CycElt& o) const { return CycElt(field_, poly_add(rep_, o.rep_)); }
CycElt CycElt::operator-(const CycElt& o) const { return CycElt(field_, poly_sub(rep_, o.rep_)); }
CycElt CycElt::operator*(const CycElt& o) const { return CycElt(field_, poly_mul(rep_, o.rep_)); }
CycElt CycElt::operator-() const { return CycElt(field_, poly_scale(rep_, -1)); }

CycElt CycElt::inverse() const {
    if (is_zero()) throw std::invalid_argument("inverse of zero cyclotomic element");
    // Extended Euclid in Q[x]: s*rep + t*phi = gcd = 1.
    Poly r0 = field_->phi(), r1 = rep_;
    Poly s0 = Poly::zero(), s1 = Poly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    // r0 is a nonzero constant (phi is irreducible over Q).
    if (r0.degree() != 0) throw std::logic_error("cyclotomic gcd not constant");
    return CycElt(field_, poly_scale(s0, mpq_class(1) / r0.c[0]));
}

CycElt CycElt::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    CycElt acc = from_rational(field_, 1);
    CycElt base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

CycElt CycElt::conj() const {
    CycElt out = from_rational(field_, 0);
    for (int i = 0; i <= rep_.degree(); ++i) {
        if (rep_.c[i] == 0) continue;
        CycElt term = zeta_power(field_, -static_cast<long>(i));
        out = out + CycElt(field_, poly_scale(term.rep_, rep_.c[i]));
    }
    return out;
}

bool CycElt::is_trivial_unit_image() const {
    for (long k = 0; k < field_->n(); ++k) {
        CycElt z = zeta_power(field_, k);
        if (*this == z || *this == -z) return true;
    }
    return false;
}

Poly CycElt::char_poly() const {
    int d = field_->degree();
    // Multiplication matrix on the power basis 1, x, ..., x^{d-1}.
    std::vector<std::vector<mpq_class>> M(d, std::vector<mpq_class>(d, mpq_class(0)));
    for (int j = 0; j < d; ++j) {
        Poly col = poly_divmod(poly_mul(rep_, Poly::monomial(1, j)), field_->phi()).second;
        for (int i = 0; i <= col.degree(); ++i) M[i][j] = col.c[i];
    }
    // Faddeev–LeVerrier: char poly coefficients from traces of powers.
    std::vector<mpq_class> coeff(d + 1, mpq_class(0));
    coeff[d] = 1;
    auto mat_mul = [&](const std::vector<std::vector<mpq_class>>& A,
                       const std::vector<std::vector<mpq_class>>& B) {
        std::vector<std::vector<mpq_class>> C(d, std::vector<mpq_class>(d, mpq_class(0)));
        for (int i = 0; i < d; ++i)
            for (int l = 0; l < d; ++l)
                for (int j = 0; j < d; ++j) C[i][j] += A[i][l] * B[l][j];
        return C;
    };
    std::vector<std::vector<mpq_class>> Mk = M;
    std::vector<mpq_class> p(d + 1, mpq_class(0));  // power sums p[k] = tr(M^k)
    for (int k = 1; k <= d; ++k) {
        mpq_class tr = 0;
        for (int i = 0; i < d; ++i) tr += Mk[i][i];
        p[k] = tr;
        if (k < d) Mk = mat_mul(Mk, M);
    }
    // Newton's identities: e_k in terms of power sums; char poly = sum (-1)^k e_k x^{d-k}.
    std::vector<mpq_class> e(d + 1, mpq_class(0));
    e[0] = 1;
    for (int k = 1; k <= d; ++k) {
        mpq_class s = 0;
        for (int i = 1; i <= k; ++i) s += (i % 2 == 1 ? 1 : -1) * e[k - i] * p[i];
        e[k] = s / k;
    }
    Poly cp;
    cp.c.assign(d + 1, mpq_class(0));
    for (int k = 0; k <= d; ++k) cp.c[d - k] = (k % 2 == 0 ? e[k] : -e[k]);
    cp.normalize();
    return cp;
}

bool CycElt::is_totally_positive() const {
    if (!(conj() == *this)) return false;  // only meaningful for real elements
    if (is_zero()) return false;
    Poly cp = char_poly();
    // Real element ⇒ all roots of the char poly are real.  For a real-rooted
    // monic polynomial, all roots positive ⟺ coefficient signs strictly
    // alternate (Descartes).
    int d = cp.degree();
    for (int k = 0; k <= d; ++k) {
        mpq_class expect_sign = ((d - k) % 2 == 0) ? 1 : -1;
        if (cp.c[k] == 0 || sgn(cp.c[k]) != expect_sign) return false;
    }
    return true;
}

std::string CycElt::str() const { return poly_string(rep_, "z"); }

}  // namespace whtor
