#ifndef WHTOR_POLYNOMIAL_HPP
#define WHTOR_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace whtor {

// Dense univariate polynomial over Q, coefficient of x^i at c[i].
struct Poly {
    std::vector<mpq_class> c;

    static Poly zero() { return Poly{}; }
    static Poly constant(const mpq_class& a);
    static Poly monomial(const mpq_class& a, int deg);

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    mpq_class lead() const { return c.empty() ? mpq_class(0) : c.back(); }
    mpq_class coeff(int i) const;
    void normalize();  // strip trailing zeros

    friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const mpq_class& s);
// Euclidean division: a = q*b + r with deg r < deg b.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic gcd
Poly poly_derivative(const Poly& a);
mpq_class poly_eval(const Poly& a, const mpq_class& x);
std::string poly_string(const Poly& a, const std::string& var = "x");

// Element of Q(t).  Also used for Laurent polynomials (den a power of t).
class RatFun {
public:
    RatFun() : num_(Poly::zero()), den_(Poly::constant(1)) {}
    RatFun(Poly num, Poly den);
    static RatFun from_int(const mpq_class& a) { return RatFun(Poly::constant(a), Poly::constant(1)); }
    static RatFun t_power(long k);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    RatFun operator-() const;
    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    // True when this equals ±t^k for some integer k (trivial unit image in Z[Z]).
    bool is_plus_minus_t_power() const;
    std::string str(const std::string& var = "t") const;

private:
    Poly num_, den_;  // den monic, gcd(num, den) = 1, den != 0
    void reduce();
};

}  // namespace whtor

#endif
