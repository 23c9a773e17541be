#include "whtor/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace whtor {

Poly Poly::constant(const mpq_class& a) {
    Poly p;
    if (a != 0) p.c.push_back(a);
    return p;
}

Poly Poly::monomial(const mpq_class& a, int deg) {
    Poly p;
    if (a != 0) {
        p.c.assign(deg + 1, mpq_class(0));
        p.c[deg] = a;
    }
    return p;
}

mpq_class Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c.size())) return mpq_class(0);
    return c[i];
}

void Poly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), mpq_class(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.normalize();
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), mpq_class(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.normalize();
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.normalize();
    return r;
}

Poly poly_scale(const Poly& a, const mpq_class& s) {
    if (s == 0) return Poly::zero();
    Poly r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    Poly r = a, q;
    int db = b.degree();
    if (a.degree() >= db) q.c.assign(a.degree() - db + 1, mpq_class(0));
    while (r.degree() >= db) {
        int shift = r.degree() - db;
        mpq_class f = r.lead() / b.lead();
        q.c[shift] += f;
        for (int i = 0; i <= db; ++i) r.c[shift + i] -= f * b.c[i];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = poly_scale(a, mpq_class(1) / a.lead());
    return a;
}

Poly poly_derivative(const Poly& a) {
    Poly r;
    for (int i = 1; i <= a.degree(); ++i) r.c.push_back(a.c[i] * i);
    r.normalize();
    return r;
}

mpq_class poly_eval(const Poly& a, const mpq_class& x) {
    mpq_class v = 0;
    for (int i = a.degree(); i >= 0; --i) v = v * x + a.c[i];
    return v;
}

std::string poly_string(const Poly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = a.degree(); i >= 0; --i) {
        mpq_class co = a.c[i];
        if (co == 0) continue;
        if (!first) os << (co > 0 ? " + " : " - ");
        else if (co < 0) os << "-";
        mpq_class mag = abs(co);
        first = false;
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
    reduce();
}

void RatFun::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::constant(1);
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = poly_divmod(num_, g).first;
        den_ = poly_divmod(den_, g).first;
    }
    mpq_class l = den_.lead();
    if (l != 1) {
        num_ = poly_scale(num_, mpq_class(1) / l);
        den_ = poly_scale(den_, mpq_class(1) / l);
    }
}

RatFun RatFun::t_power(long k) {
    if (k >= 0) return RatFun(Poly::monomial(1, static_cast<int>(k)), Poly::constant(1));
    return RatFun(Poly::constant(1), Poly::monomial(1, static_cast<int>(-k)));
}

RatFun RatFun::operator+(const RatFun& o) const {
    return RatFun(poly_add(poly_mul(num_, o.den_), poly_mul(o.num_, den_)),
                  poly_mul(den_, o.den_));
}

RatFun RatFun::operator-(const RatFun& o) const {
    return RatFun(poly_sub(poly_mul(num_, o.den_), poly_mul(o.num_, den_)),
                  poly_mul(den_, o.den_));
}

RatFun RatFun::operator*(const RatFun& o) const {
    return RatFun(poly_mul(num_, o.num_), poly_mul(den_, o.den_));
}

RatFun RatFun::operator/(const RatFun& o) const {
    if (o.is_zero()) throw std::invalid_argument("division by zero rational function");
    return RatFun(poly_mul(num_, o.den_), poly_mul(den_, o.num_));
}

RatFun RatFun::operator-() const { return RatFun(poly_scale(num_, -1), den_); }

bool RatFun::is_plus_minus_t_power() const {
    // After reduction, ±t^k has a single-term numerator with coefficient
    // ±(lead of den) and a monomial denominator.
    int terms_n = 0, terms_d = 0;
    for (auto& x : num_.c)
        if (x != 0) ++terms_n;
    for (auto& x : den_.c)
        if (x != 0) ++terms_d;
    if (terms_n != 1 || terms_d != 1) return false;
    mpq_class ratio = num_.c.back() == 0 ? mpq_class(0) : num_.lead() / den_.lead();
    return ratio == 1 || ratio == -1;
}

std::string RatFun::str(const std::string& var) const {
    if (den_ == Poly::constant(1)) return poly_string(num_, var);
    return "(" + poly_string(num_, var) + ")/(" + poly_string(den_, var) + ")";
}

}  // namespace whtor
