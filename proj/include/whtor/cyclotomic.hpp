#ifndef WHTOR_CYCLOTOMIC_HPP
#define WHTOR_CYCLOTOMIC_HPP

#include <memory>

#include "whtor/polynomial.hpp"

namespace whtor {

// The n-th cyclotomic polynomial, exact integer coefficients.
Poly cyclotomic_polynomial(long n);

// Q(zeta_n) as Q[x]/Phi_n(x).
class CycField {
public:
    explicit CycField(long n);
    long n() const { return n_; }
    const Poly& phi() const { return phi_; }
    int degree() const { return phi_.degree(); }

private:
    long n_;
    Poly phi_;
};

using CycFieldPtr = std::shared_ptr<const CycField>;

class CycElt {
public:
    CycElt(CycFieldPtr field, Poly rep);
    static CycElt from_rational(CycFieldPtr field, const mpq_class& a);
    static CycElt zeta_power(CycFieldPtr field, long k);

    const CycFieldPtr& field() const { return field_; }
    const Poly& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }

    CycElt operator+(const CycElt& o) const;
    CycElt operator-(const CycElt& o) const;
    CycElt operator*(const CycElt& o) const;
    CycElt operator-() const;
    CycElt inverse() const;
    CycElt pow(long k) const;
    // Complex conjugation zeta -> zeta^{-1}.
    CycElt conj() const;
    friend bool operator==(const CycElt& a, const CycElt& b) {
        return a.rep_ == b.rep_;
    }

    // True iff this equals ±zeta^k for some k (the trivial-unit image set).
    bool is_trivial_unit_image() const;
    // Characteristic polynomial of multiplication by this element on the
    // field as a Q-vector space (monic, degree = [Q(zeta):Q]).
    Poly char_poly() const;
    // Sound test for "all Galois conjugates are positive reals": requires the
    // element to be real (conj == self); decided via strict coefficient sign
    // alternation of the characteristic polynomial together with squarefree
    // real-rootedness implied by the element being real.
    bool is_totally_positive() const;

    std::string str() const;

private:
    CycFieldPtr field_;
    Poly rep_;  // degree < degree(Phi_n)
};

}  // namespace whtor

#endif
