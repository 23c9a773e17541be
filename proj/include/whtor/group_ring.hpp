#ifndef WHTOR_GROUP_RING_HPP
#define WHTOR_GROUP_RING_HPP

#include <gmpxx.h>

#include <map>
#include <optional>

#include "whtor/group.hpp"

namespace whtor {

// Element of Z[G]: finite integer combination of normal-form group elements.
// No zero coefficients are stored.
class GRElement {
public:
    explicit GRElement(GroupSpecPtr spec) : spec_(std::move(spec)) {}

    static GRElement zero(GroupSpecPtr spec) { return GRElement(std::move(spec)); }
    static GRElement one(GroupSpecPtr spec);
    static GRElement from_group_element(GroupSpecPtr spec, const GroupElement& g,
                                        mpz_class coeff = 1);
    static GRElement integer(GroupSpecPtr spec, mpz_class n);
    // The norm element 1 + t + ... + t^{n-1} of Z[Z/n].
    static GRElement norm_element(GroupSpecPtr spec);

    const GroupSpecPtr& spec() const { return spec_; }
    const std::map<GroupElement, mpz_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    mpz_class coeff(const GroupElement& g) const;
    void add_term(const GroupElement& g, const mpz_class& c);  // g must be normal form

    GRElement operator+(const GRElement& o) const;
    GRElement operator-(const GRElement& o) const;
    GRElement operator*(const GRElement& o) const;
    GRElement operator-() const;
    GRElement scaled(const mpz_class& c) const;
    friend bool operator==(const GRElement& a, const GRElement& b) {
        return a.terms_ == b.terms_;
    }

    // w-twisted involution: sum w(g) λ_g g^{-1}.
    GRElement involution() const;
    mpz_class augmentation() const;
    // ±g detection: returns (sign, g) when the element is a trivial unit.
    std::optional<std::pair<int, GroupElement>> trivial_unit() const;
    // Monomial-wise image under a group homomorphism (inclusion g ↦ g t^0 etc.).
    GRElement induced(const GroupHom& hom) const;

    std::string str() const;

private:
    GroupSpecPtr spec_;
    std::map<GroupElement, mpz_class> terms_;
    void check_same_spec(const GRElement& o) const;
};

}  // namespace whtor

#endif
