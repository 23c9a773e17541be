#ifndef WHTOR_TARGET_VALUE_HPP
#define WHTOR_TARGET_VALUE_HPP

#include <stdexcept>
#include <string>
#include <variant>

#include "whtor/cyclotomic.hpp"
#include "whtor/polynomial.hpp"

namespace whtor {

// Value in one of the morphism target rings: Q (augmentation viewed inside
// the rationals), Q(zeta_n), or Q(t).
class TargetValue {
public:
    using Storage = std::variant<mpq_class, CycElt, RatFun>;

    TargetValue(mpq_class v) : v_(std::move(v)) {}
    TargetValue(CycElt v) : v_(std::move(v)) {}
    TargetValue(RatFun v) : v_(std::move(v)) {}

    const Storage& raw() const { return v_; }
    bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    const CycElt& cyclotomic() const { return std::get<CycElt>(v_); }
    const RatFun& rational_function() const { return std::get<RatFun>(v_); }

    bool is_zero() const;
    TargetValue operator+(const TargetValue& o) const;
    TargetValue operator-(const TargetValue& o) const;
    TargetValue operator*(const TargetValue& o) const;
    TargetValue operator/(const TargetValue& o) const;
    TargetValue operator-() const;
    friend bool operator==(const TargetValue& a, const TargetValue& b);

    // A value of the same target ring equal to 0 / 1.
    TargetValue zero_like() const;
    TargetValue one_like() const;

    std::string str() const;

private:
    Storage v_;
};

}  // namespace whtor

#endif
