#include "whtor/morphism.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace whtor {

bool TargetValue::is_zero() const {
    return std::visit([](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, mpq_class>) return v == 0;
        else return v.is_zero();
    }, v_);
}

namespace {
template <class Op>
TargetValue binop(const TargetValue& a, const TargetValue& b, Op op) {
    if (a.raw().index() != b.raw().index())
        throw std::invalid_argument("target values from different rings");
    return std::visit([&](const auto& x) -> TargetValue {
        using T = std::decay_t<decltype(x)>;
        return TargetValue(op(x, std::get<T>(b.raw())));
    }, a.raw());
}
}  // namespace

TargetValue TargetValue::operator+(const TargetValue& o) const {
    return binop(*this, o, [](const auto& x, const auto& y) { return x + y; });
}
TargetValue TargetValue::operator-(const TargetValue& o) const {
    return binop(*this, o, [](const auto& x, const auto& y) { return x - y; });
}
TargetValue TargetValue::operator*(const TargetValue& o) const {
    return binop(*this, o, [](const auto& x, const auto& y) { return x * y; });
}

TargetValue TargetValue::operator/(const TargetValue& o) const {
    if (o.is_zero()) throw std::invalid_argument("target-value division by zero");
    return std::visit([&](const auto& x) -> TargetValue {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(o.raw());
        if constexpr (std::is_same_v<T, CycElt>) return TargetValue(x * y.inverse());
        else return TargetValue(x / y);
    }, v_);
}

TargetValue TargetValue::operator-() const {
    return std::visit([](const auto& x) -> TargetValue { return TargetValue(-x); }, v_);
}

bool operator==(const TargetValue& a, const TargetValue& b) {
    if (a.raw().index() != b.raw().index()) return false;
    return std::visit([&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        return x == std::get<T>(b.raw());
    }, a.raw());
}

TargetValue TargetValue::zero_like() const {
    return std::visit([](const auto& x) -> TargetValue {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, mpq_class>) return TargetValue(mpq_class(0));
        else if constexpr (std::is_same_v<T, CycElt>)
            return TargetValue(CycElt::from_rational(x.field(), 0));
        else return TargetValue(RatFun::from_int(0));
    }, v_);
}

TargetValue TargetValue::one_like() const {
    return std::visit([](const auto& x) -> TargetValue {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, mpq_class>) return TargetValue(mpq_class(1));
        else if constexpr (std::is_same_v<T, CycElt>)
            return TargetValue(CycElt::from_rational(x.field(), 1));
        else return TargetValue(RatFun::from_int(1));
    }, v_);
}

std::string TargetValue::str() const {
    return std::visit([](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, mpq_class>) return x.get_str();
        else return x.str();
    }, v_);
}

RingMorphism RingMorphism::augmentation(GroupSpecPtr g) {
    RingMorphism m;
    m.kind_ = MorphismKind::Augmentation;
    m.group_ = std::move(g);
    return m;
}

RingMorphism RingMorphism::character(GroupSpecPtr g, CycFieldPtr field,
                                     std::vector<long> exponents) {
    RingMorphism m;
    m.kind_ = MorphismKind::Character;
    m.group_ = std::move(g);
    m.field_ = std::move(field);
    m.exponents_ = std::move(exponents);
    if (static_cast<int>(m.exponents_.size()) != m.group_->num_generators())
        throw std::invalid_argument("character exponent count mismatch");
    long n = m.field_->n();
    // Relation checks.
    if (m.group_->kind() == GroupKind::CyclicFinite) {
        if ((m.exponents_[0] * m.group_->cyclic_order()) % n != 0)
            throw std::invalid_argument("character violates generator order");
    }
    if (m.group_->kind() == GroupKind::SemidirectWithZ) {
        const auto& base = m.group_->base();
        int nb = base->num_generators();
        for (int i = 0; i < nb; ++i) {
            // chi(t g t^{-1}) = chi(alpha(g)) must equal chi(g) since the
            // target is commutative.
            GroupElement ag = m.group_->alpha_power(base->generator(i), 1);
            long lhs = 0;
            for (int j = 0; j < nb; ++j) lhs += m.exponents_[j] * ag.exps[j];
            if (((lhs - m.exponents_[i]) % n + n) % n != 0)
                throw std::invalid_argument("character not alpha-invariant");
        }
        if (base->kind() == GroupKind::CyclicFinite &&
            (m.exponents_[0] * base->cyclic_order()) % n != 0)
            throw std::invalid_argument("character violates base generator order");
    }
    return m;
}

RingMorphism RingMorphism::laurent(GroupSpecPtr g) {
    bool ok = g->kind() == GroupKind::InfiniteCyclic ||
              (g->kind() == GroupKind::FreeAbelian && g->rank() == 1) ||
              (g->kind() == GroupKind::SemidirectWithZ &&
               g->base()->kind() == GroupKind::Trivial);
    if (!ok)
        throw std::invalid_argument("Laurent morphism needs a single free generator");
    RingMorphism m;
    m.kind_ = MorphismKind::Laurent;
    m.group_ = std::move(g);
    return m;
}

std::vector<RingMorphism> RingMorphism::primitive_characters(GroupSpecPtr g) {
    std::vector<RingMorphism> out;
    long n = 0;
    int num_gens = g->num_generators();
    std::vector<long> base_pattern;
    if (g->kind() == GroupKind::CyclicFinite) {
        n = g->cyclic_order();
        base_pattern = {1};
    } else if (g->kind() == GroupKind::SemidirectWithZ &&
               g->base()->kind() == GroupKind::CyclicFinite &&
               g->alpha()[0][0] == 1) {
        n = g->base()->cyclic_order();
        base_pattern = {1, 0};  // Z generator -> zeta^0 = 1
    } else {
        return out;
    }
    if (n <= 1) return out;
    auto field = std::make_shared<const CycField>(n);
    for (long j = 1; j < n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        std::vector<long> exps(num_gens, 0);
        for (int i = 0; i < num_gens; ++i) exps[i] = base_pattern[i] * j;
        out.push_back(character(g, field, exps));
    }
    return out;
}

TargetValue RingMorphism::image_of(const GroupElement& g) const {
    switch (kind_) {
        case MorphismKind::Augmentation:
            return TargetValue(mpq_class(1));
        case MorphismKind::Character: {
            long e = 0;
            for (size_t i = 0; i < exponents_.size(); ++i) e += exponents_[i] * g.exps[i];
            return TargetValue(CycElt::zeta_power(field_, e));
        }
        case MorphismKind::Laurent: {
            // Single generator by construction.
            long k = g.exps.empty() ? 0 : g.exps[0];
            return TargetValue(RatFun::t_power(k));
        }
    }
    throw std::logic_error("unreachable");
}

TargetValue RingMorphism::apply(const GRElement& a) const {
    if (!a.spec()->same_as(*group_))
        throw std::invalid_argument("morphism applied to element of another group");
    TargetValue acc = zero();
    for (auto& [g, c] : a.terms()) {
        TargetValue img = image_of(g);
        TargetValue scaled = [&] {
            switch (kind_) {
                case MorphismKind::Augmentation:
                    return TargetValue(mpq_class(c));
                case MorphismKind::Character:
                    return TargetValue(CycElt(field_, poly_scale(img.cyclotomic().rep(), mpq_class(c))));
                case MorphismKind::Laurent:
                    return img * TargetValue(RatFun::from_int(mpq_class(c)));
            }
            throw std::logic_error("unreachable");
        }();
        acc = acc + scaled;
    }
    return acc;
}

TargetValue RingMorphism::zero() const {
    switch (kind_) {
        case MorphismKind::Augmentation: return TargetValue(mpq_class(0));
        case MorphismKind::Character: return TargetValue(CycElt::from_rational(field_, 0));
        case MorphismKind::Laurent: return TargetValue(RatFun::from_int(0));
    }
    throw std::logic_error("unreachable");
}

TargetValue RingMorphism::one() const {
    switch (kind_) {
        case MorphismKind::Augmentation: return TargetValue(mpq_class(1));
        case MorphismKind::Character: return TargetValue(CycElt::from_rational(field_, 1));
        case MorphismKind::Laurent: return TargetValue(RatFun::from_int(1));
    }
    throw std::logic_error("unreachable");
}

bool RingMorphism::is_trivial_unit_value(const TargetValue& v) const {
    switch (kind_) {
        case MorphismKind::Augmentation:
            return v.rational() == 1 || v.rational() == -1;
        case MorphismKind::Character:
            return v.cyclotomic().is_trivial_unit_image();
        case MorphismKind::Laurent:
            return v.rational_function().is_plus_minus_t_power();
    }
    throw std::logic_error("unreachable");
}

std::string RingMorphism::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case MorphismKind::Augmentation: os << "augmentation"; break;
        case MorphismKind::Character: {
            os << "character(zeta_" << field_->n() << "; exponents";
            for (long e : exponents_) os << " " << e;
            os << ")";
            break;
        }
        case MorphismKind::Laurent: os << "laurent"; break;
    }
    return os.str();
}

}  // namespace whtor
