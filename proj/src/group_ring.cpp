#include "whtor/group_ring.hpp"

#include <sstream>
#include <stdexcept>

namespace whtor {

GRElement GRElement::one(GroupSpecPtr spec) {
    GRElement e(spec);
    e.terms_[spec->identity()] = 1;
    return e;
}

GRElement GRElement::from_group_element(GroupSpecPtr spec, const GroupElement& g,
                                        mpz_class coeff) {
    GRElement e(spec);
    if (coeff != 0) e.terms_[spec->normalize(g)] = std::move(coeff);
    return e;
}

GRElement GRElement::integer(GroupSpecPtr spec, mpz_class n) {
    GRElement e(spec);
    if (n != 0) e.terms_[spec->identity()] = std::move(n);
    return e;
}

GRElement GRElement::norm_element(GroupSpecPtr spec) {
    if (spec->kind() != GroupKind::CyclicFinite)
        throw std::invalid_argument("norm element needs a finite cyclic group");
    GRElement e(spec);
    for (long k = 0; k < spec->cyclic_order(); ++k) e.terms_[GroupElement{{k}}] = 1;
    return e;
}

mpz_class GRElement::coeff(const GroupElement& g) const {
    auto it = terms_.find(spec_->normalize(g));
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void GRElement::add_term(const GroupElement& g, const mpz_class& c) {
    if (c == 0) return;
    auto key = spec_->normalize(g);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void GRElement::check_same_spec(const GRElement& o) const {
    if (!spec_->same_as(*o.spec_))
        throw std::invalid_argument("group-ring elements over different groups");
}

GRElement GRElement::operator+(const GRElement& o) const {
    check_same_spec(o);
    GRElement r = *this;
    for (auto& [g, c] : o.terms_) r.add_term(g, c);
    return r;
}

GRElement GRElement::operator-(const GRElement& o) const {
    check_same_spec(o);
    GRElement r = *this;
    for (auto& [g, c] : o.terms_) r.add_term(g, -c);
    return r;
}

GRElement GRElement::operator*(const GRElement& o) const {
    check_same_spec(o);
    GRElement r(spec_);
    for (auto& [g1, c1] : terms_)
        for (auto& [g2, c2] : o.terms_) r.add_term(spec_->multiply(g1, g2), c1 * c2);
    return r;
}

GRElement GRElement::operator-() const {
    GRElement r(spec_);
    for (auto& [g, c] : terms_) r.terms_[g] = -c;
    return r;
}

GRElement GRElement::scaled(const mpz_class& c) const {
    GRElement r(spec_);
    if (c != 0)
        for (auto& [g, co] : terms_) r.terms_[g] = co * c;
    return r;
}

GRElement GRElement::involution() const {
    GRElement r(spec_);
    for (auto& [g, c] : terms_)
        r.add_term(spec_->inverse(g), c * spec_->w_sign(g));
    return r;
}

mpz_class GRElement::augmentation() const {
    mpz_class s = 0;
    for (auto& [g, c] : terms_) s += c;
    return s;
}

std::optional<std::pair<int, GroupElement>> GRElement::trivial_unit() const {
    if (terms_.size() != 1) return std::nullopt;
    auto& [g, c] = *terms_.begin();
    if (c == 1) return std::make_pair(1, g);
    if (c == -1) return std::make_pair(-1, g);
    return std::nullopt;
}

GRElement GRElement::induced(const GroupHom& hom) const {
    if (!hom.source()->same_as(*spec_))
        throw std::invalid_argument("morphism source does not match element's group");
    GRElement r(hom.target());
    for (auto& [g, c] : terms_) r.add_term(hom.apply(g), c);
    return r;
}

std::string GRElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [g, c] : terms_) {
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::string word = spec_->element_string(g);
        if (mag != 1) {
            os << mag.get_str();
            if (word != "1") os << "*" << word;
        } else {
            os << word;
        }
    }
    return os.str();
}

}  // namespace whtor
