#ifndef WHTOR_GROUP_HPP
#define WHTOR_GROUP_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace whtor {

// Supported group family: trivial, Z/n, Z^k, Z, and G ⋊_α Z for an abelian
// base G from the same family.
enum class GroupKind {
    Trivial,
    CyclicFinite,
    FreeAbelian,
    InfiniteCyclic,
    SemidirectWithZ,
};

class GroupSpec;
using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

// Element in normal form: one exponent per generator.  For SemidirectWithZ
// the last slot is the power of the new generator t, i.e. the word g * t^k.
struct GroupElement {
    std::vector<long> exps;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class GroupSpec {
public:
    static GroupSpecPtr trivial();
    static GroupSpecPtr cyclic(long order, int w = +1);
    static GroupSpecPtr free_abelian(int rank, std::vector<int> w = {});
    static GroupSpecPtr infinite_cyclic(int w = +1);
    // alpha acts on base exponent vectors.  For a CyclicFinite base it is a
    // 1x1 residue matrix (multiplication mod n); for FreeAbelian bases a
    // unimodular integer matrix.  w_t is the orientation sign of t.
    static GroupSpecPtr semidirect_with_z(GroupSpecPtr base,
                                          std::vector<std::vector<long>> alpha,
                                          int w_t = +1);

    GroupKind kind() const { return kind_; }
    long cyclic_order() const { return order_; }
    int rank() const { return rank_; }
    const GroupSpecPtr& base() const { return base_; }
    const std::vector<std::vector<long>>& alpha() const { return alpha_; }
    const std::vector<std::vector<long>>& alpha_inverse() const { return alpha_inv_; }

    int num_generators() const;
    bool is_abelian() const { return kind_ != GroupKind::SemidirectWithZ; }
    // True when Z[G] is commutative and finite rank over Z (unit certification
    // via the regular representation is available).
    bool is_finite() const;
    long group_order() const;  // only for finite groups
    const std::vector<int>& orientation() const { return w_; }
    bool orientation_trivial() const;

    bool same_as(const GroupSpec& other) const;

    GroupElement identity() const;
    GroupElement generator(int i) const;
    GroupElement normalize(GroupElement g) const;
    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& g) const;
    // alpha^k applied to a base element, as an element of the base group.
    GroupElement alpha_power(const GroupElement& base_elt, long k) const;
    int w_sign(const GroupElement& g) const;

    // All elements of a finite group, in normal-form order.
    std::vector<GroupElement> all_elements() const;

    std::string describe() const;
    std::string element_string(const GroupElement& g) const;
    std::vector<std::string> generator_names() const;

private:
    GroupSpec() = default;

    GroupKind kind_ = GroupKind::Trivial;
    long order_ = 1;
    int rank_ = 0;
    GroupSpecPtr base_;
    std::vector<std::vector<long>> alpha_, alpha_inv_;
    std::vector<int> w_;
};

// Group homomorphism given on generators.  Validated against the defining
// relations of the source at construction.
class GroupHom {
public:
    GroupHom(GroupSpecPtr source, GroupSpecPtr target,
             std::vector<GroupElement> gen_images);

    static GroupHom identity(GroupSpecPtr g);
    // g -> g * t^0 into a semidirect product over the source.
    static GroupHom inclusion_into_semidirect(GroupSpecPtr base, GroupSpecPtr semidirect);

    const GroupSpecPtr& source() const { return source_; }
    const GroupSpecPtr& target() const { return target_; }
    GroupElement apply(const GroupElement& g) const;
    GroupHom compose_after(const GroupHom& first) const;  // this ∘ first

private:
    GroupSpecPtr source_, target_;
    std::vector<GroupElement> images_;
};

}  // namespace whtor

#endif
