#include "whtor/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace whtor {

namespace {

long mod_positive(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

// Extended gcd; returns g and sets x with a*x == g (mod n).
long mod_inverse(long a, long n) {
    long t = 0, newt = 1, r = n, newr = mod_positive(a, n);
    while (newr != 0) {
        long q = r / newr;
        std::tie(t, newt) = std::make_pair(newt, t - q * newt);
        std::tie(r, newr) = std::make_pair(newr, r - q * newr);
    }
    if (r != 1) throw std::invalid_argument("residue not invertible mod n");
    return mod_positive(t, n);
}

std::vector<std::vector<long>> mat_mul(const std::vector<std::vector<long>>& A,
                                       const std::vector<std::vector<long>>& B) {
    size_t n = A.size(), m = B[0].size(), k = B.size();
    std::vector<std::vector<long>> C(n, std::vector<long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l)
            for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    return C;
}

long int_det(std::vector<std::vector<long>> a) {
    // Fraction-free elimination is overkill for the tiny alpha matrices.
    size_t n = a.size();
    long det = 1;
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = static_cast<double>(a[i][j]);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0.0) ++p;
        if (p == n) return 0;
        if (p != c) { std::swap(m[p], m[c]); det = -det; }
        for (size_t r = c + 1; r < n; ++r) {
            double f = m[r][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    double d = det;
    for (size_t i = 0; i < n; ++i) d *= m[i][i];
    return static_cast<long>(d > 0 ? d + 0.5 : d - 0.5);
}

// Inverse of a unimodular integer matrix via the adjugate.
std::vector<std::vector<long>> unimodular_inverse(const std::vector<std::vector<long>>& a) {
    long n = static_cast<long>(a.size());
    long det = int_det(a);
    if (det != 1 && det != -1)
        throw std::invalid_argument("alpha matrix is not unimodular");
    std::vector<std::vector<long>> inv(n, std::vector<long>(n));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            std::vector<std::vector<long>> minor;
            for (long r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<long> row;
                for (long c = 0; c < n; ++c)
                    if (c != i) row.push_back(a[r][c]);
                minor.push_back(std::move(row));
            }
            long cof = minor.empty() ? 1 : int_det(minor);
            if ((i + j) % 2 != 0) cof = -cof;
            inv[i][j] = cof * det;  // det is ±1
        }
    }
    return inv;
}

}  // namespace

GroupSpecPtr GroupSpec::trivial() {
    auto g = std::shared_ptr<GroupSpec>(new GroupSpec());
    g->kind_ = GroupKind::Trivial;
    return g;
}

GroupSpecPtr GroupSpec::cyclic(long order, int w) {
    if (order < 1) throw std::invalid_argument("cyclic order must be >= 1");
    if (w != 1 && w != -1) throw std::invalid_argument("orientation sign must be ±1");
    if (w == -1 && order % 2 != 0)
        throw std::invalid_argument("w(t)^n = 1 fails: odd cyclic group needs w = +1");
    auto g = std::shared_ptr<GroupSpec>(new GroupSpec());
    g->kind_ = GroupKind::CyclicFinite;
    g->order_ = order;
    g->w_ = {w};
    return g;
}

GroupSpecPtr GroupSpec::free_abelian(int rank, std::vector<int> w) {
    if (rank < 0) throw std::invalid_argument("rank must be >= 0");
    if (w.empty()) w.assign(rank, +1);
    if (static_cast<int>(w.size()) != rank)
        throw std::invalid_argument("orientation vector length mismatch");
    auto g = std::shared_ptr<GroupSpec>(new GroupSpec());
    g->kind_ = GroupKind::FreeAbelian;
    g->rank_ = rank;
    g->w_ = std::move(w);
    return g;
}

GroupSpecPtr GroupSpec::infinite_cyclic(int w) {
    auto g = std::shared_ptr<GroupSpec>(new GroupSpec());
    g->kind_ = GroupKind::InfiniteCyclic;
    g->rank_ = 1;
    g->w_ = {w};
    return g;
}

GroupSpecPtr GroupSpec::semidirect_with_z(GroupSpecPtr base,
                                          std::vector<std::vector<long>> alpha,
                                          int w_t) {
    if (!base || !base->is_abelian())
        throw std::invalid_argument("semidirect base must be an abelian variant");
    int n = base->num_generators();
    if (static_cast<int>(alpha.size()) != std::max(n, 0) ||
        (n > 0 && static_cast<int>(alpha[0].size()) != n))
        throw std::invalid_argument("alpha matrix has wrong shape");
    auto g = std::shared_ptr<GroupSpec>(new GroupSpec());
    g->kind_ = GroupKind::SemidirectWithZ;
    g->base_ = base;
    if (base->kind() == GroupKind::CyclicFinite) {
        long a = mod_positive(alpha[0][0], base->cyclic_order());
        g->alpha_ = {{a}};
        g->alpha_inv_ = {{mod_inverse(a, base->cyclic_order())}};
    } else if (n > 0) {
        g->alpha_ = alpha;
        g->alpha_inv_ = unimodular_inverse(alpha);
    }
    g->w_ = base->orientation();
    g->w_.push_back(w_t);
    // w must be alpha-invariant so that it extends to the semidirect product.
    if (base->kind() == GroupKind::CyclicFinite || n == 0) {
        // single generator (or none): w(alpha(g)) = w(g)^a; sign condition below.
        if (n == 1 && g->w_[0] == -1 && g->alpha_[0][0] % 2 == 0)
            throw std::invalid_argument("orientation not alpha-invariant");
    }
    return g;
}

int GroupSpec::num_generators() const {
    switch (kind_) {
        case GroupKind::Trivial: return 0;
        case GroupKind::CyclicFinite: return 1;
        case GroupKind::FreeAbelian: return rank_;
        case GroupKind::InfiniteCyclic: return 1;
        case GroupKind::SemidirectWithZ: return base_->num_generators() + 1;
    }
    return 0;
}

bool GroupSpec::is_finite() const {
    return kind_ == GroupKind::Trivial || kind_ == GroupKind::CyclicFinite;
}

long GroupSpec::group_order() const {
    if (kind_ == GroupKind::Trivial) return 1;
    if (kind_ == GroupKind::CyclicFinite) return order_;
    throw std::logic_error("group_order on infinite group");
}

bool GroupSpec::orientation_trivial() const {
    return std::all_of(w_.begin(), w_.end(), [](int s) { return s == 1; });
}

bool GroupSpec::same_as(const GroupSpec& other) const {
    if (kind_ != other.kind_ || order_ != other.order_ || rank_ != other.rank_ ||
        w_ != other.w_ || alpha_ != other.alpha_)
        return false;
    if (base_ && other.base_) return base_->same_as(*other.base_);
    return !base_ && !other.base_;
}

GroupElement GroupSpec::identity() const {
    return GroupElement{std::vector<long>(num_generators(), 0)};
}

GroupElement GroupSpec::generator(int i) const {
    if (i < 0 || i >= num_generators()) throw std::out_of_range("generator index");
    GroupElement g = identity();
    g.exps[i] = 1;
    return normalize(std::move(g));
}

GroupElement GroupSpec::normalize(GroupElement g) const {
    if (static_cast<int>(g.exps.size()) != num_generators())
        throw std::invalid_argument("element has wrong generator count");
    if (kind_ == GroupKind::CyclicFinite) {
        g.exps[0] = mod_positive(g.exps[0], order_);
    } else if (kind_ == GroupKind::SemidirectWithZ &&
               base_->kind() == GroupKind::CyclicFinite) {
        g.exps[0] = mod_positive(g.exps[0], base_->cyclic_order());
    }
    return g;
}

GroupElement GroupSpec::alpha_power(const GroupElement& base_elt, long k) const {
    if (kind_ != GroupKind::SemidirectWithZ)
        throw std::logic_error("alpha_power on non-semidirect group");
    int n = base_->num_generators();
    if (n == 0) return base_elt;
    if (base_->kind() == GroupKind::CyclicFinite) {
        long m = base_->cyclic_order();
        long a = k >= 0 ? alpha_[0][0] : alpha_inv_[0][0];
        long times = k >= 0 ? k : -k;
        long f = 1;
        for (long i = 0; i < times; ++i) f = mod_positive(f * a, m);
        return base_->normalize(GroupElement{{mod_positive(base_elt.exps[0] * f, m)}});
    }
    const auto& M = k >= 0 ? alpha_ : alpha_inv_;
    long times = k >= 0 ? k : -k;
    std::vector<long> v = base_elt.exps;
    for (long s = 0; s < times; ++s) {
        std::vector<long> next(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) next[i] += M[i][j] * v[j];
        v = std::move(next);
    }
    return GroupElement{std::move(v)};
}

GroupElement GroupSpec::multiply(const GroupElement& a, const GroupElement& b) const {
    int n = num_generators();
    if (kind_ != GroupKind::SemidirectWithZ) {
        GroupElement c;
        c.exps.resize(n);
        for (int i = 0; i < n; ++i) c.exps[i] = a.exps[i] + b.exps[i];
        return normalize(std::move(c));
    }
    // (g1 t^k1)(g2 t^k2) = g1 * alpha^k1(g2) * t^(k1+k2)
    int nb = base_->num_generators();
    GroupElement g2{std::vector<long>(b.exps.begin(), b.exps.begin() + nb)};
    GroupElement tw = alpha_power(g2, a.exps[nb]);
    GroupElement c;
    c.exps.resize(n);
    for (int i = 0; i < nb; ++i) c.exps[i] = a.exps[i] + tw.exps[i];
    c.exps[nb] = a.exps[nb] + b.exps[nb];
    return normalize(std::move(c));
}

GroupElement GroupSpec::inverse(const GroupElement& g) const {
    int n = num_generators();
    if (kind_ != GroupKind::SemidirectWithZ) {
        GroupElement c;
        c.exps.resize(n);
        for (int i = 0; i < n; ++i) c.exps[i] = -g.exps[i];
        return normalize(std::move(c));
    }
    // (g t^k)^{-1} = alpha^{-k}(g^{-1}) t^{-k}
    int nb = base_->num_generators();
    GroupElement ginv{std::vector<long>(nb, 0)};
    for (int i = 0; i < nb; ++i) ginv.exps[i] = -g.exps[i];
    GroupElement tw = alpha_power(ginv, -g.exps[nb]);
    GroupElement c;
    c.exps.resize(n);
    for (int i = 0; i < nb; ++i) c.exps[i] = tw.exps[i];
    c.exps[nb] = -g.exps[nb];
    return normalize(std::move(c));
}

int GroupSpec::w_sign(const GroupElement& g) const {
    int s = 1;
    for (size_t i = 0; i < w_.size(); ++i)
        if (w_[i] == -1 && (g.exps[i] % 2 != 0)) s = -s;
    return s;
}

std::vector<GroupElement> GroupSpec::all_elements() const {
    if (!is_finite()) throw std::logic_error("all_elements on infinite group");
    std::vector<GroupElement> out;
    if (kind_ == GroupKind::Trivial) {
        out.push_back(identity());
    } else {
        for (long e = 0; e < order_; ++e) out.push_back(GroupElement{{e}});
    }
    return out;
}

std::vector<std::string> GroupSpec::generator_names() const {
    switch (kind_) {
        case GroupKind::Trivial: return {};
        case GroupKind::CyclicFinite:
        case GroupKind::InfiniteCyclic: return {"t"};
        case GroupKind::FreeAbelian: {
            std::vector<std::string> names;
            static const char* letters[] = {"a", "b", "c", "d", "e", "f"};
            for (int i = 0; i < rank_; ++i) {
                if (i < 6) names.push_back(letters[i]);
                else names.push_back("g" + std::to_string(i));
            }
            return names;
        }
        case GroupKind::SemidirectWithZ: {
            auto names = base_->generator_names();
            names.push_back("s");  // the new Z generator
            return names;
        }
    }
    return {};
}

std::string GroupSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case GroupKind::Trivial: os << "1"; break;
        case GroupKind::CyclicFinite: os << "Z/" << order_; break;
        case GroupKind::FreeAbelian: os << "Z^" << rank_; break;
        case GroupKind::InfiniteCyclic: os << "Z"; break;
        case GroupKind::SemidirectWithZ:
            os << base_->describe() << " x| Z";
            break;
    }
    return os.str();
}

std::string GroupSpec::element_string(const GroupElement& g) const {
    auto names = generator_names();
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < names.size(); ++i) {
        if (g.exps[i] == 0) continue;
        if (any) os << "*";
        os << names[i];
        if (g.exps[i] != 1) os << "^" << g.exps[i];
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

GroupHom::GroupHom(GroupSpecPtr source, GroupSpecPtr target,
                   std::vector<GroupElement> gen_images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(gen_images)) {
    if (static_cast<int>(images_.size()) != source_->num_generators())
        throw std::invalid_argument("generator image count mismatch");
    for (auto& im : images_) im = target_->normalize(im);
    // Relation checks.
    if (source_->kind() == GroupKind::CyclicFinite) {
        GroupElement p = target_->identity();
        for (long i = 0; i < source_->cyclic_order(); ++i) p = target_->multiply(p, images_[0]);
        if (!(p == target_->identity()))
            throw std::invalid_argument("image of cyclic generator has wrong order");
    }
    if (source_->kind() == GroupKind::SemidirectWithZ) {
        int nb = source_->base()->num_generators();
        const GroupElement& t = images_[nb];
        GroupElement tinv = target_->inverse(t);
        for (int i = 0; i < nb; ++i) {
            GroupElement lhs = target_->multiply(target_->multiply(t, images_[i]), tinv);
            GroupElement base_gen = source_->base()->generator(i);
            GroupElement ag = source_->alpha_power(base_gen, 1);
            GroupElement rhs = target_->identity();
            for (int j = 0; j < nb; ++j) {
                long e = ag.exps[j];
                GroupElement pw = target_->identity();
                long times = e >= 0 ? e : -e;
                GroupElement gen = e >= 0 ? images_[j] : target_->inverse(images_[j]);
                for (long s = 0; s < times; ++s) pw = target_->multiply(pw, gen);
                rhs = target_->multiply(rhs, pw);
            }
            if (!(lhs == rhs))
                throw std::invalid_argument("semidirect twist relation not respected");
        }
        if (source_->base()->kind() == GroupKind::CyclicFinite && nb == 1) {
            GroupElement p = target_->identity();
            for (long i = 0; i < source_->base()->cyclic_order(); ++i)
                p = target_->multiply(p, images_[0]);
            if (!(p == target_->identity()))
                throw std::invalid_argument("image of finite base generator has wrong order");
        }
    }
}

GroupHom GroupHom::identity(GroupSpecPtr g) {
    std::vector<GroupElement> imgs;
    for (int i = 0; i < g->num_generators(); ++i) imgs.push_back(g->generator(i));
    return GroupHom(g, g, std::move(imgs));
}

GroupHom GroupHom::inclusion_into_semidirect(GroupSpecPtr base, GroupSpecPtr semidirect) {
    if (semidirect->kind() != GroupKind::SemidirectWithZ ||
        !semidirect->base()->same_as(*base))
        throw std::invalid_argument("target is not a semidirect product over the source");
    std::vector<GroupElement> imgs;
    int nb = base->num_generators();
    for (int i = 0; i < nb; ++i) {
        GroupElement e = semidirect->identity();
        e.exps[i] = 1;
        imgs.push_back(semidirect->normalize(std::move(e)));
    }
    return GroupHom(base, semidirect, std::move(imgs));
}

GroupElement GroupHom::apply(const GroupElement& g) const {
    // Source normal form multiplies out base-first, t-last; the base is
    // abelian so the order among base generators does not matter.
    GroupElement out = target_->identity();
    int n = source_->num_generators();
    for (int i = 0; i < n; ++i) {
        long e = g.exps[i];
        if (e == 0) continue;
        GroupElement gen = e >= 0 ? images_[i] : target_->inverse(images_[i]);
        long times = e >= 0 ? e : -e;
        for (long s = 0; s < times; ++s) out = target_->multiply(out, gen);
    }
    return out;
}

GroupHom GroupHom::compose_after(const GroupHom& first) const {
    if (!first.target()->same_as(*source_))
        throw std::invalid_argument("composition mismatch");
    std::vector<GroupElement> imgs;
    for (int i = 0; i < first.source()->num_generators(); ++i)
        imgs.push_back(apply(first.images_[i]));
    return GroupHom(first.source(), target_, std::move(imgs));
}

}  // namespace whtor
