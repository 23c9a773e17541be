#include "whtor/chain_complex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace whtor {

BasedChainComplex::BasedChainComplex(GroupSpecPtr spec, int lo, std::vector<int> ranks,
                                     std::vector<GRMatrix> diffs)
    : spec_(std::move(spec)), lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
    if (ranks_.empty()) ranks_ = {0};
    if (diffs_.size() + 1 != ranks_.size())
        throw std::invalid_argument("differential count must be rank count - 1");
    for (size_t i = 0; i < diffs_.size(); ++i) {
        if (diffs_[i].rows() != ranks_[i] || diffs_[i].cols() != ranks_[i + 1])
            throw std::invalid_argument("differential shape mismatch at degree " +
                                        std::to_string(lo_ + 1 + static_cast<int>(i)));
        if (!diffs_[i].spec()->same_as(*spec_))
            throw std::invalid_argument("differential over wrong group");
    }
    for (size_t i = 0; i + 1 < diffs_.size(); ++i)
        if (!(diffs_[i] * diffs_[i + 1]).is_zero())
            throw std::invalid_argument("d∘d != 0 at degree " +
                                        std::to_string(lo_ + 2 + static_cast<int>(i)));
}

BasedChainComplex BasedChainComplex::zero(GroupSpecPtr spec) {
    return BasedChainComplex(std::move(spec), 0, {0}, {});
}

BasedChainComplex BasedChainComplex::single(GroupSpecPtr spec, int degree, int rank) {
    return BasedChainComplex(std::move(spec), degree, {rank}, {});
}

int BasedChainComplex::rank(int k) const {
    if (k < lo_ || k > hi()) return 0;
    return ranks_[k - lo_];
}

int BasedChainComplex::total_rank() const {
    int s = 0;
    for (int r : ranks_) s += r;
    return s;
}

long BasedChainComplex::euler_characteristic() const {
    long s = 0;
    for (int k = lo_; k <= hi(); ++k) s += (k % 2 == 0 ? 1 : -1) * rank(k);
    return s;
}

GRMatrix BasedChainComplex::d(int k) const {
    if (k > lo_ && k <= hi()) return diffs_[k - lo_ - 1];
    return GRMatrix(spec_, rank(k - 1), rank(k));
}

BasedChainComplex BasedChainComplex::induced(const GroupHom& hom) const {
    std::vector<GRMatrix> nd;
    for (auto& m : diffs_) nd.push_back(m.induced(hom));
    return BasedChainComplex(hom.target(), lo_, ranks_, std::move(nd));
}

BasedChainComplex BasedChainComplex::shifted(int s) const {
    std::vector<GRMatrix> nd;
    GRElement sign = GRElement::integer(spec_, (s % 2 == 0) ? 1 : -1);
    for (auto& m : diffs_) nd.push_back(m.scaled(sign));
    return BasedChainComplex(spec_, lo_ + s, ranks_, std::move(nd));
}

bool operator==(const BasedChainComplex& a, const BasedChainComplex& b) {
    return a.lo_ == b.lo_ && a.ranks_ == b.ranks_ && a.diffs_ == b.diffs_ &&
           a.spec_->same_as(*b.spec_);
}

ChainMap::ChainMap(BasedChainComplex src, BasedChainComplex tgt, std::map<int, GRMatrix> maps)
    : src_(std::move(src)), tgt_(std::move(tgt)), f_(std::move(maps)) {
    for (auto& [k, m] : f_)
        if (m.rows() != tgt_.rank(k) || m.cols() != src_.rank(k))
            throw std::invalid_argument("chain map shape mismatch at degree " + std::to_string(k));
    int lo = std::min(src_.lo(), tgt_.lo());
    int hi = std::max(src_.hi(), tgt_.hi());
    for (int k = lo; k <= hi + 1; ++k)
        if (!(f(k - 1) * src_.d(k) == tgt_.d(k) * f(k)))
            throw std::invalid_argument("chain map does not commute with d at degree " +
                                        std::to_string(k));
}

ChainMap ChainMap::identity(const BasedChainComplex& c) {
    std::map<int, GRMatrix> m;
    for (int k = c.lo(); k <= c.hi(); ++k) m.emplace(k, GRMatrix::identity(c.spec(), c.rank(k)));
    return ChainMap(c, c, std::move(m));
}

ChainMap ChainMap::zero(BasedChainComplex src, BasedChainComplex tgt) {
    return ChainMap(std::move(src), std::move(tgt), {});
}

GRMatrix ChainMap::f(int k) const {
    auto it = f_.find(k);
    if (it != f_.end()) return it->second;
    return GRMatrix(tgt_.spec(), tgt_.rank(k), src_.rank(k));
}

ChainMap ChainMap::after(const ChainMap& first) const {
    if (!(first.tgt_ == src_)) throw std::invalid_argument("chain map composition mismatch");
    std::map<int, GRMatrix> m;
    int lo = std::min(first.src_.lo(), tgt_.lo());
    int hi = std::max(first.src_.hi(), tgt_.hi());
    for (int k = lo; k <= hi; ++k) m.emplace(k, f(k) * first.f(k));
    return ChainMap(first.src_, tgt_, std::move(m));
}

ChainMap ChainMap::plus(const ChainMap& o) const {
    if (!(src_ == o.src_) || !(tgt_ == o.tgt_))
        throw std::invalid_argument("chain map sum mismatch");
    std::map<int, GRMatrix> m;
    int lo = std::min(src_.lo(), tgt_.lo());
    int hi = std::max(src_.hi(), tgt_.hi());
    for (int k = lo; k <= hi; ++k) m.emplace(k, f(k) + o.f(k));
    return ChainMap(src_, tgt_, std::move(m));
}

ChainMap ChainMap::negated() const {
    std::map<int, GRMatrix> m;
    for (auto& [k, mat] : f_) m.emplace(k, -mat);
    return ChainMap(src_, tgt_, std::move(m));
}

ChainMap ChainMap::induced(const GroupHom& hom) const {
    std::map<int, GRMatrix> m;
    for (auto& [k, mat] : f_) m.emplace(k, mat.induced(hom));
    return ChainMap(src_.induced(hom), tgt_.induced(hom), std::move(m));
}

ChainHomotopy::ChainHomotopy(ChainMap f, ChainMap g, std::map<int, GRMatrix> h)
    : f_(std::move(f)), g_(std::move(g)), h_(std::move(h)) {
    if (!(f_.src() == g_.src()) || !(f_.tgt() == g_.tgt()))
        throw std::invalid_argument("homotopy endpoints mismatch");
    const auto& src = f_.src();
    const auto& tgt = f_.tgt();
    for (auto& [k, m] : h_)
        if (m.rows() != tgt.rank(k + 1) || m.cols() != src.rank(k))
            throw std::invalid_argument("homotopy shape mismatch at degree " + std::to_string(k));
    int lo = std::min(src.lo(), tgt.lo());
    int hi = std::max(src.hi(), tgt.hi());
    for (int k = lo; k <= hi; ++k) {
        GRMatrix lhs = f_.f(k) - g_.f(k);
        GRMatrix rhs = tgt.d(k + 1) * this->h(k) + this->h(k - 1) * src.d(k);
        if (!(lhs == rhs))
            throw std::invalid_argument("homotopy relation fails at degree " + std::to_string(k));
    }
}

GRMatrix ChainHomotopy::h(int k) const {
    auto it = h_.find(k);
    if (it != h_.end()) return it->second;
    return GRMatrix(f_.tgt().spec(), f_.tgt().rank(k + 1), f_.src().rank(k));
}

BasedChainComplex dual_complex(const BasedChainComplex& c, int n) {
    int lo = n - c.hi();
    std::vector<int> ranks;
    std::vector<GRMatrix> diffs;
    for (int k = lo; k <= n - c.lo(); ++k) ranks.push_back(c.rank(n - k));
    for (int k = lo + 1; k <= n - c.lo(); ++k) {
        GRMatrix m = c.d(n - k + 1).bar_transpose();
        GRElement sign = GRElement::integer(c.spec(), (k % 2 == 0) ? 1 : -1);
        diffs.push_back(m.scaled(sign));
    }
    return BasedChainComplex(c.spec(), lo, std::move(ranks), std::move(diffs));
}

ChainMap dual_chain_map(const ChainMap& f, int n) {
    BasedChainComplex dsrc = dual_complex(f.tgt(), n);
    BasedChainComplex dtgt = dual_complex(f.src(), n);
    std::map<int, GRMatrix> m;
    for (int k = dsrc.lo(); k <= dsrc.hi(); ++k) m.emplace(k, f.f(n - k).bar_transpose());
    return ChainMap(std::move(dsrc), std::move(dtgt), std::move(m));
}

BasedChainComplex cone(const ChainMap& f) {
    const auto& c = f.src();
    const auto& dd = f.tgt();
    auto spec = dd.spec();
    int lo = std::min(dd.lo(), c.lo() + 1);
    int hi = std::max(dd.hi(), c.hi() + 1);
    std::vector<int> ranks;
    std::vector<GRMatrix> diffs;
    GRElement minus1 = GRElement::integer(spec, -1);
    for (int k = lo; k <= hi; ++k) ranks.push_back(dd.rank(k) + c.rank(k - 1));
    for (int k = lo + 1; k <= hi; ++k) {
        GRMatrix top_left = dd.d(k);
        GRMatrix top_right = f.f(k - 1);
        GRMatrix bot_left(spec, c.rank(k - 2), dd.rank(k));
        GRMatrix bot_right = c.d(k - 1).scaled(minus1);
        diffs.push_back(GRMatrix::from_blocks(top_left, top_right, bot_left, bot_right));
    }
    return BasedChainComplex(spec, lo, std::move(ranks), std::move(diffs));
}

BasedChainComplex cylinder(const ChainMap& f) {
    const auto& a = f.src();
    const auto& b = f.tgt();
    auto spec = b.spec();
    int lo = std::min(b.lo(), a.lo());
    int hi = std::max(b.hi(), a.hi() + 1);
    std::vector<int> ranks;
    std::vector<GRMatrix> diffs;
    GRElement minus1 = GRElement::integer(spec, -1);
    for (int k = lo; k <= hi; ++k) ranks.push_back(b.rank(k) + a.rank(k) + a.rank(k - 1));
    for (int k = lo + 1; k <= hi; ++k) {
        // rows: B_{k-1}, A_{k-1}, A_{k-2}; cols: B_k, A_k, A_{k-1}
        GRMatrix m(spec, b.rank(k - 1) + a.rank(k - 1) + a.rank(k - 2),
                   b.rank(k) + a.rank(k) + a.rank(k - 1));
        auto put = [&](int r0, int c0, const GRMatrix& blk) {
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j) m.at(r0 + i, c0 + j) = blk.at(i, j);
        };
        put(0, 0, b.d(k));
        put(0, b.rank(k) + a.rank(k), f.f(k - 1));
        put(b.rank(k - 1), b.rank(k), a.d(k));
        put(b.rank(k - 1), b.rank(k) + a.rank(k),
            GRMatrix::identity(spec, a.rank(k - 1)).scaled(minus1));
        put(b.rank(k - 1) + a.rank(k - 1), b.rank(k) + a.rank(k),
            a.d(k - 1).scaled(minus1));
        diffs.push_back(std::move(m));
    }
    return BasedChainComplex(spec, lo, std::move(ranks), std::move(diffs));
}

ChainMap cylinder_include_target(const ChainMap& f, const BasedChainComplex& cyl) {
    const auto& b = f.tgt();
    std::map<int, GRMatrix> m;
    for (int k = cyl.lo(); k <= cyl.hi(); ++k) {
        GRMatrix mk(b.spec(), cyl.rank(k), b.rank(k));
        for (int i = 0; i < b.rank(k); ++i) mk.at(i, i) = GRElement::one(b.spec());
        m.emplace(k, std::move(mk));
    }
    return ChainMap(b, cyl, std::move(m));
}

ChainMap cylinder_include_source(const ChainMap& f, const BasedChainComplex& cyl) {
    const auto& a = f.src();
    const auto& b = f.tgt();
    std::map<int, GRMatrix> m;
    for (int k = cyl.lo(); k <= cyl.hi(); ++k) {
        GRMatrix mk(b.spec(), cyl.rank(k), a.rank(k));
        for (int i = 0; i < a.rank(k); ++i)
            mk.at(b.rank(k) + i, i) = GRElement::one(b.spec());
        m.emplace(k, std::move(mk));
    }
    return ChainMap(a, cyl, std::move(m));
}

ChainMap cylinder_project(const ChainMap& f, const BasedChainComplex& cyl) {
    const auto& a = f.src();
    const auto& b = f.tgt();
    std::map<int, GRMatrix> m;
    for (int k = cyl.lo(); k <= cyl.hi(); ++k) {
        GRMatrix mk(b.spec(), b.rank(k), cyl.rank(k));
        for (int i = 0; i < b.rank(k); ++i) mk.at(i, i) = GRElement::one(b.spec());
        GRMatrix fk = f.f(k);
        for (int i = 0; i < b.rank(k); ++i)
            for (int j = 0; j < a.rank(k); ++j) mk.at(i, b.rank(k) + j) = fk.at(i, j);
        m.emplace(k, std::move(mk));
    }
    return ChainMap(cyl, b, std::move(m));
}

BasedChainComplex direct_sum(const BasedChainComplex& a, const BasedChainComplex& b) {
    int lo = std::min(a.lo(), b.lo());
    int hi = std::max(a.hi(), b.hi());
    std::vector<int> ranks;
    std::vector<GRMatrix> diffs;
    for (int k = lo; k <= hi; ++k) ranks.push_back(a.rank(k) + b.rank(k));
    for (int k = lo + 1; k <= hi; ++k)
        diffs.push_back(GRMatrix::from_blocks(
            a.d(k), GRMatrix(a.spec(), a.rank(k - 1), b.rank(k)),
            GRMatrix(a.spec(), b.rank(k - 1), a.rank(k)), b.d(k)));
    return BasedChainComplex(a.spec(), lo, std::move(ranks), std::move(diffs));
}

ProductGroup product_group(const GroupSpecPtr& g, const GroupSpecPtr& h) {
    auto free_like = [](const GroupSpecPtr& s) {
        return s->kind() == GroupKind::FreeAbelian || s->kind() == GroupKind::InfiniteCyclic;
    };
    if (g->kind() == GroupKind::Trivial) {
        return ProductGroup{h, GroupHom(g, h, {}), GroupHom::identity(h)};
    }
    if (h->kind() == GroupKind::Trivial) {
        return ProductGroup{g, GroupHom::identity(g), GroupHom(h, g, {})};
    }
    if (free_like(g) && free_like(h)) {
        std::vector<int> w = g->orientation();
        for (int s : h->orientation()) w.push_back(s);
        int rg = g->num_generators(), rh = h->num_generators();
        auto p = GroupSpec::free_abelian(rg + rh, std::move(w));
        std::vector<GroupElement> gi, hi;
        for (int i = 0; i < rg; ++i) gi.push_back(p->generator(i));
        for (int i = 0; i < rh; ++i) hi.push_back(p->generator(rg + i));
        return ProductGroup{p, GroupHom(g, p, std::move(gi)), GroupHom(h, p, std::move(hi))};
    }
    if (g->kind() == GroupKind::CyclicFinite && h->kind() == GroupKind::CyclicFinite) {
        long m = g->cyclic_order(), n = h->cyclic_order();
        if (std::gcd(m, n) != 1)
            throw std::invalid_argument("cyclic product factors must have coprime order");
        if (!g->orientation_trivial() || !h->orientation_trivial())
            throw std::invalid_argument("oriented cyclic products are unsupported");
        auto p = GroupSpec::cyclic(m * n);
        // CRT idempotent images: e1 ≡ 1 (mod m), 0 (mod n); e2 symmetric.
        long e1 = 0, e2 = 0;
        for (long x = 0; x < m * n; ++x) {
            if (x % m == 1 && x % n == 0) e1 = x;
            if (x % m == 0 && x % n == 1) e2 = x;
        }
        return ProductGroup{p, GroupHom(g, p, {GroupElement{{e1}}}),
                            GroupHom(h, p, {GroupElement{{e2}}})};
    }
    throw std::invalid_argument("unsupported product of groups: " + g->describe() + " x " +
                                h->describe());
}

namespace {
// Offset of the (i, j = k - i) block within degree k of the tensor product.
int tensor_offset(const BasedChainComplex& c, const BasedChainComplex& d, int k, int i) {
    int off = 0;
    for (int ii = c.lo(); ii < i; ++ii) off += c.rank(ii) * d.rank(k - ii);
    return off;
}
}  // namespace

BasedChainComplex tensor_product(const BasedChainComplex& c, const BasedChainComplex& d,
                                 const ProductGroup& pg) {
    int lo = c.lo() + d.lo();
    int hi = c.hi() + d.hi();
    auto spec = pg.spec;
    std::vector<int> ranks;
    for (int k = lo; k <= hi; ++k) {
        int r = 0;
        for (int i = c.lo(); i <= c.hi(); ++i) r += c.rank(i) * d.rank(k - i);
        ranks.push_back(r);
    }
    std::vector<GRMatrix> diffs;
    for (int k = lo + 1; k <= hi; ++k) {
        GRMatrix m(spec, ranks[k - 1 - lo], ranks[k - lo]);
        for (int i = c.lo(); i <= c.hi(); ++i) {
            int j = k - i;
            if (d.rank(j) == 0 || c.rank(i) == 0) continue;
            int src_off = tensor_offset(c, d, k, i);
            // dC ⊗ id : block (i, j) -> (i-1, j)
            if (c.rank(i - 1) > 0) {
                int dst_off = tensor_offset(c, d, k - 1, i - 1);
                GRMatrix dc = c.d(i).induced(pg.left);
                for (int a2 = 0; a2 < c.rank(i - 1); ++a2)
                    for (int a = 0; a < c.rank(i); ++a) {
                        if (dc.at(a2, a).is_zero()) continue;
                        for (int b = 0; b < d.rank(j); ++b)
                            m.at(dst_off + a2 * d.rank(j) + b, src_off + a * d.rank(j) + b) =
                                dc.at(a2, a);
                    }
            }
            // (-1)^i id ⊗ dD : block (i, j) -> (i, j-1)
            if (d.rank(j - 1) > 0) {
                int dst_off = tensor_offset(c, d, k - 1, i);
                GRMatrix dd = d.d(j).induced(pg.right);
                GRElement sign = GRElement::integer(spec, (i % 2 == 0) ? 1 : -1);
                for (int a = 0; a < c.rank(i); ++a)
                    for (int b2 = 0; b2 < d.rank(j - 1); ++b2)
                        for (int b = 0; b < d.rank(j); ++b) {
                            if (dd.at(b2, b).is_zero()) continue;
                            m.at(dst_off + a * d.rank(j - 1) + b2,
                                 src_off + a * d.rank(j) + b) = sign * dd.at(b2, b);
                        }
            }
        }
        diffs.push_back(std::move(m));
    }
    return BasedChainComplex(spec, lo, std::move(ranks), std::move(diffs));
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g, const ProductGroup& pg) {
    BasedChainComplex src = tensor_product(f.src(), g.src(), pg);
    BasedChainComplex tgt = tensor_product(f.tgt(), g.tgt(), pg);
    std::map<int, GRMatrix> maps;
    for (int k = src.lo(); k <= src.hi(); ++k) {
        GRMatrix m(pg.spec, tgt.rank(k), src.rank(k));
        for (int i = f.src().lo(); i <= f.src().hi(); ++i) {
            int j = k - i;
            if (f.src().rank(i) == 0 || g.src().rank(j) == 0) continue;
            int src_off = tensor_offset(f.src(), g.src(), k, i);
            if (f.tgt().rank(i) == 0 || g.tgt().rank(j) == 0) continue;
            int dst_off = tensor_offset(f.tgt(), g.tgt(), k, i);
            GRMatrix fi = f.f(i).induced(pg.left);
            GRMatrix gj = g.f(j).induced(pg.right);
            for (int a2 = 0; a2 < fi.rows(); ++a2)
                for (int a = 0; a < fi.cols(); ++a) {
                    if (fi.at(a2, a).is_zero()) continue;
                    for (int b2 = 0; b2 < gj.rows(); ++b2)
                        for (int b = 0; b < gj.cols(); ++b) {
                            if (gj.at(b2, b).is_zero()) continue;
                            m.at(dst_off + a2 * g.tgt().rank(j) + b2,
                                 src_off + a * g.src().rank(j) + b) =
                                fi.at(a2, a) * gj.at(b2, b);
                        }
                }
        }
        maps.emplace(k, std::move(m));
    }
    return ChainMap(std::move(src), std::move(tgt), std::move(maps));
}

SelfEquivalenceWithTwist::SelfEquivalenceWithTwist(BasedChainComplex c,
                                                   std::map<int, GRMatrix> v_,
                                                   GroupSpecPtr semidirect_)
    : complex(std::move(c)), v(std::move(v_)), semidirect(std::move(semidirect_)) {
    if (semidirect->kind() != GroupKind::SemidirectWithZ ||
        !semidirect->base()->same_as(*complex.spec()))
        throw std::invalid_argument("self-equivalence needs G ⋊ Z over the complex's group");
    for (auto& [k, m] : v)
        if (m.rows() != complex.rank(k) || m.cols() != complex.rank(k))
            throw std::invalid_argument("self-map shape mismatch at degree " + std::to_string(k));
    // Chain condition d_k · V_k = V_{k-1} · alpha(d_k).
    for (int k = complex.lo() + 1; k <= complex.hi(); ++k) {
        GRMatrix lhs = complex.d(k) * v_at(k);
        GRMatrix rhs = v_at(k - 1) * alpha_entrywise(complex.d(k));
        if (!(lhs == rhs))
            throw std::invalid_argument("alpha-twisted chain condition fails at degree " +
                                        std::to_string(k));
    }
}

GRMatrix SelfEquivalenceWithTwist::v_at(int k) const {
    auto it = v.find(k);
    if (it != v.end()) return it->second;
    return GRMatrix(complex.spec(), complex.rank(k), complex.rank(k));
}

GRMatrix SelfEquivalenceWithTwist::alpha_entrywise(const GRMatrix& m, long power) const {
    GRMatrix r(complex.spec(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            GRElement x(complex.spec());
            for (auto& [g, c] : m.at(i, j).terms())
                x.add_term(semidirect->alpha_power(g, power), c);
            r.at(i, j) = std::move(x);
        }
    return r;
}

BasedChainComplex SelfEquivalenceWithTwist::twisted_complex() const {
    std::vector<GRMatrix> nd;
    for (int k = complex.lo() + 1; k <= complex.hi(); ++k)
        nd.push_back(alpha_entrywise(complex.d(k)));
    std::vector<int> ranks;
    for (int k = complex.lo(); k <= complex.hi(); ++k) ranks.push_back(complex.rank(k));
    return BasedChainComplex(complex.spec(), complex.lo(), std::move(ranks), std::move(nd));
}

ChainMap SelfEquivalenceWithTwist::as_chain_map() const {
    return ChainMap(complex, twisted_complex(), v);
}

ChainMap mapping_torus_u(const SelfEquivalenceWithTwist& s) {
    auto incl = GroupHom::inclusion_into_semidirect(s.complex.spec(), s.semidirect);
    BasedChainComplex ind = s.complex.induced(incl);
    auto spec = s.semidirect;
    int nb = spec->base()->num_generators();
    GroupElement t = spec->identity();
    t.exps[nb] = 1;
    std::map<int, GRMatrix> u;
    for (int k = ind.lo(); k <= ind.hi(); ++k) {
        GRMatrix vk = s.v_at(k).induced(incl);
        GRMatrix uk = GRMatrix::identity(spec, ind.rank(k));
        GRElement te = GRElement::from_group_element(spec, t, 1);
        for (int i = 0; i < uk.rows(); ++i)
            for (int j = 0; j < uk.cols(); ++j)
                uk.at(i, j) = uk.at(i, j) - vk.at(i, j) * te;
        u.emplace(k, std::move(uk));
    }
    return ChainMap(ind, ind, std::move(u));
}

BasedChainComplex mapping_torus(const SelfEquivalenceWithTwist& s) {
    return cone(mapping_torus_u(s));
}

SubQuotient sub_quotient_sequence(const BasedChainComplex& c, const std::vector<int>& sub_ranks) {
    if (static_cast<int>(sub_ranks.size()) != c.hi() - c.lo() + 1)
        throw std::invalid_argument("sub rank vector length mismatch");
    auto spec = c.spec();
    auto s_of = [&](int k) {
        if (k < c.lo() || k > c.hi()) return 0;
        return sub_ranks[k - c.lo()];
    };
    for (int k = c.lo(); k <= c.hi(); ++k)
        if (s_of(k) < 0 || s_of(k) > c.rank(k))
            throw std::invalid_argument("sub rank out of range at degree " + std::to_string(k));
    std::vector<int> subr, quotr;
    std::vector<GRMatrix> subd, quotd;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        subr.push_back(s_of(k));
        quotr.push_back(c.rank(k) - s_of(k));
    }
    for (int k = c.lo() + 1; k <= c.hi(); ++k) {
        GRMatrix dk = c.d(k);
        for (int r = s_of(k - 1); r < c.rank(k - 1); ++r)
            for (int col = 0; col < s_of(k); ++col)
                if (!dk.at(r, col).is_zero())
                    throw std::invalid_argument("basis prefix is not a subcomplex at degree " +
                                                std::to_string(k));
        subd.push_back(dk.submatrix(0, s_of(k - 1), 0, s_of(k)));
        quotd.push_back(dk.submatrix(s_of(k - 1), c.rank(k - 1), s_of(k), c.rank(k)));
    }
    BasedChainComplex sub(spec, c.lo(), subr, std::move(subd));
    BasedChainComplex quot(spec, c.lo(), quotr, std::move(quotd));
    std::map<int, GRMatrix> inc, prj;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        GRMatrix i(spec, c.rank(k), s_of(k));
        for (int r = 0; r < s_of(k); ++r) i.at(r, r) = GRElement::one(spec);
        inc.emplace(k, std::move(i));
        GRMatrix p(spec, c.rank(k) - s_of(k), c.rank(k));
        for (int r = 0; r < p.rows(); ++r) p.at(r, s_of(k) + r) = GRElement::one(spec);
        prj.emplace(k, std::move(p));
    }
    ChainMap inclusion(sub, c, std::move(inc));
    ChainMap projection(c, quot, std::move(prj));
    return SubQuotient{std::move(sub), std::move(quot), std::move(inclusion),
                       std::move(projection)};
}

BasedChainComplex pushout_along_prefix(const BasedChainComplex& x,
                                       const std::vector<int>& sub_ranks,
                                       const ChainMap& f) {
    SubQuotient sq = sub_quotient_sequence(x, sub_ranks);
    if (!(f.src() == sq.sub))
        throw std::invalid_argument("pushout map source must be the prefix subcomplex");
    const auto& y = f.tgt();
    auto spec = y.spec();
    auto s_of = [&](int k) { return sq.sub.rank(k); };
    int lo = std::min(y.lo(), x.lo());
    int hi = std::max(y.hi(), x.hi());
    std::vector<int> ranks;
    std::vector<GRMatrix> diffs;
    for (int k = lo; k <= hi; ++k) ranks.push_back(y.rank(k) + x.rank(k) - s_of(k));
    for (int k = lo + 1; k <= hi; ++k) {
        GRMatrix dx = x.d(k);
        int comp = x.rank(k) - s_of(k);
        GRMatrix b_part = dx.submatrix(0, s_of(k - 1), s_of(k), x.rank(k));
        GRMatrix c_part = dx.submatrix(s_of(k - 1), x.rank(k - 1), s_of(k), x.rank(k));
        GRMatrix top_right = f.f(k - 1) * b_part;
        diffs.push_back(GRMatrix::from_blocks(
            y.d(k), top_right, GRMatrix(spec, c_part.rows(), y.rank(k)), c_part));
        (void)comp;
    }
    return BasedChainComplex(spec, lo, std::move(ranks), std::move(diffs));
}

}  // namespace whtor
