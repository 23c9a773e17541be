#include "whtor/engine.hpp"

#include <stdexcept>
#include <variant>

namespace whtor {

ContractionWitness::ContractionWitness(BasedChainComplex c, std::map<int, GRMatrix> g)
    : complex(std::move(c)), gamma(std::move(g)) {
    for (auto& [k, m] : gamma)
        if (m.rows() != complex.rank(k + 1) || m.cols() != complex.rank(k))
            throw std::invalid_argument("contraction shape mismatch at degree " +
                                        std::to_string(k));
    for (int k = complex.lo(); k <= complex.hi(); ++k) {
        GRMatrix lhs = complex.d(k + 1) * gamma_at(k) + gamma_at(k - 1) * complex.d(k);
        if (!(lhs == GRMatrix::identity(complex.spec(), complex.rank(k))))
            throw std::invalid_argument("d gamma + gamma d != id at degree " +
                                        std::to_string(k));
    }
}

GRMatrix ContractionWitness::gamma_at(int k) const {
    auto it = gamma.find(k);
    if (it != gamma.end()) return it->second;
    return GRMatrix(complex.spec(), complex.rank(k + 1), complex.rank(k));
}

namespace {

struct ReductionStep {
    int k;      // pivot lives in d_k
    int a, b;   // row (degree k-1 basis) and column (degree k basis)
    GRElement u, uinv;
    GRMatrix w;  // row a of d_k without column b   (1 x (r_k - 1))
    GRMatrix v;  // column b of d_k without row a   ((r_{k-1} - 1) x 1)
};

GRMatrix drop_row(const GRMatrix& m, int row) {
    GRMatrix r(m.spec(), m.rows() - 1, m.cols());
    for (int i = 0, ii = 0; i < m.rows(); ++i) {
        if (i == row) continue;
        for (int j = 0; j < m.cols(); ++j) r.at(ii, j) = m.at(i, j);
        ++ii;
    }
    return r;
}

GRMatrix drop_col(const GRMatrix& m, int col) {
    GRMatrix r(m.spec(), m.rows(), m.cols() - 1);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0, jj = 0; j < m.cols(); ++j) {
            if (j == col) continue;
            r.at(i, jj++) = m.at(i, j);
        }
    return r;
}

std::optional<ReductionStep> find_pivot(const BasedChainComplex& c, int strategy) {
    // Two passes: trivial units first, then certified units.
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<int> degrees;
        for (int k = c.lo() + 1; k <= c.hi(); ++k) degrees.push_back(k);
        if (strategy == 1) std::reverse(degrees.begin(), degrees.end());
        for (int k : degrees) {
            GRMatrix dk = c.d(k);
            for (int ii = 0; ii < dk.rows(); ++ii)
                for (int jj = 0; jj < dk.cols(); ++jj) {
                    int i = strategy == 1 ? dk.rows() - 1 - ii : ii;
                    int j = strategy == 1 ? dk.cols() - 1 - jj : jj;
                    const GRElement& e = dk.at(i, j);
                    if (e.is_zero()) continue;
                    if (pass == 0) {
                        if (auto tu = e.trivial_unit()) {
                            GRElement inv = GRElement::from_group_element(
                                c.spec(), c.spec()->inverse(tu->second), tu->first);
                            return ReductionStep{k, i, j, e, inv,
                                                 drop_col(dk.submatrix(i, i + 1, 0, dk.cols()), j),
                                                 drop_row(dk.submatrix(0, dk.rows(), j, j + 1), i)};
                        }
                    } else if (auto inv = certify_unit(e)) {
                        return ReductionStep{k, i, j, e, *inv,
                                             drop_col(dk.submatrix(i, i + 1, 0, dk.cols()), j),
                                             drop_row(dk.submatrix(0, dk.rows(), j, j + 1), i)};
                    }
                }
        }
    }
    return std::nullopt;
}

// Based change of the degree-m basis: x' = q x, so d_m -> d_m qinv and
// d_{m+1} -> q d_{m+1}.  Used to manufacture unit pivots when the plain scan
// is stuck on non-unit entries.
struct BasisChangeStep {
    int m;
    GRMatrix q, qinv;
};

using Step = std::variant<ReductionStep, BasisChangeStep>;

BasedChainComplex changed_complex(const BasedChainComplex& c, const BasisChangeStep& s) {
    std::vector<int> ranks;
    std::vector<GRMatrix> diffs;
    for (int k = c.lo(); k <= c.hi(); ++k) ranks.push_back(c.rank(k));
    for (int k = c.lo() + 1; k <= c.hi(); ++k) {
        GRMatrix dk = c.d(k);
        if (k == s.m) dk = dk * s.qinv;
        else if (k == s.m + 1) dk = s.q * dk;
        diffs.push_back(std::move(dk));
    }
    return BasedChainComplex(c.spec(), c.lo(), std::move(ranks), std::move(diffs));
}

std::vector<GRElement> unstick_candidates(const GroupSpecPtr& spec, const GRMatrix& dk) {
    std::vector<GroupElement> monos{spec->identity()};
    auto seen = [&](const GroupElement& g) {
        for (const auto& h : monos)
            if (h == g) return true;
        return false;
    };
    for (int i = 0; i < dk.rows(); ++i)
        for (int j = 0; j < dk.cols(); ++j)
            for (const auto& [g, coeff] : dk.at(i, j).terms())
                if (!seen(g)) monos.push_back(g);
    if (spec->is_finite() && spec->group_order() <= 16)
        for (const auto& g : spec->all_elements())
            if (!seen(g)) monos.push_back(g);
    std::vector<GRElement> cands;
    for (const auto& g : monos)
        for (const auto& h : monos) {
            GroupElement r = spec->normalize(spec->multiply(g, spec->inverse(h)));
            cands.push_back(GRElement::from_group_element(spec, r));
            cands.push_back(GRElement::from_group_element(spec, r, -1));
        }
    return cands;
}

std::optional<BasisChangeStep> find_unstick(const BasedChainComplex& c) {
    auto spec = c.spec();
    for (int pass = 0; pass < 2; ++pass)
        for (int k = c.lo() + 1; k <= c.hi(); ++k) {
            GRMatrix dk = c.d(k);
            if (dk.rows() == 0 || dk.cols() == 0) continue;
            auto cands = unstick_candidates(spec, dk);
            auto is_unit = [&](const GRElement& e) {
                if (e.is_zero()) return false;
                if (pass == 0) return e.trivial_unit().has_value();
                return certify_unit(e).has_value();
            };
            // Row combination: row r += lambda row i, a based change in degree k-1.
            for (int r = 0; r < dk.rows(); ++r)
                for (int i = 0; i < dk.rows(); ++i) {
                    if (i == r) continue;
                    for (const auto& lam : cands)
                        for (int j = 0; j < dk.cols(); ++j) {
                            if (dk.at(i, j).is_zero()) continue;
                            if (!is_unit(dk.at(r, j) + lam * dk.at(i, j))) continue;
                            int n = dk.rows();
                            GRMatrix q = GRMatrix::identity(spec, n);
                            GRMatrix qinv = GRMatrix::identity(spec, n);
                            q.at(r, i) = lam;
                            qinv.at(r, i) = -lam;
                            return BasisChangeStep{k - 1, std::move(q), std::move(qinv)};
                        }
                }
            // Column combination: col s += col t . lambda, a based change in degree k.
            for (int s = 0; s < dk.cols(); ++s)
                for (int t = 0; t < dk.cols(); ++t) {
                    if (t == s) continue;
                    for (const auto& lam : cands)
                        for (int i = 0; i < dk.rows(); ++i) {
                            if (dk.at(i, t).is_zero()) continue;
                            if (!is_unit(dk.at(i, s) + dk.at(i, t) * lam)) continue;
                            int n = dk.cols();
                            GRMatrix q = GRMatrix::identity(spec, n);
                            GRMatrix qinv = GRMatrix::identity(spec, n);
                            // d_k -> d_k qinv must realize the column op.
                            qinv.at(t, s) = lam;
                            q.at(t, s) = -lam;
                            return BasisChangeStep{k, std::move(q), std::move(qinv)};
                        }
                }
        }
    return std::nullopt;
}

// Complete fallback over finite abelian groups: solve d gamma + gamma d = 1
// as an integer linear system through the regular representation.
std::optional<std::map<int, GRMatrix>> solve_contraction_directly(const BasedChainComplex& c) {
    auto spec = c.spec();
    if (!spec->is_finite() || !spec->is_abelian() || spec->group_order() > 40)
        return std::nullopt;
    auto elems = spec->all_elements();
    int ng = static_cast<int>(elems.size());
    // Unknown layout: gamma_k entry (i, j), coefficient of elems[h].
    std::vector<int> var_base;
    int nvars = 0;
    for (int k = c.lo(); k < c.hi(); ++k) {
        var_base.push_back(nvars);
        nvars += c.rank(k + 1) * c.rank(k) * ng;
    }
    if (nvars == 0 || nvars > 6000) return std::nullopt;
    auto var = [&](int k, int i, int j, int h) {
        return var_base[k - c.lo()] + (i * c.rank(k) + j) * ng + h;
    };
    ZMatrix a;
    std::vector<mpz_class> rhs;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        GRMatrix dk1 = c.d(k + 1), dk = c.d(k);
        for (int i = 0; i < c.rank(k); ++i)
            for (int j = 0; j < c.rank(k); ++j)
                for (int f = 0; f < ng; ++f) {
                    std::vector<mpz_class> row(nvars, 0);
                    if (k < c.hi())
                        for (int m = 0; m < c.rank(k + 1); ++m) {
                            const GRElement& e = dk1.at(i, m);
                            if (e.is_zero()) continue;
                            for (int h = 0; h < ng; ++h) {
                                GroupElement r = spec->normalize(
                                    spec->multiply(elems[f], spec->inverse(elems[h])));
                                mpz_class cf = e.coeff(r);
                                if (cf != 0) row[var(k, m, j, h)] += cf;
                            }
                        }
                    if (k > c.lo())
                        for (int m = 0; m < c.rank(k - 1); ++m) {
                            const GRElement& e = dk.at(m, j);
                            if (e.is_zero()) continue;
                            for (int h = 0; h < ng; ++h) {
                                GroupElement r = spec->normalize(
                                    spec->multiply(elems[f], spec->inverse(elems[h])));
                                mpz_class cf = e.coeff(r);
                                if (cf != 0) row[var(k - 1, i, m, h)] += cf;
                            }
                        }
                    bool nonzero = false;
                    for (const auto& x : row)
                        if (x != 0) { nonzero = true; break; }
                    mpz_class want = (i == j && elems[f] == spec->identity()) ? 1 : 0;
                    if (!nonzero && want == 0) continue;
                    if (!nonzero) return std::nullopt;
                    a.push_back(std::move(row));
                    rhs.push_back(want);
                }
    }
    auto sol = solve_integer(a, rhs);
    if (!sol) return std::nullopt;
    std::map<int, GRMatrix> gamma;
    for (int k = c.lo(); k < c.hi(); ++k) {
        GRMatrix g(spec, c.rank(k + 1), c.rank(k));
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j) {
                GRElement e(spec);
                for (int h = 0; h < ng; ++h) {
                    const mpz_class& cf = (*sol)[var(k, i, j, h)];
                    if (cf != 0) e.add_term(elems[h], cf);
                }
                g.at(i, j) = e;
            }
        if (!g.is_zero()) gamma.emplace(k, std::move(g));
    }
    return gamma;
}

BasedChainComplex reduced_complex(const BasedChainComplex& c, const ReductionStep& s) {
    std::vector<int> ranks;
    std::vector<GRMatrix> diffs;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        int r = c.rank(k);
        if (k == s.k || k == s.k - 1) --r;
        ranks.push_back(r);
    }
    for (int k = c.lo() + 1; k <= c.hi(); ++k) {
        GRMatrix dk = c.d(k);
        if (k == s.k) {
            GRMatrix M = drop_col(drop_row(dk, s.a), s.b);
            GRMatrix corr = s.v * GRMatrix::diagonal({s.uinv}) * s.w;
            diffs.push_back(M - corr);
        } else if (k == s.k + 1) {
            diffs.push_back(drop_row(dk, s.b));
        } else if (k == s.k - 1) {
            diffs.push_back(drop_col(dk, s.a));
        } else {
            diffs.push_back(dk);
        }
    }
    return BasedChainComplex(c.spec(), c.lo(), std::move(ranks), std::move(diffs));
}

}  // namespace

std::optional<ContractionWitness> find_contraction(const BasedChainComplex& c, int strategy) {
    std::vector<BasedChainComplex> chain{c};
    std::vector<Step> steps;
    int unstick_budget = c.total_rank() + 8;
    while (chain.back().total_rank() > 0) {
        if (auto s = find_pivot(chain.back(), strategy)) {
            chain.push_back(reduced_complex(chain.back(), *s));
            steps.push_back(std::move(*s));
            continue;
        }
        if (unstick_budget-- <= 0) break;
        auto bc = find_unstick(chain.back());
        if (!bc) break;
        chain.push_back(changed_complex(chain.back(), *bc));
        steps.push_back(std::move(*bc));
    }
    auto spec = c.spec();
    // gamma on the final complex: empty when fully reduced, else a direct
    // regular-representation solve; fold back: gamma = i gamma' p - h.
    std::map<int, GRMatrix> gamma;  // on chain[j+1], then rebuilt on chain[j]
    if (chain.back().total_rank() > 0) {
        auto direct = solve_contraction_directly(chain.back());
        if (!direct) return std::nullopt;
        gamma = std::move(*direct);
    }
    for (int j = static_cast<int>(steps.size()) - 1; j >= 0; --j) {
        const auto& big = chain[j];
        const auto& small = chain[j + 1];
        auto small_gamma = [&](int k) -> GRMatrix {
            auto it = gamma.find(k);
            if (it != gamma.end()) return it->second;
            return GRMatrix(spec, small.rank(k + 1), small.rank(k));
        };
        if (const auto* bc = std::get_if<BasisChangeStep>(&steps[j])) {
            // phi_k = q at degree m, identity elsewhere; gamma = phi^{-1} gamma' phi.
            std::map<int, GRMatrix> new_gamma;
            for (int k = big.lo(); k < big.hi(); ++k) {
                GRMatrix g = small_gamma(k);
                if (k + 1 == bc->m) g = bc->qinv * g;
                if (k == bc->m) g = g * bc->q;
                if (!g.is_zero()) new_gamma.emplace(k, std::move(g));
            }
            gamma = std::move(new_gamma);
            continue;
        }
        const auto& s = std::get<ReductionStep>(steps[j]);
        auto i_mat = [&](int k) -> GRMatrix {
            if (k == s.k) {
                GRMatrix m(spec, big.rank(k), small.rank(k));
                GRMatrix top = (-(GRMatrix::diagonal({s.uinv}) * s.w));
                for (int col = 0; col < small.rank(k); ++col) {
                    m.at(s.b, col) = top.at(0, col);
                    int row = col < s.b ? col : col + 1;
                    m.at(row, col) = m.at(row, col) + GRElement::one(spec);
                }
                return m;
            }
            if (k == s.k - 1) {
                GRMatrix m(spec, big.rank(k), small.rank(k));
                for (int col = 0; col < small.rank(k); ++col) {
                    int row = col < s.a ? col : col + 1;
                    m.at(row, col) = GRElement::one(spec);
                }
                return m;
            }
            return GRMatrix::identity(spec, big.rank(k));
        };
        auto p_mat = [&](int k) -> GRMatrix {
            if (k == s.k) {
                GRMatrix m(spec, small.rank(k), big.rank(k));
                for (int row = 0; row < small.rank(k); ++row) {
                    int col = row < s.b ? row : row + 1;
                    m.at(row, col) = GRElement::one(spec);
                }
                return m;
            }
            if (k == s.k - 1) {
                GRMatrix m(spec, small.rank(k), big.rank(k));
                GRMatrix va = -(s.v * GRMatrix::diagonal({s.uinv}));
                for (int row = 0; row < small.rank(k); ++row) {
                    m.at(row, s.a) = va.at(row, 0);
                    int col = row < s.a ? row : row + 1;
                    m.at(row, col) = m.at(row, col) + GRElement::one(spec);
                }
                return m;
            }
            return GRMatrix::identity(spec, big.rank(k));
        };
        std::map<int, GRMatrix> new_gamma;
        for (int k = big.lo(); k < big.hi(); ++k) {
            // gamma_k = i_{k+1} gamma'_k p_k - h_k
            GRMatrix g = i_mat(k + 1) * small_gamma(k) * p_mat(k);
            if (k == s.k - 1) {
                // h_{k-1}: entry (b, a) = -uinv
                g.at(s.b, s.a) = g.at(s.b, s.a) + s.uinv;  // minus (-uinv)
            }
            if (!g.is_zero()) new_gamma.emplace(k, std::move(g));
        }
        gamma = std::move(new_gamma);
    }
    return ContractionWitness(c, std::move(gamma));
}

TorsionResult torsion_from_witness(const ContractionWitness& w) {
    const auto& c = w.complex;
    auto spec = c.spec();
    std::vector<int> odd, even;  // degrees
    for (int k = c.lo(); k <= c.hi(); ++k)
        ((k % 2 + 2) % 2 != 0 ? odd : even).push_back(k);
    auto offset_of = [&](const std::vector<int>& degs, int k) {
        int off = 0;
        for (int d : degs) {
            if (d == k) return off;
            off += c.rank(d);
        }
        return -1;
    };
    int odd_rank = 0, even_rank = 0;
    for (int k : odd) odd_rank += c.rank(k);
    for (int k : even) even_rank += c.rank(k);
    if (odd_rank != even_rank)
        return TorsionResult{std::nullopt, true, "odd/even ranks differ: complex not acyclic"};
    auto build = [&](const std::vector<int>& src, const std::vector<int>& dst) {
        GRMatrix m(spec, even_rank, odd_rank);
        for (int k : src) {
            int so = offset_of(src, k);
            // d_k : degree k -> k-1
            if (int doff = offset_of(dst, k - 1); doff >= 0) {
                GRMatrix dk = c.d(k);
                for (int i = 0; i < dk.rows(); ++i)
                    for (int j = 0; j < dk.cols(); ++j) m.at(doff + i, so + j) = dk.at(i, j);
            }
            // gamma_k : degree k -> k+1
            if (int doff = offset_of(dst, k + 1); doff >= 0) {
                GRMatrix gk = w.gamma_at(k);
                for (int i = 0; i < gk.rows(); ++i)
                    for (int j = 0; j < gk.cols(); ++j)
                        m.at(doff + i, so + j) = m.at(doff + i, so + j) + gk.at(i, j);
            }
        }
        return m;
    };
    GRMatrix A = build(odd, even);   // (d + gamma)_odd : C_odd -> C_even
    GRMatrix B = build(even, odd);   // (d + gamma)_even : C_even -> C_odd
    if (odd_rank == 0)
        return TorsionResult{TorsionClass::trivial(spec), false, ""};
    // B A = 1 + G with G = (gamma^2)_odd nilpotent; invert by Neumann series.
    GRMatrix G = B * A - GRMatrix::identity(spec, odd_rank);
    GRMatrix N = GRMatrix::identity(spec, odd_rank);
    GRMatrix P = G;
    int guard = 0;
    GRElement sign = GRElement::integer(spec, -1);
    while (!P.is_zero()) {
        N = N + P.scaled(GRElement::integer(spec, (guard % 2 == 0) ? -1 : 1));
        P = P * G;
        if (++guard > c.hi() - c.lo() + 2)
            return TorsionResult{std::nullopt, true, "gamma^2 series failed to terminate"};
    }
    (void)sign;
    return TorsionResult{TorsionClass(A, N * B), false, ""};
}

TorsionResult torsion_of_acyclic(const BasedChainComplex& c, int strategy) {
    auto w = find_contraction(c, strategy);
    if (!w)
        return TorsionResult{std::nullopt, true,
                             "no contraction found by unit-pivot reduction"};
    return torsion_from_witness(*w);
}

TorsionResult whitehead_torsion(const ChainMap& f) {
    return torsion_of_acyclic(cone(f));
}

std::optional<TargetValue> reidemeister_torsion(const BasedChainComplex& c,
                                                const RingMorphism& m) {
    // Field-level Morse reduction; value defined up to the image of ±g.
    int lo = c.lo(), hi = c.hi();
    std::vector<int> ranks;
    std::vector<std::vector<std::vector<TargetValue>>> d;  // d[k-lo] out of degree k
    for (int k = lo; k <= hi; ++k) ranks.push_back(c.rank(k));
    for (int k = lo + 1; k <= hi; ++k) {
        GRMatrix dk = c.d(k);
        std::vector<std::vector<TargetValue>> fm;
        for (int i = 0; i < dk.rows(); ++i) {
            std::vector<TargetValue> row;
            for (int j = 0; j < dk.cols(); ++j) row.push_back(m.apply(dk.at(i, j)));
            fm.push_back(std::move(row));
        }
        d.push_back(std::move(fm));
    }
    TargetValue val = m.one();
    auto total = [&] {
        int s = 0;
        for (int r : ranks) s += r;
        return s;
    };
    while (total() > 0) {
        // Find any nonzero pivot.
        int pk = -1, pa = -1, pb = -1;
        for (int k = lo + 1; k <= hi && pk < 0; ++k) {
            auto& dk = d[k - lo - 1];
            for (size_t i = 0; i < dk.size() && pk < 0; ++i)
                for (size_t j = 0; j < dk[i].size(); ++j)
                    if (!dk[i][j].is_zero()) {
                        pk = k;
                        pa = static_cast<int>(i);
                        pb = static_cast<int>(j);
                        break;
                    }
        }
        if (pk < 0) return std::nullopt;  // leftover ranks with zero differentials
        auto& dk = d[pk - lo - 1];
        TargetValue u = dk[pa][pb];
        val = (pk % 2 != 0) ? val * u : val / u;
        // Schur complement in d_k.
        std::vector<std::vector<TargetValue>> nd;
        for (int i = 0; i < static_cast<int>(dk.size()); ++i) {
            if (i == pa) continue;
            std::vector<TargetValue> row;
            for (int j = 0; j < static_cast<int>(dk[i].size()); ++j) {
                if (j == pb) continue;
                row.push_back(dk[i][j] - dk[i][pb] / u * dk[pa][j]);
            }
            nd.push_back(std::move(row));
        }
        d[pk - lo - 1] = std::move(nd);
        // Drop row pb from d_{k+1}, column pa from d_{k-1}.
        if (pk + 1 <= hi) {
            auto& up = d[pk - lo];
            up.erase(up.begin() + pb);
        }
        if (pk - 1 > lo) {
            auto& dn = d[pk - lo - 2];
            for (auto& row : dn) row.erase(row.begin() + pa);
        }
        --ranks[pk - lo];
        --ranks[pk - 1 - lo];
    }
    return val;
}

TriState check_homotopy_invariance_torsion(const ChainHomotopy& ht) {
    TorsionResult tf = whitehead_torsion(ht.f());
    TorsionResult tg = whitehead_torsion(ht.g());
    if (!tf.cls || !tg.cls) return TriState::Unknown;
    return classify_equal(*tf.cls, *tg.cls);
}

TriState check_composition_formula(const ChainMap& f, const ChainMap& g) {
    TorsionResult tf = whitehead_torsion(f);
    TorsionResult tg = whitehead_torsion(g);
    TorsionResult tgf = whitehead_torsion(g.after(f));
    if (!tf.cls || !tg.cls || !tgf.cls) return TriState::Unknown;
    return classify_equal(*tgf.cls, wh_add(*tg.cls, *tf.cls));
}

TriState check_sum_formula(const ChainMap& f, const std::vector<int>& sub_src,
                           const std::vector<int>& sub_tgt) {
    SubQuotient sq_src = sub_quotient_sequence(f.src(), sub_src);
    SubQuotient sq_tgt = sub_quotient_sequence(f.tgt(), sub_tgt);
    // f must map the prefix to the prefix: lower-left blocks vanish.
    std::map<int, GRMatrix> fsub, fquot;
    for (int k = f.src().lo(); k <= f.src().hi(); ++k) {
        GRMatrix fk = f.f(k);
        int ss = sq_src.sub.rank(k), st = sq_tgt.sub.rank(k);
        for (int i = st; i < f.tgt().rank(k); ++i)
            for (int j = 0; j < ss; ++j)
                if (!fk.at(i, j).is_zero())
                    throw std::invalid_argument("map does not preserve the prefix subcomplex");
        fsub.emplace(k, fk.submatrix(0, st, 0, ss));
        fquot.emplace(k, fk.submatrix(st, f.tgt().rank(k), ss, f.src().rank(k)));
    }
    ChainMap f1(sq_src.sub, sq_tgt.sub, std::move(fsub));
    ChainMap f2(sq_src.quotient, sq_tgt.quotient, std::move(fquot));
    TorsionResult t = whitehead_torsion(f);
    TorsionResult t1 = whitehead_torsion(f1);
    TorsionResult t2 = whitehead_torsion(f2);
    if (!t.cls || !t1.cls || !t2.cls) return TriState::Unknown;
    return classify_equal(*t.cls, wh_add(*t1.cls, *t2.cls));
}

TriState check_product_formula(const ChainMap& f1, const ChainMap& f2) {
    ProductGroup pg = product_group(f1.src().spec(), f2.src().spec());
    ChainMap fp = tensor_map(f1, f2, pg);
    TorsionResult tp = whitehead_torsion(fp);
    TorsionResult t1 = whitehead_torsion(f1);
    TorsionResult t2 = whitehead_torsion(f2);
    if (!tp.cls || !t1.cls || !t2.cls) return TriState::Unknown;
    long chi1 = f1.tgt().euler_characteristic();
    long chi2 = f2.tgt().euler_characteristic();
    TorsionClass rhs = wh_add(t2.cls->induced(pg.right).multiple(chi1),
                              t1.cls->induced(pg.left).multiple(chi2));
    return classify_equal(*tp.cls, rhs);
}

GRElement random_small_element(const GroupSpecPtr& spec, std::mt19937_64& rng,
                               int max_terms, int max_coeff) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    std::uniform_int_distribution<long> expo(-2, 2);
    GRElement e(spec);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        GroupElement g = spec->identity();
        for (auto& x : g.exps) x = expo(rng);
        e.add_term(spec->normalize(g), coeff(rng));
    }
    return e;
}

std::pair<GRMatrix, GRMatrix> random_based_automorphism(const GroupSpecPtr& spec, int rank,
                                                        std::mt19937_64& rng, int nops) {
    GRMatrix e = GRMatrix::identity(spec, rank);
    GRMatrix einv = GRMatrix::identity(spec, rank);
    if (rank == 0) return {e, einv};
    std::vector<ElementaryOp> ops;
    std::uniform_int_distribution<int> idx(0, rank - 1);
    std::uniform_int_distribution<int> pick(0, rank >= 2 ? 2 : 1);
    for (int t = 0; t < nops; ++t) {
        int choice = pick(rng);
        if (choice == 0) {
            // scale by a random trivial unit
            GroupElement g = spec->identity();
            std::uniform_int_distribution<long> expo(-1, 1);
            for (auto& x : g.exps) x = expo(rng);
            int sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
            ops.push_back({ElementaryOp::ScaleRowByTrivialUnit, idx(rng), 0,
                           GRElement::from_group_element(spec, g, sign)});
        } else if (choice == 1 && rank >= 2) {
            int i = idx(rng), j = idx(rng);
            if (i == j) j = (j + 1) % rank;
            ops.push_back({ElementaryOp::AddMultipleOfRow, i, j,
                           random_small_element(spec, rng, 2, 1)});
        } else if (rank >= 2) {
            int i = idx(rng), j = idx(rng);
            if (i == j) j = (j + 1) % rank;
            ops.push_back({ElementaryOp::SwapRowsSigned, i, j});
        }
    }
    for (const auto& op : ops) apply_op(e, op);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        ElementaryOp inv = *it;
        if (inv.kind == ElementaryOp::AddMultipleOfRow) inv.lambda = -*inv.lambda;
        else if (inv.kind == ElementaryOp::ScaleRowByTrivialUnit) {
            auto tu = inv.lambda->trivial_unit();
            inv.lambda = GRElement::from_group_element(
                inv.lambda->spec(), inv.lambda->spec()->inverse(tu->second), tu->first);
        } else if (inv.kind == ElementaryOp::SwapRowsSigned) {
            std::swap(inv.i, inv.j);
        }
        apply_op(einv, inv);
    }
    if (!((e * einv).is_identity()))
        throw std::logic_error("random automorphism inverse mismatch");
    return {e, einv};
}

BasedChainComplex random_based_complex(const GroupSpecPtr& spec, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> degree(0, 2);
    std::uniform_int_distribution<int> rank(1, 2);
    std::uniform_int_distribution<int> pieces(1, 2);
    BasedChainComplex c = BasedChainComplex::zero(spec);
    int n = pieces(rng);
    for (int i = 0; i < n; ++i)
        c = direct_sum(c, BasedChainComplex::single(spec, degree(rng), rank(rng)));
    return c;
}

BasedChainComplex random_acyclic_complex(const GroupSpecPtr& spec, std::mt19937_64& rng) {
    BasedChainComplex base = random_based_complex(spec, rng);
    BasedChainComplex c = cone(ChainMap::identity(base));
    // Random based changes: d_k -> E_{k-1} d_k, d_{k+1} stays; realized as a
    // degreewise change of basis d'_j = F_{j-1} d_j F_j^{-1}.
    std::uniform_int_distribution<int> nchanges(1, 3);
    int n = nchanges(rng);
    for (int t = 0; t < n; ++t) {
        std::uniform_int_distribution<int> degree(c.lo(), c.hi());
        int k = degree(rng);
        if (c.rank(k) == 0) continue;
        auto [e, einv] = random_based_automorphism(spec, c.rank(k), rng, 3);
        std::vector<int> ranks;
        std::vector<GRMatrix> diffs;
        for (int j = c.lo(); j <= c.hi(); ++j) ranks.push_back(c.rank(j));
        for (int j = c.lo() + 1; j <= c.hi(); ++j) {
            GRMatrix dj = c.d(j);
            if (j == k) dj = dj * einv;
            else if (j == k + 1) dj = e * dj;
            diffs.push_back(std::move(dj));
        }
        c = BasedChainComplex(spec, c.lo(), std::move(ranks), std::move(diffs));
    }
    return c;
}

ChainMap random_self_equivalence(const BasedChainComplex& c, std::mt19937_64& rng) {
    // id + d s + s d for a random degree-(+1) map s.
    std::map<int, GRMatrix> s;
    for (int k = c.lo(); k < c.hi(); ++k) {
        GRMatrix m(c.spec(), c.rank(k + 1), c.rank(k));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                m.at(i, j) = random_small_element(c.spec(), rng, 2, 1);
        s.emplace(k, std::move(m));
    }
    auto s_at = [&](int k) -> GRMatrix {
        auto it = s.find(k);
        if (it != s.end()) return it->second;
        return GRMatrix(c.spec(), c.rank(k + 1), c.rank(k));
    };
    std::map<int, GRMatrix> f;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        GRMatrix m = GRMatrix::identity(c.spec(), c.rank(k)) + c.d(k + 1) * s_at(k) +
                     s_at(k - 1) * c.d(k);
        f.emplace(k, std::move(m));
    }
    return ChainMap(c, c, std::move(f));
}

}  // namespace whtor
