#include "whtor/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace whtor {

GRMatrix::GRMatrix(GroupSpecPtr spec, int rows, int cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    e_.assign(static_cast<size_t>(rows) * cols, GRElement::zero(spec_));
}

GRMatrix GRMatrix::identity(GroupSpecPtr spec, int n) {
    GRMatrix m(spec, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = GRElement::one(spec);
    return m;
}

GRMatrix GRMatrix::diagonal(const std::vector<GRElement>& diag) {
    if (diag.empty()) throw std::invalid_argument("diagonal needs at least one entry");
    GRMatrix m(diag[0].spec(), static_cast<int>(diag.size()), static_cast<int>(diag.size()));
    for (size_t i = 0; i < diag.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = diag[i];
    return m;
}

GRMatrix GRMatrix::block_diag(const GRMatrix& a, const GRMatrix& b) {
    GRMatrix m(a.spec(), a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

GRMatrix GRMatrix::from_blocks(const GRMatrix& a, const GRMatrix& b,
                               const GRMatrix& c, const GRMatrix& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
        b.cols() != d.cols())
        throw std::invalid_argument("block shapes do not fit");
    GRMatrix m(a.spec(), a.rows() + c.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    for (int i = 0; i < c.rows(); ++i) {
        for (int j = 0; j < c.cols(); ++j) m.at(a.rows() + i, j) = c.at(i, j);
        for (int j = 0; j < d.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = d.at(i, j);
    }
    return m;
}

GRElement& GRMatrix::at(int i, int j) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("matrix index");
    return e_[static_cast<size_t>(i) * cols_ + j];
}

const GRElement& GRMatrix::at(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("matrix index");
    return e_[static_cast<size_t>(i) * cols_ + j];
}

GRMatrix GRMatrix::operator*(const GRMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matmul dimension mismatch");
    GRMatrix r(spec_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
        }
    return r;
}

GRMatrix GRMatrix::operator+(const GRMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix add mismatch");
    GRMatrix r(spec_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

GRMatrix GRMatrix::operator-(const GRMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sub mismatch");
    GRMatrix r(spec_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

GRMatrix GRMatrix::operator-() const {
    GRMatrix r(spec_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

GRMatrix GRMatrix::scaled(const GRElement& s) const {
    GRMatrix r(spec_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = s * e_[i];
    return r;
}

bool operator==(const GRMatrix& a, const GRMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

bool GRMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const GRElement& x) { return x.is_zero(); });
}

bool GRMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(spec_, rows_);
}

GRMatrix GRMatrix::bar_transpose() const {
    GRMatrix r(spec_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).involution();
    return r;
}

GRMatrix GRMatrix::transpose_plain() const {
    GRMatrix r(spec_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

GRMatrix GRMatrix::induced(const GroupHom& hom) const {
    GRMatrix r(hom.target(), rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).induced(hom);
    return r;
}

GRMatrix GRMatrix::submatrix(int r0, int r1, int c0, int c1) const {
    if (r0 < 0 || r1 > rows_ || c0 < 0 || c1 > cols_ || r0 > r1 || c0 > c1)
        throw std::out_of_range("submatrix range");
    GRMatrix r(spec_, r1 - r0, c1 - c0);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) r.at(i - r0, j - c0) = at(i, j);
    return r;
}

std::string GRMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

void apply_op(GRMatrix& m, const ElementaryOp& op) {
    switch (op.kind) {
        case ElementaryOp::AddMultipleOfRow: {
            for (int c = 0; c < m.cols(); ++c)
                m.at(op.i, c) = m.at(op.i, c) + *op.lambda * m.at(op.j, c);
            return;
        }
        case ElementaryOp::AddMultipleOfColumn: {
            for (int r = 0; r < m.rows(); ++r)
                m.at(r, op.i) = m.at(r, op.i) + m.at(r, op.j) * *op.lambda;
            return;
        }
        case ElementaryOp::SwapRowsSigned: {
            for (int c = 0; c < m.cols(); ++c) std::swap(m.at(op.i, c), m.at(op.j, c));
            for (int c = 0; c < m.cols(); ++c) m.at(op.i, c) = -m.at(op.i, c);
            return;
        }
        case ElementaryOp::ScaleRowByTrivialUnit: {
            if (!op.lambda->trivial_unit())
                throw std::invalid_argument("scale op needs a trivial unit");
            for (int c = 0; c < m.cols(); ++c) m.at(op.i, c) = *op.lambda * m.at(op.i, c);
            return;
        }
        case ElementaryOp::Stabilize: {
            GRMatrix n(m.spec(), m.rows() + 1, m.cols() + 1);
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) n.at(r, c) = m.at(r, c);
            n.at(m.rows(), m.cols()) = GRElement::one(m.spec());
            m = std::move(n);
            return;
        }
        case ElementaryOp::Destabilize: {
            // Remove row i and column j; entry (i, j) must be 1 with the rest
            // of its row and column zero (class changes by a permutation sign
            // at most, absorbed by the Wh quotient).
            if (!(m.at(op.i, op.j) == GRElement::one(m.spec())))
                throw std::invalid_argument("destabilize pivot is not 1");
            for (int c = 0; c < m.cols(); ++c)
                if (c != op.j && !m.at(op.i, c).is_zero())
                    throw std::invalid_argument("destabilize row not cleared");
            for (int r = 0; r < m.rows(); ++r)
                if (r != op.i && !m.at(r, op.j).is_zero())
                    throw std::invalid_argument("destabilize column not cleared");
            GRMatrix n(m.spec(), m.rows() - 1, m.cols() - 1);
            for (int r = 0, rr = 0; r < m.rows(); ++r) {
                if (r == op.i) continue;
                for (int c = 0, cc = 0; c < m.cols(); ++c) {
                    if (c == op.j) continue;
                    n.at(rr, cc) = m.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            m = std::move(n);
            return;
        }
    }
    throw std::logic_error("unreachable");
}

GRMatrix replay_ops(GRMatrix m, const std::vector<ElementaryOp>& log) {
    for (const auto& op : log) apply_op(m, op);
    return m;
}

namespace {

// Regular-representation unit certification for finite commutative groups.
std::optional<GRElement> certify_finite_commutative(const GRElement& u) {
    const auto& spec = u.spec();
    auto elts = spec->all_elements();
    int n = static_cast<int>(elts.size());
    std::map<GroupElement, int> index;
    for (int i = 0; i < n; ++i) index[elts[i]] = i;
    // Column j of M is the coefficient vector of u * elts[j].
    ZMatrix M(n, std::vector<mpz_class>(n, 0));
    for (int j = 0; j < n; ++j) {
        for (auto& [g, c] : u.terms()) {
            GroupElement prod = spec->multiply(g, elts[j]);
            M[index[prod]][j] += c;
        }
    }
    std::vector<mpz_class> b(n, 0);
    b[index[spec->identity()]] = 1;
    auto x = solve_integer(M, b);
    if (!x) return std::nullopt;
    GRElement v(spec);
    for (int j = 0; j < n; ++j) v.add_term(elts[j], (*x)[j]);
    if (!((u * v) == GRElement::one(spec)) || !((v * u) == GRElement::one(spec)))
        return std::nullopt;
    return v;
}

}  // namespace

std::optional<GRElement> certify_unit(const GRElement& u) {
    if (u.is_zero()) return std::nullopt;
    const auto& spec = u.spec();
    if (auto tu = u.trivial_unit()) {
        GRElement inv = GRElement::from_group_element(spec, spec->inverse(tu->second),
                                                      tu->first);
        return inv;
    }
    switch (spec->kind()) {
        case GroupKind::Trivial:
        case GroupKind::CyclicFinite:
            return certify_finite_commutative(u);
        case GroupKind::FreeAbelian:
        case GroupKind::InfiniteCyclic:
            // Units of Z[Z^k] are the trivial units only.
            return std::nullopt;
        case GroupKind::SemidirectWithZ: {
            // Single t-power elements a·t^m with a a unit of Z[base].
            int nb = spec->base()->num_generators();
            std::optional<long> m;
            for (auto& [g, c] : u.terms()) {
                long tm = g.exps[nb];
                if (!m) m = tm;
                else if (*m != tm) return std::nullopt;
            }
            GRElement a(spec->base());
            for (auto& [g, c] : u.terms())
                a.add_term(GroupElement{std::vector<long>(g.exps.begin(), g.exps.begin() + nb)}, c);
            auto ainv = certify_unit(a);
            if (!ainv) return std::nullopt;
            // (a t^m)^{-1} = alpha^{-m}(a^{-1}) t^{-m}
            GRElement inv(spec);
            for (auto& [g, c] : ainv->terms()) {
                GroupElement tw = spec->alpha_power(g, -*m);
                std::vector<long> exps = tw.exps;
                exps.push_back(-*m);
                inv.add_term(GroupElement{std::move(exps)}, c);
            }
            if ((u * inv) == GRElement::one(spec) && (inv * u) == GRElement::one(spec))
                return inv;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

namespace {

// Clears row/column of a trivial-unit pivot at (i, j) and destabilizes.
void reduce_at_trivial_pivot(GRMatrix& w, int i, int j, std::vector<ElementaryOp>& log) {
    auto tu = w.at(i, j).trivial_unit();
    GRElement inv = GRElement::from_group_element(
        w.spec(), w.spec()->inverse(tu->second), tu->first);
    for (int r = 0; r < w.rows(); ++r) {
        if (r == i || w.at(r, j).is_zero()) continue;
        ElementaryOp op{ElementaryOp::AddMultipleOfRow, r, i, -(w.at(r, j) * inv)};
        apply_op(w, op);
        log.push_back(std::move(op));
    }
    for (int c = 0; c < w.cols(); ++c) {
        if (c == j || w.at(i, c).is_zero()) continue;
        ElementaryOp op{ElementaryOp::AddMultipleOfColumn, c, j, -(inv * w.at(i, c))};
        apply_op(w, op);
        log.push_back(std::move(op));
    }
    ElementaryOp sc{ElementaryOp::ScaleRowByTrivialUnit, i, 0, inv};
    apply_op(w, sc);
    log.push_back(std::move(sc));
    ElementaryOp de{ElementaryOp::Destabilize, i, j};
    apply_op(w, de);
    log.push_back(std::move(de));
}

bool find_trivial_pivot(const GRMatrix& w, int& pi, int& pj) {
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j)
            if (w.at(i, j).trivial_unit()) {
                pi = i;
                pj = j;
                return true;
            }
    return false;
}

// Integer Euclid on a column via row ops, for matrices whose entries are all
// integer multiples of the identity.  Creates a ±1 when the column gcd is 1.
bool integer_column_euclid(GRMatrix& w, std::vector<ElementaryOp>& log) {
    auto int_of = [&](const GRElement& x) -> std::optional<mpz_class> {
        if (x.is_zero()) return mpz_class(0);
        if (x.terms().size() == 1 && x.terms().begin()->first == w.spec()->identity())
            return x.terms().begin()->second;
        return std::nullopt;
    };
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j)
            if (!int_of(w.at(i, j))) return false;
    for (int j = 0; j < w.cols(); ++j) {
        // Repeatedly reduce the two smallest nonzero entries against each other.
        for (int guard = 0; guard < 1000; ++guard) {
            int a = -1, b = -1;
            for (int i = 0; i < w.rows(); ++i) {
                if (*int_of(w.at(i, j)) == 0) continue;
                if (a < 0 || abs(*int_of(w.at(i, j))) < abs(*int_of(w.at(a, j)))) {
                    b = a;
                    a = i;
                } else if (b < 0 || abs(*int_of(w.at(i, j))) < abs(*int_of(w.at(b, j)))) {
                    b = i;
                }
            }
            if (a < 0) break;
            mpz_class va = *int_of(w.at(a, j));
            if (va == 1 || va == -1) return true;
            if (b < 0) break;
            mpz_class vb = *int_of(w.at(b, j));
            mpz_class q = vb / va;  // truncated division shrinks |vb|
            ElementaryOp op{ElementaryOp::AddMultipleOfRow, b, a,
                            GRElement::integer(w.spec(), -q)};
            apply_op(w, op);
            log.push_back(std::move(op));
        }
    }
    int pi, pj;
    return find_trivial_pivot(w, pi, pj);
}

// Manufactures a trivial 1 pivot from a certified-unit entry.
bool unstick_with_certified_unit(GRMatrix& w, std::vector<ElementaryOp>& log) {
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j) {
            if (w.at(i, j).is_zero() || w.at(i, j).trivial_unit()) continue;
            auto inv = certify_unit(w.at(i, j));
            if (!inv) continue;
            if (w.rows() < 2) return false;
            int r = (i + 1) % w.rows();
            // row_r += (1 - w[r][j]) * v^{-1} * row_i  makes w[r][j] = 1.
            GRElement lam = (GRElement::one(w.spec()) - w.at(r, j)) * *inv;
            ElementaryOp op{ElementaryOp::AddMultipleOfRow, r, i, std::move(lam)};
            apply_op(w, op);
            log.push_back(std::move(op));
            return true;
        }
    return false;
}

// Bounded search for a row-pair combination producing a unit entry.
bool combination_unstick(GRMatrix& w, std::vector<ElementaryOp>& log) {
    std::vector<GRElement> candidates;
    auto spec = w.spec();
    candidates.push_back(GRElement::one(spec));
    candidates.push_back(-GRElement::one(spec));
    if (spec->is_finite() && spec->group_order() <= 16) {
        for (auto& g : spec->all_elements()) {
            candidates.push_back(GRElement::from_group_element(spec, g, 1));
            candidates.push_back(GRElement::from_group_element(spec, g, -1));
        }
    }
    for (int j = 0; j < w.cols(); ++j)
        for (int r = 0; r < w.rows(); ++r)
            for (int i = 0; i < w.rows(); ++i) {
                if (r == i || w.at(i, j).is_zero()) continue;
                for (const auto& lam : candidates) {
                    GRElement cand = w.at(r, j) + lam * w.at(i, j);
                    if (cand.is_zero()) continue;
                    if (cand.trivial_unit() || certify_unit(cand)) {
                        ElementaryOp op{ElementaryOp::AddMultipleOfRow, r, i, lam};
                        apply_op(w, op);
                        log.push_back(std::move(op));
                        return true;
                    }
                }
            }
    return false;
}

// Finite abelian groups: solve w[r][j] + lambda w[i][j] = ±g for lambda by
// the regular representation, turning a stuck entry into a trivial unit.
bool solver_unstick(GRMatrix& w, std::vector<ElementaryOp>& log) {
    auto spec = w.spec();
    if (!spec->is_finite() || !spec->is_abelian() || spec->group_order() > 40) return false;
    auto elems = spec->all_elements();
    for (int j = 0; j < w.cols(); ++j)
        for (int r = 0; r < w.rows(); ++r)
            for (int i = 0; i < w.rows(); ++i) {
                if (r == i || w.at(i, j).is_zero()) continue;
                GRMatrix a = GRMatrix::diagonal({w.at(i, j)});
                for (const auto& g : elems)
                    for (int sign : {1, -1}) {
                        GRElement u = GRElement::from_group_element(spec, g, sign);
                        GRMatrix b = GRMatrix::diagonal({u - w.at(r, j)});
                        auto lam = solve_right(a, b);
                        if (!lam || lam->at(0, 0).is_zero()) continue;
                        ElementaryOp op{ElementaryOp::AddMultipleOfRow, r, i,
                                        lam->at(0, 0)};
                        apply_op(w, op);
                        log.push_back(std::move(op));
                        return true;
                    }
            }
    return false;
}

}  // namespace

ElimResult unit_pivot_eliminate(const GRMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("elimination needs a square matrix");
    GRMatrix w = a;
    std::vector<ElementaryOp> log;
    int unstick_budget = 2 * a.rows() + 4;
    while (w.rows() > 0) {
        int pi, pj;
        if (find_trivial_pivot(w, pi, pj)) {
            reduce_at_trivial_pivot(w, pi, pj, log);
            continue;
        }
        if (unstick_budget > 0 && unstick_with_certified_unit(w, log)) {
            --unstick_budget;
            continue;
        }
        if (integer_column_euclid(w, log)) continue;
        if (unstick_budget > 0 && combination_unstick(w, log)) {
            --unstick_budget;
            continue;
        }
        if (unstick_budget > 0 && solver_unstick(w, log)) {
            --unstick_budget;
            continue;
        }
        return ElimResult{ElimStatus::Stuck, w, std::move(log)};
    }
    return ElimResult{ElimStatus::Complete, w, std::move(log)};
}

std::optional<GRMatrix> try_invert(const GRMatrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    int n = a.rows();
    auto spec = a.spec();
    GRMatrix w = a;
    GRMatrix e = GRMatrix::identity(spec, n);
    std::vector<int> pivot_col_of_row(n, -1);
    std::vector<bool> col_used(n, false);
    for (int step = 0; step < n; ++step) {
        int pi = -1, pj = -1;
        GRElement pinv = GRElement::zero(spec);
        for (int i = 0; i < n && pi < 0; ++i) {
            if (pivot_col_of_row[i] >= 0) continue;
            for (int j = 0; j < n; ++j) {
                if (col_used[j] || w.at(i, j).is_zero()) continue;
                if (auto inv = certify_unit(w.at(i, j))) {
                    pi = i;
                    pj = j;
                    pinv = *inv;
                    break;
                }
            }
        }
        if (pi < 0) return std::nullopt;
        // Scale pivot row to make the pivot 1, then clear the column.
        for (int c = 0; c < n; ++c) {
            w.at(pi, c) = pinv * w.at(pi, c);
            e.at(pi, c) = pinv * e.at(pi, c);
        }
        for (int r = 0; r < n; ++r) {
            if (r == pi || w.at(r, pj).is_zero()) continue;
            GRElement f = w.at(r, pj);
            for (int c = 0; c < n; ++c) {
                w.at(r, c) = w.at(r, c) - f * w.at(pi, c);
                e.at(r, c) = e.at(r, c) - f * e.at(pi, c);
            }
        }
        pivot_col_of_row[pi] = pj;
        col_used[pj] = true;
    }
    // w is now a permutation matrix: row i has a 1 at pivot_col_of_row[i].
    GRMatrix inv(spec, n, n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) inv.at(pivot_col_of_row[i], c) = e.at(i, c);
    if (!((a * inv).is_identity()) || !((inv * a).is_identity())) return std::nullopt;
    return inv;
}

std::vector<ElementaryOp> whitehead_pair_log(const GRMatrix& m, const GRMatrix& minv) {
    int n = m.rows();
    GRMatrix w = GRMatrix::block_diag(m, minv);
    std::vector<ElementaryOp> log;
    auto block_row_add = [&](bool top_plus_bottom, const GRMatrix& coef) {
        // top += coef * bottom  (or bottom += coef * top)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (coef.at(i, k).is_zero()) continue;
                int dst = top_plus_bottom ? i : n + i;
                int src = top_plus_bottom ? n + k : k;
                ElementaryOp op{ElementaryOp::AddMultipleOfRow, dst, src, coef.at(i, k)};
                apply_op(w, op);
                log.push_back(std::move(op));
            }
    };
    block_row_add(true, m);          // [[M, 1], [0, M^{-1}]]
    block_row_add(false, -minv);     // [[M, 1], [-1, 0]]
    block_row_add(true, m);          // [[0, 1], [-1, 0]]
    auto rest = unit_pivot_eliminate(w);
    if (rest.status != ElimStatus::Complete)
        throw std::logic_error("whitehead pair reduction failed");
    log.insert(log.end(), rest.log.begin(), rest.log.end());
    return log;
}

// ---- integer linear algebra ----

namespace {
void z_identity(ZMatrix& m, int n) {
    m.assign(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
}
}  // namespace

SNFResult smith_normal_form(const ZMatrix& a) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    ZMatrix w = a;
    SNFResult res;
    z_identity(res.S, rows);
    z_identity(res.T, cols);
    auto row_add = [&](int dst, int src, const mpz_class& q) {
        for (int c = 0; c < cols; ++c) w[dst][c] += q * w[src][c];
        for (int c = 0; c < rows; ++c) res.S[dst][c] += q * res.S[src][c];
    };
    auto col_add = [&](int dst, int src, const mpz_class& q) {
        for (int r = 0; r < rows; ++r) w[r][dst] += q * w[r][src];
        for (int r = 0; r < cols; ++r) res.T[r][dst] += q * res.T[r][src];
    };
    auto row_swap = [&](int i, int j) {
        std::swap(w[i], w[j]);
        std::swap(res.S[i], res.S[j]);
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < rows; ++r) std::swap(w[r][i], w[r][j]);
        for (int r = 0; r < cols; ++r) std::swap(res.T[r][i], res.T[r][j]);
    };
    auto row_neg = [&](int i) {
        for (int c = 0; c < cols; ++c) w[i][c] = -w[i][c];
        for (int c = 0; c < rows; ++c) res.S[i][c] = -res.S[i][c];
    };
    int k = 0;
    while (k < rows && k < cols) {
        // Find the smallest nonzero entry in the remaining block.
        int pi = -1, pj = -1;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j) {
                if (w[i][j] == 0) continue;
                if (pi < 0 || abs(w[i][j]) < abs(w[pi][pj])) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        row_swap(k, pi);
        col_swap(k, pj);
        bool clean = true;
        for (int i = k + 1; i < rows; ++i) {
            if (w[i][k] == 0) continue;
            mpz_class q = w[i][k] / w[k][k];
            row_add(i, k, -q);
            if (w[i][k] != 0) clean = false;
        }
        for (int j = k + 1; j < cols; ++j) {
            if (w[k][j] == 0) continue;
            mpz_class q = w[k][j] / w[k][k];
            col_add(j, k, -q);
            if (w[k][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; redo this k
        // Enforce divisibility of the rest of the block by w[k][k].
        bool divides_all = true;
        for (int i = k + 1; i < rows && divides_all; ++i)
            for (int j = k + 1; j < cols; ++j)
                if (w[i][j] % w[k][k] != 0) {
                    row_add(k, i, 1);
                    divides_all = false;
                    break;
                }
        if (!divides_all) continue;
        if (w[k][k] < 0) row_neg(k);
        ++k;
    }
    res.diag.assign(std::min(rows, cols), 0);
    for (int i = 0; i < static_cast<int>(res.diag.size()); ++i) res.diag[i] = w[i][i];
    return res;
}

std::optional<std::vector<mpz_class>> solve_integer(const ZMatrix& a,
                                                    const std::vector<mpz_class>& b) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("rhs length mismatch");
    SNFResult snf = smith_normal_form(a);
    // A = S^{-1} D T^{-1}; A x = b  ⇔  D y = S b with x = T y.
    std::vector<mpz_class> sb(rows, 0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) sb[i] += snf.S[i][j] * b[j];
    std::vector<mpz_class> y(cols, 0);
    int dn = static_cast<int>(snf.diag.size());
    for (int i = 0; i < rows; ++i) {
        mpz_class d = i < dn ? snf.diag[i] : mpz_class(0);
        if (d == 0) {
            if (sb[i] != 0) return std::nullopt;
        } else {
            if (sb[i] % d != 0) return std::nullopt;
            if (i < cols) y[i] = sb[i] / d;
        }
    }
    std::vector<mpz_class> x(cols, 0);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < cols; ++j) x[i] += snf.T[i][j] * y[j];
    return x;
}

namespace {

// Common linear solve over Z[G] with a prescribed support basis for the
// unknowns.  Solves sum_j X[i][j] * A[j][k] = B[i][k] (for_right) or
// sum_j A[k][j] * X[j][i] = B[k][i] (!for_right).
std::optional<GRMatrix> solve_gr(const GRMatrix& a, const GRMatrix& b, bool for_right,
                                 const std::vector<GroupElement>& support) {
    auto spec = a.spec();
    int xr = for_right ? b.rows() : a.cols();
    int xc = for_right ? a.rows() : b.cols();
    if (for_right) {
        if (a.cols() != b.cols()) throw std::invalid_argument("solve_right shape mismatch");
    } else {
        if (a.rows() != b.rows()) throw std::invalid_argument("solve_left shape mismatch");
    }
    int ns = static_cast<int>(support.size());
    int nunk = xr * xc * ns;
    // Equation keys: (i, k, normal-form group element).
    std::map<std::tuple<int, int, GroupElement>, int> eq_index;
    std::vector<std::vector<mpz_class>> cols_of_unknown(nunk);
    std::vector<mpz_class> rhs;
    auto eq_of = [&](int i, int k, const GroupElement& h) {
        auto key = std::make_tuple(i, k, h);
        auto it = eq_index.find(key);
        if (it == eq_index.end()) {
            int id = static_cast<int>(eq_index.size());
            eq_index.emplace(std::move(key), id);
            rhs.push_back(0);
            return id;
        }
        return it->second;
    };
    int eqs_i = for_right ? b.rows() : b.cols();
    int eqs_k = for_right ? b.cols() : b.rows();
    // Unknown (i, j, s) contributes support[s] * A[j][k] (right) or
    // A[k][j] * support[s] (left) to equation block (i, k).
    for (int i = 0; i < xr; ++i)
        for (int j = 0; j < xc; ++j)
            for (int s = 0; s < ns; ++s) {
                int u = (i * xc + j) * ns + s;
                cols_of_unknown[u] = {};
                for (int k = 0; k < eqs_k; ++k) {
                    const GRElement& ajk = for_right ? a.at(j, k) : a.at(k, j);
                    for (auto& [g, c] : ajk.terms()) {
                        GroupElement prod = for_right ? spec->multiply(support[s], g)
                                                      : spec->multiply(g, support[s]);
                        int eq = eq_of(i, k, spec->normalize(prod));
                        if (static_cast<int>(cols_of_unknown[u].size()) <= eq)
                            cols_of_unknown[u].resize(eq + 1, 0);
                        cols_of_unknown[u][eq] += c;
                    }
                }
            }
    for (int i = 0; i < eqs_i; ++i)
        for (int k = 0; k < eqs_k; ++k) {
            const GRElement& bik = for_right ? b.at(i, k) : b.at(k, i);
            for (auto& [g, c] : bik.terms()) {
                int eq = eq_of(i, k, g);
                rhs[eq] = c;
            }
        }
    int neq = static_cast<int>(eq_index.size());
    ZMatrix M(neq, std::vector<mpz_class>(nunk, 0));
    for (int u = 0; u < nunk; ++u)
        for (int eq = 0; eq < static_cast<int>(cols_of_unknown[u].size()); ++eq)
            M[eq][u] = cols_of_unknown[u][eq];
    auto x = solve_integer(M, rhs);
    if (!x) return std::nullopt;
    GRMatrix X(spec, xr, xc);
    for (int i = 0; i < xr; ++i)
        for (int j = 0; j < xc; ++j)
            for (int s = 0; s < ns; ++s) X.at(i, j).add_term(support[s], (*x)[(i * xc + j) * ns + s]);
    // Window solves can only have produced valid solutions inside the
    // window; verify outright.
    GRMatrix check = for_right ? X * a : a * X;
    if (!(check == b)) return std::nullopt;
    return X;
}

std::vector<GroupElement> window_support(const GroupSpecPtr& spec, long radius) {
    int n = spec->num_generators();
    std::vector<GroupElement> out;
    std::vector<long> cur(n, -radius);
    if (n == 0) return {spec->identity()};
    while (true) {
        out.push_back(spec->normalize(GroupElement{cur}));
        int i = 0;
        while (i < n && cur[i] == radius) cur[i++] = -radius;
        if (i == n) break;
        ++cur[i];
    }
    // Normalisation (finite cyclic factors) may create duplicates.
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::optional<GRMatrix> solve_right(const GRMatrix& a, const GRMatrix& b) {
    if (!a.spec()->is_finite() || !a.spec()->is_abelian())
        throw std::invalid_argument("solve_right needs a finite commutative group");
    return solve_gr(a, b, true, a.spec()->all_elements());
}

std::optional<GRMatrix> solve_left(const GRMatrix& a, const GRMatrix& b) {
    if (!a.spec()->is_finite() || !a.spec()->is_abelian())
        throw std::invalid_argument("solve_left needs a finite commutative group");
    return solve_gr(a, b, false, a.spec()->all_elements());
}

std::optional<GRMatrix> solve_right_windowed(const GRMatrix& a, const GRMatrix& b, long radius) {
    return solve_gr(a, b, true, window_support(a.spec(), radius));
}

std::optional<GRMatrix> solve_left_windowed(const GRMatrix& a, const GRMatrix& b, long radius) {
    return solve_gr(a, b, false, window_support(a.spec(), radius));
}

TargetValue det_over_target(const GRMatrix& a, const RingMorphism& m) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    int n = a.rows();
    if (n == 0) return m.one();
    std::vector<std::vector<TargetValue>> w;
    w.reserve(n);
    for (int i = 0; i < n; ++i) {
        std::vector<TargetValue> row;
        row.reserve(n);
        for (int j = 0; j < n; ++j) row.push_back(m.apply(a.at(i, j)));
        w.push_back(std::move(row));
    }
    TargetValue det = m.one();
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && w[p][c].is_zero()) ++p;
        if (p == n) return m.zero();
        if (p != c) {
            std::swap(w[p], w[c]);
            det = -det;
        }
        det = det * w[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (w[r][c].is_zero()) continue;
            TargetValue f = w[r][c] / w[c][c];
            for (int j = c; j < n; ++j) w[r][j] = w[r][j] - f * w[c][j];
        }
    }
    return det;
}

}  // namespace whtor
