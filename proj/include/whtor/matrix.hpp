#ifndef WHTOR_MATRIX_HPP
#define WHTOR_MATRIX_HPP

#include <functional>
#include <optional>
#include <vector>

#include "whtor/group_ring.hpp"
#include "whtor/morphism.hpp"

namespace whtor {

// Dense matrix over Z[G].  0xN and Nx0 matrices are legal.
class GRMatrix {
public:
    GRMatrix(GroupSpecPtr spec, int rows, int cols);
    static GRMatrix identity(GroupSpecPtr spec, int n);
    static GRMatrix diagonal(const std::vector<GRElement>& diag);
    static GRMatrix block_diag(const GRMatrix& a, const GRMatrix& b);
    // [[a, b], [c, d]] with matching shapes.
    static GRMatrix from_blocks(const GRMatrix& a, const GRMatrix& b,
                                const GRMatrix& c, const GRMatrix& d);

    const GroupSpecPtr& spec() const { return spec_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    GRElement& at(int i, int j);
    const GRElement& at(int i, int j) const;

    GRMatrix operator*(const GRMatrix& o) const;
    GRMatrix operator+(const GRMatrix& o) const;
    GRMatrix operator-(const GRMatrix& o) const;
    GRMatrix operator-() const;
    GRMatrix scaled(const GRElement& s) const;       // entrywise left multiply
    friend bool operator==(const GRMatrix& a, const GRMatrix& b);

    bool is_zero() const;
    bool is_identity() const;
    GRMatrix bar_transpose() const;
    GRMatrix transpose_plain() const;  // no involution (internal helper)
    GRMatrix induced(const GroupHom& hom) const;
    GRMatrix submatrix(int r0, int r1, int c0, int c1) const;  // half-open
    std::string str() const;

private:
    GroupSpecPtr spec_;
    int rows_, cols_;
    std::vector<GRElement> e_;  // row-major
};

// Class-preserving moves generating the Wh equivalence.
struct ElementaryOp {
    enum Kind {
        AddMultipleOfRow,     // row i += lambda * row j  (left mult by lambda)
        AddMultipleOfColumn,  // col i += col j * lambda  (right mult)
        SwapRowsSigned,       // swap rows i, j and scale row i by -1
        ScaleRowByTrivialUnit,  // row i *= unit (unit = ±g)
        Stabilize,              // adjoin trailing diagonal 1
        Destabilize,            // remove trailing row/col (must be unit vector 1)
    };
    Kind kind;
    int i = 0, j = 0;
    std::optional<GRElement> lambda;  // AddMultiple*/Scale payload
};

void apply_op(GRMatrix& m, const ElementaryOp& op);
GRMatrix replay_ops(GRMatrix m, const std::vector<ElementaryOp>& log);

// Certified unit test: returns the two-sided inverse when the element is
// recognized as a unit of Z[G].  Complete for finite commutative groups
// (regular representation over Z); otherwise recognizes trivial units and,
// for semidirect products, single-t-power elements with unit base part.
std::optional<GRElement> certify_unit(const GRElement& u);

enum class ElimStatus { Complete, Stuck };

struct ElimResult {
    ElimStatus status;
    GRMatrix residual;               // 0x0 when Complete
    std::vector<ElementaryOp> log;   // ops taking the input to the residual
};

// Reduces a square matrix using class-preserving ops: trivial-unit pivots,
// certified-unit "unstick" moves that manufacture a 1 pivot, integer gcd
// moves over the trivial group, and bounded combination search.  Complete
// means reduced to the empty matrix, certifying a trivial Wh class.
ElimResult unit_pivot_eliminate(const GRMatrix& a);

// Gauss–Jordan inverse using certified-unit pivots; nullopt when no pivot
// sequence is found (not a disproof of invertibility).
std::optional<GRMatrix> try_invert(const GRMatrix& a);

// Op log reducing block_diag(m, minv) to empty, valid whenever minv is a
// two-sided inverse of m (Whitehead's lemma, explicit).
std::vector<ElementaryOp> whitehead_pair_log(const GRMatrix& m, const GRMatrix& minv);

// ---- integer linear algebra ----

using ZMatrix = std::vector<std::vector<mpz_class>>;

struct SNFResult {
    ZMatrix S, T;                  // S * A * T = diag
    std::vector<mpz_class> diag;   // divisibility chain, zeros trailing
};

SNFResult smith_normal_form(const ZMatrix& a);
// One solution of A x = b over the integers, if any.
std::optional<std::vector<mpz_class>> solve_integer(const ZMatrix& a,
                                                    const std::vector<mpz_class>& b);

// Solve X * A = B (resp. A * X = B) over Z[G] for finite commutative G via
// the regular representation; entry-wise exact, nullopt when unsolvable.
std::optional<GRMatrix> solve_right(const GRMatrix& a, const GRMatrix& b);
std::optional<GRMatrix> solve_left(const GRMatrix& a, const GRMatrix& b);
// Same solves for infinite abelian groups, restricting unknowns to group
// elements with exponents bounded by the window radius.
std::optional<GRMatrix> solve_right_windowed(const GRMatrix& a, const GRMatrix& b, long radius);
std::optional<GRMatrix> solve_left_windowed(const GRMatrix& a, const GRMatrix& b, long radius);

// Exact determinant of the entrywise image under a morphism into a
// commutative field.
TargetValue det_over_target(const GRMatrix& a, const RingMorphism& m);

}  // namespace whtor

#endif
