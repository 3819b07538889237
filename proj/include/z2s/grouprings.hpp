#pragma once

#include <optional>
#include <string>
#include <utility>

#include "z2s/exactmat.hpp"
#include "z2s/zforms.hpp"

namespace z2s {

// a + bT in Z[Z/2], T^2 = 1. The involution T -> T^-1 = T is the identity.
struct GrElt {
    Int a = 0, b = 0;

    GrElt() = default;
    GrElt(Int a_, Int b_) : a(std::move(a_)), b(std::move(b_)) {}
    static GrElt T() { return {0, 1}; }
    static GrElt from_evals(const Int& plus, const Int& minus);

    Int ev(int sign) const { return sign > 0 ? Int(a + b) : Int(a - b); }
    GrElt conj() const { return *this; }
    bool is_unit() const;
    bool is_zero() const { return a == 0 && b == 0; }

    GrElt operator+(const GrElt& o) const { return {a + o.a, b + o.b}; }
    GrElt operator-(const GrElt& o) const { return {a - o.a, b - o.b}; }
    GrElt operator-() const { return {-a, -b}; }
    GrElt operator*(const GrElt& o) const { return {a * o.a + b * o.b, a * o.b + b * o.a}; }
    bool operator==(const GrElt& o) const { return a == o.a && b == o.b; }
    bool operator!=(const GrElt& o) const { return !(*this == o); }
    std::string to_string() const;
};

// Matrix over Z[Z/2] stored as A + B T with integer matrices A, B.
struct GrMatrix {
    IntMatrix a, b;

    GrMatrix() = default;
    GrMatrix(std::size_t rows, std::size_t cols) : a(rows, cols), b(rows, cols) {}
    GrMatrix(IntMatrix a_, IntMatrix b_);
    static GrMatrix constant(const IntMatrix& m);
    static GrMatrix identity(std::size_t n) { return constant(IntMatrix::identity(n)); }
    // Inverse of r -> (r(1), r(-1)); ParseError unless plus = minus mod 2.
    static GrMatrix from_evals(const IntMatrix& plus, const IntMatrix& minus);

    std::size_t rows() const { return a.rows(); }
    std::size_t cols() const { return a.cols(); }
    GrElt at(std::size_t i, std::size_t j) const { return {a(i, j), b(i, j)}; }
    void set(std::size_t i, std::size_t j, const GrElt& x) {
        a(i, j) = x.a;
        b(i, j) = x.b;
    }

    IntMatrix ev(int sign) const { return sign > 0 ? a + b : a - b; }
    bool is_constant() const { return b.is_zero(); }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    GrMatrix transpose() const { return {a.transpose(), b.transpose()}; }
    // Conjugate transpose; equal to the transpose since conjugation is trivial.
    GrMatrix adjoint() const { return transpose(); }
    GrMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        return {a.block(r0, c0, nr, nc), b.block(r0, c0, nr, nc)};
    }
    GrMatrix operator*(const GrMatrix& o) const;
    GrMatrix operator+(const GrMatrix& o) const { return {a + o.a, b + o.b}; }
    GrMatrix operator-(const GrMatrix& o) const { return {a - o.a, b - o.b}; }
    GrMatrix operator-() const { return {-a, -b}; }
    GrMatrix times(const GrElt& s) const;
    bool operator==(const GrMatrix& o) const { return a == o.a && b == o.b; }
    bool operator!=(const GrMatrix& o) const { return !(*this == o); }
};

GrMatrix hcat(const GrMatrix& x, const GrMatrix& y);
GrMatrix vcat(const GrMatrix& x, const GrMatrix& y);
GrMatrix block_diag(const GrMatrix& x, const GrMatrix& y);

GrElt gr_det(const GrMatrix& m);
bool gr_is_invertible(const GrMatrix& m);
GrMatrix gr_inverse(const GrMatrix& m);
// Columns span a direct summand of Z[Z/2]^rows.
bool gr_is_summand(const GrMatrix& m);
// W with [X | W] invertible over Z[Z/2]. PreconditionViolated if X is no summand.
GrMatrix gr_complete_basis(const GrMatrix& x);

std::string format_gr_matrix(const GrMatrix& m);
GrMatrix parse_gr_matrix(const std::string& text);

struct QuadFormGr {
    GrMatrix rep;

    QuadFormGr() = default;
    explicit QuadFormGr(GrMatrix r);
    std::size_t rank() const { return rep.rows(); }
    QuadFormGr canonical() const;
    GrMatrix symmetrize() const { return rep + rep.adjoint(); }
    QuadFormGr pullback(const GrMatrix& m) const { return QuadFormGr(m.adjoint() * rep * m); }
    bool operator==(const QuadFormGr& o) const;
};

QuadFormZ eval_form(const QuadFormGr& theta, int sign);
QuadFormGr free_wall_form(const QuadFormZ& theta_nd);
QuadFormGr to_gr(const QuadFormZ& theta);

enum class Ring { Z, ZZ2 };

// ((H+(F), psi); F, V) in standard hyperbolic coordinates: P = F + F*, F is
// spanned by the first n coordinates and psi = [[0, I], [0, 0]].
struct QuasiFormation {
    Ring ring = Ring::Z;
    std::size_t n = 0;
    GrMatrix V;  // 2n x n

    QuasiFormation() = default;
    QuasiFormation(Ring r, GrMatrix v);

    QuadFormGr psi() const;
    GrMatrix lambda() const;  // symmetrisation of psi
    GrMatrix F() const;
    GrMatrix F_star() const;

    // Moves an arbitrary ((P, psi); F, V) into standard coordinates.
    static QuasiFormation from_general(Ring r, const QuadFormGr& psi, const GrMatrix& F,
                                       const GrMatrix& V);
};

QuasiFormation trivial_formation(Ring r, std::size_t n);
QuasiFormation direct_sum(const QuasiFormation& x, const QuasiFormation& y);

bool is_lagrangian(const QuasiFormation& qf, const GrMatrix& L);
QuasiFormation boundary_quasiformation(Ring r, const GrMatrix& kappa);
bool is_elementary(const QuasiFormation& qf);

struct InducedForms {
    QuadFormGr theta_V;
    QuadFormGr theta_perp;
    GrMatrix perp_basis;
};
InducedForms induced_forms(const QuasiFormation& qf);

QuasiFormation eigen_quasiformation(const QuasiFormation& qf, int sign);

// Lagrangian complement of V for an even nonsingular hermitian lambda, given a
// lagrangian complement U_minus of E-(V) in E-(P).
GrMatrix find_lagrangian_complement(const GrMatrix& lambda, const GrMatrix& V,
                                    const IntMatrix& U_minus);
bool verify_lagrangian_complement(const GrMatrix& lambda, const GrMatrix& V, const GrMatrix& U);

// Bounded search for a lagrangian complement of the column span of X in
// (Z^{2n}, gram). Coefficients grow |c| <= 1, 2, ..., max_coeff.
std::optional<IntMatrix> search_lagrangian_complement(const IntMatrix& gram, const IntMatrix& X,
                                                      long max_coeff = 3,
                                                      long max_nodes = 2000000);

struct ElementaryVerdict {
    bool elementary = false;
    GrMatrix witness;  // lagrangian complement of V when elementary
    IntMatrix U_minus;
    std::string reason;
};
ElementaryVerdict elementary_criterion(const QuasiFormation& qf,
                                       const std::optional<IntMatrix>& U_minus_hint = std::nullopt,
                                       long max_coeff = 3);

}  // namespace z2s
