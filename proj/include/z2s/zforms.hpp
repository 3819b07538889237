#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "z2s/exactmat.hpp"

namespace z2s {

struct SymFormZ {
    IntMatrix gram;

    SymFormZ() = default;
    explicit SymFormZ(IntMatrix g);
    std::size_t rank() const { return gram.rows(); }
    bool operator==(const SymFormZ& o) const { return gram == o.gram; }
};

// A class in Q+(Z^n): reps differing by B - B^T are the same form.
struct QuadFormZ {
    IntMatrix rep;

    QuadFormZ() = default;
    explicit QuadFormZ(IntMatrix r);
    std::size_t rank() const { return rep.rows(); }

    QuadFormZ canonical() const;
    SymFormZ symmetrize() const;
    QuadFormZ scaled(long k) const;
    // Pullback along M: rep -> M^T rep M.
    QuadFormZ pullback(const IntMatrix& m) const;
    // Value on a vector, x^T rep x.
    Int value(const IntMatrix& x) const;
    bool operator==(const QuadFormZ& o) const;
    bool operator!=(const QuadFormZ& o) const { return !(*this == o); }
};

// Diagonal kept, upper entries Q_ij + Q_ji, lower triangle zero.
IntMatrix canonicalize(const IntMatrix& q);

SymFormZ symmetrize(const QuadFormZ& theta);
QuadFormZ direct_sum(const QuadFormZ& a, const QuadFormZ& b);
SymFormZ direct_sum(const SymFormZ& a, const SymFormZ& b);

QuadFormZ hyperbolic(std::size_t k);
QuadFormZ x_form(long n);
QuadFormZ theta_ab(long a, long b);

long signature(const SymFormZ& a);
bool is_even(const SymFormZ& a);
bool is_definite(const SymFormZ& a);
bool is_nondegenerate(const SymFormZ& a);
bool is_nonsingular(const SymFormZ& a);

SymFormZ classify_odd_indefinite(long rank, long sig);

struct EvenSublattice {
    IntMatrix basis;      // columns span {x : x^T A x even}
    QuadFormZ restricted; // unique quadratic refinement of the restriction
};
EvenSublattice even_sublattice_form(const SymFormZ& a);

// Visits every automorphism as a column-major list of images of the basis
// vectors (cols[j] is the image of e_j). Return false from the visitor to stop.
using AutVisitor = std::function<bool(const std::vector<std::vector<long>>& cols)>;
void for_each_automorphism(const SymFormZ& a, const AutVisitor& visit);

std::vector<IntMatrix> aut_group(const SymFormZ& a);
std::optional<IntMatrix> is_isometric(const SymFormZ& a, const SymFormZ& b);

// All vectors x with x^T A x <= bound for positive definite A (exact).
std::vector<std::vector<long>> short_vectors(const SymFormZ& a, const Int& bound);

}  // namespace z2s
