#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace z2s {

using Bits = std::vector<int>;      // Z/2 vector, entries 0 or 1
using BitMatrix = std::vector<Bits>;

// Z/4 valued refinement of a symmetric Z/2 form:
// q(x + y) = q(x) + q(y) + 2 lambda(x, y).
struct Z4QuadForm {
    BitMatrix bilinear;
    std::vector<int> q_basis;  // values in 0..3

    Z4QuadForm() = default;
    // ShapeMismatch on bad shapes, InvalidParity unless q(e_i) = lambda(e_i, e_i) mod 2.
    Z4QuadForm(BitMatrix lambda, std::vector<int> q);
    std::size_t dim() const { return q_basis.size(); }
    bool nondegenerate() const;
};

int evaluate_q(const Z4QuadForm& form, const Bits& v);
Z4QuadForm direct_sum(const Z4QuadForm& x, const Z4QuadForm& y);

struct GaussSum {
    std::int64_t re = 0, im = 0;
};
GaussSum gauss_sum(const Z4QuadForm& form);
// Phase of the Gauss sum in Z/8. DegenerateForm, GaussSumAnomaly.
int brown_kervaire(const Z4QuadForm& form);

// Z/2 valued form on an alternating Z/2 form: q(x + y) = q(x) + q(y) + lambda(x, y).
struct Z2QuadForm {
    BitMatrix bilinear;
    std::vector<int> q_basis;
};
int arf(const Z2QuadForm& form);

// Both forms have the same dimension; M with lambda'(Mx, My) = lambda(x, y) and
// q'(Mx) = q(x), columns are images of basis vectors. Exhaustive, dim <= 6.
std::optional<BitMatrix> z4_isometry(const Z4QuadForm& from, const Z4QuadForm& to);

struct SurfaceInvariants {
    long h = 1;
    long e = 0;
    long sigma_k = 0;
    long det_k_abs = 1;

    // signature of the double branched cover
    long sigma_cover() const { return sigma_k - e / 2; }
};

std::vector<long> massey_range(long h, long sigma_k);
bool in_massey_range(long h, long e, long sigma_k);
bool is_extremal(const SurfaceInvariants& inv);

Z4QuadForm standard_gm_form(long h, long e);
bool check_gm_congruence(const Z4QuadForm& form, long e, int arf_boundary);

}  // namespace z2s
