#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "z2s/exactmat.hpp"
#include "z2s/zforms.hpp"

namespace z2s {

constexpr std::size_t kDefaultGroupCap = std::size_t(1) << 16;

// T = sum Z/d_i with nu(x) = x^T R x and b(x, y) = x^T (R + R^T) y, both mod 1,
// in generator coordinates.
struct FinQuadLinkForm {
    std::vector<Int> factors;
    RatMatrix R;

    FinQuadLinkForm() = default;
    FinQuadLinkForm(std::vector<Int> f, RatMatrix r);

    std::size_t num_generators() const { return factors.size(); }
    Int order() const;
    Rat nu(const std::vector<Int>& x) const;
    Rat b(const std::vector<Int>& x, const std::vector<Int>& y) const;
    Rat nu_generator(std::size_t i) const;
    RatMatrix b_matrix() const;  // (R + R^T) mod 1
    // Same function, R reduced to upper triangular form with entries in [0, 1).
    FinQuadLinkForm reduced() const;
    bool well_defined() const;
    bool operator==(const FinQuadLinkForm& o) const;
};

std::string format_linkform(const FinQuadLinkForm& L);
FinQuadLinkForm parse_linkform(const std::string& text);

// Images of the generators as coordinate columns, entries reduced mod the
// factor of their row.
struct LinkAut {
    IntMatrix matrix;
    bool operator==(const LinkAut& o) const { return matrix == o.matrix; }
    bool operator<(const LinkAut& o) const;
};

LinkAut compose(const FinQuadLinkForm& L, const LinkAut& f, const LinkAut& g);
std::vector<Int> apply(const FinQuadLinkForm& L, const LinkAut& f, const std::vector<Int>& x);
bool preserves_form(const FinQuadLinkForm& L, const LinkAut& f);

// The boundary linking form together with the maps needed to transport
// isometries of the lattice.
struct BoundaryData {
    QuadFormZ theta;
    IntMatrix A;         // symmetrisation
    IntMatrix gens;      // n x k, generator representatives in Z^n
    IntMatrix to_gens;   // k x n, Z^n -> generator coordinates
    FinQuadLinkForm form;
};

BoundaryData boundary_data(const QuadFormZ& theta);
// Same data on chosen generators, see boundary_form_in_basis.
BoundaryData boundary_data_in_basis(const QuadFormZ& theta, const IntMatrix& gens,
                                    const std::vector<Int>& factors);
FinQuadLinkForm boundary_form(const QuadFormZ& theta);
// Boundary form on chosen generators: column j of gens is a vector of Z^n whose
// class generates a cyclic summand of order factors[j]. PreconditionViolated if
// these classes do not give a direct sum decomposition of coker(A).
FinQuadLinkForm boundary_form_in_basis(const QuadFormZ& theta, const IntMatrix& gens,
                                       const std::vector<Int>& factors);

// New generators given in old coordinates (columns).
FinQuadLinkForm rebase(const FinQuadLinkForm& L, const IntMatrix& gens,
                       const std::vector<Int>& factors);

std::vector<LinkAut> aut_linkform(const FinQuadLinkForm& L, std::size_t cap = kDefaultGroupCap);
std::optional<LinkAut> linkform_isometry(const FinQuadLinkForm& from, const FinQuadLinkForm& to,
                                         std::size_t cap = kDefaultGroupCap);
// Group automorphisms preserving nu on each generator only (no pairing check).
std::size_t count_nu_generator_candidates(const FinQuadLinkForm& L,
                                          std::size_t cap = kDefaultGroupCap);

LinkAut boundary_map(const BoundaryData& bd, const IntMatrix& h);
LinkAut boundary_map(const QuadFormZ& theta, const IntMatrix& h);

struct BAutResult {
    std::size_t orbit_count = 0;
    bool trivial = false;
    std::vector<LinkAut> witnesses;  // one per orbit, smallest in each
    std::size_t aut_theta = 0;       // |Aut(theta)|
    std::size_t image_size = 0;      // |Im d|
    std::size_t aut_boundary = 0;    // |Aut(d theta)|
    std::vector<LinkAut> image;      // sorted, filled when keep_image
};

BAutResult baut(const QuadFormZ& theta, std::size_t cap = kDefaultGroupCap, bool keep_image = false);
// Witnesses and image are written in the generators of bd.
BAutResult baut(const BoundaryData& bd, std::size_t cap = kDefaultGroupCap, bool keep_image = false);

long n_p(const std::vector<Int>& factors, long p);
bool is_prime(long p);
std::vector<long> odd_primes_dividing(const std::vector<Int>& factors);

struct NikulinResult {
    bool surjective = false;
    std::string reason;
};
NikulinResult nikulin_check(const QuadFormZ& theta);

enum class Ell5Status { Trivial, Nontrivial, Unknown };
struct Ell5Result {
    Ell5Status status = Ell5Status::Unknown;
    std::string route;  // "Nikulin", "bAut", "direct bAut"
    std::size_t orbit_count = 0;
    std::string reason;
};
// definite_rank_bound: definite forms of larger rank are not enumerated.
Ell5Result ell5_trivial(const QuadFormZ& theta, std::size_t definite_rank_bound = 64,
                        std::size_t cap = kDefaultGroupCap);
std::string to_string(Ell5Status s);

}  // namespace z2s
