#include "z2s/gmforms.hpp"

#include <cstdlib>
#include <functional>

#include "z2s/errors.hpp"

namespace z2s {

namespace {

constexpr std::size_t kMaxEnumDim = 24;

void check_square(const BitMatrix& m, std::size_t n) {
    if (m.size() != n) throw ShapeMismatch("bilinear form must be dim x dim");
    for (const auto& row : m)
        if (row.size() != n) throw ShapeMismatch("bilinear form must be dim x dim");
}

// Rank over Z/2 by elimination on row bitmasks.
std::size_t rank2(const BitMatrix& m) {
    std::vector<std::uint64_t> rows;
    for (const auto& r : m) {
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (r[j]) v |= std::uint64_t(1) << j;
        rows.push_back(v);
    }
    std::size_t rank = 0;
    for (std::size_t bit = 0; bit < 64 && rank < rows.size(); ++bit) {
        std::size_t piv = rows.size();
        for (std::size_t i = rank; i < rows.size(); ++i)
            if (rows[i] >> bit & 1) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && (rows[i] >> bit & 1)) rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

int lambda_mask(const BitMatrix& l, std::uint64_t x, std::uint64_t y) {
    int s = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (!(x >> i & 1)) continue;
        for (std::size_t j = 0; j < l.size(); ++j)
            if (y >> j & 1) s ^= l[i][j] & 1;
    }
    return s;
}

// Gray-code walk: q(x + e_i) = q(x) + q(e_i) + 2 lambda(x, e_i).
template <class F>
void walk_values(const Z4QuadForm& f, F&& visit) {
    const std::size_t n = f.dim();
    if (n > kMaxEnumDim) throw DimMismatch("dimension too large to enumerate");
    std::uint64_t x = 0;
    int qx = 0;
    visit(x, qx);
    for (std::uint64_t k = 1; k < (std::uint64_t(1) << n); ++k) {
        std::size_t i = static_cast<std::size_t>(__builtin_ctzll(k));
        int lam = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (x >> j & 1) lam ^= f.bilinear[j][i] & 1;
        qx = (qx + f.q_basis[i] + 2 * lam) & 3;
        x ^= std::uint64_t(1) << i;
        visit(x, qx);
    }
}

}  // namespace

Z4QuadForm::Z4QuadForm(BitMatrix lambda, std::vector<int> q) : bilinear(std::move(lambda)), q_basis(std::move(q)) {
    check_square(bilinear, q_basis.size());
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) {
            bilinear[i][j] &= 1;
        }
        q_basis[i] = ((q_basis[i] % 4) + 4) % 4;
    }
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            if (bilinear[i][j] != bilinear[j][i]) throw ShapeMismatch("bilinear form must be symmetric");
    for (std::size_t i = 0; i < dim(); ++i)
        if ((q_basis[i] & 1) != bilinear[i][i]) throw InvalidParity("q(e_i) must reduce to lambda(e_i, e_i)");
}

bool Z4QuadForm::nondegenerate() const { return rank2(bilinear) == dim(); }

int evaluate_q(const Z4QuadForm& form, const Bits& v) {
    if (v.size() != form.dim()) throw DimMismatch("vector length differs from form dimension");
    int s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] & 1)) continue;
        s += form.q_basis[i];
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[j] & 1) s += 2 * form.bilinear[i][j];
    }
    return s & 3;
}

Z4QuadForm direct_sum(const Z4QuadForm& x, const Z4QuadForm& y) {
    const std::size_t n = x.dim() + y.dim();
    BitMatrix l(n, Bits(n, 0));
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j) l[i][j] = x.bilinear[i][j];
    for (std::size_t i = 0; i < y.dim(); ++i)
        for (std::size_t j = 0; j < y.dim(); ++j) l[x.dim() + i][x.dim() + j] = y.bilinear[i][j];
    std::vector<int> q = x.q_basis;
    q.insert(q.end(), y.q_basis.begin(), y.q_basis.end());
    return Z4QuadForm(l, q);
}

GaussSum gauss_sum(const Z4QuadForm& form) {
    GaussSum s;
    walk_values(form, [&](std::uint64_t, int q) {
        switch (q) {
            case 0: ++s.re; break;
            case 1: ++s.im; break;
            case 2: --s.re; break;
            default: --s.im; break;
        }
    });
    return s;
}

int brown_kervaire(const Z4QuadForm& form) {
    if (!form.nondegenerate()) throw DegenerateForm("Brown invariant needs a nondegenerate form");
    const GaussSum s = gauss_sum(form);
    const std::size_t n = form.dim();
    // |S|^2 must equal 2^n
    const std::int64_t mod2 = s.re * s.re + s.im * s.im;
    if (mod2 != (std::int64_t(1) << n))
        throw GaussSumAnomaly("|S|^2 = " + std::to_string(mod2) + ", expected 2^" + std::to_string(n));
    // zeta_8^beta * sqrt(2^n): axis directions for even beta, diagonals for odd
    const std::int64_t a = s.re, b = s.im;
    if (n % 2 == 0) {
        if (b == 0) return a > 0 ? 0 : 4;
        if (a == 0) return b > 0 ? 2 : 6;
    } else if (std::llabs(a) == std::llabs(b)) {
        if (a > 0) return b > 0 ? 1 : 7;
        return b > 0 ? 3 : 5;
    }
    throw GaussSumAnomaly("phase is not an eighth root of unity");
}

int arf(const Z2QuadForm& form) {
    const std::size_t n = form.q_basis.size();
    check_square(form.bilinear, n);
    if (n > kMaxEnumDim) throw DimMismatch("dimension too large to enumerate");
    for (std::size_t i = 0; i < n; ++i)
        if (form.bilinear[i][i] & 1) throw InvalidParity("Arf invariant needs an alternating form");
    if (rank2(form.bilinear) != n) throw DegenerateForm("Arf invariant needs a nondegenerate form");
    std::uint64_t ones = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
        int v = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(x >> i & 1)) continue;
            v ^= form.q_basis[i] & 1;
            for (std::size_t j = i + 1; j < n; ++j)
                if (x >> j & 1) v ^= form.bilinear[i][j] & 1;
        }
        ones += v;
    }
    return 2 * ones > (std::uint64_t(1) << n) ? 1 : 0;
}

std::optional<BitMatrix> z4_isometry(const Z4QuadForm& from, const Z4QuadForm& to) {
    const std::size_t n = from.dim();
    if (to.dim() != n) throw DimMismatch("isometry search needs equal dimensions");
    if (n > 6) throw DimMismatch("isometry search is limited to dimension 6");
    std::vector<int> qto(std::size_t(1) << n);
    walk_values(to, [&](std::uint64_t x, int q) { qto[x] = q; });
    std::vector<std::uint64_t> img(n);
    std::optional<BitMatrix> found;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (found) return;
        if (i == n) {
            BitMatrix cols(n, Bits(n, 0));
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) cols[r][c] = (img[c] >> r) & 1;
            if (rank2(cols) == n) found = cols;
            return;
        }
        for (std::uint64_t y = 1; y < (std::uint64_t(1) << n); ++y) {
            if (qto[y] != from.q_basis[i]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = lambda_mask(to.bilinear, img[j], y) == from.bilinear[j][i];
            if (!ok) continue;
            img[i] = y;
            rec(i + 1);
            if (found) return;
        }
    };
    rec(0);
    return found;
}

std::vector<long> massey_range(long h, long sigma_k) {
    if (h < 1) throw PreconditionViolated("genus must be positive");
    std::vector<long> r;
    for (long e = -2 * h + 2 * sigma_k; e <= 2 * h + 2 * sigma_k; e += 4) r.push_back(e);
    return r;
}

bool in_massey_range(long h, long e, long sigma_k) {
    if (h < 1) return false;
    const long lo = -2 * h + 2 * sigma_k;
    return e >= lo && e <= 2 * h + 2 * sigma_k && (e - lo) % 4 == 0;
}

bool is_extremal(const SurfaceInvariants& inv) {
    if (!in_massey_range(inv.h, inv.e, inv.sigma_k))
        throw EulerOutOfRange("e = " + std::to_string(inv.e) + " outside the range for h = " +
                              std::to_string(inv.h));
    return std::labs(inv.e - 2 * inv.sigma_k) == 2 * inv.h;
}

Z4QuadForm standard_gm_form(long h, long e) {
    if (!in_massey_range(h, e, 0))
        throw EulerOutOfRange("e = " + std::to_string(e) + " outside the range for h = " + std::to_string(h));
    // each q = 1 contributes +1 to the phase, each q = 3 contributes -1
    const long ones = (h - e / 2) / 2;
    BitMatrix l(h, Bits(h, 0));
    std::vector<int> q(h, 3);
    for (long i = 0; i < h; ++i) {
        l[i][i] = 1;
        if (i < ones) q[i] = 1;
    }
    return Z4QuadForm(l, q);
}

bool check_gm_congruence(const Z4QuadForm& form, long e, int arf_boundary) {
    if (e % 2 != 0) throw OddEulerNumber("normal Euler number must be even");
    const long rhs = ((-e / 2 + 4 * arf_boundary) % 8 + 8) % 8;
    return brown_kervaire(form) == rhs;
}

}  // namespace z2s
