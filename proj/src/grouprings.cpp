#include "z2s/grouprings.hpp"

#include <functional>
#include <sstream>

namespace z2s {

GrElt GrElt::from_evals(const Int& plus, const Int& minus) {
    Int s = plus + minus;
    if (mpz_odd_p(s.get_mpz_t())) throw ParseError("evaluations differ in parity");
    return {s / 2, (plus - minus) / 2};
}

bool GrElt::is_unit() const {
    Int p = ev(1), m = ev(-1);
    return (p == 1 || p == -1) && (m == 1 || m == -1);
}

std::string GrElt::to_string() const {
    if (b == 0) return a.get_str();
    std::string t = b == 1 ? "T" : b == -1 ? "-T" : b.get_str() + "T";
    if (a == 0) return t;
    return a.get_str() + (b > 0 ? "+" : "") + t;
}

GrMatrix::GrMatrix(IntMatrix a_, IntMatrix b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("group ring matrix parts");
}

GrMatrix GrMatrix::constant(const IntMatrix& m) { return {m, IntMatrix(m.rows(), m.cols())}; }

GrMatrix GrMatrix::from_evals(const IntMatrix& plus, const IntMatrix& minus) {
    if (plus.rows() != minus.rows() || plus.cols() != minus.cols())
        throw ShapeMismatch("evaluation shapes differ");
    GrMatrix g(plus.rows(), plus.cols());
    for (std::size_t i = 0; i < plus.rows(); ++i)
        for (std::size_t j = 0; j < plus.cols(); ++j) g.set(i, j, GrElt::from_evals(plus(i, j), minus(i, j)));
    return g;
}

GrMatrix GrMatrix::operator*(const GrMatrix& o) const {
    return {a * o.a + b * o.b, a * o.b + b * o.a};
}

GrMatrix GrMatrix::times(const GrElt& s) const {
    return {a.scaled(s.a) + b.scaled(s.b), b.scaled(s.a) + a.scaled(s.b)};
}

GrMatrix hcat(const GrMatrix& x, const GrMatrix& y) { return {hcat(x.a, y.a), hcat(x.b, y.b)}; }
GrMatrix vcat(const GrMatrix& x, const GrMatrix& y) { return {vcat(x.a, y.a), vcat(x.b, y.b)}; }
GrMatrix block_diag(const GrMatrix& x, const GrMatrix& y) {
    return {block_diag(x.a, y.a), block_diag(x.b, y.b)};
}

GrElt gr_det(const GrMatrix& m) {
    if (m.rows() != m.cols()) throw NonSquare("determinant of non-square matrix");
    return GrElt::from_evals(det(m.ev(1)), det(m.ev(-1)));
}

bool gr_is_invertible(const GrMatrix& m) { return m.rows() == m.cols() && gr_det(m).is_unit(); }

GrMatrix gr_inverse(const GrMatrix& m) {
    if (!gr_is_invertible(m)) throw SingularMatrix("matrix is not invertible over Z[Z/2]");
    return GrMatrix::from_evals(unimodular_inverse(m.ev(1)), unimodular_inverse(m.ev(-1)));
}

bool gr_is_summand(const GrMatrix& m) {
    return has_integer_left_inverse(m.ev(1)) && has_integer_left_inverse(m.ev(-1));
}

namespace {

using Bits = std::vector<std::vector<int>>;

Bits mod2(const IntMatrix& m) {
    Bits r(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = mpz_odd_p(m(i, j).get_mpz_t()) ? 1 : 0;
    return r;
}

// Solves S z = t over F2 for invertible square S.
Bits solve_mod2(Bits s, Bits t) {
    const std::size_t n = s.size(), k = t.empty() ? 0 : t[0].size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && !s[p][c]) ++p;
        if (p == n) throw PreconditionViolated("singular system mod 2");
        std::swap(s[p], s[c]);
        std::swap(t[p], t[c]);
        for (std::size_t r = 0; r < n; ++r)
            if (r != c && s[r][c]) {
                for (std::size_t j = 0; j < n; ++j) s[r][j] ^= s[c][j];
                for (std::size_t j = 0; j < k; ++j) t[r][j] ^= t[c][j];
            }
    }
    return t;
}

// Integer matrix of determinant 1 reducing to the given invertible F2 matrix.
IntMatrix lift_gl2(Bits m) {
    const std::size_t n = m.size();
    IntMatrix g = IntMatrix::identity(n);
    // Row-reduce m to the identity; each row operation is its own inverse mod 2,
    // so the product of integer lifts (in order) reduces to m.
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && !m[p][c]) ++p;
        if (p == n) throw PreconditionViolated("matrix not invertible mod 2");
        if (p != c) {
            std::swap(m[p], m[c]);
            // lift of the swap: rows (c, p) -> (p, -c), determinant 1
            IntMatrix e = IntMatrix::identity(n);
            e(c, c) = 0;
            e(p, p) = 0;
            e(c, p) = 1;
            e(p, c) = -1;
            g = g * e;
        }
        for (std::size_t r = 0; r < n; ++r)
            if (r != c && m[r][c]) {
                for (std::size_t j = 0; j < n; ++j) m[r][j] ^= m[c][j];
                IntMatrix e = IntMatrix::identity(n);
                e(r, c) = 1;
                g = g * e;
            }
    }
    return g;
}

IntMatrix bits_to_int(const Bits& b, std::size_t r0, std::size_t nr) {
    const std::size_t nc = b.empty() ? 0 : b[0].size();
    IntMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = b[r0 + i][j];
    return m;
}

}  // namespace

GrMatrix gr_complete_basis(const GrMatrix& x) {
    if (!gr_is_summand(x)) throw PreconditionViolated("columns do not span a direct summand");
    const IntMatrix xp = x.ev(1), xm = x.ev(-1);
    const std::size_t n = x.rows(), k = x.cols();
    IntMatrix wp = complete_basis(xp), wm = complete_basis(xm);
    if (k == n) return GrMatrix(n, 0);
    // Mod 2 the two completions differ by [X | Wp] [K ; M] = Wm with M invertible.
    Bits coeff = solve_mod2(mod2(hcat(xp, wp)), mod2(wm));
    IntMatrix K = bits_to_int(coeff, 0, k);
    Bits mbits(n - k, std::vector<int>(n - k));
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < n - k; ++j) mbits[i][j] = coeff[k + i][j];
    IntMatrix G = lift_gl2(mbits);
    IntMatrix wp2 = wp * G + xp * K;
    return GrMatrix::from_evals(wp2, wm);
}

std::string format_gr_matrix(const GrMatrix& m) {
    return format_matrix(m.ev(1)) + format_matrix(m.ev(-1));
}

GrMatrix parse_gr_matrix(const std::string& text) {
    // two matrices in the plain text format, evaluations at T = 1 then T = -1
    std::istringstream is(text);
    auto read_one = [&]() {
        long r, c;
        if (!(is >> r >> c) || r < 0 || c < 0) throw ParseError("expected 'rows cols' header");
        std::ostringstream os;
        os << r << " " << c;
        for (long i = 0; i < r * c; ++i) {
            std::string tok;
            if (!(is >> tok)) throw ParseError("too few entries");
            os << " " << tok;
        }
        return parse_matrix(os.str());
    };
    IntMatrix p = read_one();
    IntMatrix m = read_one();
    return GrMatrix::from_evals(p, m);
}

namespace {

GrMatrix canonical_gr(const GrMatrix& q) { return {canonicalize(q.a), canonicalize(q.b)}; }

}  // namespace

QuadFormGr::QuadFormGr(GrMatrix r) : rep(std::move(r)) {
    if (rep.rows() != rep.cols()) throw NonSquare("quadratic form representative must be square");
}

QuadFormGr QuadFormGr::canonical() const { return QuadFormGr(canonical_gr(rep)); }

bool QuadFormGr::operator==(const QuadFormGr& o) const {
    return rank() == o.rank() && canonical_gr(rep) == canonical_gr(o.rep);
}

QuadFormZ eval_form(const QuadFormGr& theta, int sign) { return QuadFormZ(theta.rep.ev(sign)); }

QuadFormGr free_wall_form(const QuadFormZ& theta_nd) {
    if (det(theta_nd.symmetrize().gram) == 0) throw DegenerateForm("free Wall form needs a nondegenerate form");
    return QuadFormGr(GrMatrix(theta_nd.rep, -theta_nd.rep));
}

QuadFormGr to_gr(const QuadFormZ& theta) { return QuadFormGr(GrMatrix::constant(theta.rep)); }

QuasiFormation::QuasiFormation(Ring r, GrMatrix v) : ring(r), n(v.cols()), V(std::move(v)) {
    if (V.rows() != 2 * n) throw RankMismatch("V must be 2n x n");
    if (ring == Ring::Z && !V.is_constant()) throw ShapeMismatch("integral quasi-formation with T terms");
    if (!gr_is_summand(V)) throw PreconditionViolated("V is not a direct summand");
}

QuadFormGr QuasiFormation::psi() const {
    IntMatrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) m(i, n + i) = 1;
    return QuadFormGr(GrMatrix::constant(m));
}

GrMatrix QuasiFormation::lambda() const { return psi().symmetrize(); }

GrMatrix QuasiFormation::F() const {
    return GrMatrix::constant(vcat(IntMatrix::identity(n), IntMatrix(n, n)));
}

GrMatrix QuasiFormation::F_star() const {
    return GrMatrix::constant(vcat(IntMatrix(n, n), IntMatrix::identity(n)));
}

QuasiFormation QuasiFormation::from_general(Ring r, const QuadFormGr& psi, const GrMatrix& F,
                                            const GrMatrix& V) {
    const std::size_t n2 = psi.rank();
    if (n2 % 2 != 0 || F.rows() != n2 || V.rows() != n2 || F.cols() != n2 / 2 || V.cols() != n2 / 2)
        throw RankMismatch("need rank 2n form with n-column F and V");
    if (r == Ring::Z && (!psi.rep.is_constant() || !F.is_constant() || !V.is_constant()))
        throw ShapeMismatch("integral data with T terms");
    const GrMatrix lam = psi.symmetrize();
    if (!gr_is_invertible(lam)) throw PreconditionViolated("form is singular");
    if (!gr_is_summand(F) || !QuadFormGr(F.adjoint() * psi.rep * F).canonical().rep.is_zero())
        throw PreconditionViolated("F is not a lagrangian");
    // Complement W of F, rescaled so lambda(F, W) = I, then shifted by F so psi|W = 0.
    GrMatrix W = gr_complete_basis(F);
    W = W * gr_inverse(F.adjoint() * lam * W);
    GrMatrix S = canonical_gr(W.adjoint() * psi.rep * W);
    GrMatrix K = -S.transpose();
    W = W + F * K;
    GrMatrix B = hcat(F, W);
    return QuasiFormation(r, gr_inverse(B) * V);
}

QuasiFormation trivial_formation(Ring r, std::size_t n) {
    return QuasiFormation(r, GrMatrix::constant(vcat(IntMatrix(n, n), IntMatrix::identity(n))));
}

QuasiFormation direct_sum(const QuasiFormation& x, const QuasiFormation& y) {
    if (x.ring != y.ring) throw ShapeMismatch("direct sum over different rings");
    const std::size_t n = x.n + y.n;
    GrMatrix v(2 * n, n);
    auto put = [&](const GrMatrix& src, std::size_t r0, std::size_t c0) {
        for (std::size_t i = 0; i < src.rows(); ++i)
            for (std::size_t j = 0; j < src.cols(); ++j) v.set(r0 + i, c0 + j, src.at(i, j));
    };
    put(x.V.block(0, 0, x.n, x.n), 0, 0);
    put(y.V.block(0, 0, y.n, y.n), x.n, x.n);
    put(x.V.block(x.n, 0, x.n, x.n), n, 0);
    put(y.V.block(y.n, 0, y.n, y.n), n + x.n, x.n);
    return QuasiFormation(x.ring, v);
}

bool is_lagrangian(const QuasiFormation& qf, const GrMatrix& L) {
    if (L.rows() != 2 * qf.n || L.cols() != qf.n) throw RankMismatch("lagrangian candidate must be 2n x n");
    if (!gr_is_summand(L)) return false;
    // a half-rank summand on which psi vanishes is its own annihilator
    return QuadFormGr(L.adjoint() * qf.psi().rep * L).canonical().rep.is_zero();
}

QuasiFormation boundary_quasiformation(Ring r, const GrMatrix& kappa) {
    if (kappa.rows() != kappa.cols()) throw NonSquare("kappa must be square");
    return QuasiFormation(r, vcat(GrMatrix::identity(kappa.rows()), kappa));
}

bool is_elementary(const QuasiFormation& qf) { return gr_det(hcat(qf.F(), qf.V)).is_unit(); }

InducedForms induced_forms(const QuasiFormation& qf) {
    const std::size_t n = qf.n;
    const GrMatrix psi = qf.psi().rep;
    GrMatrix W = gr_complete_basis(qf.V);
    GrMatrix dual = gr_inverse(hcat(qf.V, W));
    GrMatrix ann = dual.block(n, 0, n, 2 * n);  // vanishes on V
    GrMatrix perp = gr_inverse(qf.lambda()) * ann.adjoint();
    InducedForms out;
    out.theta_V = QuadFormGr(qf.V.adjoint() * psi * qf.V).canonical();
    out.theta_perp = QuadFormGr(-(perp.adjoint() * psi * perp)).canonical();
    out.perp_basis = perp;
    return out;
}

QuasiFormation eigen_quasiformation(const QuasiFormation& qf, int sign) {
    return QuasiFormation(Ring::Z, GrMatrix::constant(qf.V.ev(sign)));
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionViolated(what);
}

bool is_even_hermitian(const GrMatrix& l) {
    if (l.a != l.a.transpose() || l.b != l.b.transpose()) return false;
    for (std::size_t i = 0; i < l.rows(); ++i)
        if (mpz_odd_p(l.a(i, i).get_mpz_t()) || mpz_odd_p(l.b(i, i).get_mpz_t())) return false;
    return true;
}

}  // namespace

bool verify_lagrangian_complement(const GrMatrix& lambda, const GrMatrix& V, const GrMatrix& U) {
    if (U.rows() != V.rows() || U.cols() != V.cols()) return false;
    if (!gr_det(hcat(V, U)).is_unit()) return false;
    return (U.adjoint() * lambda * U).is_zero();
}

GrMatrix find_lagrangian_complement(const GrMatrix& lambda, const GrMatrix& V,
                                    const IntMatrix& U_minus) {
    const std::size_t N = lambda.rows();
    require(lambda.cols() == N && N % 2 == 0, "form must be square of even rank");
    const std::size_t n = N / 2;
    require(V.rows() == N && V.cols() == n, "V must be half rank");
    require(U_minus.rows() == N && U_minus.cols() == n, "U_minus must be half rank");
    require(is_even_hermitian(lambda), "form is not even hermitian");
    require(gr_is_invertible(lambda), "form is singular");
    require(gr_is_summand(V), "V is not a free direct summand");

    const IntMatrix Lp = lambda.ev(1), Lm = lambda.ev(-1);
    const IntMatrix Xp = V.ev(1), Xm = V.ev(-1);
    require((Xp.transpose() * Lp * Xp).is_zero(), "E+(V) is not a lagrangian");
    require((U_minus.transpose() * Lm * U_minus).is_zero(), "U_minus is not a lagrangian");
    require(is_unimodular(hcat(Xm, U_minus)), "U_minus does not complement E-(V)");

    // Any complement of V, moved by integer combinations of V so that its
    // minus side lies in U_minus.
    const GrMatrix W = gr_complete_basis(V);
    const IntMatrix Wp = W.ev(1), Wm = W.ev(-1);
    const IntMatrix coeff = unimodular_inverse(hcat(Xm, U_minus)) * Wm;
    const IntMatrix Nm = coeff.block(0, 0, n, n);
    const IntMatrix Yp = Wp - Xp * Nm;
    const IntMatrix Ym = Wm - Xm * Nm;

    // Plus side: c with E+(lambda)(a_i, c_j) = delta_ij and E+(lambda)(c_i, c_j) = 0.
    const IntMatrix Mp = Xp.transpose() * Lp * Yp;
    require(is_unimodular(Mp), "E+(V) does not pair perfectly with the complement");
    IntMatrix C = Yp * unimodular_inverse(Mp);
    const IntMatrix S = C.transpose() * Lp * C;
    IntMatrix K(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        require(mpz_even_p(S(i, i).get_mpz_t()), "restriction to U+ is not even");
        K(i, i) = -S(i, i) / 2;
        for (std::size_t j = i + 1; j < n; ++j) K(i, j) = -S(i, j);
    }
    C = C + Xp * K;

    // Minus side: d with E-(lambda)(b_i, d_j) = delta_ij; the same integer
    // operations on y give rho'.
    const IntMatrix Mm = Xm.transpose() * Lm * Ym;
    require(is_unimodular(Mm), "E-(V) does not pair perfectly with U_minus");
    const IntMatrix G = unimodular_inverse(Mm);
    const IntMatrix D = Ym * G;
    const IntMatrix RpPrime = Yp * G;

    // (1+T) rho'_i = alpha_i + gamma_i with gamma_i in the span of c.
    const IntMatrix split = unimodular_inverse(hcat(Xp, C)) * RpPrime;
    IntMatrix Alpha = split.block(0, 0, n, n);
    const IntMatrix Gamma = split.block(n, 0, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int s = (i == j ? Int(1) : Int(0)) - Gamma(i, j);
            require(mpz_even_p(s.get_mpz_t()), "gamma coefficients fail the parity needed to halve");
        }
    // rho_i = (alpha_i + c_i + d_i) / 2, then alpha made antisymmetric by
    // adding even multiples of a_j.
    for (std::size_t i = 0; i < n; ++i) {
        require(mpz_even_p(Alpha(i, i).get_mpz_t()), "alpha diagonal is odd");
        for (std::size_t j = i + 1; j < n; ++j) {
            Int s = Alpha(i, j) + Alpha(j, i);
            require(mpz_even_p(s.get_mpz_t()), "alpha_ij + alpha_ji is odd");
        }
    }
    IntMatrix AlphaAnti(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            AlphaAnti(i, j) = Alpha(i, j);
            AlphaAnti(j, i) = -Alpha(i, j);
        }
    const IntMatrix Rp = Xp * AlphaAnti + C;
    GrMatrix U;
    try {
        U = GrMatrix::from_evals(Rp, D);
    } catch (const ParseError&) {
        throw PreconditionViolated("rho is not divisible by 2");
    }
    if (!verify_lagrangian_complement(lambda, V, U))
        throw PreconditionViolated("constructed complement failed verification");
    return U;
}

std::optional<IntMatrix> search_lagrangian_complement(const IntMatrix& gram, const IntMatrix& X,
                                                      long max_coeff, long max_nodes) {
    const std::size_t N = gram.rows(), n = X.cols();
    if (N != 2 * n || X.rows() != N) throw RankMismatch("search needs a half rank subspace");
    auto accept = [&](const IntMatrix& U) {
        return (U.transpose() * gram * U).is_zero() && is_unimodular(hcat(X, U));
    };
    // coordinate lagrangians first
    IntMatrix fs = vcat(IntMatrix(n, n), IntMatrix::identity(n));
    IntMatrix f = vcat(IntMatrix::identity(n), IntMatrix(n, n));
    if (accept(fs)) return fs;
    if (accept(f)) return f;
    long nodes = 0;
    for (long bound = 1; bound <= max_coeff; ++bound) {
        // isotropic primitive vectors in the box, sign-normalized
        std::vector<IntMatrix> iso;
        std::vector<long> v(N, -bound);
        for (;;) {
            std::size_t first = 0;
            while (first < N && v[first] == 0) ++first;
            if (first < N && v[first] > 0) {
                IntMatrix col(N, 1);
                for (std::size_t i = 0; i < N; ++i) col(i, 0) = v[i];
                if ((col.transpose() * gram * col)(0, 0) == 0) iso.push_back(col);
            }
            std::size_t k = 0;
            while (k < N && v[k] == bound) v[k++] = -bound;
            if (k == N) break;
            ++v[k];
        }
        std::vector<std::size_t> pick;
        std::optional<IntMatrix> found;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (found || nodes > max_nodes) return;
            if (pick.size() == n) {
                IntMatrix U(N, n);
                for (std::size_t j = 0; j < n; ++j) U.set_block(0, j, iso[pick[j]]);
                if (is_unimodular(hcat(X, U))) found = U;
                return;
            }
            for (std::size_t c = start; c < iso.size(); ++c) {
                ++nodes;
                bool ok = true;
                for (std::size_t p : pick)
                    if ((iso[p].transpose() * gram * iso[c])(0, 0) != 0) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                pick.push_back(c);
                rec(c + 1);
                pick.pop_back();
                if (found) return;
            }
        };
        rec(0);
        if (found) return found;
        if (nodes > max_nodes) break;
    }
    return std::nullopt;
}

ElementaryVerdict elementary_criterion(const QuasiFormation& qf,
                                       const std::optional<IntMatrix>& U_minus_hint,
                                       long max_coeff) {
    ElementaryVerdict out;
    const GrMatrix lam = qf.lambda();
    const IntMatrix Xp = qf.V.ev(1), Xm = qf.V.ev(-1);
    if (!(Xp.transpose() * lam.ev(1) * Xp).is_zero()) {
        out.reason = "E+ not lagrangian";
        return out;
    }
    std::optional<IntMatrix> um = U_minus_hint;
    if (!um) um = search_lagrangian_complement(lam.ev(-1), Xm, max_coeff);
    if (!um) {
        out.reason = "no lagrangian complement of E-(V) found within the search bound";
        return out;
    }
    try {
        out.witness = find_lagrangian_complement(lam, qf.V, *um);
    } catch (const PreconditionViolated& e) {
        out.reason = e.what();
        return out;
    }
    out.elementary = true;
    out.U_minus = *um;
    out.reason = "lagrangian complement constructed";
    return out;
}

}  // namespace z2s
