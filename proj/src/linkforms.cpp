#include "z2s/linkforms.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace z2s {

FinQuadLinkForm::FinQuadLinkForm(std::vector<Int> f, RatMatrix r) : factors(std::move(f)), R(std::move(r)) {
    if (R.rows() != factors.size() || R.cols() != factors.size())
        throw ShapeMismatch("R must be k x k for k invariant factors");
    for (const auto& d : factors)
        if (d <= 1) throw ShapeMismatch("invariant factors must exceed 1");
}

Int FinQuadLinkForm::order() const {
    Int o = 1;
    for (const auto& d : factors) o *= d;
    return o;
}

Rat FinQuadLinkForm::nu(const std::vector<Int>& x) const {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) s += R(i, j) * x[i] * x[j];
    return frac_mod1(s);
}

Rat FinQuadLinkForm::b(const std::vector<Int>& x, const std::vector<Int>& y) const {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) s += (R(i, j) + R(j, i)) * x[i] * y[j];
    return frac_mod1(s);
}

Rat FinQuadLinkForm::nu_generator(std::size_t i) const { return frac_mod1(R(i, i)); }

RatMatrix FinQuadLinkForm::b_matrix() const {
    RatMatrix m(R.rows(), R.cols());
    for (std::size_t i = 0; i < R.rows(); ++i)
        for (std::size_t j = 0; j < R.cols(); ++j) m(i, j) = frac_mod1(R(i, j) + R(j, i));
    return m;
}

FinQuadLinkForm FinQuadLinkForm::reduced() const {
    RatMatrix r(R.rows(), R.cols());
    for (std::size_t i = 0; i < R.rows(); ++i) {
        r(i, i) = frac_mod1(R(i, i));
        for (std::size_t j = i + 1; j < R.cols(); ++j) r(i, j) = frac_mod1(R(i, j) + R(j, i));
    }
    return FinQuadLinkForm(factors, r);
}

bool FinQuadLinkForm::well_defined() const {
    const std::size_t k = factors.size();
    // nu(x + d_i e_i) - nu(x) = d_i^2 R_ii + d_i sum_j (R_ij + R_ji) x_j must vanish mod 1
    for (std::size_t i = 0; i < k; ++i) {
        if (frac_mod1(R(i, i) * factors[i] * factors[i]) != 0) return false;
        for (std::size_t j = 0; j < k; ++j)
            if (frac_mod1((R(i, j) + R(j, i)) * factors[i]) != 0) return false;
    }
    return true;
}

bool FinQuadLinkForm::operator==(const FinQuadLinkForm& o) const {
    return factors == o.factors && reduced().R == o.reduced().R;
}

std::string format_linkform(const FinQuadLinkForm& L) {
    // factors line, then numerator matrix over one common denominator
    FinQuadLinkForm r = L.reduced();
    Int den = 1;
    for (const auto& q : r.R.data()) den = lcm(den, Int(q.get_den()));
    std::ostringstream os;
    os << r.factors.size();
    for (const auto& d : r.factors) os << " " << d;
    os << "\n" << den << "\n";
    IntMatrix num(r.R.rows(), r.R.cols());
    for (std::size_t i = 0; i < num.rows(); ++i)
        for (std::size_t j = 0; j < num.cols(); ++j) num(i, j) = Rat(r.R(i, j) * den).get_num();
    os << format_matrix(num);
    return os.str();
}

FinQuadLinkForm parse_linkform(const std::string& text) {
    std::istringstream is(text);
    std::size_t k;
    if (!(is >> k)) throw ParseError("expected factor count");
    std::vector<Int> f(k);
    for (auto& d : f) {
        std::string tok;
        if (!(is >> tok) || d.set_str(tok, 10) != 0) throw ParseError("bad factor");
    }
    std::string dtok;
    Int den;
    if (!(is >> dtok) || den.set_str(dtok, 10) != 0 || den <= 0) throw ParseError("bad denominator");
    std::string rest((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    IntMatrix num = parse_matrix(rest);
    RatMatrix r(num.rows(), num.cols());
    for (std::size_t i = 0; i < num.rows(); ++i)
        for (std::size_t j = 0; j < num.cols(); ++j) {
            r(i, j) = Rat(num(i, j), den);
            r(i, j).canonicalize();
        }
    FinQuadLinkForm L(f, r);
    if (!L.well_defined()) throw ParseError("form is not well defined on the group");
    return L;
}

bool LinkAut::operator<(const LinkAut& o) const {
    return std::lexicographical_compare(matrix.data().begin(), matrix.data().end(),
                                        o.matrix.data().begin(), o.matrix.data().end());
}

namespace {

IntMatrix reduce_rows(IntMatrix m, const std::vector<Int>& factors) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_floor(m(i, j), factors[i]);
    return m;
}

// Machine-word view of a linking form: nu and b as numerators over N.
struct Arith {
    std::size_t k = 0;
    std::vector<long> d;
    long N = 1;
    std::vector<long> rn;  // R * N mod N, row-major
    std::vector<long> bn;  // (R + R^T) * N mod N

    explicit Arith(const FinQuadLinkForm& L) {
        k = L.factors.size();
        for (const auto& f : L.factors) {
            if (!f.fits_slong_p() || f > 1'000'000) throw GroupTooLarge("invariant factor too large");
            d.push_back(f.get_si());
        }
        Int den = 1;
        for (const auto& q : L.R.data()) den = lcm(den, Int(q.get_den()));
        if (den > 1'000'000) throw GroupTooLarge("denominator too large");
        N = den.get_si();
        rn.assign(k * k, 0);
        bn.assign(k * k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                Rat v = frac_mod1(L.R(i, j)) * N;
                rn[i * k + j] = v.get_num().get_si();
            }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) bn[i * k + j] = (rn[i * k + j] + rn[j * k + i]) % N;
    }

    long nu(const long* x) const {
        long s = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < k; ++j) s = (s + rn[i * k + j] * ((x[i] * x[j]) % N)) % N;
        }
        return s;
    }

    long b(const long* x, const long* y) const {
        long s = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < k; ++j) s = (s + bn[i * k + j] * ((x[i] * y[j]) % N)) % N;
        }
        return s;
    }
};

// Enumerated group: element i has coordinates coords[i*k .. i*k+k).
struct Group {
    Arith ar;
    std::size_t size = 1;
    std::vector<long> coords;
    std::vector<long> nu_tab;

    Group(const FinQuadLinkForm& L, std::size_t cap) : ar(L) {
        Int ord = L.order();
        if (ord > Int(static_cast<unsigned long>(cap))) throw GroupTooLarge("|T| = " + ord.get_str() + " exceeds cap");
        size = ord.get_ui();
        const std::size_t k = ar.k;
        coords.assign(size * k, 0);
        nu_tab.assign(size, 0);
        std::vector<long> c(k, 0);
        for (std::size_t idx = 0; idx < size; ++idx) {
            std::copy(c.begin(), c.end(), coords.begin() + idx * k);
            nu_tab[idx] = ar.nu(c.data());
            for (std::size_t i = k; i-- > 0;) {
                if (++c[i] < ar.d[i]) break;
                c[i] = 0;
            }
        }
    }

    const long* at(std::size_t idx) const { return coords.data() + idx * ar.k; }

    std::size_t index(const long* c) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < ar.k; ++i) idx = idx * ar.d[i] + static_cast<std::size_t>(c[i]);
        return idx;
    }

    std::size_t generator(std::size_t i) const {
        std::vector<long> c(ar.k, 0);
        c[i] = 1;
        return index(c.data());
    }

    bool killed_by(std::size_t idx, long m) const {
        const long* c = at(idx);
        for (std::size_t i = 0; i < ar.k; ++i)
            if ((c[i] * m) % ar.d[i] != 0) return false;
        return true;
    }

    // Image of x under the homomorphism sending generator j to imgs[j].
    std::size_t apply(const std::vector<std::size_t>& imgs, std::size_t x) const {
        const std::size_t k = ar.k;
        std::vector<long> acc(k, 0);
        const long* xc = at(x);
        for (std::size_t j = 0; j < k; ++j) {
            if (!xc[j]) continue;
            const long* ic = at(imgs[j]);
            for (std::size_t i = 0; i < k; ++i) acc[i] = (acc[i] + xc[j] * ic[i]) % ar.d[i];
        }
        return index(acc.data());
    }

    std::size_t span_size(const std::vector<std::size_t>& imgs) const {
        std::vector<char> seen(size, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        const std::size_t k = ar.k;
        std::vector<long> c(k);
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t g : imgs) {
                const long* xc = at(x);
                const long* gc = at(g);
                for (std::size_t i = 0; i < k; ++i) c[i] = (xc[i] + gc[i]) % ar.d[i];
                std::size_t y = index(c.data());
                if (!seen[y]) {
                    seen[y] = 1;
                    ++count;
                    stack.push_back(y);
                }
            }
        }
        return count;
    }

    bool pairing_nondegenerate() const {
        for (std::size_t x = 1; x < size; ++x) {
            bool hit = false;
            for (std::size_t j = 0; j < ar.k && !hit; ++j) {
                std::vector<long> e(ar.k, 0);
                e[j] = 1;
                hit = ar.b(at(x), e.data()) != 0;
            }
            if (!hit) return false;
        }
        return true;
    }

    LinkAut to_aut(const std::vector<std::size_t>& imgs) const {
        const std::size_t k = ar.k;
        IntMatrix m(k, k);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < k; ++i) m(i, j) = at(imgs[j])[i];
        return {m};
    }

    std::vector<std::size_t> from_aut(const LinkAut& f) const {
        const std::size_t k = ar.k;
        std::vector<std::size_t> imgs(k);
        std::vector<long> c(k);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < k; ++i) c[i] = mod_floor(f.matrix(i, j), Int(ar.d[i])).get_si();
            imgs[j] = index(c.data());
        }
        return imgs;
    }
};

// Only forms whose generator pairings and values agree are compared, so
// 'to' and 'from' share invariant factors and denominator-scaled tables.
using ImageVisitor = std::function<bool(const std::vector<std::size_t>&)>;

// Homomorphisms g_i -> y_i of the right orders with nu(y_i) = nu_from(g_i) and,
// when check_b, b(y_i, y_j) = b_from(g_i, g_j). Only bijective ones are passed on.
void enumerate_images(const Group& from, const Group& to, bool check_b, const ImageVisitor& visit) {
    const std::size_t k = from.ar.k;
    if (to.ar.k != k || to.ar.d != from.ar.d || to.size != from.size) return;
    // compare nu values over a common denominator
    const long nf = from.ar.N, nt = to.ar.N;
    const long L = std::lcm(nf, nt);
    auto scale_from = L / nf, scale_to = L / nt;
    std::vector<std::vector<std::size_t>> cand(k);
    std::vector<long> gnu(k);
    std::vector<std::vector<long>> gb(k, std::vector<long>(k));
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t g = from.generator(i);
        gnu[i] = from.nu_tab[g] * scale_from;
        for (std::size_t j = 0; j < k; ++j)
            gb[i][j] = from.ar.b(from.at(g), from.at(from.generator(j))) * scale_from;
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t y = 0; y < to.size; ++y)
            if (to.nu_tab[y] * scale_to == gnu[i] && to.killed_by(y, from.ar.d[i])) cand[i].push_back(y);
    const bool nondeg = to.pairing_nondegenerate();
    std::vector<std::size_t> imgs(k);
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (stop) return;
        if (i == k) {
            if (!(check_b && nondeg) && to.span_size(imgs) != to.size) return;
            if (!visit(imgs)) stop = true;
            return;
        }
        for (std::size_t y : cand[i]) {
            bool ok = true;
            if (check_b)
                for (std::size_t j = 0; j < i && ok; ++j)
                    ok = to.ar.b(to.at(imgs[j]), to.at(y)) * scale_to == gb[j][i];
            if (!ok) continue;
            imgs[i] = y;
            rec(i + 1);
            if (stop) return;
        }
    };
    rec(0);
}

constexpr std::size_t kFullCheckLimit = 64;

bool nu_preserved_everywhere(const Group& g, const std::vector<std::size_t>& imgs) {
    for (std::size_t x = 0; x < g.size; ++x)
        if (g.nu_tab[g.apply(imgs, x)] != g.nu_tab[x]) return false;
    return true;
}

}  // namespace

LinkAut compose(const FinQuadLinkForm& L, const LinkAut& f, const LinkAut& g) {
    return {reduce_rows(f.matrix * g.matrix, L.factors)};
}

std::vector<Int> apply(const FinQuadLinkForm& L, const LinkAut& f, const std::vector<Int>& x) {
    std::vector<Int> y(L.factors.size(), 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += f.matrix(i, j) * x[j];
        y[i] = mod_floor(y[i], L.factors[i]);
    }
    return y;
}

bool preserves_form(const FinQuadLinkForm& L, const LinkAut& f) {
    const std::size_t k = L.factors.size();
    std::vector<std::vector<Int>> img(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Int> e(k, 0);
        e[j] = 1;
        img[j] = apply(L, f, e);
        // image must have order dividing d_j
        for (std::size_t i = 0; i < k; ++i)
            if (frac_mod1(Rat(img[j][i] * L.factors[j], L.factors[i])) != 0) return false;
    }
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Int> e(k, 0);
        e[i] = 1;
        if (L.nu(img[i]) != L.nu(e)) return false;
        for (std::size_t j = i + 1; j < k; ++j) {
            std::vector<Int> ej(k, 0);
            ej[j] = 1;
            if (L.b(img[i], img[j]) != L.b(e, ej)) return false;
        }
    }
    return true;
}

namespace {

// Integer z with M z = v for M whose columns span Z^rows.
IntMatrix right_solve(const IntMatrix& m, const IntMatrix& v) {
    auto s = smith_normal_form(m);
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (s.D(i, i) != 1) throw PreconditionViolated("classes do not generate the cokernel");
    IntMatrix w = s.U * v;
    IntMatrix y(m.cols(), v.cols());
    y.set_block(0, 0, w);
    return s.V * y;
}

BoundaryData make_boundary(const QuadFormZ& theta, const IntMatrix& gens, const std::vector<Int>& factors) {
    BoundaryData bd;
    bd.theta = theta;
    bd.A = theta.symmetrize().gram;
    bd.gens = gens;
    const std::size_t n = bd.A.rows(), k = gens.cols();
    // coordinates: e_i = gens c + A w
    IntMatrix z = right_solve(hcat(gens, bd.A), IntMatrix::identity(n));
    bd.to_gens = reduce_rows(z.block(0, 0, k, n), factors);
    RatMatrix ainv = rational_inverse(bd.A);
    RatMatrix g = to_rat(gens);
    RatMatrix r = g.transpose() * ainv * to_rat(theta.rep) * ainv * g;
    bd.form = FinQuadLinkForm(factors, r).reduced();
    return bd;
}

}  // namespace

BoundaryData boundary_data(const QuadFormZ& theta) {
    IntMatrix A = theta.symmetrize().gram;
    if (det(A) == 0) throw DegenerateForm("boundary form of a degenerate form");
    auto s = smith_normal_form(A);
    IntMatrix uinv = unimodular_inverse(s.U);
    std::vector<std::size_t> keep;
    std::vector<Int> factors;
    for (std::size_t i = 0; i < A.rows(); ++i)
        if (s.D(i, i) > 1) {
            keep.push_back(i);
            factors.push_back(s.D(i, i));
        }
    IntMatrix gens(A.rows(), keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) gens.set_block(0, j, uinv.col(keep[j]));
    return make_boundary(theta, gens, factors);
}

FinQuadLinkForm boundary_form(const QuadFormZ& theta) { return boundary_data(theta).form; }

BoundaryData boundary_data_in_basis(const QuadFormZ& theta, const IntMatrix& gens,
                                    const std::vector<Int>& factors) {
    IntMatrix A = theta.symmetrize().gram;
    Int d = det(A);
    if (d == 0) throw DegenerateForm("boundary form of a degenerate form");
    if (gens.rows() != A.rows() || gens.cols() != factors.size()) throw ShapeMismatch("generator shape");
    Int ord = 1;
    for (const auto& f : factors) ord *= f;
    if (ord != abs(d)) throw PreconditionViolated("factor product differs from |det|");
    for (std::size_t j = 0; j < factors.size(); ++j) {
        IntMatrix c;
        if (!solve_integral(A, gens.col(j).scaled(factors[j]), c))
            throw PreconditionViolated("generator order does not divide its factor");
    }
    return make_boundary(theta, gens, factors);
}

FinQuadLinkForm boundary_form_in_basis(const QuadFormZ& theta, const IntMatrix& gens,
                                       const std::vector<Int>& factors) {
    return boundary_data_in_basis(theta, gens, factors).form;
}

FinQuadLinkForm rebase(const FinQuadLinkForm& L, const IntMatrix& gens, const std::vector<Int>& factors) {
    const std::size_t k = L.factors.size();
    if (gens.rows() != k || gens.cols() != factors.size()) throw ShapeMismatch("rebase generator shape");
    Int ord = 1;
    for (const auto& f : factors) ord *= f;
    if (ord != L.order()) throw PreconditionViolated("factor product differs from |T|");
    IntMatrix rel(k, k);
    for (std::size_t i = 0; i < k; ++i) rel(i, i) = L.factors[i];
    for (std::size_t j = 0; j < factors.size(); ++j)
        for (std::size_t i = 0; i < k; ++i)
            if ((gens(i, j) * factors[j]) % L.factors[i] != 0)
                throw PreconditionViolated("generator order does not divide its factor");
    // generation: gens together with the relations span Z^k
    right_solve(hcat(gens, rel), IntMatrix::identity(k));
    RatMatrix g = to_rat(gens);
    return FinQuadLinkForm(factors, g.transpose() * L.R * g).reduced();
}

std::vector<LinkAut> aut_linkform(const FinQuadLinkForm& L, std::size_t cap) {
    Group g(L, cap);
    std::vector<LinkAut> out;
    enumerate_images(g, g, true, [&](const std::vector<std::size_t>& imgs) {
        if (g.size <= kFullCheckLimit && !nu_preserved_everywhere(g, imgs))
            throw MismatchDetected("generator test accepted a map that breaks nu");
        out.push_back(g.to_aut(imgs));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<LinkAut> linkform_isometry(const FinQuadLinkForm& from, const FinQuadLinkForm& to,
                                         std::size_t cap) {
    if (from.factors != to.factors) return std::nullopt;
    Group gf(from, cap), gt(to, cap);
    std::optional<LinkAut> found;
    enumerate_images(gf, gt, true, [&](const std::vector<std::size_t>& imgs) {
        found = gt.to_aut(imgs);
        return false;
    });
    return found;
}

std::size_t count_nu_generator_candidates(const FinQuadLinkForm& L, std::size_t cap) {
    Group g(L, cap);
    std::size_t count = 0;
    enumerate_images(g, g, false, [&](const std::vector<std::size_t>&) {
        ++count;
        return true;
    });
    return count;
}

LinkAut boundary_map(const BoundaryData& bd, const IntMatrix& h) {
    if (!h.square() || h.rows() != bd.A.rows() || h.transpose() * bd.A * h != bd.A)
        throw NotAnIsometry("h does not preserve the symmetrisation");
    // (h^*)^{-1} = A h A^{-1}
    IntMatrix hinvT = to_int(to_rat(bd.A * h) * rational_inverse(bd.A));
    LinkAut f{reduce_rows(bd.to_gens * hinvT * bd.gens, bd.form.factors)};
    if (!preserves_form(bd.form, f)) throw MismatchDetected("boundary of an isometry breaks nu");
    return f;
}

LinkAut boundary_map(const QuadFormZ& theta, const IntMatrix& h) {
    return boundary_map(boundary_data(theta), h);
}

namespace {

struct KeyHash {
    std::size_t operator()(const std::vector<std::size_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

struct UnionFind {
    std::vector<std::size_t> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<std::size_t> compose_imgs(const Group& g, const std::vector<std::size_t>& f,
                                      const std::vector<std::size_t>& h) {
    std::vector<std::size_t> out(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) out[j] = g.apply(f, h[j]);
    return out;
}

}  // namespace

BAutResult baut(const QuadFormZ& theta, std::size_t cap, bool keep_image) {
    return baut(boundary_data(theta), cap, keep_image);
}

BAutResult baut(const BoundaryData& bd, std::size_t cap, bool keep_image) {
    SymFormZ A(bd.A);
    BAutResult res;
    if (bd.form.factors.empty()) {
        // trivial linking form: a single automorphism, one orbit
        for_each_automorphism(A, [&](const std::vector<std::vector<long>>&) {
            ++res.aut_theta;
            return true;
        });
        res.orbit_count = 1;
        res.trivial = true;
        res.image_size = res.aut_boundary = 1;
        res.witnesses.push_back({IntMatrix(0, 0)});
        if (keep_image) res.image = res.witnesses;
        return res;
    }
    Group g(bd.form, cap);
    const std::size_t n = bd.A.rows(), k = g.ar.k;

    // d h = P h Qn / den with P = to_gens A and Qn = den A^{-1} gens.
    const Int den = abs(det(bd.A));
    IntMatrix P = bd.to_gens * bd.A;
    IntMatrix Qn = to_int(rational_inverse(bd.A).scaled(Rat(den)) * to_rat(bd.gens));
    std::vector<long> Pl(k * n), Ql(n * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!P(i, j).fits_slong_p()) throw GroupTooLarge("transport matrix too large");
            Pl[i * n + j] = P(i, j).get_si();
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (!Qn(i, j).fits_slong_p()) throw GroupTooLarge("transport matrix too large");
            Ql[i * k + j] = Qn(i, j).get_si();
        }
    if (!den.fits_slong_p()) throw GroupTooLarge("determinant too large");
    const long dl = den.get_si();

    std::unordered_set<std::vector<std::size_t>, KeyHash> image;
    std::vector<long> hq(n * k), c(k);
    for_each_automorphism(A, [&](const std::vector<std::vector<long>>& cols) {
        ++res.aut_theta;
        // h Qn, h(i, l) = cols[l][i]
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                __int128 s = 0;
                for (std::size_t l = 0; l < n; ++l) s += static_cast<__int128>(cols[l][i]) * Ql[l * k + j];
                hq[i * k + j] = static_cast<long>(s);
            }
        std::vector<std::size_t> imgs(k);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < k; ++i) {
                __int128 s = 0;
                for (std::size_t l = 0; l < n; ++l) s += static_cast<__int128>(Pl[i * n + l]) * hq[l * k + j];
                if (s % dl != 0) throw MismatchDetected("boundary transport is not integral");
                long v = static_cast<long>((s / dl) % g.ar.d[i]);
                c[i] = v < 0 ? v + g.ar.d[i] : v;
            }
            imgs[j] = g.index(c.data());
        }
        image.insert(imgs);
        return true;
    });
    res.image_size = image.size();

    // Aut of the linking form
    std::vector<std::vector<std::size_t>> auts;
    enumerate_images(g, g, true, [&](const std::vector<std::size_t>& imgs) {
        if (g.size <= kFullCheckLimit && !nu_preserved_everywhere(g, imgs))
            throw MismatchDetected("generator test accepted a map that breaks nu");
        auts.push_back(imgs);
        return true;
    });
    res.aut_boundary = auts.size();
    std::unordered_map<std::vector<std::size_t>, std::size_t, KeyHash> index;
    for (std::size_t i = 0; i < auts.size(); ++i) index.emplace(auts[i], i);
    for (const auto& im : image)
        if (!index.count(im)) throw MismatchDetected("boundary of an isometry is not an automorphism");

    // small generating set of the image
    std::vector<std::vector<std::size_t>> sorted_image(image.begin(), image.end());
    std::sort(sorted_image.begin(), sorted_image.end());
    std::vector<std::vector<std::size_t>> gens;
    std::unordered_set<std::vector<std::size_t>, KeyHash> closure;
    std::vector<std::size_t> id(k);
    for (std::size_t j = 0; j < k; ++j) id[j] = g.generator(j);
    closure.insert(id);
    for (const auto& x : sorted_image) {
        if (closure.count(x)) continue;
        gens.push_back(x);
        std::vector<std::vector<std::size_t>> frontier(closure.begin(), closure.end());
        while (!frontier.empty()) {
            std::vector<std::vector<std::size_t>> next;
            for (const auto& y : frontier)
                for (const auto& s : gens) {
                    auto z = compose_imgs(g, s, y);
                    if (closure.insert(z).second) next.push_back(std::move(z));
                }
            frontier.swap(next);
        }
    }

    UnionFind uf(auts.size());
    for (std::size_t i = 0; i < auts.size(); ++i)
        for (const auto& s : gens) {
            uf.unite(i, index.at(compose_imgs(g, s, auts[i])));
            uf.unite(i, index.at(compose_imgs(g, auts[i], s)));
        }
    std::unordered_map<std::size_t, LinkAut> best;
    for (std::size_t i = 0; i < auts.size(); ++i) {
        LinkAut f = g.to_aut(auts[i]);
        auto r = uf.find(i);
        auto it = best.find(r);
        if (it == best.end())
            best.emplace(r, f);
        else if (f < it->second)
            it->second = f;
    }
    for (auto& [r, f] : best) res.witnesses.push_back(f);
    std::sort(res.witnesses.begin(), res.witnesses.end());
    res.orbit_count = res.witnesses.size();
    res.trivial = res.orbit_count == 1;
    if (keep_image) {
        for (const auto& im : sorted_image) res.image.push_back(g.to_aut(im));
        std::sort(res.image.begin(), res.image.end());
    }
    return res;
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

long n_p(const std::vector<Int>& factors, long p) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    long c = 0;
    for (const auto& d : factors)
        if (d % p == 0) ++c;
    return c;
}

std::vector<long> odd_primes_dividing(const std::vector<Int>& factors) {
    std::vector<long> ps;
    for (Int d : factors) {
        while (d % 2 == 0) d /= 2;
        for (long p = 3; Int(p) * p <= d; p += 2)
            if (d % p == 0) {
                ps.push_back(p);
                while (d % p == 0) d /= p;
            }
        if (d > 1) {
            if (!d.fits_slong_p()) throw GroupTooLarge("prime factor too large");
            ps.push_back(d.get_si());
        }
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

namespace {

constexpr long kSummandSearchMaxN2 = 12;

// Order-2 x, y with nu(x) = nu(y) = 0 and b(x, y) = 1/2 span a copy of the
// boundary of [[0,2],[0,0]]; since b is perfect on that span it splits off.
bool has_hyperbolic_two_summand(const FinQuadLinkForm& L, std::string& detail) {
    Arith ar(L);
    const std::size_t k = ar.k;
    std::vector<std::size_t> even;
    for (std::size_t i = 0; i < k; ++i)
        if (ar.d[i] % 2 == 0) even.push_back(i);
    if (static_cast<long>(even.size()) > kSummandSearchMaxN2) {
        detail = "2-torsion too large for the summand search";
        return false;
    }
    std::vector<std::vector<long>> iso;
    for (std::size_t mask = 1; mask < (std::size_t(1) << even.size()); ++mask) {
        std::vector<long> x(k, 0);
        for (std::size_t t = 0; t < even.size(); ++t)
            if (mask >> t & 1) x[even[t]] = ar.d[even[t]] / 2;
        if (ar.nu(x.data()) == 0) iso.push_back(x);
    }
    if (ar.N % 2 != 0) return false;
    const long half = ar.N / 2;
    for (std::size_t i = 0; i < iso.size(); ++i)
        for (std::size_t j = i + 1; j < iso.size(); ++j)
            if (ar.b(iso[i].data(), iso[j].data()) == half) return true;
    detail = "no orthogonal summand of the required type";
    return false;
}

}  // namespace

NikulinResult nikulin_check(const QuadFormZ& theta) {
    SymFormZ A = theta.symmetrize();
    if (det(A.gram) == 0) throw DegenerateForm("Nikulin check of a degenerate form");
    NikulinResult r;
    if (is_definite(A)) {
        r.reason = "indefinite required";
        return r;
    }
    FinQuadLinkForm L = boundary_form(theta);
    const long rank = static_cast<long>(theta.rank());
    for (long p : odd_primes_dividing(L.factors)) {
        if (rank < n_p(L.factors, p) + 2) {
            r.reason = "rank < n_p + 2 at p = " + std::to_string(p);
            return r;
        }
    }
    if (rank == n_p(L.factors, 2)) {
        std::string detail;
        if (!has_hyperbolic_two_summand(L, detail)) {
            r.reason = "rank = n_2 and " + detail;
            return r;
        }
    }
    r.surjective = true;
    r.reason = "conditions hold";
    return r;
}

std::string to_string(Ell5Status s) {
    switch (s) {
        case Ell5Status::Trivial: return "Trivial";
        case Ell5Status::Nontrivial: return "Nontrivial";
        default: return "Unknown";
    }
}

Ell5Result ell5_trivial(const QuadFormZ& theta, std::size_t definite_rank_bound, std::size_t cap) {
    Ell5Result r;
    SymFormZ A = theta.symmetrize();
    if (det(A.gram) == 0) {
        r.reason = "degenerate form";
        return r;
    }
    auto from_baut = [&](const std::string& route) {
        try {
            auto b = baut(theta, cap);
            r.orbit_count = b.orbit_count;
            r.route = route;
            r.status = b.trivial ? Ell5Status::Trivial : Ell5Status::Nontrivial;
            r.reason = b.trivial ? "boundary map is surjective" : "boundary map is not surjective";
        } catch (const GroupTooLarge& e) {
            r.status = Ell5Status::Unknown;
            r.reason = e.what();
        }
    };
    if (!is_definite(A)) {
        auto nk = nikulin_check(theta);
        if (nk.surjective) {
            r.status = Ell5Status::Trivial;
            r.route = "Nikulin";
            r.orbit_count = 1;
            r.reason = nk.reason;
            return r;
        }
        try {
            from_baut("direct bAut");
        } catch (const IndefiniteForm&) {
            r.status = Ell5Status::Unknown;
            r.reason = "Nikulin not applicable (" + nk.reason + ") and Aut is infinite";
        }
        return r;
    }
    if (theta.rank() > definite_rank_bound) {
        r.reason = "definite rank " + std::to_string(theta.rank()) + " beyond bound";
        return r;
    }
    from_baut("bAut");
    return r;
}

}  // namespace z2s
