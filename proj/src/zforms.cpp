#include "z2s/zforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace z2s {

SymFormZ::SymFormZ(IntMatrix g) : gram(std::move(g)) {
    if (!gram.square()) throw NonSquare("gram matrix must be square");
    if (gram != gram.transpose()) throw ShapeMismatch("gram matrix must be symmetric");
}

QuadFormZ::QuadFormZ(IntMatrix r) : rep(std::move(r)) {
    if (!rep.square()) throw NonSquare("quadratic form representative must be square");
}

IntMatrix canonicalize(const IntMatrix& q) {
    if (!q.square()) throw NonSquare("canonicalize");
    IntMatrix c(q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i) {
        c(i, i) = q(i, i);
        for (std::size_t j = i + 1; j < q.cols(); ++j) c(i, j) = q(i, j) + q(j, i);
    }
    return c;
}

QuadFormZ QuadFormZ::canonical() const { return QuadFormZ(canonicalize(rep)); }
SymFormZ QuadFormZ::symmetrize() const { return SymFormZ(rep + rep.transpose()); }
QuadFormZ QuadFormZ::scaled(long k) const { return QuadFormZ(rep.scaled(Int(k))); }
QuadFormZ QuadFormZ::pullback(const IntMatrix& m) const {
    return QuadFormZ(m.transpose() * rep * m);
}
Int QuadFormZ::value(const IntMatrix& x) const { return (x.transpose() * rep * x)(0, 0); }
bool QuadFormZ::operator==(const QuadFormZ& o) const {
    return rank() == o.rank() && canonicalize(rep) == canonicalize(o.rep);
}

SymFormZ symmetrize(const QuadFormZ& theta) { return theta.symmetrize(); }

QuadFormZ direct_sum(const QuadFormZ& a, const QuadFormZ& b) {
    return QuadFormZ(block_diag(a.rep, b.rep));
}

SymFormZ direct_sum(const SymFormZ& a, const SymFormZ& b) {
    return SymFormZ(block_diag(a.gram, b.gram));
}

QuadFormZ hyperbolic(std::size_t k) {
    IntMatrix m(2 * k, 2 * k);
    for (std::size_t i = 0; i < k; ++i) m(2 * i, 2 * i + 1) = 1;
    return QuadFormZ(m);
}

QuadFormZ x_form(long n) {
    const std::size_t k = static_cast<std::size_t>(std::labs(n));
    IntMatrix m(k, k);
    const long s = n > 0 ? 1 : -1;
    for (std::size_t j = 0; j < k; ++j) m(0, j) = 2 * s;
    for (std::size_t i = 1; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) m(i, j) = s;
    return QuadFormZ(m);
}

QuadFormZ theta_ab(long a, long b) {
    if (a < 0 || b < 0 || a + b < 1) throw InvalidSignature("theta_ab needs a,b >= 0 and a+b >= 1");
    const long h = a + b, sigma = a - b;
    if (sigma == 0) {
        QuadFormZ two_h(IntMatrix{{0, 2}, {0, 0}});
        return direct_sum(two_h, hyperbolic(static_cast<std::size_t>(h / 2 - 1)));
    }
    return direct_sum(x_form(sigma), hyperbolic(static_cast<std::size_t>((h - std::labs(sigma)) / 2)));
}

namespace {

// Counts (positive, negative, zero) directions by symmetric elimination.
void inertia(const IntMatrix& g, long& pos, long& neg, long& zero) {
    RatMatrix a = to_rat(g);
    std::size_t n = a.rows();
    pos = neg = zero = 0;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && a(i, i) != 0) {
                piv = i;
                break;
            }
        if (piv == n) {
            // zero diagonal: a nonzero off-diagonal entry lets e_i + e_j become a pivot
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && a(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) {
                for (std::size_t i = 0; i < n; ++i)
                    if (!done[i]) ++zero;
                return;
            }
            a.add_row(pi, pj, Rat(1));
            a.add_col(pi, pj, Rat(1));
            piv = pi;
        }
        const Rat p = a(piv, piv);
        (p > 0 ? pos : neg)++;
        done[piv] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a(i, piv) == 0) continue;
            Rat f = a(i, piv) / p;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) a(i, j) -= f * a(piv, j);
        }
        for (std::size_t i = 0; i < n; ++i) {
            a(i, piv) = 0;
            a(piv, i) = 0;
        }
    }
}

}  // namespace

long signature(const SymFormZ& a) {
    long p, n, z;
    inertia(a.gram, p, n, z);
    if (z > 0) throw DegenerateForm("signature of a degenerate form");
    return p - n;
}

bool is_even(const SymFormZ& a) {
    for (std::size_t i = 0; i < a.rank(); ++i)
        if (a.gram(i, i) % 2 != 0) return false;
    return true;
}

bool is_nondegenerate(const SymFormZ& a) { return det(a.gram) != 0; }

bool is_definite(const SymFormZ& a) {
    if (!is_nondegenerate(a)) return false;
    return static_cast<std::size_t>(std::labs(signature(a))) == a.rank();
}

bool is_nonsingular(const SymFormZ& a) {
    Int d = det(a.gram);
    return d == 1 || d == -1;
}

SymFormZ classify_odd_indefinite(long rank, long sig) {
    if (rank <= std::labs(sig) || (rank - sig) % 2 != 0)
        throw InvalidSignature("need rank > |sig| and rank = sig mod 2");
    const long a = (rank + sig) / 2;
    IntMatrix g(static_cast<std::size_t>(rank), static_cast<std::size_t>(rank));
    for (long i = 0; i < rank; ++i) g(i, i) = i < a ? 1 : -1;
    return SymFormZ(g);
}

EvenSublattice even_sublattice_form(const SymFormZ& a) {
    const std::size_t n = a.rank();
    if (is_even(a)) throw FormAlreadyEven("every vector already has even square");
    // x^T A x = sum A_ii x_i mod 2, a linear condition; k is its first odd coordinate.
    std::size_t k = 0;
    while (a.gram(k, k) % 2 == 0) ++k;
    IntMatrix basis(n, n);
    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == k) {
            basis(k, col++) = 2;
            continue;
        }
        basis(j, col) = 1;
        if (a.gram(j, j) % 2 != 0) basis(k, col) = 1;
        ++col;
    }
    // keep the 2e_k vector first
    if (k != 0) {
        IntMatrix b2(n, n);
        b2.set_block(0, 0, basis.col(k));
        std::size_t c = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) b2.set_block(0, c++, basis.col(j));
        basis = b2;
    }
    IntMatrix g = basis.transpose() * a.gram * basis;
    IntMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        q(i, i) = g(i, i) / 2;
        for (std::size_t j = i + 1; j < n; ++j) q(i, j) = g(i, j);
    }
    return {basis, QuadFormZ(q)};
}

std::vector<std::vector<long>> short_vectors(const SymFormZ& a, const Int& bound) {
    const std::size_t n = a.rank();
    std::vector<std::vector<long>> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    // q(x) = sum_i Q_ii (x_i + sum_{j>i} Q_ij x_j)^2
    RatMatrix q = to_rat(a.gram);
    for (std::size_t i = 0; i < n; ++i) {
        if (q(i, i) <= 0) throw IndefiniteForm("short vectors need a positive definite form");
        for (std::size_t j = i + 1; j < n; ++j) {
            q(j, i) = q(i, j);
            q(i, j) = q(i, j) / q(i, i);
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
    }
    std::vector<long> x(n, 0);
    std::vector<Rat> rem(n + 1);
    rem[n] = Rat(bound);
    std::function<void(std::size_t)> rec = [&](std::size_t level) {
        const std::size_t i = level - 1;
        Rat c = 0;
        for (std::size_t j = i + 1; j < n; ++j) c -= q(i, j) * x[j];
        const double cd = c.get_d();
        const double rad = std::sqrt(std::max(0.0, Rat(rem[level] / q(i, i)).get_d()));
        const long lo = static_cast<long>(std::floor(cd - rad)) - 1;
        const long hi = static_cast<long>(std::ceil(cd + rad)) + 1;
        for (long v = lo; v <= hi; ++v) {
            Rat t = Rat(v) - c;
            Rat used = q(i, i) * t * t;
            if (used > rem[level]) continue;
            x[i] = v;
            rem[i] = rem[level] - used;
            if (i == 0)
                out.push_back(x);
            else
                rec(i);
        }
        x[i] = 0;
    };
    rec(n);
    return out;
}

namespace {

long to_long(const Int& v) {
    if (!v.fits_slong_p()) throw GroupTooLarge("entry does not fit in a machine word");
    return v.get_si();
}

std::vector<std::vector<long>> gram_long(const IntMatrix& g) {
    std::vector<std::vector<long>> m(g.rows(), std::vector<long>(g.cols()));
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) m[i][j] = to_long(g(i, j));
    return m;
}

// Depth-first assignment of images of e_0..e_{n-1} inside the lattice of A,
// matching the Gram matrix B. Used both for Aut(A) (B = A) and isometry search.
void assign_images(const SymFormZ& a, const SymFormZ& b, const AutVisitor& visit) {
    const std::size_t n = a.rank();
    SymFormZ pa = a, pb = b;
    if (n > 0 && a.gram(0, 0) < 0) {
        pa = SymFormZ(-a.gram);
        pb = SymFormZ(-b.gram);
    }
    Int maxnorm = 0;
    for (std::size_t i = 0; i < n; ++i) maxnorm = std::max(maxnorm, pb.gram(i, i));
    auto vecs = short_vectors(pa, maxnorm);
    auto ga = gram_long(pa.gram);
    auto gb = gram_long(pb.gram);
    // bucket candidates by norm, precompute A v
    struct Cand {
        std::vector<long> v, av;
        long norm;
    };
    std::map<long, std::vector<Cand>> by_norm;
    for (auto& v : vecs) {
        Cand c{v, std::vector<long>(n, 0), 0};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c.av[i] += ga[i][j] * v[j];
        for (std::size_t i = 0; i < n; ++i) c.norm += v[i] * c.av[i];
        by_norm[c.norm].push_back(std::move(c));
    }
    std::vector<const std::vector<Cand>*> pool(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = by_norm.find(gb[i][i]);
        if (it == by_norm.end()) return;
        pool[i] = &it->second;
    }
    std::vector<const Cand*> chosen(n, nullptr);
    std::vector<std::vector<long>> cols(n);
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (stop) return;
        if (i == n) {
            for (std::size_t j = 0; j < n; ++j) cols[j] = chosen[j]->v;
            if (!visit(cols)) stop = true;
            return;
        }
        for (const auto& c : *pool[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                long ip = 0;
                for (std::size_t k = 0; k < n; ++k) ip += chosen[j]->v[k] * c.av[k];
                ok = ip == gb[j][i];
            }
            if (!ok) continue;
            chosen[i] = &c;
            rec(i + 1);
            if (stop) return;
        }
    };
    rec(0);
}

// Rank two forms with an isotropic vector: -det is a nonzero square, so the
// two isotropic lines are rational and every isometry permutes them.
bool isotropic_rank2(const SymFormZ& a, std::vector<long>& v1, std::vector<long>& v2) {
    if (a.rank() != 2) return false;
    const Int p = a.gram(0, 0), q = a.gram(0, 1), r = a.gram(1, 1);
    const Int disc = q * q - p * r;
    if (disc <= 0) return false;
    Int s = sqrt(disc);
    if (s * s != disc) return false;
    auto prim = [](Int x, Int y) {
        Int g = gcd(x, y);
        if (g != 0) {
            x /= g;
            y /= g;
        }
        return std::vector<long>{to_long(x), to_long(y)};
    };
    if (p != 0) {
        v1 = prim(-q + s, p);
        v2 = prim(-q - s, p);
    } else {
        v1 = {1, 0};
        v2 = prim(-r, 2 * q);
    }
    return true;
}

void isotropic_automorphisms(const SymFormZ& a, const std::vector<long>& v1,
                             const std::vector<long>& v2, const AutVisitor& visit) {
    IntMatrix basis{{v1[0], v2[0]}, {v1[1], v2[1]}};
    RatMatrix binv = rational_inverse(basis);
    std::vector<IntMatrix> found;
    for (int swap = 0; swap < 2; ++swap)
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                const auto& w1 = swap ? v2 : v1;
                const auto& w2 = swap ? v1 : v2;
                IntMatrix img{{s1 * w1[0], s2 * w2[0]}, {s1 * w1[1], s2 * w2[1]}};
                RatMatrix m = to_rat(img) * binv;
                if (!is_integral(m)) continue;
                IntMatrix mi = to_int(m);
                if (mi.transpose() * a.gram * mi != a.gram) continue;
                found.push_back(mi);
            }
    for (const auto& m : found) {
        std::vector<std::vector<long>> cols(2, std::vector<long>(2));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) cols[j][i] = m(i, j).get_si();
        if (!visit(cols)) return;
    }
}

IntMatrix from_cols(const std::vector<std::vector<long>>& cols) {
    const std::size_t n = cols.size();
    IntMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return m;
}

}  // namespace

void for_each_automorphism(const SymFormZ& a, const AutVisitor& visit) {
    if (!is_nondegenerate(a)) throw DegenerateForm("automorphisms of a degenerate form");
    if (is_definite(a)) {
        assign_images(a, a, visit);
        return;
    }
    std::vector<long> v1, v2;
    if (isotropic_rank2(a, v1, v2)) {
        isotropic_automorphisms(a, v1, v2, visit);
        return;
    }
    throw IndefiniteForm("automorphism group of an indefinite form is infinite");
}

std::vector<IntMatrix> aut_group(const SymFormZ& a) {
    std::vector<IntMatrix> out;
    for_each_automorphism(a, [&](const std::vector<std::vector<long>>& cols) {
        out.push_back(from_cols(cols));
        return true;
    });
    std::sort(out.begin(), out.end(), [](const IntMatrix& x, const IntMatrix& y) {
        return std::lexicographical_compare(x.data().begin(), x.data().end(), y.data().begin(),
                                            y.data().end());
    });
    return out;
}

std::optional<IntMatrix> is_isometric(const SymFormZ& a, const SymFormZ& b) {
    if (a.rank() != b.rank()) throw RankMismatch("isometry test needs equal ranks");
    if (!is_definite(a) || !is_definite(b)) throw IndefiniteForm("isometry test needs definite forms");
    if (det(a.gram) != det(b.gram) || signature(a) != signature(b)) return std::nullopt;
    std::optional<IntMatrix> found;
    assign_images(a, b, [&](const std::vector<std::vector<long>>& cols) {
        found = from_cols(cols);
        return false;
    });
    return found;
}

}  // namespace z2s
