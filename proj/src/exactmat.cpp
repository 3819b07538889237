#include "z2s/exactmat.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace z2s {

template <class T>
Mat<T>::Mat(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (const auto& row : rows) {
        if (row.size() != c_) throw ShapeMismatch("ragged initializer");
        for (long v : row) a_.emplace_back(v);
    }
}

template <class T>
Mat<T> Mat<T>::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

template <class T>
Mat<T> Mat<T>::transpose() const {
    Mat t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

template <class T>
Mat<T> Mat<T>::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > r_ || c0 + nc > c_) throw ShapeMismatch("block out of range");
    Mat b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

template <class T>
void Mat<T>::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw ShapeMismatch("set_block out of range");
    for (std::size_t i = 0; i < b.r_; ++i)
        for (std::size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

template <class T>
Mat<T> Mat<T>::operator*(const Mat& o) const {
    if (c_ != o.r_) throw ShapeMismatch("product");
    Mat p(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const T& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
        }
    return p;
}

template <class T>
Mat<T> Mat<T>::operator+(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw ShapeMismatch("sum");
    Mat s(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += o.a_[i];
    return s;
}

template <class T>
Mat<T> Mat<T>::operator-(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw ShapeMismatch("difference");
    Mat s(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] -= o.a_[i];
    return s;
}

template <class T>
Mat<T> Mat<T>::operator-() const {
    Mat s(*this);
    for (auto& x : s.a_) x = -x;
    return s;
}

template <class T>
Mat<T> Mat<T>::scaled(const T& s) const {
    Mat m(*this);
    for (auto& x : m.a_) x *= s;
    return m;
}

template <class T>
bool Mat<T>::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const T& x) { return x == 0; });
}

template <class T>
void Mat<T>::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

template <class T>
void Mat<T>::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

template <class T>
void Mat<T>::add_row(std::size_t i, std::size_t j, const T& s) {
    if (s == 0) return;
    for (std::size_t k = 0; k < c_; ++k) (*this)(i, k) += s * (*this)(j, k);
}

template <class T>
void Mat<T>::add_col(std::size_t i, std::size_t j, const T& s) {
    if (s == 0) return;
    for (std::size_t k = 0; k < r_; ++k) (*this)(k, i) += s * (*this)(k, j);
}

template <class T>
void Mat<T>::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < c_; ++k) (*this)(i, k) = -(*this)(i, k);
}

template <class T>
void Mat<T>::negate_col(std::size_t j) {
    for (std::size_t k = 0; k < r_; ++k) (*this)(k, j) = -(*this)(k, j);
}

template class Mat<Int>;
template class Mat<Rat>;

template <class T>
Mat<T> hcat(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows()) throw ShapeMismatch("hcat");
    Mat<T> m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <class T>
Mat<T> vcat(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.cols()) throw ShapeMismatch("vcat");
    Mat<T> m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

template <class T>
Mat<T> block_diag(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

template IntMatrix hcat(const IntMatrix&, const IntMatrix&);
template RatMatrix hcat(const RatMatrix&, const RatMatrix&);
template IntMatrix vcat(const IntMatrix&, const IntMatrix&);
template RatMatrix vcat(const RatMatrix&, const RatMatrix&);
template IntMatrix block_diag(const IntMatrix&, const IntMatrix&);
template RatMatrix block_diag(const RatMatrix&, const RatMatrix&);

RatMatrix to_rat(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

bool is_integral(const RatMatrix& m) {
    return std::all_of(m.data().begin(), m.data().end(),
                       [](const Rat& q) { return q.get_den() == 1; });
}

IntMatrix to_int(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw ParseError("non-integral entry " + rat_str(m(i, j)));
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Rat frac_mod1(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rat r = q - Rat(f);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& q0) {
    Rat q = q0;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::vector<Int> SnfResult::diagonal() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
}

namespace {

// Nearest-integer quotient keeps remainders at most |p|/2.
Int round_div(const Int& a, const Int& p) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    // floor division leaves r with the sign of p, so r - p is the other candidate
    Int twice = 2 * abs(r);
    if (twice > abs(p)) q += 1;
    return q;
}

bool find_min_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
            if (d(i, j) == 0) continue;
            Int a = abs(d(i, j));
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    IntMatrix D = m, U = IntMatrix::identity(r), V = IntMatrix::identity(c);
    const std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pi = 0, pj = 0;
        if (!find_min_pivot(D, t, pi, pj)) break;
        D.swap_rows(t, pi);
        U.swap_rows(t, pi);
        D.swap_cols(t, pj);
        V.swap_cols(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (D(i, t) == 0) continue;
                Int q = round_div(D(i, t), D(t, t));
                D.add_row(i, t, -q);
                U.add_row(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (D(t, j) == 0) continue;
                Int q = round_div(D(t, j), D(t, t));
                D.add_col(j, t, -q);
                V.add_col(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) {
                // a smaller remainder sits in row t or column t; make it the pivot
                std::size_t bi = t, bj = t;
                Int best = abs(D(t, t));
                for (std::size_t i = t + 1; i < r; ++i)
                    if (D(i, t) != 0 && abs(D(i, t)) < best) best = abs(D(i, t)), bi = i, bj = t;
                for (std::size_t j = t + 1; j < c; ++j)
                    if (D(t, j) != 0 && abs(D(t, j)) < best) best = abs(D(t, j)), bi = t, bj = j;
                D.swap_rows(t, bi);
                U.swap_rows(t, bi);
                D.swap_cols(t, bj);
                V.swap_cols(t, bj);
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        D.add_row(t, i, 1);
                        U.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
    }
    return {U, D, V};
}

Int Cokernel::order() const {
    Int o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
}

std::string Cokernel::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    if (free_rank > 0) {
        os << (first ? "" : " + ") << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Cokernel cokernel_invariants(const IntMatrix& m) {
    auto s = smith_normal_form(m);
    Cokernel k;
    std::size_t nz = 0;
    for (const auto& d : s.diagonal()) {
        if (d == 0) continue;
        ++nz;
        if (d > 1) k.torsion.push_back(d);
    }
    k.free_rank = m.rows() - nz;
    return k;
}

namespace {

template <class T>
Mat<T> gauss_jordan_inverse(const Mat<T>& m) {
    if (!m.square()) throw NonSquare("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Rat(m(i, j));
        a(i, n + i) = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) throw SingularMatrix("determinant is zero");
        a.swap_rows(col, piv);
        Rat inv = 1 / a(col, col);
        for (std::size_t k = 0; k < 2 * n; ++k) a(col, k) *= inv;
        for (std::size_t i = 0; i < n; ++i)
            if (i != col && a(i, col) != 0) a.add_row(i, col, Rat(-a(i, col)));
    }
    return a.block(0, n, n, n);
}

}  // namespace

RatMatrix rational_inverse(const IntMatrix& m) { return gauss_jordan_inverse(to_rat(m)); }
RatMatrix rational_inverse(const RatMatrix& m) { return gauss_jordan_inverse(m); }

Int det(const IntMatrix& m) {
    if (!m.square()) throw NonSquare("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Rat det(const RatMatrix& m) {
    if (!m.square()) throw NonSquare("determinant of non-square matrix");
    RatMatrix a = m;
    Rat d = 1;
    const std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            a.swap_rows(col, piv);
            d = -d;
        }
        d *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i)
            if (a(i, col) != 0) a.add_row(i, col, Rat(-a(i, col) / a(col, col)));
    }
    return d;
}

bool has_integer_left_inverse(const IntMatrix& m) {
    if (m.rows() < m.cols()) return false;
    auto s = smith_normal_form(m);
    for (const auto& d : s.diagonal())
        if (d != 1) return false;
    return true;
}

bool is_unimodular(const IntMatrix& m) {
    if (!m.square()) return false;
    Int d = det(m);
    return d == 1 || d == -1;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (!is_unimodular(m)) throw SingularMatrix("matrix is not unimodular");
    return to_int(rational_inverse(m));
}

IntMatrix complete_basis(const IntMatrix& x) {
    if (!has_integer_left_inverse(x))
        throw PreconditionViolated("columns do not span a direct summand");
    auto s = smith_normal_form(x);
    IntMatrix uinv = unimodular_inverse(s.U);
    return uinv.block(0, x.cols(), x.rows(), x.rows() - x.cols());
}

bool solve_integral(const IntMatrix& x, const IntMatrix& v, IntMatrix& out) {
    if (x.rows() != v.rows()) throw ShapeMismatch("solve_integral");
    auto s = smith_normal_form(x);
    IntMatrix w = s.U * v;
    const std::size_t n = x.cols();
    IntMatrix y(n, v.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < v.cols(); ++k) {
            const Int d = i < n ? s.D(i, i) : Int(0);
            if (d == 0) {
                if (w(i, k) != 0) return false;
                continue;
            }
            if (w(i, k) % d != 0) return false;
            y(i, k) = w(i, k) / d;
        }
    // a zero invariant factor means the columns are dependent
    for (std::size_t i = 0; i < n; ++i)
        if (s.D(i, i) == 0) return false;
    out = s.V * y;
    return true;
}

IntMatrix parse_matrix(const std::string& text) {
    std::istringstream is(text);
    long r = -1, c = -1;
    if (!(is >> r >> c) || r < 0 || c < 0) throw ParseError("expected 'rows cols' header");
    IntMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) {
            std::string tok;
            if (!(is >> tok)) throw ParseError("too few entries");
            if (m(i, j).set_str(tok, 10) != 0) throw ParseError("bad integer '" + tok + "'");
        }
    std::string extra;
    if (is >> extra) throw ParseError("trailing data '" + extra + "'");
    return m;
}

IntMatrix parse_inline_matrix(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::stringstream ss(text);
    std::string chunk;
    while (std::getline(ss, chunk, '/')) {
        std::istringstream rs(chunk);
        std::vector<Int> row;
        std::string tok;
        while (rs >> tok) {
            Int v;
            if (v.set_str(tok, 10) != 0) throw ParseError("bad integer '" + tok + "'");
            row.push_back(v);
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw ParseError("empty matrix");
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw ParseError("ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::string format_matrix(const IntMatrix& m) {
    std::ostringstream os;
    os << m.rows() << " " << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << "\n";
    }
    return os.str();
}

std::string format_matrix(const RatMatrix& m) {
    std::ostringstream os;
    os << m.rows() << " " << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << rat_str(m(i, j));
        os << "\n";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
        os << "]";
    }
    return os << "]";
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << rat_str(m(i, j));
        os << "]";
    }
    return os << "]";
}

}  // namespace z2s
