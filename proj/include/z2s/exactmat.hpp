#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "z2s/errors.hpp"

namespace z2s {

using Int = mpz_class;
using Rat = mpq_class;

// Dense row-major matrix. Used with Int and Rat entries only.
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
    Mat(std::initializer_list<std::initializer_list<long>> rows);

    static Mat identity(std::size_t n);
    static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<T>& data() const { return a_; }

    Mat transpose() const;
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    Mat col(std::size_t j) const { return block(0, j, r_, 1); }
    Mat row(std::size_t i) const { return block(i, 0, 1, c_); }
    void set_block(std::size_t r0, std::size_t c0, const Mat& b);

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const T& s) const;
    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool is_zero() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row_i += s * row_j
    void add_row(std::size_t i, std::size_t j, const T& s);
    void add_col(std::size_t i, std::size_t j, const T& s);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Mat<Int>;
using RatMatrix = Mat<Rat>;

// [a | b] and [a ; b]
template <class T> Mat<T> hcat(const Mat<T>& a, const Mat<T>& b);
template <class T> Mat<T> vcat(const Mat<T>& a, const Mat<T>& b);
template <class T> Mat<T> block_diag(const Mat<T>& a, const Mat<T>& b);

RatMatrix to_rat(const IntMatrix& m);
// Throws ShapeMismatch-free ParseError if some entry is not integral.
IntMatrix to_int(const RatMatrix& m);
bool is_integral(const RatMatrix& m);

struct SnfResult {
    IntMatrix U, D, V;
    std::vector<Int> diagonal() const;
};

SnfResult smith_normal_form(const IntMatrix& m);

struct Cokernel {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
    Int order() const;  // product of torsion, meaningful when free_rank == 0
    std::string to_string() const;
    bool operator==(const Cokernel& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

Cokernel cokernel_invariants(const IntMatrix& m);
RatMatrix rational_inverse(const IntMatrix& m);
RatMatrix rational_inverse(const RatMatrix& m);
Int det(const IntMatrix& m);
Rat det(const RatMatrix& m);
bool has_integer_left_inverse(const IntMatrix& m);

// Integer inverse of a unimodular matrix. SingularMatrix if not unimodular.
IntMatrix unimodular_inverse(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

// For X with columns spanning a direct summand of Z^r, returns W such that
// [X | W] is unimodular. PreconditionViolated otherwise.
IntMatrix complete_basis(const IntMatrix& x);

// Unique integer solution c of [X] c = v when X has full column rank and v
// lies in its column span; nullopt-like failure reported via bool.
bool solve_integral(const IntMatrix& x, const IntMatrix& v, IntMatrix& out);

IntMatrix parse_matrix(const std::string& text);
// Rows separated by '/', e.g. "2 2 / 0 1".
IntMatrix parse_inline_matrix(const std::string& text);
std::string format_matrix(const IntMatrix& m);
std::string format_matrix(const RatMatrix& m);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

// Reduced-fraction text, "a/b" or "a".
std::string rat_str(const Rat& q);
// Representative in [0, 1).
Rat frac_mod1(const Rat& q);
Int mod_floor(const Int& a, const Int& m);

}  // namespace z2s
