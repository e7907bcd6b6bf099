#ifndef QES_LINALG_HPP
#define QES_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qes/numeric.hpp"

namespace qes {

template <class T>
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : r_(rows), c_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    friend bool operator==(const Matrix& x, const Matrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }

   private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

/// Fraction-free (Bareiss) determinant of a square integer matrix.
BigInt bareiss_determinant(Matrix<BigInt> m);

/// Determinant of a square rational matrix (scaled to integers, then Bareiss).
Rational determinant(const Matrix<Rational>& m);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(Matrix<Rational>& m);

std::size_t rank(Matrix<Rational> m);

/// Basis of the right null space, one vector per free column.
std::vector<std::vector<Rational>> kernel(Matrix<Rational> m);

/// Clears denominators and divides by the gcd; first nonzero entry made positive.
std::vector<BigInt> primitive_integer_vector(const std::vector<Rational>& v);

/// Solves A x = b for square nonsingular A; throws DegenerateError if singular.
std::vector<Rational> solve(Matrix<Rational> a, std::vector<Rational> b);

/// Division-free determinant (Berkowitz) over any commutative ring R;
/// `zero` and `one` supply the ring constants.
template <class R>
R berkowitz_determinant(const Matrix<R>& a, const R& zero, const R& one) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    if (n == 0) return one;
    // characteristic-polynomial coefficients of the leading r x r block, highest first
    std::vector<R> c{one, R(zero - a(0, 0))};
    for (std::size_t r = 1; r < n; ++r) {
        // Toeplitz column: 1, -a_rr, -R S, -R A S, ..., -R A^{r-1} S
        std::vector<R> col(r + 2, zero);
        col[0] = one;
        col[1] = zero - a(r, r);
        std::vector<R> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            R s = zero;
            for (std::size_t j = 0; j < r; ++j) s = s + a(r, j) * v[j];
            col[k + 2] = zero - s;
            std::vector<R> w(r, zero);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) w[i] = w[i] + a(i, j) * v[j];
            v = std::move(w);
        }
        std::vector<R> next(r + 2, zero);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= i && j < c.size(); ++j) next[i] = next[i] + col[i - j] * c[j];
        c = std::move(next);
    }
    R det = c.back();
    return (n % 2 == 1) ? R(zero - det) : det;
}

}  // namespace qes

#endif  // QES_LINALG_HPP
