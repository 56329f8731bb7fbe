#ifndef PERIODICA_LINALG_HPP
#define PERIODICA_LINALG_HPP

// Small dense matrices (g <= 12 here) templated over the scalar so the same
// LU/Cholesky kernels run in double and in double-double.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "periodica/dd.hpp"

namespace periodica {

template <class S>
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), d_(std::size_t(rows) * cols, S(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool empty() const { return d_.empty(); }

    S &operator()(int i, int j) { return d_[std::size_t(i) * c_ + j]; }
    const S &operator()(int i, int j) const { return d_[std::size_t(i) * c_ + j]; }

  private:
    int r_ = 0, c_ = 0;
    std::vector<S> d_;
};

using Mat = Matrix<double>;
using MatI = Matrix<int>;
using MatDD = Matrix<DDouble>;

template <class S, class T>
Matrix<S> convert(const Matrix<T> &a) {
    Matrix<S> out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = S(a(i, j));
    return out;
}

inline Mat narrow(const MatDD &a) {
    Mat out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = to_double(a(i, j));
    return out;
}

template <class S>
Matrix<S> operator*(const Matrix<S> &a, const Matrix<S> &b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Matrix<S> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            S aik = a(i, k);
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <class S>
Matrix<S> transpose(const Matrix<S> &a) {
    Matrix<S> t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

template <class S>
double max_abs(const Matrix<S> &a) {
    using std::abs;
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, to_double(abs(a(i, j))));
    return m;
}

template <class S>
double max_abs_diff(const Matrix<S> &a, const Matrix<S> &b) {
    using std::abs;
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, to_double(abs(a(i, j) - b(i, j))));
    return m;
}

template <class S>
double norm_inf(const Matrix<S> &a) {
    using std::abs;
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        double row = 0.0;
        for (int j = 0; j < a.cols(); ++j) row += to_double(abs(a(i, j)));
        m = std::max(m, row);
    }
    return m;
}

// LU factorization with partial pivoting, stored packed.
template <class S>
struct LUDecomposition {
    Matrix<S> lu;
    std::vector<int> piv;
    int pivot_sign = 1;
    bool singular = false;

    explicit LUDecomposition(Matrix<S> a) : lu(std::move(a)), piv(lu.rows()) {
        using std::abs;
        const int n = lu.rows();
        if (lu.cols() != n) throw std::invalid_argument("LU needs a square matrix");
        for (int i = 0; i < n; ++i) piv[i] = i;
        for (int col = 0; col < n; ++col) {
            int p = col;
            S best = abs(lu(col, col));
            for (int i = col + 1; i < n; ++i) {
                S v = abs(lu(i, col));
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            if (to_double(best) == 0.0) {
                singular = true;
                continue;
            }
            if (p != col) {
                for (int j = 0; j < n; ++j) std::swap(lu(p, j), lu(col, j));
                std::swap(piv[p], piv[col]);
                pivot_sign = -pivot_sign;
            }
            for (int i = col + 1; i < n; ++i) {
                S m = lu(i, col) / lu(col, col);
                lu(i, col) = m;
                for (int j = col + 1; j < n; ++j) lu(i, j) -= m * lu(col, j);
            }
        }
    }

    // solves A X = B column-wise
    Matrix<S> solve(const Matrix<S> &b) const {
        const int n = lu.rows();
        if (singular) throw std::runtime_error("LU solve on singular matrix");
        Matrix<S> x(n, b.cols());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < b.cols(); ++j) x(i, j) = b(piv[i], j);
        for (int col = 0; col < n; ++col) {
            for (int i = col + 1; i < n; ++i)
                for (int j = 0; j < b.cols(); ++j) x(i, j) -= lu(i, col) * x(col, j);
        }
        for (int col = n - 1; col >= 0; --col) {
            for (int j = 0; j < b.cols(); ++j) x(col, j) /= lu(col, col);
            for (int i = 0; i < col; ++i)
                for (int j = 0; j < b.cols(); ++j) x(i, j) -= lu(i, col) * x(col, j);
        }
        return x;
    }

    S det() const {
        S d{double(pivot_sign)};
        for (int i = 0; i < lu.rows(); ++i) d *= lu(i, i);
        return d;
    }
};

// Infinity-norm condition estimate; the inverse is formed only for the
// estimate, never for the period solve itself.
template <class S>
double condition_estimate(const Matrix<S> &a, const LUDecomposition<S> &f) {
    if (f.singular) return std::numeric_limits<double>::infinity();
    Matrix<S> inv = f.solve(Matrix<S>::identity(a.rows()));
    return norm_inf(a) * norm_inf(inv);
}

// Cholesky of a symmetric matrix; returns false when not positive definite.
template <class S>
bool cholesky(const Matrix<S> &a, Matrix<S> &l) {
    using std::sqrt;
    const int n = a.rows();
    l = Matrix<S>(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            S s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (!(to_double(s) > 0.0)) return false;
                l(i, i) = sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return true;
}

} // namespace periodica

#endif // PERIODICA_LINALG_HPP
