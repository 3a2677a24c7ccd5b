#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmb/errors.hpp"

namespace mmb {

template <class F>
using Vec = std::vector<F>;

// Dense row-major matrix over an exact field. Products skip zero entries,
// which is what keeps block-sparse graded maps cheap.
template <class F>
class Mat {
public:
    Mat() = default;
    Mat(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int k = 0; k < n; ++k) m(k, k) = F(1);
        return m;
    }
    static Mat column(const Vec<F>& v) {
        Mat m(static_cast<int>(v.size()), 1);
        for (int k = 0; k < m.r_; ++k) m(k, 0) = v[k];
        return m;
    }
    static Mat from_columns(const std::vector<Vec<F>>& cols, int rows) {
        Mat m(rows, static_cast<int>(cols.size()));
        for (int j = 0; j < m.c_; ++j)
            for (int k = 0; k < rows; ++k) m(k, j) = cols[j][k];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    F& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const F& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat& operator+=(const Mat& o) {
        assert(r_ == o.r_ && c_ == o.c_);
        for (size_t k = 0; k < a_.size(); ++k)
            if (!o.a_[k].is_zero()) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        assert(r_ == o.r_ && c_ == o.c_);
        for (size_t k = 0; k < a_.size(); ++k)
            if (!o.a_[k].is_zero()) a_[k] -= o.a_[k];
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    Mat operator-() const {
        Mat m = *this;
        for (auto& x : m.a_)
            if (!x.is_zero()) x = -x;
        return m;
    }
    Mat scaled(const F& s) const {
        Mat m = *this;
        for (auto& x : m.a_)
            if (!x.is_zero()) x *= s;
        return m;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        assert(a.c_ == b.r_);
        Mat m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const F& x = a(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < b.c_; ++j) {
                    const F& y = b(k, j);
                    if (!y.is_zero()) m(i, j) += x * y;
                }
            }
        return m;
    }

    Vec<F> apply(const Vec<F>& v) const {
        assert(static_cast<int>(v.size()) == c_);
        Vec<F> out(r_);
        for (int k = 0; k < c_; ++k) {
            if (v[k].is_zero()) continue;
            for (int i = 0; i < r_; ++i) {
                const F& x = (*this)(i, k);
                if (!x.is_zero()) out[i] += x * v[k];
            }
        }
        return out;
    }

    Mat transpose() const {
        Mat m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Mat block(int r0, int c0, int nr, int nc) const {
        Mat m(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }
    void set_block(int r0, int c0, const Mat& b) {
        for (int i = 0; i < b.r_; ++i)
            for (int j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    Mat select(const std::vector<int>& rows, const std::vector<int>& cols) const {
        Mat m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
        return m;
    }
    Vec<F> col(int j) const {
        Vec<F> v(r_);
        for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    Vec<F> row(int i) const {
        return Vec<F>(a_.begin() + static_cast<size_t>(i) * c_,
                      a_.begin() + static_cast<size_t>(i + 1) * c_);
    }
    static Mat hstack(const Mat& a, const Mat& b) {
        assert(a.r_ == b.r_);
        Mat m(a.r_, a.c_ + b.c_);
        m.set_block(0, 0, a);
        m.set_block(0, a.c_, b);
        return m;
    }
    static Mat vstack(const Mat& a, const Mat& b) {
        assert(a.c_ == b.c_);
        Mat m(a.r_ + b.r_, a.c_);
        m.set_block(0, 0, a);
        m.set_block(a.r_, 0, b);
        return m;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<F> a_;
};

template <class F>
Vec<F> operator+(Vec<F> a, const Vec<F>& b) {
    for (size_t k = 0; k < a.size(); ++k)
        if (!b[k].is_zero()) a[k] += b[k];
    return a;
}
template <class F>
Vec<F> operator-(Vec<F> a, const Vec<F>& b) {
    for (size_t k = 0; k < a.size(); ++k)
        if (!b[k].is_zero()) a[k] -= b[k];
    return a;
}
template <class F>
Vec<F> scale(Vec<F> a, const F& s) {
    for (auto& x : a)
        if (!x.is_zero()) x *= s;
    return a;
}
template <class F>
bool is_zero_vec(const Vec<F>& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

// Reduced row echelon form. Columns are visited in `order` (default natural);
// returns the pivot columns in the order they were found.
template <class F>
std::vector<int> rref_inplace(Mat<F>& A, const std::vector<int>& order = {}) {
    std::vector<int> cols = order;
    if (cols.empty())
        for (int j = 0; j < A.cols(); ++j) cols.push_back(j);
    std::vector<int> pivots;
    int r = 0;
    for (int j : cols) {
        if (r == A.rows()) break;
        int piv = -1;
        for (int i = r; i < A.rows(); ++i)
            if (!A(i, j).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int c = 0; c < A.cols(); ++c) std::swap(A(piv, c), A(r, c));
        F inv = F(1) / A(r, j);
        for (int c = 0; c < A.cols(); ++c)
            if (!A(r, c).is_zero()) A(r, c) *= inv;
        std::vector<int> nz;
        for (int c = 0; c < A.cols(); ++c)
            if (!A(r, c).is_zero()) nz.push_back(c);
        for (int i = 0; i < A.rows(); ++i) {
            if (i == r || A(i, j).is_zero()) continue;
            F f = A(i, j);
            for (int c : nz) A(i, c) -= f * A(r, c);
        }
        pivots.push_back(j);
        ++r;
    }
    return pivots;
}

template <class F>
int rank(Mat<F> A) {
    return static_cast<int>(rref_inplace(A).size());
}

// Columns form a basis of ker A. A column order permutes which variables
// are treated as free, giving a different (equally valid) basis.
template <class F>
Mat<F> kernel_basis(const Mat<F>& A0, const std::vector<int>& order = {}) {
    Mat<F> A = A0;
    std::vector<int> piv = rref_inplace(A, order);
    std::vector<char> is_piv(A.cols(), 0);
    for (int p : piv) is_piv[p] = 1;
    std::vector<int> freec;
    if (order.empty()) {
        for (int j = 0; j < A.cols(); ++j)
            if (!is_piv[j]) freec.push_back(j);
    } else {
        for (int j : order)
            if (!is_piv[j]) freec.push_back(j);
    }
    Mat<F> K(A.cols(), static_cast<int>(freec.size()));
    for (size_t f = 0; f < freec.size(); ++f) {
        K(freec[f], f) = F(1);
        for (size_t r = 0; r < piv.size(); ++r) K(piv[r], f) = -A(static_cast<int>(r), freec[f]);
    }
    return K;
}

template <class F>
std::optional<Mat<F>> try_inverse(const Mat<F>& A) {
    int n = A.rows();
    if (n != A.cols()) return std::nullopt;
    Mat<F> M = Mat<F>::hstack(A, Mat<F>::identity(n));
    std::vector<int> order;
    for (int j = 0; j < n; ++j) order.push_back(j);
    std::vector<int> piv = rref_inplace(M, order);
    if (static_cast<int>(piv.size()) < n) return std::nullopt;
    return M.block(0, n, n, n);
}

template <class F>
Mat<F> inverse(const Mat<F>& A) {
    auto inv = try_inverse(A);
    if (!inv) throw DegenerateScalar("singular matrix");
    return *inv;
}

// Some X with A X = B, if one exists.
template <class F>
std::optional<Mat<F>> solve(const Mat<F>& A, const Mat<F>& B) {
    Mat<F> M = Mat<F>::hstack(A, B);
    std::vector<int> order;
    for (int j = 0; j < A.cols(); ++j) order.push_back(j);
    std::vector<int> piv = rref_inplace(M, order);
    int r = static_cast<int>(piv.size());
    for (int i = r; i < M.rows(); ++i)
        for (int j = A.cols(); j < M.cols(); ++j)
            if (!M(i, j).is_zero()) return std::nullopt;
    Mat<F> X(A.cols(), B.cols());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < B.cols(); ++j) X(piv[i], j) = M(i, A.cols() + j);
    return X;
}

template <class F>
std::optional<Vec<F>> solve_vec(const Mat<F>& A, const Vec<F>& b) {
    auto X = solve(A, Mat<F>::column(b));
    if (!X) return std::nullopt;
    return X->col(0);
}

// A = C R with C of full column rank and R of full row rank.
template <class F>
std::pair<Mat<F>, Mat<F>> rank_factorize(const Mat<F>& A) {
    Mat<F> R = A;
    std::vector<int> piv = rref_inplace(R);
    int r = static_cast<int>(piv.size());
    Mat<F> C(A.rows(), r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < A.rows(); ++i) C(i, j) = A(i, piv[j]);
    return {C, R.block(0, 0, r, A.cols())};
}

// Indices (in the given visiting order) of columns independent of the
// columns of `base` and of each other: a greedy complement.
template <class F>
std::vector<int> greedy_complement(const Mat<F>& base, const Mat<F>& candidates,
                                   const std::vector<int>& order) {
    int n = base.rows();
    Mat<F> M = Mat<F>::hstack(base, candidates);
    std::vector<int> visit;
    for (int j = 0; j < base.cols(); ++j) visit.push_back(j);
    for (int j : order) visit.push_back(base.cols() + j);
    (void)n;
    std::vector<int> piv = rref_inplace(M, visit);
    std::vector<int> out;
    for (int p : piv)
        if (p >= base.cols()) out.push_back(p - base.cols());
    return out;
}

}  // namespace mmb
