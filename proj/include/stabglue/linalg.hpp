#pragma once

#include "stabglue/field_traits.hpp"

#include <Eigen/Core>

#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

namespace stabglue {

template <typename F>
using Mat = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <typename F>
using Vec = Eigen::Matrix<F, Eigen::Dynamic, 1>;

template <typename F>
inline bool isZeroScalar(const F& x) {
    return x == F(0);
}

template <typename Derived>
inline bool isZeroMat(const Eigen::MatrixBase<Derived>& expr) {
    using F = typename Derived::Scalar;
    Mat<F> m = expr.eval();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!isZeroScalar<F>(m(i, j))) return false;
    return true;
}

/// Row echelon data: transform * input == reduced, with transform invertible.
/// Pivot choice is deterministic (leftmost column, first nonzero row), so all
/// derived bases are reproducible across runs.
template <typename F>
struct Echelon {
    Mat<F> reduced;
    Mat<F> transform;
    std::vector<Eigen::Index> pivotCols;
    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivotCols.size()); }
};

template <typename F>
Echelon<F> rowReduce(const Mat<F>& m) {
    Echelon<F> e;
    e.reduced = m;
    e.transform = Mat<F>::Identity(m.rows(), m.rows());
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = row; r < m.rows(); ++r)
            if (!isZeroScalar(e.reduced(r, col))) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row) {
            e.reduced.row(piv).swap(e.reduced.row(row));
            e.transform.row(piv).swap(e.transform.row(row));
        }
        F inv = F(1) / e.reduced(row, col);
        e.reduced.row(row) *= inv;
        e.transform.row(row) *= inv;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || isZeroScalar(e.reduced(r, col))) continue;
            F f = e.reduced(r, col);
            e.reduced.row(r) -= f * e.reduced.row(row);
            e.transform.row(r) -= f * e.transform.row(row);
        }
        e.pivotCols.push_back(col);
        ++row;
    }
    return e;
}

template <typename F>
Eigen::Index rank(const Mat<F>& m) {
    return rowReduce(m).rank();
}

/// Columns spanning ker(m); count = cols - rank, deterministic basis.
template <typename F>
Mat<F> kernelBasis(const Mat<F>& m) {
    Echelon<F> e = rowReduce(m);
    std::vector<Eigen::Index> freeCols;
    {
        std::size_t p = 0;
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (p < e.pivotCols.size() && e.pivotCols[p] == c) { ++p; continue; }
            freeCols.push_back(c);
        }
    }
    Mat<F> K = Mat<F>::Zero(m.cols(), static_cast<Eigen::Index>(freeCols.size()));
    for (std::size_t j = 0; j < freeCols.size(); ++j) {
        Eigen::Index fc = freeCols[j];
        K(fc, static_cast<Eigen::Index>(j)) = F(1);
        for (std::size_t p = 0; p < e.pivotCols.size(); ++p)
            K(e.pivotCols[p], static_cast<Eigen::Index>(j)) =
                -e.reduced(static_cast<Eigen::Index>(p), fc);
    }
    return K;
}

/// Pivot columns of m (a basis of im m in the ambient coordinates).
template <typename F>
Mat<F> imageBasis(const Mat<F>& m) {
    Echelon<F> e = rowReduce(m);
    Mat<F> B(m.rows(), e.rank());
    for (Eigen::Index j = 0; j < e.rank(); ++j) B.col(j) = m.col(e.pivotCols[j]);
    return B;
}

/// (image basis, cokernel projection): the projection is surjective with
/// kernel exactly im m.
template <typename F>
std::pair<Mat<F>, Mat<F>> imageCokernel(const Mat<F>& m) {
    Echelon<F> e = rowReduce(m);
    Mat<F> img(m.rows(), e.rank());
    for (Eigen::Index j = 0; j < e.rank(); ++j) img.col(j) = m.col(e.pivotCols[j]);
    Mat<F> proj = e.transform.bottomRows(m.rows() - e.rank());
    return {img, proj};
}

/// One solution of A x = b, if any.
template <typename F>
std::optional<Vec<F>> solve(const Mat<F>& A, const Vec<F>& b) {
    Mat<F> aug(A.rows(), A.cols() + 1);
    aug << A, b;
    Echelon<F> e = rowReduce(aug);
    for (auto c : e.pivotCols)
        if (c == A.cols()) return std::nullopt;
    Vec<F> x = Vec<F>::Zero(A.cols());
    for (std::size_t p = 0; p < e.pivotCols.size(); ++p)
        x(e.pivotCols[p]) = e.reduced(static_cast<Eigen::Index>(p), A.cols());
    return x;
}

/// One solution of A X = B, if any (columnwise).
template <typename F>
std::optional<Mat<F>> solveMatrix(const Mat<F>& A, const Mat<F>& B) {
    Mat<F> aug(A.rows(), A.cols() + B.cols());
    aug << A, B;
    Echelon<F> e = rowReduce(aug);
    for (auto c : e.pivotCols)
        if (c >= A.cols()) return std::nullopt;
    Mat<F> X = Mat<F>::Zero(A.cols(), B.cols());
    for (std::size_t p = 0; p < e.pivotCols.size(); ++p)
        X.row(e.pivotCols[p]) = e.reduced.row(static_cast<Eigen::Index>(p)).rightCols(B.cols());
    return X;
}

template <typename F>
Mat<F> inverse(const Mat<F>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    Echelon<F> e = rowReduce(m);
    if (e.rank() != m.rows()) throw std::invalid_argument("inverse: singular matrix");
    return e.transform;
}

template <typename F>
bool isInvertible(const Mat<F>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

template <typename F>
F det(const Mat<F>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
    Mat<F> a = m;
    F d(1);
    for (Eigen::Index col = 0; col < a.cols(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = col; r < a.rows(); ++r)
            if (!isZeroScalar(a(r, col))) { piv = r; break; }
        if (piv < 0) return F(0);
        if (piv != col) {
            a.row(piv).swap(a.row(col));
            d = -d;
        }
        d *= a(col, col);
        F inv = F(1) / a(col, col);
        for (Eigen::Index r = col + 1; r < a.rows(); ++r) {
            if (isZeroScalar(a(r, col))) continue;
            F f = a(r, col) * inv;
            a.row(r) -= f * a.row(col);
        }
    }
    return d;
}

/// Extend the (independent) columns of b to a basis of F^n by appending unit
/// vectors, deterministically.
template <typename F>
Mat<F> completeBasis(const Mat<F>& b, Eigen::Index n) {
    Mat<F> out(n, n);
    Eigen::Index have = b.cols();
    out.leftCols(have) = b;
    Mat<F> test = b;
    for (Eigen::Index e = 0; e < n && have < n; ++e) {
        Mat<F> cand(n, test.cols() + 1);
        cand.leftCols(test.cols()) = test;
        cand.col(test.cols()) = Vec<F>::Zero(n);
        cand(e, test.cols()) = F(1);
        if (rank(cand) == cand.cols()) {
            out.col(have) = cand.col(test.cols());
            test = cand;
            ++have;
        }
    }
    if (have != n) throw std::invalid_argument("completeBasis: input columns dependent");
    return out;
}

template <typename D1, typename D2>
Mat<typename D1::Scalar> hstack(const Eigen::MatrixBase<D1>& a, const Eigen::MatrixBase<D2>& b) {
    assert(a.rows() == b.rows());
    Mat<typename D1::Scalar> out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

template <typename D1, typename D2>
Mat<typename D1::Scalar> vstack(const Eigen::MatrixBase<D1>& a, const Eigen::MatrixBase<D2>& b) {
    assert(a.cols() == b.cols());
    Mat<typename D1::Scalar> out(a.rows() + b.rows(), a.cols());
    out << a, b;
    return out;
}

template <typename D1, typename D2>
Mat<typename D1::Scalar> blockDiag(const Eigen::MatrixBase<D1>& a,
                                   const Eigen::MatrixBase<D2>& b) {
    using F = typename D1::Scalar;
    Mat<F> out = Mat<F>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

}  // namespace stabglue
