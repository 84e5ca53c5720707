#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "linstrand/field.hpp"

namespace linstrand {

template <class S> using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S> using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Reduced row echelon form together with its pivot columns.
template <class S> struct Echelon {
    Mat<S> reduced;
    std::vector<Index> pivots;

    Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Gauss-Jordan elimination with the leftmost pivot taken from the first
/// nonzero row.  Exact arithmetic, so no magnitude pivoting.
template <class S> Echelon<S> rref(const Mat<S>& m);

template <class S> Index rank(const Mat<S>& m);

/// Canonical kernel basis, one column per free column f of rref(m), with a
/// 1 in coordinate f and zeros in the other free coordinates.
template <class S> Mat<S> nullspace(const Mat<S>& m);

/// A particular solution of m x = b (free variables set to 0), or nullopt
/// when the system is inconsistent.
template <class S> std::optional<Vec<S>> solve(const Mat<S>& m, const Vec<S>& b);

/// Throws FieldMismatch unless every entry lives in the same field.
template <class S> void check_same_field(const Mat<S>& m);

/// Rows of the reduced echelon form with the zero rows dropped; a canonical
/// basis of the row space.
template <class S> Mat<S> row_basis(const Mat<S>& m);

template <class S> bool same_row_space(const Mat<S>& a, const Mat<S>& b);

/// True when v lies in the column span of `columns`.
template <class S> bool in_column_span(const Mat<S>& columns, const Vec<S>& v);

template <class S> bool is_zero_matrix(const Mat<S>& m) {
    for (Index i = 0; i < m.size(); ++i)
        if (!is_zero(m.data()[i])) return false;
    return true;
}

template <class S> Mat<S> vstack(const Mat<S>& top, const Mat<S>& bottom) {
    if (top.rows() == 0) return bottom;
    if (bottom.rows() == 0) return top;
    if (top.cols() != bottom.cols()) fail(ErrorCode::DimensionMismatch, "vstack column counts differ");
    Mat<S> out(top.rows() + bottom.rows(), top.cols());
    out.topRows(top.rows()) = top;
    out.bottomRows(bottom.rows()) = bottom;
    return out;
}

template <class S> Mat<S> hstack(const Mat<S>& left, const Mat<S>& right) {
    if (left.cols() == 0) return right;
    if (right.cols() == 0) return left;
    if (left.rows() != right.rows()) fail(ErrorCode::DimensionMismatch, "hstack row counts differ");
    Mat<S> out(left.rows(), left.cols() + right.cols());
    out.leftCols(left.cols()) = left;
    out.rightCols(right.cols()) = right;
    return out;
}

template <class S> Mat<S> zeros(Index rows, Index cols) {
    Mat<S> m(rows, cols);
    m.setConstant(S(0));
    return m;
}

}  // namespace linstrand
