#include "linstrand/linalg.hpp"

#include <utility>

namespace linstrand {

namespace {

// Row-major working copy; elimination walks rows, so this keeps the inner
// loops contiguous.
template <class S> using RowMat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <class S> void eliminate_below_above(RowMat<S>& a, std::vector<Index>& pivots, bool full) {
    const Index rows = a.rows(), cols = a.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index pr = r;
        while (pr < rows && is_zero(a(pr, c))) ++pr;
        if (pr == rows) continue;
        if (pr != r) a.row(pr).swap(a.row(r));
        const S inv = S(1) / a(r, c);
        S* prow = &a(r, 0);
        for (Index k = c; k < cols; ++k) prow[k] *= inv;
        const Index first = full ? 0 : r + 1;
        for (Index i = first; i < rows; ++i) {
            if (i == r) continue;
            S* row = &a(i, 0);
            if (is_zero(row[c])) continue;
            const S f = row[c];
            for (Index k = c; k < cols; ++k)
                if (!is_zero(prow[k])) row[k] -= f * prow[k];
        }
        pivots.push_back(c);
        ++r;
    }
}

}  // namespace

template <class S> void check_same_field(const Mat<S>& m) {
    if constexpr (std::is_same_v<S, Fp>) {
        std::uint32_t p = 0;
        for (Index i = 0; i < m.size(); ++i) {
            const std::uint32_t q = m.data()[i].modulus();
            if (q == 0) continue;
            if (p == 0) p = q;
            else if (p != q) fail(ErrorCode::FieldMismatch, "matrix mixes residues modulo different primes");
        }
    }
}

template <class S> Echelon<S> rref(const Mat<S>& m) {
    check_same_field(m);
    RowMat<S> a = m;
    Echelon<S> out;
    eliminate_below_above(a, out.pivots, true);
    out.reduced = a;
    return out;
}

template <class S> Index rank(const Mat<S>& m) {
    check_same_field(m);
    // eliminate on the orientation with fewer columns per row
    std::vector<Index> pivots;
    if (m.cols() <= m.rows()) {
        RowMat<S> a = m;
        eliminate_below_above(a, pivots, false);
    } else {
        RowMat<S> a = m.transpose();
        eliminate_below_above(a, pivots, false);
    }
    return static_cast<Index>(pivots.size());
}

template <class S> Mat<S> nullspace(const Mat<S>& m) {
    const Echelon<S> e = rref(m);
    const Index cols = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (Index c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    Mat<S> basis = zeros<S>(cols, cols - e.rank());
    Index out = 0;
    for (Index f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        basis(f, out) = S(1);
        for (Index r = 0; r < e.rank(); ++r) basis(e.pivots[static_cast<std::size_t>(r)], out) = -e.reduced(r, f);
        ++out;
    }
    return basis;
}

template <class S> std::optional<Vec<S>> solve(const Mat<S>& m, const Vec<S>& b) {
    if (b.size() != m.rows()) fail(ErrorCode::DimensionMismatch, "solve: right-hand side length differs from row count");
    Mat<S> aug(m.rows(), m.cols() + 1);
    aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = b;
    const Echelon<S> e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vec<S> x(m.cols());
    x.setConstant(S(0));
    for (Index r = 0; r < e.rank(); ++r) x(e.pivots[static_cast<std::size_t>(r)]) = e.reduced(r, m.cols());
    return x;
}

template <class S> Mat<S> row_basis(const Mat<S>& m) {
    const Echelon<S> e = rref(m);
    return e.reduced.topRows(e.rank());
}

template <class S> bool same_row_space(const Mat<S>& a, const Mat<S>& b) {
    if (a.cols() != b.cols()) return false;
    const Mat<S> ra = row_basis(a), rb = row_basis(b);
    return ra.rows() == rb.rows() && ra == rb;
}

template <class S> bool in_column_span(const Mat<S>& columns, const Vec<S>& v) {
    if (columns.cols() == 0) {
        for (Index i = 0; i < v.size(); ++i)
            if (!is_zero(v(i))) return false;
        return true;
    }
    return solve(columns, v).has_value();
}

#define LINSTRAND_INSTANTIATE(S)                                              \
    template void check_same_field<S>(const Mat<S>&);                         \
    template Echelon<S> rref<S>(const Mat<S>&);                               \
    template Index rank<S>(const Mat<S>&);                                    \
    template Mat<S> nullspace<S>(const Mat<S>&);                              \
    template std::optional<Vec<S>> solve<S>(const Mat<S>&, const Vec<S>&);    \
    template Mat<S> row_basis<S>(const Mat<S>&);                              \
    template bool same_row_space<S>(const Mat<S>&, const Mat<S>&);            \
    template bool in_column_span<S>(const Mat<S>&, const Vec<S>&);

LINSTRAND_INSTANTIATE(Fp)
LINSTRAND_INSTANTIATE(Rational)

}  // namespace linstrand
