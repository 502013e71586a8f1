#include "qfb/linalg.hpp"

namespace qfb {

std::vector<size_t> rref(Mat& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t sel = m.rows;
        for (size_t k = r; k < m.rows; ++k)
            if (!m.at(k, c).is_zero()) {
                sel = k;
                break;
            }
        if (sel == m.rows) continue;
        if (sel != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        Scalar inv = m.at(r, c).inv();
        for (size_t j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (size_t k = 0; k < m.rows; ++k) {
            if (k == r || m.at(k, c).is_zero()) continue;
            Scalar f = m.at(k, c);
            for (size_t j = c; j < m.cols; ++j) m.at(k, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank(Mat m) { return rref(m).size(); }

std::vector<std::vector<Scalar>> kernel_basis(Mat m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(m.cols, Scalar::zero());
        v[free] = Scalar::one();
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m.at(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Scalar>> solve(Mat m, std::vector<Scalar> b) {
    // augment and reduce
    Mat aug(m.rows, m.cols + 1);
    for (size_t r = 0; r < m.rows; ++r) {
        for (size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = b[r];
    }
    auto pivots = rref(aug);
    for (size_t c : pivots)
        if (c == m.cols) return std::nullopt;  // inconsistent
    std::vector<Scalar> x(m.cols, Scalar::zero());
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(k, m.cols);
    return x;
}

bool in_row_span(const Mat& m, const std::vector<Scalar>& v) {
    Mat big(m.rows + 1, m.cols);
    big.a.assign(m.a.begin(), m.a.end());
    big.a.insert(big.a.end(), v.begin(), v.end());
    return rank(big) == rank(m);
}

Mat mat_identity(size_t n, const std::shared_ptr<const ParamTable>& tab) {
    Mat m(n, n);
    for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < n; ++j) m.at(k, j) = k == j ? Scalar::one(tab) : Scalar::zero(tab);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    Mat out(a.rows, b.cols);
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t c = 0; c < b.cols; ++c) {
            Scalar s = Scalar::zero();
            for (size_t k = 0; k < a.cols; ++k) s += a.at(r, k) * b.at(k, c);
            out.at(r, c) = s;
        }
    return out;
}

Mat mat_inv(const Mat& m) {
    size_t n = m.rows;
    Mat aug(n, 2 * n);
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = Scalar::one();
    }
    auto pivots = rref(aug);
    for (size_t k = 0; k < n; ++k)
        if (k >= pivots.size() || pivots[k] != k) throw std::domain_error("singular matrix");
    Mat out(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) out.at(r, c) = aug.at(r, n + c);
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows * b.rows, a.cols * b.cols);
    for (size_t r1 = 0; r1 < a.rows; ++r1)
        for (size_t c1 = 0; c1 < a.cols; ++c1)
            for (size_t r2 = 0; r2 < b.rows; ++r2)
                for (size_t c2 = 0; c2 < b.cols; ++c2)
                    out.at(r1 * b.rows + r2, c1 * b.cols + c2) = a.at(r1, c1) * b.at(r2, c2);
    return out;
}

}  // namespace qfb
