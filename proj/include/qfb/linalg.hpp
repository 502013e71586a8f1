#pragma once

#include "qfb/scalar.hpp"

namespace qfb {

/// Dense exact matrix over the scalar field.
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
    Scalar& at(size_t r, size_t c) { return a[r * cols + c]; }
    const Scalar& at(size_t r, size_t c) const { return a[r * cols + c]; }
};

/// In-place reduced row echelon form; returns pivot column indices.
std::vector<size_t> rref(Mat& m);

size_t rank(Mat m);

/// Basis of the right kernel {x : m x = 0}.
std::vector<std::vector<Scalar>> kernel_basis(Mat m);

/// One solution of m x = b, if any.
std::optional<std::vector<Scalar>> solve(Mat m, std::vector<Scalar> b);

/// Whether v lies in the row span of m.
bool in_row_span(const Mat& m, const std::vector<Scalar>& v);

Mat mat_identity(size_t n, const std::shared_ptr<const ParamTable>& tab = nullptr);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_inv(const Mat& m);  // throws on singular input
Mat kron(const Mat& a, const Mat& b);

/// Indexes arbitrary keys so sparse elements can become dense rows.
template <class K>
struct Indexer {
    std::map<K, size_t> pos;
    std::vector<K> keys;

    size_t id(const K& k) {
        auto it = pos.find(k);
        if (it != pos.end()) return it->second;
        pos.emplace(k, keys.size());
        keys.push_back(k);
        return keys.size() - 1;
    }
    size_t size() const { return keys.size(); }
};

/// Builds the matrix whose rows are the given sparse vectors.
template <class K>
Mat rows_from_sparse(const std::vector<std::map<K, Scalar>>& elts, Indexer<K>& ix) {
    for (const auto& e : elts)
        for (const auto& [k, c] : e) ix.id(k);
    Mat m(elts.size(), ix.size());
    for (size_t r = 0; r < elts.size(); ++r)
        for (const auto& [k, c] : elts[r]) m.at(r, ix.pos.at(k)) = c;
    return m;
}

}  // namespace qfb
