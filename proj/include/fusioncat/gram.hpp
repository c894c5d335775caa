#pragma once

// Decompositions M = A A^T of a positive semi-definite nonnegative integer
// matrix with A nonnegative integer and no zero columns, up to column
// permutation.  Depth-first extension one row at a time: the values placed in
// existing columns come from a sum-of-squares decomposition of the diagonal
// entry, leftover squares open fresh columns with zeros above.

#include <cstdint>
#include <vector>

namespace fusioncat {

struct IntMat {
    int rows = 0, cols = 0;
    std::vector<int32_t> v;  // row-major

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), v((size_t)r * c, 0) {}
    int32_t at(int r, int c) const { return v[(size_t)r * cols + c]; }
    int32_t& at(int r, int c) { return v[(size_t)r * cols + c]; }
    bool operator==(const IntMat& o) const {
        return rows == o.rows && cols == o.cols && v == o.v;
    }
    bool operator<(const IntMat& o) const;
};

// All ways to write N = sum_i b_i * a_i^2 with 0 < a_1 < a_2 < ..., b_i > 0.
// Pairs are (a_i, b_i).  N = 0 yields the single empty decomposition.
using SquareDecomposition = std::vector<std::pair<int, int>>;
const std::vector<SquareDecomposition>& sum_of_squares(int N);

// Exact rational LDL^T elimination; a zero pivot forces its whole row to
// vanish.  M is a symmetric integer matrix, row-major n x n.
bool is_psd_exact(const std::vector<long long>& M, int n);

// Every A with A A^T = M and no zero column, one representative per column
// permutation class (columns sorted descending lexicographically), sorted.
// Requires is_psd_exact(M).
std::vector<IntMat> gram_decompositions(const IntMat& M);

// Canonical representative of the column-permutation class.
IntMat sort_columns_desc(const IntMat& A);

}  // namespace fusioncat
