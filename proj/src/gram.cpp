#include "fusioncat/gram.hpp"

#include "fusioncat/numbers.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace fusioncat {

bool IntMat::operator<(const IntMat& o) const {
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    return v < o.v;
}

const std::vector<SquareDecomposition>& sum_of_squares(int N) {
    static std::mutex mu;
    static std::map<int, std::vector<SquareDecomposition>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    std::vector<SquareDecomposition> out;
    SquareDecomposition cur;
    // descending choice of a keeps the stored pairs strictly increasing in a
    auto rec = [&](auto&& self, int rest, int maxA) -> void {
        if (rest == 0) {
            out.emplace_back(cur.rbegin(), cur.rend());
            return;
        }
        for (int a = std::min(maxA, (int)std::lround(std::sqrt((double)rest))); a >= 1; --a) {
            if (a * a > rest) continue;
            for (int b = 1; b * a * a <= rest; ++b) {
                cur.emplace_back(a, b);
                self(self, rest - b * a * a, a - 1);
                cur.pop_back();
            }
        }
    };
    int top = 0;
    while ((top + 1) * (top + 1) <= N) ++top;
    rec(rec, N, std::max(top, 0));
    std::sort(out.begin(), out.end());
    return cache.emplace(N, std::move(out)).first->second;
}

bool is_psd_exact(const std::vector<long long>& M, int n) {
    std::vector<Rational> A(n * (size_t)n);
    for (size_t i = 0; i < A.size(); ++i) A[i] = M[i];
    for (int i = 0; i < n; ++i) {
        Rational piv = A[(size_t)i * n + i];
        if (piv < 0) return false;
        if (piv == 0) {
            for (int j = i; j < n; ++j)
                if (A[(size_t)i * n + j] != 0) return false;
            continue;
        }
        for (int r = i + 1; r < n; ++r) {
            Rational f = A[(size_t)r * n + i] / piv;
            if (f == 0) continue;
            for (int c = i; c < n; ++c) A[(size_t)r * n + c] -= f * A[(size_t)i * n + c];
        }
    }
    return true;
}

IntMat sort_columns_desc(const IntMat& A) {
    std::vector<std::vector<int32_t>> cols(A.cols);
    for (int c = 0; c < A.cols; ++c) {
        cols[c].resize(A.rows);
        for (int r = 0; r < A.rows; ++r) cols[c][r] = A.at(r, c);
    }
    std::sort(cols.begin(), cols.end(), std::greater<>());
    IntMat out(A.rows, A.cols);
    for (int c = 0; c < A.cols; ++c)
        for (int r = 0; r < A.rows; ++r) out.at(r, c) = cols[c][r];
    return out;
}

namespace {

// One row at a time, in descending-diagonal order.  Columns identical on the
// rows already processed are interchangeable, so new-row values are assigned
// to them as non-increasing multisets; that is precisely enumeration up to
// column permutation.  Leftover squares of the diagonal open new columns.
struct GramSearch {
    const IntMat& M;  // row/col permuted target
    int n;
    std::vector<int> perm;                   // search row -> original row
    std::vector<std::vector<int32_t>> cols;  // each filled to the current depth
    std::vector<IntMat> out;

    GramSearch(const IntMat& Mp, std::vector<int> p) : M(Mp), n(Mp.rows), perm(std::move(p)) {}

    void run() { extend(0); }

    void emit() {
        int k = (int)cols.size();
        IntMat A(n, k);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < k; ++c) A.at(perm[r], c) = cols[c][r];
        out.push_back(sort_columns_desc(A));
    }

    void push_row(int m, const std::vector<int32_t>& assignment,
                  const std::vector<int32_t>& leftover) {
        size_t oldCols = cols.size();
        for (size_t c = 0; c < oldCols; ++c) cols[c].push_back(assignment[c]);
        for (int32_t a : leftover) {
            std::vector<int32_t> col(m + 1, 0);
            col[m] = a;
            cols.push_back(std::move(col));
        }
        extend(m + 1);
        cols.resize(oldCols);
        for (size_t c = 0; c < oldCols; ++c) cols[c].pop_back();
    }

    void extend(int m) {
        if (m == n) {
            emit();
            return;
        }
        const int diag = M.at(m, m);
        const size_t k = cols.size();
        if (diag == 0) {
            // PSD forces the whole original row to vanish; check the cross
            // entries against the rows already placed and add zeros.
            for (int l = 0; l < m; ++l)
                if (M.at(l, m) != 0) return;
            push_row(m, std::vector<int32_t>(k, 0), {});
            return;
        }
        if (k == 0) {
            for (const auto& sos : sum_of_squares(diag)) {
                std::vector<int32_t> leftover;
                for (auto [a, b] : sos)
                    for (int i = 0; i < b; ++i) leftover.push_back(a);
                push_row(m, {}, leftover);
            }
            return;
        }
        // group identical columns
        std::vector<std::vector<int>> groups;
        {
            std::vector<int> idx(k);
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(),
                             [&](int a, int b) { return cols[a] < cols[b]; });
            for (size_t i = 0; i < k;) {
                size_t j = i;
                groups.emplace_back();
                while (j < k && cols[idx[j]] == cols[idx[i]]) groups.back().push_back(idx[j++]);
                i = j;
            }
        }
        // flatten group slots into one assignment order; partial dot products
        // against the previous rows prune as soon as a row target is exceeded
        // or becomes unreachable
        std::vector<int> slotOrder, groupStart;
        for (const auto& grp : groups) {
            groupStart.push_back((int)slotOrder.size());
            for (int c : grp) slotOrder.push_back(c);
        }
        for (const auto& sos : sum_of_squares(diag)) {
            std::vector<int> value, budget;
            for (auto [a, b] : sos) {
                value.push_back(a);
                budget.push_back(b);
            }
            std::vector<int32_t> assignment(k, 0);
            std::vector<long long> dot(m, 0), rest(m, 0);
            for (int l = 0; l < m; ++l)
                for (size_t c = 0; c < k; ++c) rest[l] += cols[c][l];
            assign(m, slotOrder, groupStart, 0, INT32_MAX, assignment, value, budget, dot, rest);
        }
    }

    // Assign values along slotOrder (non-increasing inside each group); dot[l]
    // carries the partial inner product with previous row l, rest[l] the total
    // of the still-unassigned column entries in row l.
    void assign(int m, const std::vector<int>& slotOrder, const std::vector<int>& groupStart,
                size_t idx, int32_t maxVal, std::vector<int32_t>& assignment,
                const std::vector<int>& value, std::vector<int>& budget,
                std::vector<long long>& dot, std::vector<long long>& rest) {
        int vmax = 0;
        for (size_t vi = value.size(); vi-- > 0;)
            if (budget[vi]) {
                vmax = value[vi];
                break;
            }
        for (int l = 0; l < m; ++l) {
            long long target = M.at(l, m);
            if (dot[l] > target) return;
            if (dot[l] + (long long)vmax * rest[l] < target) return;
        }
        if (idx == slotOrder.size()) {
            for (int l = 0; l < m; ++l)
                if (dot[l] != M.at(l, m)) return;
            std::vector<int32_t> leftover;
            for (size_t i = 0; i < value.size(); ++i)
                for (int t = 0; t < budget[i]; ++t) leftover.push_back(value[i]);
            push_row(m, assignment, leftover);
            return;
        }
        bool groupHead =
            std::find(groupStart.begin(), groupStart.end(), (int)idx) != groupStart.end();
        int32_t cap = groupHead ? INT32_MAX : maxVal;
        int col = slotOrder[idx];
        for (int l = 0; l < m; ++l) rest[l] -= cols[col][l];
        // zero: ends the group's non-increasing run, so the rest of this
        // group is forced to zero as well
        {
            size_t skip = idx + 1;
            while (skip < slotOrder.size() &&
                   std::find(groupStart.begin(), groupStart.end(), (int)skip) == groupStart.end())
                ++skip;
            std::vector<long long> rest2 = rest;
            for (size_t j = idx + 1; j < skip; ++j)
                for (int l = 0; l < m; ++l) rest2[l] -= cols[slotOrder[j]][l];
            assign(m, slotOrder, groupStart, skip, INT32_MAX, assignment, value, budget, dot, rest2);
        }
        for (size_t vi = 0; vi < value.size(); ++vi) {
            if (budget[vi] == 0 || value[vi] > cap) continue;
            --budget[vi];
            assignment[col] = value[vi];
            for (int l = 0; l < m; ++l) dot[l] += (long long)value[vi] * cols[col][l];
            assign(m, slotOrder, groupStart, idx + 1, value[vi], assignment, value, budget, dot, rest);
            for (int l = 0; l < m; ++l) dot[l] -= (long long)value[vi] * cols[col][l];
            assignment[col] = 0;
            ++budget[vi];
        }
        for (int l = 0; l < m; ++l) rest[l] += cols[col][l];
    }
};

}  // namespace

std::vector<IntMat> gram_decompositions(const IntMat& M) {
    const int n = M.rows;
    {
        std::vector<long long> ml(M.v.begin(), M.v.end());
        if (!is_psd_exact(ml, n)) throw number_error("gram_decompositions: matrix is not PSD");
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return M.at(x, x) < M.at(y, y); });
    IntMat Mp(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Mp.at(i, j) = M.at(order[i], order[j]);

    GramSearch gs(Mp, order);
    gs.run();

    std::sort(gs.out.begin(), gs.out.end());
    gs.out.erase(std::unique(gs.out.begin(), gs.out.end()), gs.out.end());
    return gs.out;
}

}  // namespace fusioncat
