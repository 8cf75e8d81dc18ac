#include "torusfan/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>

namespace torusfan {

IntMatrix SparseIntMatrix::dense() const {
    IntMatrix out(rows, std::vector<mpz_class>(cols));
    for (int i = 0; i < rows; ++i)
        for (const auto& [c, v] : entries[i]) out[i][c] = static_cast<long>(v);
    return out;
}

namespace {

// Brings a list of non-zero diagonal entries into divisibility-chain order.
std::vector<mpz_class> normalizeDiagonal(std::vector<mpz_class> d) {
    for (auto& x : d) x = abs(x);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            mpz_class g, l;
            mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            d[i] = g;
            d[j] = l;
        }
    return d;
}

struct Overflow {};

long long checkedMulSub(long long a, long long f, long long b) {
    long long prod, out;
    if (__builtin_mul_overflow(f, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
    return out;
}

}  // namespace

SmithResult smithNormalForm(const IntMatrix& input) {
    IntMatrix a = input;
    const int m = static_cast<int>(a.size());
    const int n = m ? static_cast<int>(a[0].size()) : 0;
    std::vector<mpz_class> diag;
    int t = 0;
    while (t < m && t < n) {
        // Smallest non-zero entry of the trailing block becomes the pivot.
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (a[i][j] != 0 && (pi < 0 || abs(a[i][j]) < abs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        std::swap(a[t], a[pi]);
        for (int i = 0; i < m; ++i) std::swap(a[i][t], a[i][pj]);

        bool clean = true;
        for (int i = t + 1; i < m; ++i) {
            if (a[i][t] == 0) continue;
            mpz_class q;
            mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
            for (int j = t; j < n; ++j) a[i][j] -= q * a[t][j];
            if (a[i][t] != 0) clean = false;
        }
        for (int j = t + 1; j < n; ++j) {
            if (a[t][j] == 0) continue;
            mpz_class q;
            mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
            for (int i = t; i < m; ++i) a[i][j] -= q * a[i][t];
            if (a[t][j] != 0) clean = false;
        }
        if (!clean) continue;
        diag.push_back(a[t][t]);
        ++t;
    }
    SmithResult r;
    r.rank = static_cast<int>(diag.size());
    r.factors = normalizeDiagonal(std::move(diag));
    return r;
}

namespace {

SmithResult sparseSmith(const SparseIntMatrix& a) {
    using Row = std::vector<std::pair<int, long long>>;
    std::vector<Row> rows = a.entries;
    std::vector<std::set<int>> colRows(a.cols);
    std::vector<bool> active(a.rows, true);
    for (int i = 0; i < a.rows; ++i)
        for (const auto& [c, v] : rows[i]) colRows[c].insert(i);

    int units = 0;
    while (true) {
        int pr = -1, pc = -1;
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (int i = 0; i < a.rows; ++i) {
            if (!active[i] || rows[i].empty()) continue;
            for (const auto& [c, v] : rows[i]) {
                if (v != 1 && v != -1) continue;
                const std::size_t cost = (rows[i].size() - 1) * (colRows[c].size() - 1);
                if (cost < best) {
                    best = cost;
                    pr = i;
                    pc = c;
                }
            }
            if (best == 0) break;
        }
        if (pr < 0) break;
        const Row pivotRow = rows[pr];
        long long pv = 0;
        for (const auto& [c, v] : pivotRow)
            if (c == pc) pv = v;
        const std::vector<int> targets(colRows[pc].begin(), colRows[pc].end());
        for (int i : targets) {
            if (i == pr) continue;
            long long f = 0;
            for (const auto& [c, v] : rows[i])
                if (c == pc) f = v * pv;
            Row merged;
            merged.reserve(rows[i].size() + pivotRow.size());
            std::size_t x = 0, y = 0;
            while (x < rows[i].size() || y < pivotRow.size()) {
                if (y == pivotRow.size() || (x < rows[i].size() && rows[i][x].first < pivotRow[y].first)) {
                    merged.push_back(rows[i][x++]);
                } else if (x == rows[i].size() || pivotRow[y].first < rows[i][x].first) {
                    const int c = pivotRow[y].first;
                    const long long v = checkedMulSub(0, f, pivotRow[y].second);
                    merged.emplace_back(c, v);
                    colRows[c].insert(i);
                    ++y;
                } else {
                    const int c = rows[i][x].first;
                    const long long v = checkedMulSub(rows[i][x].second, f, pivotRow[y].second);
                    if (v != 0)
                        merged.emplace_back(c, v);
                    else
                        colRows[c].erase(i);
                    ++x;
                    ++y;
                }
            }
            rows[i] = std::move(merged);
        }
        for (const auto& [c, v] : pivotRow) colRows[c].erase(pr);
        active[pr] = false;
        ++units;
    }

    std::map<int, int> usedCols;
    std::vector<int> leftover;
    for (int i = 0; i < a.rows; ++i) {
        if (!active[i] || rows[i].empty()) continue;
        leftover.push_back(i);
        for (const auto& [c, v] : rows[i]) usedCols.emplace(c, 0);
    }
    int k = 0;
    for (auto& [c, idx] : usedCols) idx = k++;
    IntMatrix rest(leftover.size(), std::vector<mpz_class>(usedCols.size()));
    for (std::size_t r = 0; r < leftover.size(); ++r)
        for (const auto& [c, v] : rows[leftover[r]]) rest[r][usedCols[c]] = static_cast<long>(v);
    SmithResult tail = smithNormalForm(rest);
    SmithResult out;
    out.rank = units + tail.rank;
    out.factors.assign(units, mpz_class(1));
    out.factors.insert(out.factors.end(), tail.factors.begin(), tail.factors.end());
    return out;
}

}  // namespace

SmithResult smithNormalForm(const SparseIntMatrix& a) {
    try {
        return sparseSmith(a);
    } catch (const Overflow&) {
        return smithNormalForm(a.dense());
    }
}

}  // namespace torusfan
