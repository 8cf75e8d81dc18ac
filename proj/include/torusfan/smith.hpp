#ifndef TORUSFAN_SMITH_HPP
#define TORUSFAN_SMITH_HPP

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace torusfan {

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Row-major sparse integer matrix; each row sorted by column, no explicit zeros.
struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, long long>>> entries;

    IntMatrix dense() const;
};

struct SmithResult {
    /// Non-zero invariant factors d_1 | d_2 | ..., all positive.
    std::vector<mpz_class> factors;
    int rank = 0;
};

SmithResult smithNormalForm(const IntMatrix& a);
/// Eliminates unit pivots sparsely and hands the remainder to the dense routine.
SmithResult smithNormalForm(const SparseIntMatrix& a);

}  // namespace torusfan

#endif
