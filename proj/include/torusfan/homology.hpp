#ifndef TORUSFAN_HOMOLOGY_HPP
#define TORUSFAN_HOMOLOGY_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "torusfan/coefficients.hpp"
#include "torusfan/poset.hpp"
#include "torusfan/smith.hpp"

namespace torusfan {

/// Augmented cellular chain complex.  Dimension d runs from -1 (the root) to
/// n-1; boundary(d) maps d-cells to (d-1)-cells, with rows indexed by d-cells.
class ChainComplex {
public:
    /// Throws CheckFailure if some composite of boundaries is non-zero.
    explicit ChainComplex(const SimplicialPoset& poset);

    int topDimension() const noexcept { return static_cast<int>(cells_.size()) - 2; }
    int cellCount(int d) const { return static_cast<int>(cells_[d + 1].size()); }
    const std::vector<Index>& cells(int d) const { return cells_[d + 1]; }
    /// Empty for d = -1.
    const SparseIntMatrix& boundary(int d) const { return boundaries_[d + 1]; }

private:
    std::vector<std::vector<Index>> cells_;
    std::vector<SparseIntMatrix> boundaries_;
};

ChainComplex cellChainComplex(const SimplicialPoset& poset);

struct HomologyDimension {
    int dim = 0;
    long long betti = 0;
    std::vector<mpz_class> torsion;
    bool operator==(const HomologyDimension&) const = default;
};

/// Reduced homology in dimensions -1..n-1.
struct HomologyGroups {
    std::vector<HomologyDimension> dims;

    const HomologyDimension& at(int d) const { return dims.at(d + 1); }
    /// Z in dimension k and zero elsewhere; for k = -1 this is the empty complex.
    bool isSphere(int k) const;
    bool operator==(const HomologyGroups&) const = default;
};

HomologyGroups reducedHomology(const SimplicialPoset& poset,
                               const CoefficientDomain& coeffs = CoefficientDomain::integers());
/// Same as reducedHomology but computed from the barycentric subdivision.
HomologyGroups reducedHomologyViaSubdivision(const SimplicialPoset& poset,
                                             const CoefficientDomain& coeffs = CoefficientDomain::integers());

/// Upper set of x re-ranked by rk y - rk x; ids and labels are kept.
SimplicialPoset link(const SimplicialPoset& poset, Index x);

struct FaceFailure {
    int id = 0;
    std::string reason;
};

struct CMVerdict {
    std::string field;
    bool cohenMacaulay = true;
    std::vector<FaceFailure> failures;
};

/// Reisner test with link dimensions measured against rank(poset).  Fields are Q or Z/p.
std::vector<CMVerdict> cohenMacaulay(const SimplicialPoset& poset, const std::vector<CoefficientDomain>& fields);

struct GorensteinVerdict {
    bool gorenstein = true;
    std::vector<FaceFailure> failures;
};

/// Every link, the root included, has the integral homology of a sphere of
/// dimension n - rk x - 1.  Throws InputError above limits.maxRank.
GorensteinVerdict gorensteinStar(const SimplicialPoset& poset, const PosetLimits& limits = {});

/// Pure, and every rank n-1 element lies below exactly two rank-n elements.
bool pseudomanifold(const SimplicialPoset& poset);
/// Euler characteristic equals that of the (n-1)-sphere.
bool eulerSphereCheck(const SimplicialPoset& poset);

}  // namespace torusfan

#endif
