#ifndef TORUSFAN_CHARFUN_HPP
#define TORUSFAN_CHARFUN_HPP

#include <optional>
#include <string>
#include <vector>

#include "torusfan/characteristic_map.hpp"
#include "torusfan/facering.hpp"
#include "torusfan/polynomial.hpp"
#include "torusfan/poset.hpp"

namespace torusfan {

using IntVector = std::vector<long long>;

struct UnimodularReport {
    bool ok = true;
    /// Offending element ids with a reason.
    std::vector<std::pair<int, std::string>> violations;
};

/// Every element's vertex vectors extend to a basis of Z^n.  Non-primitive
/// vectors are reported as violations; missing or wrong-length entries throw InputError.
UnimodularReport checkUnimodular(const SimplicialPoset& poset, const CharacteristicMap& lambda);

/// True when the rows span a saturated sublattice of full row rank.
bool isUnimodularRows(const std::vector<IntVector>& rows);

/// Primitive vectors with entries in [-bound, bound], ordered by l1-norm, then
/// lexicographically descending.  e_1, ..., e_n come first.
std::vector<IntVector> candidateVectors(int n, int bound);

/// Depth-first search over vertices in id order with candidates from candidateVectors.
std::optional<CharacteristicMap> findCharacteristicMap(const SimplicialPoset& poset, int bound);

struct GKMEdge {
    Index element = 0;
    int id = 0;
    int from = 0;  // vertex positions in GKMGraph::vertices
    int to = 0;
    IntVector alphaFrom;  // label of the edge seen from `from`
    IntVector alphaTo;
    int sign = 0;  // alphaTo = sign * alphaFrom; 0 if not proportional
    bool axiom1 = false;
    bool axiom3 = false;
};

struct GKMViolation {
    int edgeId = -1;
    std::string axiom;
    std::string detail;
};

struct GKMGraph {
    int n = 0;
    std::vector<Index> vertices;
    std::vector<GKMEdge> edges;
    /// incident[v][j]: edge index of the face of vertices[v] omitting its j-th vertex, -1 if none.
    std::vector<std::vector<int>> incident;
    /// labels[v][j]: j-th dual basis vector at vertices[v].
    std::vector<std::vector<IntVector>> labels;
    std::vector<GKMViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
    int vertexPosition(Index p) const;
};

/// Throws InputError unless the poset is pure and lambda unimodular.  Axiom
/// failures and valency defects land in `violations`.
GKMGraph buildGKMGraph(const SimplicialPoset& poset, const CharacteristicMap& lambda);

/// Component at p: product of alpha over the edges at p not containing x, or 0 unless x <= p.
std::vector<Polynomial> thomClassRestriction(const SimplicialPoset& poset, const GKMGraph& graph, Index x);

struct DivisibilityReport {
    bool ok = true;
    bool integral = true;  // every quotient has integer coefficients
    std::vector<int> failingEdges;  // element ids
};

DivisibilityReport divisibilityCheck(const GKMGraph& graph, const std::vector<Polynomial>& eta);

/// Dimension over Q of the degree-k part of the GKM subalgebra (polynomial degree k).
long long gkmSubalgebraDimension(const GKMGraph& graph, int k);

/// Restriction at each vertex followed by t_j -> alpha_p(e_j).
std::vector<Polynomial> faceRingToGKM(const GKMGraph& graph, const RingElement& a);

/// Rank over Q of the image of the degree-2k chain monomials.
long long gkmImageRank(const FaceRingPtr& ring, const GKMGraph& graph, int k);

}  // namespace torusfan

#endif
