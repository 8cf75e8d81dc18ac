#include "torusfan/charfun.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "torusfan/error.hpp"
#include "torusfan/linalg.hpp"
#include "torusfan/smith.hpp"

namespace torusfan {

namespace {

long long gcdAll(const IntVector& v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x);
    return g;
}

std::string vecString(const IntVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

const IntVector& lookup(const SimplicialPoset& poset, const CharacteristicMap& lambda, Index v) {
    auto it = lambda.find(poset.id(v));
    if (it == lambda.end()) throw InputError("characteristic map misses vertex " + std::to_string(poset.id(v)));
    return it->second;
}

void validateShape(const SimplicialPoset& poset, const CharacteristicMap& lambda) {
    const int n = poset.rank();
    for (const auto& [id, vec] : lambda) {
        auto x = poset.find(id);
        if (!x || poset.rankOf(*x) != 1) throw InputError("characteristic map names non-vertex " + std::to_string(id));
        if (static_cast<int>(vec.size()) != n)
            throw InputError("characteristic vector of " + std::to_string(id) + " has length " +
                             std::to_string(vec.size()) + ", expected " + std::to_string(n));
    }
    for (Index v : poset.ofRank(1)) lookup(poset, lambda, v);
}

// Integer inverse of a unimodular matrix, via exact rational elimination.
std::vector<IntVector> inverse(const std::vector<IntVector>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw InputError("singular matrix");
        std::swap(a[p], a[c]);
        const mpq_class inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const mpq_class f = a[i][c];
            for (int j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    std::vector<IntVector> out(n, IntVector(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (a[i][n + j].get_den() != 1) throw InputError("matrix is not unimodular");
            out[i][j] = a[i][n + j].get_num().get_si();
        }
    return out;
}

// alpha = beta * c for an integer c; returns c or nullopt.
std::optional<long long> integerMultiple(const IntVector& beta, const IntVector& alpha) {
    std::optional<long long> c;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] == 0) {
            if (beta[i] != 0) return std::nullopt;
            continue;
        }
        if (beta[i] % alpha[i] != 0) return std::nullopt;
        const long long q = beta[i] / alpha[i];
        if (c && *c != q) return std::nullopt;
        c = q;
    }
    return c ? c : std::optional<long long>(0);
}

Polynomial linearPolynomial(const IntVector& v) { return Polynomial::linearForm(v); }

}  // namespace

bool isUnimodularRows(const std::vector<IntVector>& input) {
    if (input.empty()) return true;
    std::vector<IntVector> rows = input;
    const int n = static_cast<int>(rows[0].size());
    const int k = static_cast<int>(rows.size());
    if (k > n) return false;
    // Column operations bring row r to (*, ..., *, g_r, 0, ..., 0); unimodular iff every g_r = +-1.
    for (int r = 0; r < k; ++r) {
        while (true) {
            int piv = -1;
            for (int c = r; c < n; ++c)
                if (rows[r][c] != 0 && (piv < 0 || std::llabs(rows[r][c]) < std::llabs(rows[r][piv]))) piv = c;
            if (piv < 0) return false;
            for (auto& row : rows) std::swap(row[r], row[piv]);
            bool done = true;
            for (int c = r + 1; c < n; ++c) {
                if (rows[r][c] == 0) continue;
                const long long q = rows[r][c] / rows[r][r];
                for (auto& row : rows) row[c] -= q * row[r];
                if (rows[r][c] != 0) done = false;
            }
            if (done) break;
        }
        if (std::llabs(rows[r][r]) != 1) return false;
    }
    return true;
}

UnimodularReport checkUnimodular(const SimplicialPoset& poset, const CharacteristicMap& lambda) {
    validateShape(poset, lambda);
    UnimodularReport report;
    for (Index v : poset.ofRank(1)) {
        const IntVector& vec = lookup(poset, lambda, v);
        if (std::abs(gcdAll(vec)) != 1) {
            report.ok = false;
            report.violations.emplace_back(poset.id(v), "non-primitive vector " + vecString(vec));
        }
    }
    for (Index x = 1; x < poset.size(); ++x) {
        if (poset.rankOf(x) < 2) continue;
        IntMatrix m;
        for (Index v : poset.vertices(x)) {
            std::vector<mpz_class> row;
            for (long long e : lookup(poset, lambda, v)) row.emplace_back(static_cast<long>(e));
            m.push_back(std::move(row));
        }
        const SmithResult s = smithNormalForm(m);
        const bool ok = s.rank == poset.rankOf(x) &&
                        std::all_of(s.factors.begin(), s.factors.end(), [](const mpz_class& f) { return f == 1; });
        if (!ok) {
            report.ok = false;
            report.violations.emplace_back(poset.id(x), "vertex vectors are not part of a lattice basis");
        }
    }
    return report;
}

std::vector<IntVector> candidateVectors(int n, int bound) {
    std::vector<IntVector> out;
    if (bound < 1 || n < 1) return out;
    IntVector v(n, -bound);
    while (true) {
        if (std::abs(gcdAll(v)) == 1) out.push_back(v);
        int i = n - 1;
        while (i >= 0 && v[i] == bound) v[i--] = -bound;
        if (i < 0) break;
        ++v[i];
    }
    auto norm = [](const IntVector& a) {
        long long s = 0;
        for (long long x : a) s += std::llabs(x);
        return s;
    };
    std::stable_sort(out.begin(), out.end(), [&](const IntVector& a, const IntVector& b) {
        const long long na = norm(a), nb = norm(b);
        if (na != nb) return na < nb;
        return a > b;
    });
    return out;
}

std::optional<CharacteristicMap> findCharacteristicMap(const SimplicialPoset& poset, int bound) {
    const int n = poset.rank();
    auto verts = poset.ofRank(1);
    const std::vector<Index> order(verts.begin(), verts.end());
    std::vector<int> position(poset.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
    // Elements to check once vertex i is assigned: those whose last vertex is i.
    std::vector<std::vector<Index>> checks(order.size());
    for (Index x = 1; x < poset.size(); ++x) {
        if (poset.rankOf(x) < 2) continue;
        int last = -1;
        for (Index v : poset.vertices(x)) last = std::max(last, position[v]);
        checks[last].push_back(x);
    }
    const std::vector<IntVector> candidates = candidateVectors(n, bound);
    std::vector<const IntVector*> assigned(order.size(), nullptr);
    std::vector<IntVector> rows;

    auto dfs = [&](auto&& self, std::size_t i) -> bool {
        if (i == order.size()) return true;
        for (const IntVector& c : candidates) {
            assigned[i] = &c;
            bool ok = true;
            for (Index x : checks[i]) {
                rows.clear();
                for (Index v : poset.vertices(x)) rows.push_back(*assigned[position[v]]);
                if (!isUnimodularRows(rows)) {
                    ok = false;
                    break;
                }
            }
            if (ok && self(self, i + 1)) return true;
        }
        assigned[i] = nullptr;
        return false;
    };
    if (n == 0) return CharacteristicMap{};
    if (!dfs(dfs, 0)) return std::nullopt;
    CharacteristicMap out;
    for (std::size_t i = 0; i < order.size(); ++i) out[poset.id(order[i])] = *assigned[i];
    return out;
}

int GKMGraph::vertexPosition(Index p) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
    if (it == vertices.end() || *it != p) return -1;
    return static_cast<int>(it - vertices.begin());
}

GKMGraph buildGKMGraph(const SimplicialPoset& poset, const CharacteristicMap& lambda) {
    if (!poset.isPure()) throw InputError("GKM graph needs a pure poset");
    const auto report = checkUnimodular(poset, lambda);
    if (!report.ok) throw InputError("characteristic map is not unimodular");
    GKMGraph g;
    g.n = poset.rank();
    const int n = g.n;
    auto tops = poset.ofRank(n);
    g.vertices.assign(tops.begin(), tops.end());
    g.incident.assign(g.vertices.size(), std::vector<int>(n, -1));
    g.labels.resize(g.vertices.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        std::vector<IntVector> m;
        for (Index i : poset.vertices(g.vertices[v])) m.push_back(lookup(poset, lambda, i));
        const auto inv = inverse(m);
        // alpha_j is the j-th column of the inverse: <alpha_j, lambda_k> = delta_jk.
        for (int j = 0; j < n; ++j) {
            IntVector alpha(n);
            for (int r = 0; r < n; ++r) alpha[r] = inv[r][j];
            g.labels[v].push_back(std::move(alpha));
        }
    }
    if (n == 0) return g;

    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    auto omitted = [&](Index p, Index e) {
        const std::uint32_t mask = *poset.vertexMask(p, e);
        return std::countr_zero(full & ~mask);
    };
    for (Index e : poset.ofRank(n - 1)) {
        std::vector<int> ends;
        for (Index c : poset.coveredBy(e)) ends.push_back(g.vertexPosition(c));
        if (ends.size() != 2) {
            g.violations.push_back({poset.id(e), "valency",
                                    "ridge lies below " + std::to_string(ends.size()) + " top cells"});
            continue;
        }
        GKMEdge edge;
        edge.element = e;
        edge.id = poset.id(e);
        edge.from = ends[0];
        edge.to = ends[1];
        const Index p = g.vertices[edge.from], q = g.vertices[edge.to];
        edge.alphaFrom = g.labels[edge.from][omitted(p, e)];
        edge.alphaTo = g.labels[edge.to][omitted(q, e)];
        g.incident[edge.from][omitted(p, e)] = static_cast<int>(g.edges.size());
        g.incident[edge.to][omitted(q, e)] = static_cast<int>(g.edges.size());
        if (edge.alphaTo == edge.alphaFrom) {
            edge.sign = 1;
        } else {
            IntVector neg = edge.alphaFrom;
            for (auto& x : neg) x = -x;
            edge.sign = edge.alphaTo == neg ? -1 : 0;
        }
        edge.axiom1 = edge.sign != 0;
        if (!edge.axiom1)
            g.violations.push_back({poset.id(e), "axiom1",
                                    vecString(edge.alphaFrom) + " vs " + vecString(edge.alphaTo)});
        g.edges.push_back(std::move(edge));
    }

    // Axiom 2: labels at each vertex form a basis.
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (!isUnimodularRows(g.labels[v]))
            g.violations.push_back({poset.id(g.vertices[v]), "axiom2", "labels do not form a basis"});

    // Axiom 3: the connection pairs the edge at p omitting u with the edge at q omitting u.
    for (auto& edge : g.edges) {
        const Index p = g.vertices[edge.from], q = g.vertices[edge.to];
        const auto vp = poset.vertices(p);
        const auto vq = poset.vertices(q);
        edge.axiom3 = true;
        for (int j = 0; j < n; ++j) {
            const Index u = vp[j];
            if (!poset.leq(u, edge.element)) continue;
            const auto it = std::find(vq.begin(), vq.end(), u);
            const int jq = static_cast<int>(it - vq.begin());
            IntVector diff(n);
            for (int r = 0; r < n; ++r) diff[r] = g.labels[edge.to][jq][r] - g.labels[edge.from][j][r];
            if (!integerMultiple(diff, edge.alphaFrom)) {
                edge.axiom3 = false;
                g.violations.push_back({edge.id, "axiom3",
                                        "connection at vertex " + std::to_string(poset.id(u)) + " differs by " +
                                            vecString(diff)});
            }
        }
    }
    return g;
}

std::vector<Polynomial> thomClassRestriction(const SimplicialPoset& poset, const GKMGraph& graph, Index x) {
    std::vector<Polynomial> out;
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
        const Index p = graph.vertices[v];
        if (!poset.leq(x, p)) {
            out.emplace_back(graph.n);
            continue;
        }
        const std::uint32_t mask = *poset.vertexMask(p, x);
        Polynomial prod = Polynomial::constant(graph.n, 1);
        for (int j = 0; j < graph.n; ++j)
            if (mask >> j & 1u) prod = prod * linearPolynomial(graph.labels[v][j]);
        out.push_back(std::move(prod));
    }
    return out;
}

DivisibilityReport divisibilityCheck(const GKMGraph& graph, const std::vector<Polynomial>& eta) {
    if (eta.size() != graph.vertices.size()) throw InputError("tuple length does not match the vertex count");
    DivisibilityReport report;
    for (const auto& edge : graph.edges) {
        const Polynomial diff = eta[edge.from] - eta[edge.to];
        const auto q = divideByLinear(diff, linearPolynomial(edge.alphaFrom));
        if (!q) {
            report.ok = false;
            report.failingEdges.push_back(edge.id);
        } else if (!q->hasIntegerCoefficients()) {
            report.integral = false;
        }
    }
    return report;
}

long long gkmSubalgebraDimension(const GKMGraph& graph, int k) {
    const int n = graph.n;
    const auto monos = monomialsOfDegree(n, k);
    const long long per = static_cast<long long>(monos.size());
    const long long unknowns = per * static_cast<long long>(graph.vertices.size());
    if (n == 0 || k < 0) return k == 0 ? unknowns : 0;
    RowEchelon<RationalField> ech;
    for (const auto& edge : graph.edges) {
        const IntVector& a = edge.alphaFrom;
        int pivot = 0;
        while (a[pivot] == 0) ++pivot;
        // t = sum_l s_l w_l, with w_l spanning the hyperplane <a, t> = 0.
        std::vector<Polynomial> images;
        for (int i = 0; i < n; ++i) {
            Polynomial ti(n - 1);
            int l = 0;
            for (int c = 0; c < n; ++c) {
                if (c == pivot) continue;
                Exponent e(n - 1, 0);
                e[l] = 1;
                if (i == c) ti.addTerm(e, static_cast<long>(a[pivot]));
                if (i == pivot) ti.addTerm(e, static_cast<long>(-a[c]));
                ++l;
            }
            images.push_back(std::move(ti));
        }
        std::map<Exponent, std::vector<std::pair<int, mpq_class>>> constraints;
        for (int u = 0; u < per; ++u) {
            const Polynomial img = Polynomial::monomial(monos[u]).substitute(images, n - 1);
            for (const auto& [e, c] : img.terms()) {
                constraints[e].emplace_back(static_cast<int>(edge.from * per + u), c);
                constraints[e].emplace_back(static_cast<int>(edge.to * per + u), -c);
            }
        }
        for (auto& [e, entries] : constraints) {
            std::map<int, mpq_class> merged;
            for (const auto& [col, c] : entries) merged[col] += c;
            RowEchelon<RationalField>::Row row;
            for (const auto& [col, c] : merged)
                if (c != 0) row.emplace_back(col, c);
            ech.insert(row);
        }
    }
    return unknowns - ech.rank();
}

std::vector<Polynomial> faceRingToGKM(const GKMGraph& graph, const RingElement& a) {
    std::vector<Polynomial> out;
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
        std::vector<Polynomial> images;
        for (const auto& alpha : graph.labels[v]) images.push_back(linearPolynomial(alpha));
        out.push_back(restrictionAtVertex(a, graph.vertices[v]).substitute(images, graph.n));
    }
    return out;
}

long long gkmImageRank(const FaceRingPtr& ring, const GKMGraph& graph, int k) {
    const int n = graph.n;
    const auto monos = monomialsOfDegree(n, k);
    std::map<Exponent, int> column;
    for (std::size_t i = 0; i < monos.size(); ++i) column[monos[i]] = static_cast<int>(i);
    const int per = static_cast<int>(monos.size());
    RowEchelon<RationalField> ech;
    for (const auto& m : chainMonomialBasis(ring->poset(), k)) {
        const auto tuple =
            faceRingToGKM(graph, RingElement::monomial(ring, CoefficientDomain::rationals(), m));
        RowEchelon<RationalField>::Row row;
        for (std::size_t v = 0; v < tuple.size(); ++v)
            for (const auto& [e, c] : tuple[v].terms()) row.emplace_back(static_cast<int>(v) * per + column.at(e), c);
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        ech.insert(row);
    }
    return ech.rank();
}

}  // namespace torusfan
