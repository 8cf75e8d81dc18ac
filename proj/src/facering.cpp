#include "torusfan/facering.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "torusfan/error.hpp"

namespace torusfan {

int monomialDegree(const SimplicialPoset& poset, const ChainMonomial& m) {
    int d = 0;
    for (const auto& [x, a] : m.factors) d += 2 * a * poset.rankOf(x);
    return d;
}

const FaceRing::Relation& FaceRing::relation(Index x, Index y) const {
    if (x > y) std::swap(x, y);
    const std::uint64_t key = static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(poset_.size()) + y;
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Relation rel;
    rel.join = joinSet(poset_, x, y);
    if (!rel.join.empty()) rel.meet = *meet(poset_, x, y);
    return cache_.emplace(key, std::move(rel)).first->second;
}

FaceRingPtr makeFaceRing(SimplicialPoset poset) { return std::make_shared<const FaceRing>(std::move(poset)); }

std::vector<Index> expandGenerators(const ChainMonomial& m) {
    std::vector<Index> out;
    for (const auto& [x, a] : m.factors) out.insert(out.end(), a, x);
    return out;
}

namespace {

ChainMonomial compress(const std::vector<Index>& sequence) {
    ChainMonomial m;
    for (Index x : sequence) {
        if (!m.factors.empty() && m.factors.back().first == x)
            ++m.factors.back().second;
        else
            m.factors.emplace_back(x, 1);
    }
    return m;
}

// v_c times a chain monomial.  A single left-to-right pass: the carried
// generator is straightened against each chain element in turn, leaving the
// meet behind, so the meets and the final carry form a weakly increasing chain.
MonomialSum insertGenerator(const FaceRing& ring, const ChainMonomial& m, Index c) {
    const Index root = ring.poset().root();
    std::map<std::pair<std::vector<Index>, Index>, mpz_class> states;
    states[{{}, c}] = 1;
    for (Index y : expandGenerators(m)) {
        std::map<std::pair<std::vector<Index>, Index>, mpz_class> next;
        for (const auto& [state, coef] : states) {
            const auto& rel = ring.relation(state.second, y);
            for (Index z : rel.join) {
                std::vector<Index> lower = state.first;
                if (rel.meet != root) lower.push_back(rel.meet);
                next[{std::move(lower), z}] += coef;
            }
        }
        states = std::move(next);
        if (states.empty()) break;
    }
    MonomialSum out;
    for (auto& [state, coef] : states) {
        std::vector<Index> seq = state.first;
        seq.push_back(state.second);
        out[compress(seq)] += coef;
    }
    return out;
}

MonomialSum insertIntoSum(const FaceRing& ring, const MonomialSum& sum, Index c) {
    MonomialSum out;
    for (const auto& [m, coef] : sum)
        for (const auto& [m2, c2] : insertGenerator(ring, m, c)) {
            mpz_class& slot = out[m2];
            slot += coef * c2;
            if (slot == 0) out.erase(m2);
        }
    return out;
}

void requireMember(const SimplicialPoset& poset, const ChainMonomial& m) {
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
        const auto& [x, a] = m.factors[i];
        if (x <= poset.root() || x >= poset.size() || a < 1) throw InputError("invalid chain monomial");
        if (i > 0 && !(m.factors[i - 1].first != x && poset.leq(m.factors[i - 1].first, x)))
            throw InputError("chain monomial is not a strictly increasing chain");
    }
}

}  // namespace

MonomialSum straightenProduct(const FaceRing& ring, const ChainMonomial& m1, const ChainMonomial& m2) {
    requireMember(ring.poset(), m1);
    requireMember(ring.poset(), m2);
    std::vector<Index> gens = expandGenerators(m2);
    const auto& poset = ring.poset();
    std::stable_sort(gens.begin(), gens.end(),
                     [&](Index a, Index b) { return poset.rankOf(a) > poset.rankOf(b); });
    MonomialSum sum{{m1, 1}};
    for (Index g : gens) {
        sum = insertIntoSum(ring, sum, g);
        if (sum.empty()) break;
    }
    return sum;
}

MonomialSum straightenGenerators(const FaceRing& ring, const std::vector<Index>& generators) {
    MonomialSum sum{{ChainMonomial{}, 1}};
    for (Index g : generators) {
        if (g <= ring.poset().root() || g >= ring.poset().size()) throw InputError("invalid generator");
        sum = insertIntoSum(ring, sum, g);
        if (sum.empty()) break;
    }
    return sum;
}

RingElement RingElement::one(FaceRingPtr ring, CoefficientDomain domain) {
    return monomial(std::move(ring), domain, ChainMonomial{}, 1);
}

RingElement RingElement::generator(FaceRingPtr ring, CoefficientDomain domain, Index x) {
    if (x <= ring->poset().root() || x >= ring->poset().size()) throw InputError("invalid generator");
    return monomial(std::move(ring), domain, ChainMonomial{{{x, 1}}}, 1);
}

RingElement RingElement::monomial(FaceRingPtr ring, CoefficientDomain domain, ChainMonomial m,
                                  const mpq_class& coefficient) {
    requireMember(ring->poset(), m);
    RingElement r(std::move(ring), domain);
    r.addTerm(m, coefficient);
    return r;
}

RingElement RingElement::fromSum(FaceRingPtr ring, CoefficientDomain domain, const MonomialSum& sum) {
    RingElement r(std::move(ring), domain);
    for (const auto& [m, c] : sum) r.addTerm(m, mpq_class(c));
    return r;
}

void RingElement::addTerm(const ChainMonomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    mpq_class value = domain_.normalize(it == terms_.end() ? c : it->second + c);
    if (value == 0) {
        if (it != terms_.end()) terms_.erase(it);
    } else if (it == terms_.end()) {
        terms_.emplace(m, value);
    } else {
        it->second = value;
    }
}

void RingElement::requireCompatible(const RingElement& other) const {
    if (ring_ != other.ring_) throw InputError("ring elements over different posets");
    if (!(domain_ == other.domain_)) throw InputError("ring elements over different coefficient domains");
}

mpq_class RingElement::coefficient(const ChainMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

std::vector<int> RingElement::degrees() const {
    std::vector<int> out;
    for (const auto& [m, c] : terms_) out.push_back(monomialDegree(poset(), m));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RingElement RingElement::homogeneousComponent(int degree) const {
    RingElement r(ring_, domain_);
    for (const auto& [m, c] : terms_)
        if (monomialDegree(poset(), m) == degree) r.terms_.emplace(m, c);
    return r;
}

RingElement RingElement::operator+(const RingElement& other) const {
    requireCompatible(other);
    RingElement r = *this;
    for (const auto& [m, c] : other.terms_) r.addTerm(m, c);
    return r;
}

RingElement RingElement::operator-(const RingElement& other) const {
    requireCompatible(other);
    RingElement r = *this;
    for (const auto& [m, c] : other.terms_) r.addTerm(m, -c);
    return r;
}

RingElement RingElement::operator*(const RingElement& other) const {
    requireCompatible(other);
    std::map<ChainMonomial, mpq_class> acc;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : other.terms_)
            for (const auto& [m, k] : straightenProduct(*ring_, m1, m2)) acc[m] += c1 * c2 * mpq_class(k);
    RingElement r(ring_, domain_);
    for (const auto& [m, c] : acc) r.addTerm(m, c);
    return r;
}

RingElement RingElement::scaled(const mpq_class& c) const {
    RingElement r(ring_, domain_);
    for (const auto& [m, v] : terms_) r.addTerm(m, v * c);
    return r;
}

bool RingElement::operator==(const RingElement& other) const {
    return ring_ == other.ring_ && domain_ == other.domain_ && terms_ == other.terms_;
}

RingElement multiply(const RingElement& a, const RingElement& b) { return a * b; }
RingElement add(const RingElement& a, const RingElement& b) { return a + b; }
RingElement scale(const RingElement& a, const mpq_class& c) { return a.scaled(c); }

std::string monomialToString(const SimplicialPoset& poset, const ChainMonomial& m) {
    if (m.isUnit()) return "1";
    std::string out;
    for (const auto& [x, a] : m.factors) {
        if (!out.empty()) out += " * ";
        out += "v" + std::to_string(poset.id(x));
        if (a > 1) out += "^" + std::to_string(a);
    }
    return out;
}

std::string RingElement::toString() const {
    if (terms_.empty()) return "0";
    using Key = std::pair<int, std::vector<std::pair<int, int>>>;
    std::vector<std::pair<Key, const std::pair<const ChainMonomial, mpq_class>*>> order;
    for (const auto& term : terms_) {
        Key key{monomialDegree(poset(), term.first), {}};
        for (const auto& [x, a] : term.first.factors) key.second.emplace_back(poset().id(x), a);
        order.emplace_back(std::move(key), &term);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string out;
    for (const auto& [key, term] : order) {
        mpq_class c = term->second;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        c = abs(c);
        out += c.get_str();
        if (!term->first.isUnit()) out += " * " + monomialToString(poset(), term->first);
    }
    return out;
}

namespace {

class TermParser {
public:
    TermParser(const FaceRingPtr& ring, const CoefficientDomain& domain, std::string_view text)
        : ring_(ring), domain_(domain), text_(text) {}

    RingElement parse() {
        RingElement total = RingElement::zero(ring_, domain_);
        skip();
        if (pos_ == text_.size()) fail("empty expression");
        bool firstTerm = true;
        while (pos_ < text_.size()) {
            int sign = 1;
            if (text_[pos_] == '+' || text_[pos_] == '-') {
                sign = text_[pos_] == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!firstTerm) {
                fail("expected '+' or '-'");
            }
            firstTerm = false;
            total = total + term().scaled(sign);
            skip();
        }
        return total;
    }

private:
    RingElement term() {
        mpq_class coef = 1;
        std::vector<Index> gens;
        while (true) {
            skip();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                mpz_class num(digits());
                mpz_class den = 1;
                if (pos_ < text_.size() && text_[pos_] == '/') {
                    ++pos_;
                    den = mpz_class(digits());
                    if (den == 0) fail("zero denominator");
                }
                coef *= mpq_class(num, den);
                coef.canonicalize();
            } else if (pos_ < text_.size() && text_[pos_] == 'v') {
                ++pos_;
                const std::size_t at = pos_;
                const int id = std::stoi(digits());
                auto x = ring_->poset().find(id);
                if (!x || *x == ring_->poset().root()) {
                    pos_ = at;
                    fail("unknown generator v" + std::to_string(id));
                }
                int exponent = 1;
                skip();
                if (pos_ < text_.size() && text_[pos_] == '^') {
                    ++pos_;
                    skip();
                    exponent = std::stoi(digits());
                }
                gens.insert(gens.end(), exponent, *x);
            } else {
                fail("expected a number or a generator");
            }
            skip();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        return RingElement::fromSum(ring_, domain_, straightenGenerators(*ring_, gens)).scaled(coef);
    }

    std::string digits() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("ring element parse error at column " + std::to_string(pos_ + 1) + ": " + what);
    }

    const FaceRingPtr& ring_;
    const CoefficientDomain& domain_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

RingElement RingElement::parse(FaceRingPtr ring, CoefficientDomain domain, std::string_view text) {
    try {
        return TermParser(ring, domain, text).parse();
    } catch (const std::out_of_range&) {
        throw InputError("ring element parse error: number out of range");
    }
}

Polynomial restrictMonomial(const SimplicialPoset& poset, const ChainMonomial& m, Index p) {
    const int r = poset.rankOf(p);
    Exponent e(r, 0);
    for (const auto& [x, a] : m.factors) {
        if (!poset.leq(x, p)) return Polynomial(r);
        const std::uint32_t mask = *poset.vertexMask(p, x);
        for (int j = 0; j < r; ++j)
            if (mask >> j & 1u) e[j] += a;
    }
    return Polynomial::monomial(std::move(e));
}

Polynomial restrictionAtVertex(const RingElement& a, Index p) {
    const auto& poset = a.poset();
    if (p < 0 || p >= poset.size() || !poset.coveredBy(p).empty())
        throw InputError("restriction requires a maximal element");
    Polynomial out(poset.rankOf(p));
    for (const auto& [m, c] : a.terms()) out += restrictMonomial(poset, m, p) * c;
    return out.reduced(a.domain());
}

std::vector<Polynomial> totalRestriction(const RingElement& a) {
    std::vector<Polynomial> out;
    for (Index p : a.poset().maximalElements()) out.push_back(restrictionAtVertex(a, p));
    return out;
}

mpz_class gradedDimension(const SimplicialPoset& poset, int k) {
    if (k < 0) return 0;
    if (k == 0) return 1;
    // f[x][d]: chain monomials of weighted degree d whose largest element is x.
    std::vector<std::vector<mpz_class>> f(poset.size(), std::vector<mpz_class>(k + 1));
    mpz_class total = 0;
    for (Index x = 1; x < poset.size(); ++x) {
        const int r = poset.rankOf(x);
        if (r > k) break;
        std::vector<mpz_class> below(k + 1);
        below[0] = 1;
        for (Index y : poset.downSet(x)) {
            if (y == poset.root() || y == x) continue;
            for (int d = 0; d <= k; ++d) below[d] += f[y][d];
        }
        for (int d = r; d <= k; ++d)
            for (int a = 1; a * r <= d; ++a) f[x][d] += below[d - a * r];
        total += f[x][k];
    }
    return total;
}

std::vector<ChainMonomial> chainMonomialBasis(const SimplicialPoset& poset, int k) {
    std::vector<ChainMonomial> out;
    if (k < 0) return out;
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    ChainMonomial current;
    auto extend = [&](auto&& self, Index last, int left) -> void {
        if (left == 0) {
            out.push_back(current);
            return;
        }
        auto candidates = poset.upSet(last);
        for (Index y : candidates) {
            if (y == last) continue;
            const int r = poset.rankOf(y);
            for (int a = 1; a * r <= left; ++a) {
                current.factors.emplace_back(y, a);
                self(self, y, left - a * r);
                current.factors.pop_back();
            }
        }
    };
    extend(extend, poset.root(), k);
    return out;
}

mpz_class hilbertCoefficient(const HVector& h, int k) {
    const int n = static_cast<int>(h.entries.size()) - 1;
    if (k < 0) return 0;
    if (n == 0) return k == 0 ? mpz_class(h.entries[0]) : mpz_class(0);
    mpz_class total = 0;
    for (int i = 0; i <= std::min(n, k); ++i) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k - i + n - 1), static_cast<unsigned long>(n - 1));
        total += mpz_class(static_cast<long>(h.entries[i])) * binom;
    }
    return total;
}

HilbertReport hilbertCheck(const SimplicialPoset& poset, int dmax) {
    HilbertReport report;
    const HVector h = hVector(poset);
    for (int k = 0; k <= dmax; ++k) {
        HilbertRow row{k, gradedDimension(poset, k), hilbertCoefficient(h, k)};
        if (row.count != row.expected) report.ok = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<RingElement> lsopFromLambda(const FaceRingPtr& ring, const CoefficientDomain& domain,
                                        const CharacteristicMap& lambda) {
    const auto& poset = ring->poset();
    const int n = poset.rank();
    for (const auto& [id, vec] : lambda) {
        auto x = poset.find(id);
        if (!x || poset.rankOf(*x) != 1) throw InputError("characteristic map names non-vertex " + std::to_string(id));
        if (static_cast<int>(vec.size()) != n)
            throw InputError("characteristic vector of " + std::to_string(id) + " has wrong length");
    }
    std::vector<RingElement> thetas(n, RingElement::zero(ring, domain));
    for (Index v : poset.ofRank(1)) {
        auto it = lambda.find(poset.id(v));
        if (it == lambda.end()) throw InputError("characteristic map misses vertex " + std::to_string(poset.id(v)));
        for (int j = 0; j < n; ++j)
            if (it->second[j] != 0)
                thetas[j] = thetas[j] + RingElement::generator(ring, domain, v).scaled(mpq_class(static_cast<long>(it->second[j])));
    }
    return thetas;
}

RingElement randomElement(const FaceRingPtr& ring, const CoefficientDomain& domain, std::mt19937_64& rng,
                          int maxHalfDegree, int terms) {
    std::vector<std::vector<ChainMonomial>> bases;
    for (int k = 0; k <= maxHalfDegree; ++k) bases.push_back(chainMonomialBasis(ring->poset(), k));
    RingElement r = RingElement::zero(ring, domain);
    std::uniform_int_distribution<int> degreeDist(0, maxHalfDegree);
    std::uniform_int_distribution<int> coefDist(-3, 3);
    for (int t = 0; t < terms; ++t) {
        const auto& basis = bases[degreeDist(rng)];
        if (basis.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        r = r + RingElement::monomial(ring, domain, basis[pick(rng)], coefDist(rng));
    }
    return r;
}

}  // namespace torusfan
