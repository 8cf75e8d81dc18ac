#include "torusfan/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "torusfan/error.hpp"

namespace torusfan {

Polynomial Polynomial::constant(int variables, const mpq_class& c) {
    Polynomial p(variables);
    p.addTerm(Exponent(variables, 0), c);
    return p;
}

Polynomial Polynomial::variable(int variables, int i) {
    Exponent e(variables, 0);
    e.at(i) = 1;
    return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponent exponent, const mpq_class& c) {
    Polynomial p(static_cast<int>(exponent.size()));
    p.addTerm(exponent, c);
    return p;
}

Polynomial Polynomial::linearForm(std::span<const long long> coeffs) {
    const int n = static_cast<int>(coeffs.size());
    Polynomial p(n);
    for (int i = 0; i < n; ++i) {
        if (coeffs[i] == 0) continue;
        Exponent e(n, 0);
        e[i] = 1;
        p.addTerm(e, mpq_class(static_cast<long>(coeffs[i])));
    }
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

bool Polynomial::isHomogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        const int de = std::accumulate(e.begin(), e.end(), 0);
        if (d >= 0 && de != d) return false;
        d = de;
    }
    return true;
}

mpq_class Polynomial::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void Polynomial::addTerm(const Exponent& e, const mpq_class& c) {
    if (static_cast<int>(e.size()) != vars_) throw InputError("polynomial variable count mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.vars_ != vars_) throw InputError("polynomial variable count mismatch");
    for (const auto& [e, c] : other.terms_) addTerm(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    if (other.vars_ != vars_) throw InputError("polynomial variable count mismatch");
    for (const auto& [e, c] : other.terms_) addTerm(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const mpq_class& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ != b.vars_) throw InputError("polynomial variable count mismatch");
    Polynomial r(a.vars_);
    Exponent e(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
            r.addTerm(e, ca * cb);
        }
    return r;
}

Polynomial Polynomial::pow(int e) const {
    Polynomial r = constant(vars_, 1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

Polynomial Polynomial::reduced(const CoefficientDomain& domain) const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) r.addTerm(e, domain.normalize(c));
    return r;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images, int targetVariables) const {
    if (static_cast<int>(images.size()) != vars_) throw InputError("substitution arity mismatch");
    Polynomial r(targetVariables);
    for (const auto& [e, c] : terms_) {
        Polynomial term = constant(targetVariables, c);
        for (int i = 0; i < vars_; ++i)
            if (e[i] > 0) term = term * images[i].pow(e[i]);
        r += term;
    }
    return r;
}

bool Polynomial::hasIntegerCoefficients() const {
    for (const auto& [e, c] : terms_)
        if (c.get_den() != 1) return false;
    return true;
}

std::string Polynomial::toString(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Highest total degree first, then lexicographically descending.
    std::vector<std::pair<const Exponent*, const mpq_class*>> order;
    for (const auto& [e, c] : terms_) order.emplace_back(&e, &c);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        const int da = std::accumulate(a.first->begin(), a.first->end(), 0);
        const int db = std::accumulate(b.first->begin(), b.first->end(), 0);
        if (da != db) return da > db;
        return *a.first > *b.first;
    });
    for (const auto& [ep, cp] : order) {
        mpq_class c = *cp;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        c = abs(c);
        bool constantTerm = std::all_of(ep->begin(), ep->end(), [](int x) { return x == 0; });
        bool wrote = false;
        if (c != 1 || constantTerm) {
            out << c.get_str();
            wrote = true;
        }
        for (int i = 0; i < vars_; ++i) {
            if ((*ep)[i] == 0) continue;
            if (wrote) out << "*";
            out << var << (i + 1);
            if ((*ep)[i] > 1) out << "^" << (*ep)[i];
            wrote = true;
        }
    }
    return out.str();
}

std::optional<Polynomial> divideByLinear(const Polynomial& f, const Polynomial& linear) {
    if (linear.isZero() || linear.degree() != 1 || !linear.isHomogeneous())
        throw InputError("divisor must be a non-zero linear form");
    const int n = f.variables();
    // The divisor's lex-leading variable; terms free of it can never be cancelled.
    int pivot = -1;
    for (const auto& [e, c] : linear.terms())
        for (int i = 0; i < n; ++i)
            if (e[i] == 1 && (pivot < 0 || i < pivot)) pivot = i;
    Exponent pivotExp(n, 0);
    pivotExp[pivot] = 1;
    const mpq_class lead = linear.coefficient(pivotExp);

    Polynomial remainder = f;
    Polynomial quotient(n);
    while (!remainder.isZero()) {
        // Lex-largest term containing the pivot variable.
        const Exponent* chosen = nullptr;
        for (auto it = remainder.terms().rbegin(); it != remainder.terms().rend(); ++it)
            if (it->first[pivot] > 0) {
                chosen = &it->first;
                break;
            }
        if (!chosen) return std::nullopt;
        Exponent q = *chosen;
        q[pivot] -= 1;
        Polynomial step = Polynomial::monomial(q, remainder.coefficient(*chosen) / lead);
        quotient += step;
        remainder -= step * linear;
    }
    return quotient;
}

std::vector<Exponent> monomialsOfDegree(int variables, int d) {
    std::vector<Exponent> out;
    if (variables == 0) {
        if (d == 0) out.emplace_back();
        return out;
    }
    Exponent e(variables, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == variables - 1) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[i] = a;
            self(self, i + 1, left - a);
        }
    };
    rec(rec, 0, d);
    return out;
}

}  // namespace torusfan
