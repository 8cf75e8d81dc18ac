#ifndef TORUSFAN_POLYNOMIAL_HPP
#define TORUSFAN_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torusfan/coefficients.hpp"

namespace torusfan {

using Exponent = std::vector<int>;

/// Sparse polynomial with rational coefficients in a fixed number of variables.
class Polynomial {
public:
    explicit Polynomial(int variables = 0) : vars_(variables) {}

    static Polynomial constant(int variables, const mpq_class& c);
    static Polynomial variable(int variables, int i);
    static Polynomial monomial(Exponent exponent, const mpq_class& c = 1);
    /// sum_i coeffs[i] * x_i
    static Polynomial linearForm(std::span<const long long> coeffs);

    int variables() const noexcept { return vars_; }
    bool isZero() const noexcept { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    bool isHomogeneous() const;
    const std::map<Exponent, mpq_class>& terms() const noexcept { return terms_; }
    mpq_class coefficient(const Exponent& e) const;

    void addTerm(const Exponent& e, const mpq_class& c);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const mpq_class& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const mpq_class& c) { return a *= c; }
    bool operator==(const Polynomial& other) const { return vars_ == other.vars_ && terms_ == other.terms_; }

    Polynomial pow(int e) const;
    /// Reduces every coefficient into `domain`.
    Polynomial reduced(const CoefficientDomain& domain) const;
    /// Replaces x_i by images[i]; all images must share a variable count.
    Polynomial substitute(std::span<const Polynomial> images, int targetVariables) const;
    bool hasIntegerCoefficients() const;

    /// e.g. "2*t1^2*t3 - t2"; "0" for zero.
    std::string toString(const std::string& var = "t") const;

private:
    int vars_;
    std::map<Exponent, mpq_class> terms_;
};

/// Exact quotient f / linear over Q, or nullopt when the linear form does not divide f.
std::optional<Polynomial> divideByLinear(const Polynomial& f, const Polynomial& linear);

/// All exponent vectors of total degree d in `variables` variables, lexicographically descending.
std::vector<Exponent> monomialsOfDegree(int variables, int d);

}  // namespace torusfan

#endif
