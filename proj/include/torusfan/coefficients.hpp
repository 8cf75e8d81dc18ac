#ifndef TORUSFAN_COEFFICIENTS_HPP
#define TORUSFAN_COEFFICIENTS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace torusfan {

/// Ground ring for face-ring arithmetic: Z, Q or Z/p.  Coefficients are
/// always carried as mpq_class and normalized into the domain.
class CoefficientDomain {
public:
    enum class Kind { Integers, Rationals, ModP };

    static CoefficientDomain integers() { return CoefficientDomain(Kind::Integers, 0); }
    static CoefficientDomain rationals() { return CoefficientDomain(Kind::Rationals, 0); }
    /// Throws InputError unless p is prime.
    static CoefficientDomain modP(std::uint64_t p);
    /// Accepts "Z", "Q", "p" or "Z/p".
    static CoefficientDomain parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    std::uint64_t prime() const noexcept { return p_; }
    bool isField() const noexcept { return kind_ != Kind::Integers; }
    std::string name() const;

    /// Integers reject fractions; Z/p reduces into [0, p).
    mpq_class normalize(const mpq_class& value) const;

    bool operator==(const CoefficientDomain&) const = default;

private:
    CoefficientDomain(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

    Kind kind_;
    std::uint64_t p_;
};

bool isPrime(std::uint64_t n);

}  // namespace torusfan

#endif
