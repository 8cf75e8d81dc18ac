#include "torusfan/coefficients.hpp"

#include <charconv>

#include "torusfan/error.hpp"

namespace torusfan {

bool isPrime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

CoefficientDomain CoefficientDomain::modP(std::uint64_t p) {
    if (!isPrime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
    if (p > (std::uint64_t{1} << 31)) throw InputError("modulus too large");
    return CoefficientDomain(Kind::ModP, p);
}

CoefficientDomain CoefficientDomain::parse(std::string_view text) {
    if (text == "Z") return integers();
    if (text == "Q") return rationals();
    if (text.starts_with("Z/")) text.remove_prefix(2);
    std::uint64_t p = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty())
        throw InputError("unknown coefficient domain '" + std::string(text) + "'");
    return modP(p);
}

std::string CoefficientDomain::name() const {
    switch (kind_) {
        case Kind::Integers: return "Z";
        case Kind::Rationals: return "Q";
        case Kind::ModP: return "Z/" + std::to_string(p_);
    }
    return "?";
}

mpq_class CoefficientDomain::normalize(const mpq_class& value) const {
    switch (kind_) {
        case Kind::Rationals: return value;
        case Kind::Integers:
            if (value.get_den() != 1) throw InputError("non-integral coefficient over Z");
            return value;
        case Kind::ModP: {
            const mpz_class p(static_cast<unsigned long>(p_));
            mpz_class num = value.get_num() % p;
            if (num < 0) num += p;
            mpz_class den = value.get_den() % p;
            if (den == 0) throw InputError("coefficient denominator vanishes mod " + std::to_string(p_));
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
            mpz_class r = (num * inv) % p;
            return mpq_class(r);
        }
    }
    return value;
}

}  // namespace torusfan
