#ifndef TORUSFAN_LINALG_HPP
#define TORUSFAN_LINALG_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "torusfan/coefficients.hpp"

namespace torusfan {

struct RationalField {
    using Value = mpq_class;

    Value zero() const { return 0; }
    Value one() const { return 1; }
    bool isZero(const Value& v) const { return v == 0; }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value inv(const Value& a) const { return 1 / a; }
    Value fromRational(const mpq_class& q) const { return q; }
};

struct PrimeField {
    using Value = std::uint64_t;
    std::uint64_t p;

    Value zero() const { return 0; }
    Value one() const { return 1 % p; }
    bool isZero(Value v) const { return v == 0; }
    Value add(Value a, Value b) const { return (a + b) % p; }
    Value sub(Value a, Value b) const { return (a + p - b) % p; }
    Value mul(Value a, Value b) const { return static_cast<Value>((static_cast<unsigned __int128>(a) * b) % p); }
    Value inv(Value a) const {
        Value result = 1, base = a, e = p - 2;
        while (e) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
    Value fromRational(const mpq_class& q) const {
        const mpz_class pz(static_cast<unsigned long>(p));
        mpz_class num = q.get_num() % pz;
        if (num < 0) num += pz;
        mpz_class den = q.get_den() % pz;
        return mul(num.get_ui(), inv(den.get_ui()));
    }
};

/// Incremental row echelon form over a field.  Rows are sparse, sorted by column.
template <class Field>
class RowEchelon {
public:
    using Value = typename Field::Value;
    using Row = std::vector<std::pair<int, Value>>;

    explicit RowEchelon(Field field = {}) : field_(std::move(field)) {}

    /// Adds a row; returns true when it was independent of the rows so far.
    bool insert(const Row& row) {
        Row r = reduceLeading(row);
        if (r.empty()) return false;
        const Value scale = field_.inv(r.front().second);
        for (auto& [c, v] : r) v = field_.mul(v, scale);
        pivots_.emplace(r.front().first, std::move(r));
        return true;
    }

    bool contains(const Row& row) const { return reduceLeading(row).empty(); }

    /// Remainder with every pivot column eliminated.
    Row reduce(const Row& row) const {
        std::map<int, Value> work;
        for (const auto& [c, v] : row)
            if (!field_.isZero(v)) work[c] = v;
        Row out;
        while (!work.empty()) {
            auto it = work.begin();
            const int col = it->first;
            const Value coef = it->second;
            work.erase(it);
            auto piv = pivots_.find(col);
            if (piv == pivots_.end()) {
                out.emplace_back(col, coef);
                continue;
            }
            for (std::size_t k = 1; k < piv->second.size(); ++k) {
                const auto& [c, v] = piv->second[k];
                Value& slot = work[c];
                slot = field_.sub(slot, field_.mul(coef, v));
                if (field_.isZero(slot)) work.erase(c);
            }
        }
        return out;
    }

    int rank() const { return static_cast<int>(pivots_.size()); }
    bool isPivot(int col) const { return pivots_.count(col) != 0; }
    const Field& field() const { return field_; }

private:
    Row reduceLeading(const Row& row) const {
        std::map<int, Value> work;
        for (const auto& [c, v] : row)
            if (!field_.isZero(v)) work[c] = v;
        while (!work.empty()) {
            auto it = work.begin();
            auto piv = pivots_.find(it->first);
            if (piv == pivots_.end()) break;
            const Value coef = it->second;
            work.erase(it);
            for (std::size_t k = 1; k < piv->second.size(); ++k) {
                const auto& [c, v] = piv->second[k];
                Value& slot = work[c];
                slot = field_.sub(slot, field_.mul(coef, v));
                if (field_.isZero(slot)) work.erase(c);
            }
        }
        return Row(work.begin(), work.end());
    }

    Field field_;
    std::map<int, Row> pivots_;
};

/// Rank of a list of sparse rows.
template <class Field>
int sparseRank(const std::vector<typename RowEchelon<Field>::Row>& rows, Field field = {}) {
    RowEchelon<Field> ech(std::move(field));
    for (const auto& r : rows) ech.insert(r);
    return ech.rank();
}

}  // namespace torusfan

#endif
