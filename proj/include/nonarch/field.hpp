#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace nonarch {

// Optional extension of the prime field: k = F_p[g] / (min_poly(g)).
// min_poly is monic with coefficients in [0, p), constant term first.
struct ExtensionDesc {
    int degree = 1;
    std::vector<long long> min_poly;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Coefficient field: F_p (optionally extended) or Q.
class Field {
public:
    static FieldPtr rationals();
    static FieldPtr prime(long long p);
    static FieldPtr extension(long long p, std::vector<long long> min_poly);

    long long characteristic() const { return p_; }
    bool is_finite() const { return p_ != 0; }
    int degree() const { return ext_ ? ext_->degree : 1; }
    const std::optional<ExtensionDesc>& extension_desc() const { return ext_; }

    // Number of elements; only for finite fields.
    long long size() const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    Field(long long p, std::optional<ExtensionDesc> ext) : p_(p), ext_(std::move(ext)) {}
    long long p_ = 0;
    std::optional<ExtensionDesc> ext_;
};

// An element of a coefficient field.  For finite fields the value is a
// polynomial in the extension generator of degree < [k : F_p]; for Q it is an
// exact rational.
class FElem {
public:
    FElem() = default;
    static FElem zero(const FieldPtr& f);
    static FElem one(const FieldPtr& f);
    // Image of the integer n in the field.
    static FElem from_integer(const FieldPtr& f, const Int& n);
    static FElem from_rational(const FieldPtr& f, const Rat& q);
    // Finite field element with the given generator coordinates (constant first).
    static FElem from_coords(const FieldPtr& f, std::vector<long long> coords);

    const FieldPtr& field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;

    FElem operator+(const FElem& o) const;
    FElem operator-(const FElem& o) const;
    FElem operator-() const;
    FElem operator*(const FElem& o) const;
    FElem inverse() const;
    FElem operator/(const FElem& o) const { return *this * o.inverse(); }
    FElem pow(long long n) const;
    bool operator==(const FElem& o) const;
    bool operator!=(const FElem& o) const { return !(*this == o); }

    // x -> x^(p^e); identity on Q.
    FElem frobenius(int e = 1) const;
    // Multiplicative order; finite fields only.
    long long mult_order() const;

    const Rat& rational_value() const;
    const std::vector<long long>& coords() const { return c_; }

    std::string to_string() const;

private:
    FieldPtr f_;
    Rat q_;                      // char 0
    std::vector<long long> c_;   // char p, size = field degree
};

// Enumeration of a finite field: index in [0, size()) -> element.
FElem field_element_by_index(const FieldPtr& f, long long idx);

// Element of exact multiplicative order m, or nullopt.
std::optional<FElem> find_root_of_unity(const FieldPtr& f, long long m);

} // namespace nonarch
