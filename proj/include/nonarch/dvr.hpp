#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "field.hpp"

namespace nonarch {

constexpr int kDefaultPrecision = 32;

// Truncated element of R = k[[pi]]: coefficients c_0..c_{prec-1}, known
// modulo pi^prec.  Trailing zero coefficients are not stored.
class Dvr {
public:
    Dvr() = default;

    static Dvr zero(const FieldPtr& f, int prec = kDefaultPrecision);
    static Dvr constant(const FElem& c, int prec = kDefaultPrecision);
    static Dvr from_integer(const FieldPtr& f, long long n, int prec = kDefaultPrecision);
    static Dvr from_terms(const FieldPtr& f, const std::vector<std::pair<int, FElem>>& terms,
                          int prec = kDefaultPrecision);
    // pi^k
    static Dvr uniformizer_pow(const FieldPtr& f, int k, int prec = kDefaultPrecision);

    const FieldPtr& field() const { return f_; }
    int precision() const { return prec_; }
    // Coefficient of pi^i (zero for stored-trailing indices; i must be < precision).
    FElem coeff(int i) const;
    int support_size() const { return static_cast<int>(c_.size()); }

    // Least index with nonzero coefficient; nullopt if zero at this precision.
    std::optional<int> ord() const;
    // ord(), raising precision_error for an indistinguishable-from-zero element.
    int ord_checked() const;
    bool is_zero() const { return !ord().has_value(); }
    bool is_unit() const;
    // Residue c_0 mod pi.
    FElem residue() const;
    bool is_constant() const;

    Dvr operator+(const Dvr& o) const;
    Dvr operator-(const Dvr& o) const;
    Dvr operator-() const;
    Dvr operator*(const Dvr& o) const;
    Dvr scaled(const FElem& c) const;
    Dvr pow(long long n) const;

    // Multiplication by pi^k; k < 0 requires every retained term to be
    // divisible by pi^(-k).  Precision shifts by k.
    Dvr shift(int k) const;

    // Inverse of a unit, to the element's precision.
    Dvr invert_unit() const;

    // a/b for ord(b) <= ord(a).
    static Dvr div(const Dvr& a, const Dvr& b);

    // Truncate to a lower precision (no-op if prec >= precision()).
    Dvr truncated(int prec) const;
    Dvr with_precision(int prec) const; // pad: asserts exactness beyond current window

    // Multiplicative (constant) lift of the residue; requires a unit.
    Dvr teichmuller() const;

    // Reinterpret over the subring generated by pi^(1/d): indices scale by d,
    // precision becomes d * precision.
    Dvr base_change_ramified(int d) const;

    // Apply fn to each coefficient (fn receives the coefficient and its index).
    Dvr map_coeffs(const std::function<FElem(const FElem&, int)>& fn) const;

    // Equality at the shared precision window.
    bool equals(const Dvr& o) const;
    bool exactly_equal(const Dvr& o) const;

    std::string to_string() const;

private:
    void trim();
    FieldPtr f_;
    std::vector<FElem> c_;
    int prec_ = 0;
};

// Constant lift of a root of unity of exact order m in the residue field.
Dvr root_of_unity(const FieldPtr& f, long long m, int prec = kDefaultPrecision);

// Newton lift of a simple residual root x0 of the univariate polynomial f
// (coefficients ascending).  Requires f(x0) = 0 mod pi and f'(x0) a unit.
Dvr hensel_lift_root(const std::vector<Dvr>& f, const Dvr& x0);

// Solve v = u * sigma(v) for a constant unit u over a finite residual
// extension, sigma = Frobenius^frob.  Requires the residue norm of u along
// the sigma-orbit to be 1.
Dvr hilbert90_solve(const Dvr& u, int frob);

// Description of a tame extension R' of R: ramification index rho (with
// sigma(varpi) = zeta^t varpi) and residual extension of degree r with a
// distinguished Frobenius power generating its Galois group.
struct ExtensionSpec {
    int rho = 1;
    int residue_degree = 1;
    std::vector<long long> residual_poly; // min poly over F_p when residue_degree > 1
    int t = 1;
    int frobenius = 1;

    int degree() const { return rho * residue_degree; }
    bool is_ramified() const { return rho > 1; }
    bool is_unramified() const { return residue_degree > 1 || rho == 1; }
    void validate(const FieldPtr& base) const;
    // Residue field of R' (the base field when residue_degree == 1).
    FieldPtr residual_field(const FieldPtr& base) const;
};

} // namespace nonarch
