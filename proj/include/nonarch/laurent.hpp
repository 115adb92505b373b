#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dvr.hpp"
#include "rational.hpp"

namespace nonarch {

constexpr int kDefaultTruncation = 24;

enum class AnnulusType { open, semi_open, closed };

std::string annulus_type_name(AnnulusType t);
AnnulusType annulus_type_from_name(const std::string& s);

// Valuations along the two boundary circles.  nu_* (the largest degree
// attaining the boundary minimum) is meaningful for closed annuli only.
struct BoundaryData {
    int eta_x = 0;
    int v_x = 0;
    std::optional<int> nu_x;
    int eta_y = 0;
    int v_y = 0;
    std::optional<int> nu_y;
};

struct NewtonBreakpoint {
    Rat r;
    Rat value;       // eta_r at the breakpoint
    long long left_slope;  // Laurent degree attaining eta just left of r
    long long right_slope; // Laurent degree attaining eta just right of r
};

struct NewtonPolygon {
    std::vector<NewtonBreakpoint> breakpoints;
};

// Function on an annulus of modulus e in canonical Laurent form
//   sum_{i=0}^{D} a_i X^i + sum_{i=1}^{D} b_i Y^i,   X*Y = pi^e,
// truncated at degree D.  Retained coefficients are treated as exact on the
// stored window; degrees beyond D are dropped by arithmetic.
class Laurent {
public:
    Laurent() = default;
    static Laurent zero(const FieldPtr& f, int e, AnnulusType type,
                        int trunc = kDefaultTruncation, int prec = kDefaultPrecision);
    static Laurent constant(const Dvr& c, int e, AnnulusType type,
                            int trunc = kDefaultTruncation);
    // c * X^d for d >= 0, c * Y^(-d) for d < 0.
    static Laurent monomial(const Dvr& c, int degree, int e, AnnulusType type,
                            int trunc = kDefaultTruncation);
    // Reduce a raw bivariate polynomial sum c * X^i Y^j via X*Y = pi^e.
    static Laurent from_bivariate(const FieldPtr& f, int e, AnnulusType type, int trunc,
                                  const std::vector<std::tuple<int, int, Dvr>>& terms,
                                  int prec = kDefaultPrecision);
    // Polynomial in Y with DVR coefficients (ascending).
    static Laurent from_y_poly(const std::vector<Dvr>& coeffs, int e, AnnulusType type,
                               int trunc = kDefaultTruncation);

    const FieldPtr& field() const { return f_; }
    int modulus() const { return e_; }
    AnnulusType type() const { return type_; }
    int truncation() const { return trunc_; }
    int ambient_precision() const { return prec_; }

    const Dvr& xcoeff(int i) const;        // 0 <= i <= trunc
    const Dvr& ycoeff(int i) const;        // 1 <= i <= trunc
    void set_xcoeff(int i, const Dvr& c);
    void set_ycoeff(int i, const Dvr& c);
    // Coefficient at Laurent degree d (a_d for d >= 0, b_{-d} for d < 0).
    Dvr coeff_at_degree(int d) const;

    bool is_zero() const;

    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator-() const;
    Laurent operator*(const Laurent& o) const;
    Laurent scaled(const Dvr& c) const;
    Laurent pow(long long n) const;
    // Multiply every coefficient by pi^k (k < 0 requires divisibility).
    Laurent shift_pi(int k) const;
    // Substitute X -> c X, Y -> c^{-1} Y for a unit constant c.
    Laurent rescale_x(const Dvr& c) const;

    // Copy with a different truncation window (new degrees are exact zeros).
    Laurent with_truncation(int trunc) const;

    bool is_unit() const;
    Laurent invert_unit() const;

    BoundaryData boundary() const;
    // Minimum of ord(coeff) + d*r over the X-expansion at radius r in [0, e].
    Rat eta_at(const Rat& r) const;
    // Smallest/largest Laurent degree attaining eta_r, plus the value.
    std::tuple<int, int, Rat> degree_span_at(const Rat& r) const;

    NewtonPolygon newton_polygon() const;
    std::vector<Rat> critical_radii() const;
    // Number of zeros (with multiplicity) with |pi|^r2 <= |X| <= |pi|^r1.
    long long count_zeros(const Rat& r1, const Rat& r2) const;

    // f(a) = f(a, pi^e / a) for 0 <= ord(a) <= e.
    Dvr evaluate(const Dvr& a) const;

    bool equals(const Laurent& o) const;
    std::string to_string() const;

private:
    void check_compatible(const Laurent& o) const;
    // Nonzero X-expansion lines (degree, ord) plus precision guard.
    std::vector<std::pair<int, int>> lines() const;
    void precision_guard(const Rat& r, const Rat& eta) const;

    FieldPtr f_;
    int e_ = 1;
    AnnulusType type_ = AnnulusType::closed;
    int trunc_ = kDefaultTruncation;
    int prec_ = kDefaultPrecision;
    std::vector<Dvr> a_; // size trunc_+1
    std::vector<Dvr> b_; // size trunc_, b_[i-1] multiplies Y^i
};

// Division step: given f(a) = 0 with 0 <= ord(a) <= e, returns g with
//   Y * f = (Y - pi^e/a) * g.
Laurent divide_root(const Laurent& f, const Dvr& a);

struct WeierstrassData {
    std::vector<Dvr> distinguished; // monic polynomial P in Y, ascending
    Laurent unit;
    int alpha = 0;
    int eta = 0;
    std::vector<Dvr> roots; // the Y-coordinates beta_i of the removed zeros
};

// Weierstrass preparation: Y^alpha * f = pi^eta * P(Y) * unit.
WeierstrassData weierstrass_prepare(const Laurent& f);

} // namespace nonarch
