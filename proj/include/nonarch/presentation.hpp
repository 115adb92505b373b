#pragma once

#include <map>
#include <string>
#include <vector>

#include "dvr.hpp"
#include "rational.hpp"

namespace nonarch {

// restricted = convergent (R{...}), formal = R[[...]]
enum class VarKind { restricted, formal };

std::string var_kind_name(VarKind k);
VarKind var_kind_from_name(const std::string& s);

// A variable of a presentation.  weight w means the variable carries radius
// |pi|^{-w} (the R{|pi|^{a/b} X} convention); plain presentations use 0.
struct VariableDecl {
    std::string name;
    VarKind kind = VarKind::restricted;
    Rat weight{0};
};

// Monomial in declared variables: sorted (index, exponent) pairs, exponents > 0.
struct Monomial {
    std::vector<std::pair<int, int>> factors;

    static Monomial one() { return {}; }
    static Monomial var(int i, int e = 1);
    Monomial operator*(const Monomial& o) const;
    int exponent_of(int var) const;
    long long total_degree() const;
    bool operator<(const Monomial& o) const { return factors < o.factors; }
    bool operator==(const Monomial& o) const { return factors == o.factors; }
};

// Sparse multivariate polynomial with coefficients in R.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(const FieldPtr& f) : f_(f) {}
    static Polynomial constant(const Dvr& c);
    static Polynomial variable(const FieldPtr& f, int i, int prec = kDefaultPrecision);

    const FieldPtr& field() const { return f_; }
    const std::map<Monomial, Dvr>& terms() const { return terms_; }
    bool is_zero() const;
    int term_count() const { return static_cast<int>(terms_.size()); }
    Dvr coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Dvr& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Dvr& c) const;
    Polynomial shift_pi(int k) const;

    // Substitute variable i by p throughout.
    Polynomial substitute(int i, const Polynomial& p) const;
    // Relabel variables via old index -> new index.
    Polynomial rename(const std::vector<int>& new_index) const;
    Polynomial map_coeffs(const std::function<Dvr(const Dvr&)>& fn) const;

    bool equals(const Polynomial& o) const;
    std::string to_string(const std::vector<VariableDecl>& vars) const;

private:
    FieldPtr f_;
    std::map<Monomial, Dvr> terms_; // exact zeros dropped
};

// Finitely presented special R-algebra: R{restricted}[[formal]] / (relations).
struct Presentation {
    FieldPtr field;
    std::vector<VariableDecl> vars;
    std::vector<Polynomial> relations;

    int var_index(const std::string& name) const; // -1 if absent
    std::string to_string() const;
};

// Basis of a finite free extension algebra over R, with its multiplication
// table and the data needed to rewrite extension-side coefficients in R-
// coordinates.  Covers pi^(1/rho)-power bases, normal bases of residual
// extensions, their composite, and ad-hoc quadratic bases.
struct BasisData {
    FieldPtr base;               // coefficient field of the output side
    FieldPtr ext;                // coefficient field of the input side
    int degree = 1;              // m
    int rho = 1;                 // uniformizer index split of input coefficients
    std::vector<std::string> labels;
    std::vector<Rat> weights;    // dilation weight carried by each basis element
    std::vector<char> nilpotent; // topologically nilpotent basis elements
    // table[i][j] = coordinates of e_i * e_j over R, each of width `degree`.
    std::vector<std::vector<std::vector<Dvr>>> table;
    std::vector<Dvr> unit;       // coordinates of 1
    // normal-basis coordinate matrix (row-major, width = residue degree);
    // empty when the residue fields agree.
    std::vector<std::vector<long long>> residue_coords;

    // Combined basis sigma^l(a) * varpi^i of the extension described by ext.
    static BasisData from_extension(const FieldPtr& base, const ExtensionSpec& ext,
                                    int prec = kDefaultPrecision);
    // Basis {1, s} with s^2 = d over the base ring itself.
    static BasisData quadratic_root(const FieldPtr& f, const Dvr& d, const Rat& weight);

    // Coordinates of an input-side coefficient.
    std::vector<Dvr> decompose(const Dvr& c) const;
    std::vector<Dvr> multiply(const std::vector<Dvr>& x, const std::vector<Dvr>& y) const;
    void validate() const;
};

struct RestrictionResult {
    Presentation presentation;
    std::vector<Polynomial> charpoly_coeffs; // c_0 .. c_{m-1}, leading term 1
};

// Coefficient polynomials of p after substituting T -> sum_j T_j e_j.
std::vector<Polynomial> expand_in_basis(const Polynomial& p, const BasisData& basis,
                                        int n_vars);

// Weil restriction along the basis: m variables per original one, relations =
// all coefficient polynomials of the originals.
RestrictionResult weil_restrict(const Presentation& pres, const BasisData& basis);

// Coefficients of the characteristic polynomial of multiplication by
// sum x_i e_i, as polynomials in x_0..x_{m-1}.
std::vector<Polynomial> charpoly_coeffs(const BasisData& basis);

// Dilated restriction along a tame extension: power basis in the ramified
// direction (variable i gains weight i/rho), trace-one normal basis in the
// unramified direction.
RestrictionResult dilated_weil_restrict(const Presentation& pres, const ExtensionSpec& ext);

struct FlattenResult {
    Presentation presentation;
    bool unflattened = false; // a common pi factor survives in a >2-term relation
};

// Divide binomial relations by their common pi power and drop zero relations.
FlattenResult remove_pi_torsion(const Presentation& pres);

} // namespace nonarch
