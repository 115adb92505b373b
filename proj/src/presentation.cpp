#include "nonarch/presentation.hpp"

#include <algorithm>
#include <sstream>

#include "nonarch/errors.hpp"

namespace nonarch {

std::string var_kind_name(VarKind k) {
    return k == VarKind::restricted ? "restricted" : "formal";
}

VarKind var_kind_from_name(const std::string& s) {
    if (s == "restricted") return VarKind::restricted;
    if (s == "formal") return VarKind::formal;
    throw parse_error("unknown variable kind: " + s);
}

Monomial Monomial::var(int i, int e) {
    Monomial m;
    if (e > 0) m.factors.emplace_back(i, e);
    return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial out;
    auto a = factors.begin();
    auto b = o.factors.begin();
    while (a != factors.end() || b != o.factors.end()) {
        if (b == o.factors.end() || (a != factors.end() && a->first < b->first))
            out.factors.push_back(*a++);
        else if (a == factors.end() || b->first < a->first)
            out.factors.push_back(*b++);
        else {
            out.factors.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    return out;
}

int Monomial::exponent_of(int var) const {
    for (const auto& [v, e] : factors)
        if (v == var) return e;
    return 0;
}

long long Monomial::total_degree() const {
    long long d = 0;
    for (const auto& [v, e] : factors) d += e;
    return d;
}

Polynomial Polynomial::constant(const Dvr& c) {
    Polynomial p(c.field());
    p.add_term(Monomial::one(), c);
    return p;
}

Polynomial Polynomial::variable(const FieldPtr& f, int i, int prec) {
    Polynomial p(f);
    p.add_term(Monomial::var(i), Dvr::from_integer(f, 1, prec));
    return p;
}

bool Polynomial::is_zero() const { return terms_.empty(); }

Dvr Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Dvr::zero(f_) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Dvr& c) {
    if (!f_) f_ = c.field();
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial out = *this;
    if (!out.f_) out.f_ = o.f_;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    Polynomial out(f_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial out(f_ ? f_ : o.f_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) out.add_term(m1 * m2, c1 * c2);
    return out;
}

Polynomial Polynomial::scaled(const Dvr& c) const {
    Polynomial out(f_);
    for (const auto& [m, x] : terms_) out.add_term(m, x * c);
    return out;
}

Polynomial Polynomial::shift_pi(int k) const {
    Polynomial out(f_);
    for (const auto& [m, x] : terms_) out.add_term(m, x.shift(k));
    return out;
}

Polynomial Polynomial::substitute(int i, const Polynomial& p) const {
    Polynomial out(f_);
    for (const auto& [m, c] : terms_) {
        int e = m.exponent_of(i);
        if (e == 0) {
            out.add_term(m, c);
            continue;
        }
        Monomial rest;
        for (const auto& f : m.factors)
            if (f.first != i) rest.factors.push_back(f);
        Polynomial acc = Polynomial::constant(c);
        for (int j = 0; j < e; ++j) acc = acc * p;
        for (const auto& [m2, c2] : acc.terms()) out.add_term(rest * m2, c2);
    }
    return out;
}

Polynomial Polynomial::rename(const std::vector<int>& new_index) const {
    Polynomial out(f_);
    for (const auto& [m, c] : terms_) {
        Monomial m2;
        for (const auto& [v, e] : m.factors) {
            if (v < 0 || v >= static_cast<int>(new_index.size()))
                throw domain_error("variable index out of range in rename");
            m2.factors.emplace_back(new_index[v], e);
        }
        std::sort(m2.factors.begin(), m2.factors.end());
        out.add_term(m2, c);
    }
    return out;
}

Polynomial Polynomial::map_coeffs(const std::function<Dvr(const Dvr&)>& fn) const {
    Polynomial out(f_);
    for (const auto& [m, c] : terms_) out.add_term(m, fn(c));
    return out;
}

bool Polynomial::equals(const Polynomial& o) const {
    Polynomial d = *this - o;
    return d.is_zero();
}

std::string Polynomial::to_string(const std::vector<VariableDecl>& vars) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        for (const auto& [v, e] : m.factors) {
            os << "*" << (v < static_cast<int>(vars.size()) ? vars[v].name
                                                            : "T" + std::to_string(v));
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

int Presentation::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return static_cast<int>(i);
    return -1;
}

std::string Presentation::to_string() const {
    std::ostringstream os;
    os << "vars:";
    for (const auto& v : vars) {
        os << " " << v.name << "[" << var_kind_name(v.kind);
        if (v.weight != Rat(0)) os << ", w=" << rat_to_string(v.weight);
        os << "]";
    }
    os << "\n";
    for (const auto& r : relations) os << "  " << r.to_string(vars) << " = 0\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Bases

namespace {

// Coordinates of x in the span of the columns of A over F_p (A square,
// row-major); returns empty if A is singular.
std::vector<long long> solve_mod_p(std::vector<std::vector<long long>> A,
                                   std::vector<long long> x, long long p) {
    int n = static_cast<int>(A.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int row = col; row < n; ++row)
            if (A[row][col] % p != 0) { piv = row; break; }
        if (piv < 0) return {};
        std::swap(A[col], A[piv]);
        std::swap(x[col], x[piv]);
        // normalize pivot row
        long long inv = 1, a = ((A[col][col] % p) + p) % p;
        for (long long e = p - 2; e > 0; e >>= 1) {
            if (e & 1) inv = inv * a % p;
            a = a * a % p;
        }
        for (int j = 0; j < n; ++j) A[col][j] = A[col][j] % p * inv % p;
        x[col] = x[col] % p * inv % p;
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            long long fac = ((A[row][col] % p) + p) % p;
            if (fac == 0) continue;
            for (int j = 0; j < n; ++j)
                A[row][j] = ((A[row][j] - fac * A[col][j]) % p + p) % p;
            x[row] = ((x[row] - fac * x[col]) % p + p) % p;
        }
    }
    for (auto& v : x) v = ((v % p) + p) % p;
    return x;
}

} // namespace

BasisData BasisData::from_extension(const FieldPtr& base, const ExtensionSpec& ext,
                                    int prec) {
    ext.validate(base);
    BasisData b;
    b.base = base;
    b.ext = ext.residual_field(base);
    b.rho = ext.rho;
    int r = ext.residue_degree;
    b.degree = ext.rho * r;
    long long p = base->characteristic();

    // Trace-one normal basis of the residual extension (a = 1 when trivial).
    FElem a = FElem::one(b.ext);
    if (r > 1) {
        bool found = false;
        for (long long idx = 1; idx < b.ext->size() && !found; ++idx) {
            FElem cand = field_element_by_index(b.ext, idx);
            std::vector<std::vector<long long>> mat(r, std::vector<long long>(r));
            FElem c = cand;
            for (int l = 0; l < r; ++l) {
                for (int q = 0; q < r; ++q) mat[q][l] = c.coords()[q];
                c = c.frobenius(ext.frobenius);
            }
            std::vector<long long> e0(r, 0);
            e0[0] = 1;
            if (solve_mod_p(mat, e0, p).empty()) continue;
            FElem tr = FElem::zero(b.ext);
            c = cand;
            for (int l = 0; l < r; ++l) {
                tr = tr + c;
                c = c.frobenius(ext.frobenius);
            }
            // a normal basis generator has nonzero trace
            a = cand / tr;
            found = true;
        }
        if (!found) throw domain_error("no normal basis generator found");
        std::vector<std::vector<long long>> mat(r, std::vector<long long>(r));
        FElem c = a;
        for (int l = 0; l < r; ++l) {
            for (int q = 0; q < r; ++q) mat[q][l] = c.coords()[q];
            c = c.frobenius(ext.frobenius);
        }
        // rows of residue_coords: solve for each standard basis vector
        b.residue_coords.resize(r);
        for (int q = 0; q < r; ++q) {
            std::vector<long long> eq(r, 0);
            eq[q] = 1;
            std::vector<long long> col = solve_mod_p(mat, eq, p);
            for (int l = 0; l < r; ++l) {
                if (b.residue_coords[l].empty()) b.residue_coords[l].resize(r);
                b.residue_coords[l][q] = col[l];
            }
        }
    }

    std::vector<FElem> conj(r);
    {
        FElem c = a;
        for (int l = 0; l < r; ++l) {
            conj[l] = c;
            c = c.frobenius(ext.frobenius);
        }
    }
    auto coords_of = [&](const FElem& x) {
        std::vector<long long> out(r, 0);
        if (r == 1) {
            // base == ext; coordinates are the element itself (handled below)
            return out;
        }
        for (int l = 0; l < r; ++l) {
            long long s = 0;
            for (int q = 0; q < r; ++q) s += b.residue_coords[l][q] * x.coords()[q];
            out[l] = ((s % p) + p) % p;
        }
        return out;
    };

    b.labels.resize(b.degree);
    b.weights.resize(b.degree);
    b.nilpotent.resize(b.degree);
    b.unit.assign(b.degree, Dvr::zero(base, prec));
    for (int l = 0; l < r; ++l) {
        for (int i = 0; i < b.rho; ++i) {
            int u = l * b.rho + i;
            std::string lab = r > 1 ? "a(" + std::to_string(l) + ")" : "";
            if (i > 0) lab += (lab.empty() ? "" : "*") + std::string("w^") + std::to_string(i);
            if (lab.empty()) lab = "1";
            b.labels[u] = lab;
            b.weights[u] = make_rat(Int(i), Int(b.rho));
            b.nilpotent[u] = (i > 0);
        }
        b.unit[l * b.rho] = Dvr::from_integer(base, 1, prec);
    }

    b.table.assign(b.degree, std::vector<std::vector<Dvr>>(
                                 b.degree, std::vector<Dvr>(b.degree, Dvr::zero(base, prec))));
    for (int l = 0; l < r; ++l)
        for (int i = 0; i < b.rho; ++i)
            for (int l2 = 0; l2 < r; ++l2)
                for (int j = 0; j < b.rho; ++j) {
                    int s = (i + j) / b.rho;
                    int c = (i + j) % b.rho;
                    FElem prod = conj[l] * conj[l2];
                    if (r == 1) {
                        b.table[l * b.rho + i][l2 * b.rho + j][c] =
                            Dvr::uniformizer_pow(base, s, prec);
                        continue;
                    }
                    std::vector<long long> lam = coords_of(prod);
                    for (int q = 0; q < r; ++q) {
                        if (lam[q] == 0) continue;
                        b.table[l * b.rho + i][l2 * b.rho + j][q * b.rho + c] =
                            Dvr::uniformizer_pow(base, s, prec)
                                .scaled(FElem::from_integer(base, Int(lam[q])));
                    }
                }
    b.validate();
    return b;
}

BasisData BasisData::quadratic_root(const FieldPtr& f, const Dvr& d, const Rat& weight) {
    BasisData b;
    b.base = f;
    b.ext = f;
    b.degree = 2;
    b.rho = 1;
    b.labels = {"1", "s"};
    b.weights = {Rat(0), weight};
    b.nilpotent = {0, static_cast<char>(weight > Rat(0) ? 1 : 0)};
    int prec = d.precision();
    Dvr one = Dvr::from_integer(f, 1, prec);
    Dvr z = Dvr::zero(f, prec);
    b.unit = {one, z};
    b.table = {{{one, z}, {z, one}}, {{z, one}, {d, z}}};
    b.validate();
    return b;
}

std::vector<Dvr> BasisData::decompose(const Dvr& c) const {
    int r = static_cast<int>(residue_coords.size());
    if (r == 0) r = 1;
    std::vector<Dvr> out(degree, Dvr::zero(base, c.precision()));
    // split by uniformizer exponent mod rho
    for (int i = 0; i < rho; ++i) {
        int comp_prec = (c.precision() - i + rho - 1) / rho;
        if (comp_prec <= 0) comp_prec = 1;
        std::vector<std::vector<std::pair<int, FElem>>> parts(r);
        for (int n = i; n < c.precision(); n += rho) {
            FElem x = c.coeff(n);
            if (x.is_zero()) continue;
            if (r == 1) {
                parts[0].emplace_back((n - i) / rho, x);
            } else {
                long long p = base->characteristic();
                for (int l = 0; l < r; ++l) {
                    long long s = 0;
                    for (int q = 0; q < static_cast<int>(x.coords().size()); ++q)
                        s += residue_coords[l][q] * x.coords()[q];
                    s = ((s % p) + p) % p;
                    if (s != 0)
                        parts[l].emplace_back((n - i) / rho, FElem::from_integer(base, Int(s)));
                }
            }
        }
        for (int l = 0; l < r; ++l)
            out[l * rho + i] = Dvr::from_terms(base, parts[l], comp_prec);
    }
    return out;
}

std::vector<Dvr> BasisData::multiply(const std::vector<Dvr>& x,
                                     const std::vector<Dvr>& y) const {
    std::vector<Dvr> out(degree, Dvr::zero(base));
    for (int i = 0; i < degree; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < degree; ++j) {
            if (y[j].is_zero()) continue;
            Dvr c = x[i] * y[j];
            for (int l = 0; l < degree; ++l)
                if (!table[i][j][l].is_zero()) out[l] = out[l] + c * table[i][j][l];
        }
    }
    return out;
}

void BasisData::validate() const {
    if (static_cast<int>(table.size()) != degree) throw domain_error("basis table size");
    for (int i = 0; i < degree; ++i)
        for (int j = 0; j < degree; ++j)
            for (int l = 0; l < degree; ++l)
                if (!table[i][j][l].equals(table[j][i][l]))
                    throw domain_error("basis multiplication is not commutative");
    auto unit_vec = [&](int i) {
        std::vector<Dvr> v(degree, Dvr::zero(base));
        v[i] = Dvr::from_integer(base, 1);
        return v;
    };
    for (int i = 0; i < degree; ++i) {
        std::vector<Dvr> v = multiply(unit, unit_vec(i));
        for (int l = 0; l < degree; ++l)
            if (!v[l].equals(unit_vec(i)[l]))
                throw domain_error("basis identity element mismatch");
    }
    // associativity spot check
    for (int i = 0; i < degree; ++i)
        for (int j = 0; j < degree; ++j)
            for (int k = 0; k < degree; ++k) {
                std::vector<Dvr> lhs = multiply(multiply(unit_vec(i), unit_vec(j)), unit_vec(k));
                std::vector<Dvr> rhs = multiply(unit_vec(i), multiply(unit_vec(j), unit_vec(k)));
                for (int l = 0; l < degree; ++l)
                    if (!lhs[l].equals(rhs[l]))
                        throw domain_error("basis multiplication is not associative");
            }
}

// ---------------------------------------------------------------------------
// Restriction

namespace {

using AlgPoly = std::map<Monomial, std::vector<Dvr>>;

void alg_add_term(AlgPoly& p, const Monomial& m, const std::vector<Dvr>& v,
                  const BasisData& basis) {
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, v);
        return;
    }
    for (int l = 0; l < basis.degree; ++l) it->second[l] = it->second[l] + v[l];
}

AlgPoly alg_mul(const AlgPoly& a, const AlgPoly& b, const BasisData& basis) {
    AlgPoly out;
    for (const auto& [m1, v1] : a)
        for (const auto& [m2, v2] : b)
            alg_add_term(out, m1 * m2, basis.multiply(v1, v2), basis);
    return out;
}

} // namespace

std::vector<Polynomial> expand_in_basis(const Polynomial& p, const BasisData& basis,
                                        int n_vars) {
    (void)n_vars;
    int m = basis.degree;
    AlgPoly acc_total;
    for (const auto& [mono, c] : p.terms()) {
        AlgPoly acc;
        acc.emplace(Monomial::one(), basis.decompose(c));
        for (const auto& [v, e] : mono.factors) {
            AlgPoly expansion;
            for (int j = 0; j < m; ++j) {
                std::vector<Dvr> ej(m, Dvr::zero(basis.base));
                ej[j] = Dvr::from_integer(basis.base, 1);
                expansion.emplace(Monomial::var(v * m + j), std::move(ej));
            }
            for (int t = 0; t < e; ++t) acc = alg_mul(acc, expansion, basis);
        }
        for (const auto& [mono2, vec] : acc) alg_add_term(acc_total, mono2, vec, basis);
    }
    std::vector<Polynomial> out(m, Polynomial(basis.base));
    for (const auto& [mono, vec] : acc_total)
        for (int l = 0; l < m; ++l) out[l].add_term(mono, vec[l]);
    return out;
}

RestrictionResult weil_restrict(const Presentation& pres, const BasisData& basis) {
    int m = basis.degree;
    RestrictionResult out;
    out.presentation.field = basis.base;
    for (const auto& v : pres.vars) {
        if (v.weight != Rat(0))
            throw domain_error("restriction input must have weight-0 variables");
        for (int j = 0; j < m; ++j) {
            VariableDecl d;
            d.name = v.name + "_" + std::to_string(j);
            d.weight = basis.weights[j];
            // components along topologically nilpotent basis elements converge
            d.kind = (v.kind == VarKind::restricted || basis.nilpotent[j])
                         ? VarKind::restricted
                         : VarKind::formal;
            out.presentation.vars.push_back(std::move(d));
        }
    }
    for (const auto& rel : pres.relations) {
        std::vector<Polynomial> comps =
            expand_in_basis(rel, basis, static_cast<int>(pres.vars.size()));
        for (auto& c : comps)
            if (!c.is_zero()) out.presentation.relations.push_back(std::move(c));
    }
    out.charpoly_coeffs = charpoly_coeffs(basis);
    return out;
}

std::vector<Polynomial> charpoly_coeffs(const BasisData& basis) {
    int m = basis.degree;
    const int tvar = m; // extra variable for the charpoly indeterminate
    // entries of t*I - M, M[l][j] = sum_i table[i][j][l] x_i
    std::vector<std::vector<Polynomial>> E(m, std::vector<Polynomial>(m, Polynomial(basis.base)));
    for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j) {
            Polynomial entry(basis.base);
            if (l == j) entry = Polynomial::variable(basis.base, tvar);
            for (int i = 0; i < m; ++i)
                if (!basis.table[i][j][l].is_zero())
                    entry = entry -
                            Polynomial::variable(basis.base, i).scaled(basis.table[i][j][l]);
            E[l][j] = std::move(entry);
        }
    // cofactor expansion; m stays desk-scale
    std::function<Polynomial(std::vector<int>, std::vector<int>)> det =
        [&](std::vector<int> rows, std::vector<int> cols) -> Polynomial {
        if (rows.size() == 1) return E[rows[0]][cols[0]];
        Polynomial acc(basis.base);
        std::vector<int> sub_rows(rows.begin() + 1, rows.end());
        for (size_t c = 0; c < cols.size(); ++c) {
            if (E[rows[0]][cols[c]].is_zero()) continue;
            std::vector<int> sub_cols;
            for (size_t c2 = 0; c2 < cols.size(); ++c2)
                if (c2 != c) sub_cols.push_back(cols[c2]);
            Polynomial term = E[rows[0]][cols[c]] * det(sub_rows, sub_cols);
            acc = (c % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    };
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    Polynomial chi = det(idx, idx);
    std::vector<Polynomial> out(m, Polynomial(basis.base));
    for (const auto& [mono, c] : chi.terms()) {
        int tdeg = mono.exponent_of(tvar);
        Monomial rest;
        for (const auto& f : mono.factors)
            if (f.first != tvar) rest.factors.push_back(f);
        if (tdeg == m) continue; // leading coefficient 1
        out[tdeg].add_term(rest, c);
    }
    return out;
}

RestrictionResult dilated_weil_restrict(const Presentation& pres, const ExtensionSpec& ext) {
    if (ext.degree() == 1) {
        RestrictionResult out;
        out.presentation = pres;
        Polynomial c0(pres.field);
        c0.add_term(Monomial::var(0), Dvr::from_integer(pres.field, -1));
        out.charpoly_coeffs = {c0};
        return out;
    }
    FieldPtr base = pres.field;
    if (ext.residue_degree > 1) {
        if (!pres.field->is_finite())
            throw unsupported_error("residual extensions require a finite base field");
        base = Field::prime(pres.field->characteristic());
        FieldPtr expected = ext.residual_field(base);
        if (*pres.field != *expected)
            throw domain_error("presentation field does not match the extension's residue field");
    }
    BasisData basis = BasisData::from_extension(base, ext);
    return weil_restrict(pres, basis);
}

FlattenResult remove_pi_torsion(const Presentation& pres) {
    FlattenResult out;
    out.presentation.field = pres.field;
    out.presentation.vars = pres.vars;
    for (const auto& rel : pres.relations) {
        if (rel.is_zero()) continue;
        int c = -1;
        for (const auto& [m, coeff] : rel.terms()) {
            int o = coeff.ord_checked();
            if (c < 0 || o < c) c = o;
        }
        if (c >= 1 && rel.term_count() <= 2) {
            out.presentation.relations.push_back(rel.shift_pi(-c));
        } else {
            if (c >= 1) out.unflattened = true;
            out.presentation.relations.push_back(rel);
        }
    }
    return out;
}

} // namespace nonarch
