#include "nonarch/dvr.hpp"

#include <algorithm>
#include <numeric>

#include "nonarch/errors.hpp"

namespace nonarch {

namespace {
void check_prec(int prec) {
    if (prec < 1) throw domain_error("precision must be positive");
}
void check_same(const Dvr& a, const Dvr& b) {
    if (!a.field() || !b.field() || *a.field() != *b.field())
        throw domain_error("coefficient field mismatch");
}
} // namespace

void Dvr::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Dvr Dvr::zero(const FieldPtr& f, int prec) {
    check_prec(prec);
    Dvr d;
    d.f_ = f;
    d.prec_ = prec;
    return d;
}

Dvr Dvr::constant(const FElem& c, int prec) {
    Dvr d = zero(c.field(), prec);
    if (!c.is_zero()) d.c_.push_back(c);
    return d;
}

Dvr Dvr::from_integer(const FieldPtr& f, long long n, int prec) {
    return constant(FElem::from_integer(f, n), prec);
}

Dvr Dvr::from_terms(const FieldPtr& f, const std::vector<std::pair<int, FElem>>& terms,
                    int prec) {
    Dvr d = zero(f, prec);
    for (const auto& [i, c] : terms) {
        if (i < 0) throw domain_error("negative pi-exponent");
        if (i >= prec) continue;
        if (static_cast<int>(d.c_.size()) <= i) d.c_.resize(i + 1, FElem::zero(f));
        d.c_[i] = d.c_[i] + c;
    }
    d.trim();
    return d;
}

Dvr Dvr::uniformizer_pow(const FieldPtr& f, int k, int prec) {
    if (k < 0) throw domain_error("pi^k with negative k is not in R");
    return from_terms(f, {{k, FElem::one(f)}}, prec);
}

FElem Dvr::coeff(int i) const {
    if (i < 0 || i >= prec_) throw domain_error("coefficient index outside precision window");
    if (i >= static_cast<int>(c_.size())) return FElem::zero(f_);
    return c_[i];
}

std::optional<int> Dvr::ord() const {
    for (int i = 0; i < static_cast<int>(c_.size()); ++i)
        if (!c_[i].is_zero()) return i;
    return std::nullopt;
}

int Dvr::ord_checked() const {
    auto v = ord();
    if (!v) throw precision_error("element is zero at precision " + std::to_string(prec_) +
                                  "; valuation undetermined");
    return *v;
}

bool Dvr::is_unit() const { return !c_.empty() && !c_[0].is_zero(); }

FElem Dvr::residue() const {
    return c_.empty() ? FElem::zero(f_) : c_[0];
}

bool Dvr::is_constant() const {
    return c_.size() <= 1;
}

Dvr Dvr::operator+(const Dvr& o) const {
    check_same(*this, o);
    Dvr d = zero(f_, std::min(prec_, o.prec_));
    size_t n = std::max(c_.size(), o.c_.size());
    for (size_t i = 0; i < n && static_cast<int>(i) < d.prec_; ++i) {
        FElem a = i < c_.size() ? c_[i] : FElem::zero(f_);
        FElem b = i < o.c_.size() ? o.c_[i] : FElem::zero(f_);
        FElem s = a + b;
        if (static_cast<int>(d.c_.size()) <= static_cast<int>(i))
            d.c_.resize(i + 1, FElem::zero(f_));
        d.c_[i] = s;
    }
    d.trim();
    return d;
}

Dvr Dvr::operator-(const Dvr& o) const { return *this + (-o); }

Dvr Dvr::operator-() const {
    Dvr d = *this;
    for (auto& c : d.c_) c = -c;
    return d;
}

Dvr Dvr::operator*(const Dvr& o) const {
    check_same(*this, o);
    int va = ord().value_or(prec_);
    int vb = o.ord().value_or(o.prec_);
    int prec = std::min(prec_ + vb, o.prec_ + va);
    Dvr d = zero(f_, prec);
    d.c_.assign(std::min<size_t>(prec, c_.size() + o.c_.size()), FElem::zero(f_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size() && i + j < d.c_.size(); ++j)
            d.c_[i + j] = d.c_[i + j] + c_[i] * o.c_[j];
    }
    d.trim();
    return d;
}

Dvr Dvr::scaled(const FElem& c) const {
    Dvr d = *this;
    for (auto& x : d.c_) x = x * c;
    d.trim();
    return d;
}

Dvr Dvr::pow(long long n) const {
    if (n < 0) throw domain_error("negative power of a DVR element");
    Dvr acc = from_integer(f_, 1, prec_ == 0 ? kDefaultPrecision : prec_);
    Dvr base = *this;
    // keep the unit convention: x^0 = 1 at x's precision
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Dvr Dvr::shift(int k) const {
    if (k >= 0) {
        Dvr d = zero(f_, prec_ + k);
        d.c_.assign(c_.size() + k, FElem::zero(f_));
        for (size_t i = 0; i < c_.size(); ++i) d.c_[i + k] = c_[i];
        d.trim();
        return d;
    }
    int m = -k;
    if (prec_ <= m)
        throw precision_error("cannot divide by pi^" + std::to_string(m) +
                              " at precision " + std::to_string(prec_));
    for (int i = 0; i < m && i < static_cast<int>(c_.size()); ++i)
        if (!c_[i].is_zero())
            throw domain_error("element not divisible by pi^" + std::to_string(m));
    Dvr d = zero(f_, prec_ - m);
    if (static_cast<int>(c_.size()) > m)
        d.c_.assign(c_.begin() + m, c_.end());
    return d;
}

Dvr Dvr::invert_unit() const {
    if (!is_unit()) throw domain_error("cannot invert a non-unit DVR element");
    FElem inv0 = c_[0].inverse();
    Dvr d = zero(f_, prec_);
    d.c_.assign(prec_, FElem::zero(f_));
    d.c_[0] = inv0;
    for (int n = 1; n < prec_; ++n) {
        FElem s = FElem::zero(f_);
        for (int i = 1; i <= n && i < static_cast<int>(c_.size()); ++i)
            s = s + c_[i] * d.c_[n - i];
        d.c_[n] = -(inv0 * s);
    }
    d.trim();
    return d;
}

Dvr Dvr::div(const Dvr& a, const Dvr& b) {
    int r = b.ord_checked();
    if (a.is_zero()) {
        if (a.precision() <= r)
            throw precision_error("quotient precision would be non-positive");
        return zero(a.field(), a.precision() - r);
    }
    if (*a.ord() < r) throw domain_error("quotient is not integral");
    return a.shift(-r) * b.shift(-r).invert_unit();
}

Dvr Dvr::truncated(int prec) const {
    check_prec(prec);
    if (prec >= prec_) return *this;
    Dvr d = zero(f_, prec);
    d.c_.assign(c_.begin(), c_.begin() + std::min<size_t>(prec, c_.size()));
    d.trim();
    return d;
}

Dvr Dvr::with_precision(int prec) const {
    check_prec(prec);
    if (prec <= prec_) return truncated(prec);
    Dvr d = *this;
    d.prec_ = prec;
    return d;
}

Dvr Dvr::teichmuller() const {
    if (!is_unit()) throw domain_error("Teichmuller lift requires a unit");
    return constant(c_[0], prec_);
}

Dvr Dvr::base_change_ramified(int d) const {
    if (d < 1) throw domain_error("ramification degree must be positive");
    Dvr out = zero(f_, prec_ * d);
    out.c_.assign(c_.empty() ? 0 : (c_.size() - 1) * d + 1, FElem::zero(f_));
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i * d] = c_[i];
    out.trim();
    return out;
}

Dvr Dvr::map_coeffs(const std::function<FElem(const FElem&, int)>& fn) const {
    Dvr d = *this;
    for (int i = 0; i < static_cast<int>(d.c_.size()); ++i) d.c_[i] = fn(d.c_[i], i);
    d.trim();
    return d;
}

bool Dvr::equals(const Dvr& o) const {
    check_same(*this, o);
    int prec = std::min(prec_, o.prec_);
    for (int i = 0; i < prec; ++i)
        if (coeff(i) != o.coeff(i)) return false;
    return true;
}

bool Dvr::exactly_equal(const Dvr& o) const {
    return prec_ == o.prec_ && equals(o);
}

std::string Dvr::to_string() const {
    if (c_.empty()) return "O(pi^" + std::to_string(prec_) + ")";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += c_[i].to_string();
        if (i == 1) s += "*pi";
        else if (i > 1) s += "*pi^" + std::to_string(i);
    }
    return s + " + O(pi^" + std::to_string(prec_) + ")";
}

Dvr root_of_unity(const FieldPtr& f, long long m, int prec) {
    auto z = find_root_of_unity(f, m);
    if (!z)
        throw domain_error("residue field has no element of multiplicative order " +
                           std::to_string(m));
    return Dvr::constant(*z, prec);
}

namespace {
Dvr poly_eval(const std::vector<Dvr>& f, const Dvr& x) {
    if (f.empty()) throw domain_error("empty polynomial");
    Dvr acc = f.back();
    for (int i = static_cast<int>(f.size()) - 2; i >= 0; --i)
        acc = acc * x + f[i];
    return acc;
}
} // namespace

Dvr hensel_lift_root(const std::vector<Dvr>& f, const Dvr& x0) {
    if (f.size() < 2) throw domain_error("polynomial must be non-constant");
    std::vector<Dvr> df;
    for (size_t i = 1; i < f.size(); ++i)
        df.push_back(f[i].scaled(FElem::from_integer(f[i].field(), static_cast<long long>(i))));
    Dvr x = x0;
    Dvr fx = poly_eval(f, x);
    if (!fx.is_zero() && fx.ord_checked() < 1)
        throw domain_error("starting point is not a residual root");
    Dvr dfx = poly_eval(df, x);
    if (!dfx.is_unit())
        throw domain_error("residual root is not simple; Newton lifting unavailable");
    int guard = 0;
    while (true) {
        fx = poly_eval(f, x);
        if (fx.is_zero()) break;
        dfx = poly_eval(df, x);
        x = x - fx * dfx.invert_unit();
        if (++guard > 64)
            throw precision_error("Newton iteration failed to converge");
    }
    return x;
}

Dvr hilbert90_solve(const Dvr& u, int frob) {
    const FieldPtr& f = u.field();
    if (!f->is_finite() || f->degree() == 1)
        throw unsupported_error("Hilbert 90 search requires a finite residual extension");
    if (!u.is_unit()) throw domain_error("Hilbert 90 input must be a unit");
    if (!u.is_constant())
        throw unsupported_error("Hilbert 90 solver expects a Teichmuller (constant) unit");
    int r = f->degree();
    int fr = ((frob % r) + r) % r;
    int orbit = fr == 0 ? 1 : r / std::gcd(r, fr);
    FElem ubar = u.residue();
    FElem norm = FElem::one(f);
    FElem cur = ubar;
    for (int i = 0; i < orbit; ++i) {
        norm = norm * cur;
        cur = cur.frobenius(frob);
    }
    if (!norm.is_one())
        throw domain_error("unit norm along the sigma-orbit is not 1");
    for (long long i = 1; i < f->size(); ++i) {
        FElem b = field_element_by_index(f, i);
        if (b.is_zero()) continue;
        if (b == ubar * b.frobenius(frob))
            return Dvr::constant(b, u.precision());
    }
    throw domain_error("no Hilbert 90 solution found (norm condition violated?)");
}

void ExtensionSpec::validate(const FieldPtr& base) const {
    if (rho < 1 || residue_degree < 1) throw domain_error("extension degrees must be positive");
    if (base->is_finite() && rho % base->characteristic() == 0)
        throw unsupported_error("ramification index divisible by the residue characteristic (wild)");
    if (rho > 1 && !find_root_of_unity(base, rho))
        throw domain_error("base residue field lacks a primitive root of unity of order " +
                           std::to_string(rho));
    if (rho > 1 && std::gcd(((t % rho) + rho) % rho, rho) != 1)
        throw domain_error("sigma(varpi)/varpi must generate the inertia character");
    if (residue_degree > 1) {
        if (!base->is_finite())
            throw unsupported_error("residual extensions of characteristic-zero fields");
        if (base->degree() != 1)
            throw unsupported_error("residual extension must be built over a prime base field");
        if (static_cast<int>(residual_poly.size()) != residue_degree + 1)
            throw domain_error("residual polynomial degree mismatch");
    }
}

FieldPtr ExtensionSpec::residual_field(const FieldPtr& base) const {
    if (residue_degree == 1) return base;
    return Field::extension(base->characteristic(), residual_poly);
}

} // namespace nonarch
