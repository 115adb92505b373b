#include "nonarch/laurent.hpp"

#include <algorithm>
#include <set>

#include "nonarch/errors.hpp"

namespace nonarch {

std::string annulus_type_name(AnnulusType t) {
    switch (t) {
        case AnnulusType::open: return "open";
        case AnnulusType::semi_open: return "semi_open";
        case AnnulusType::closed: return "closed";
    }
    throw domain_error("bad annulus type");
}

AnnulusType annulus_type_from_name(const std::string& s) {
    if (s == "open") return AnnulusType::open;
    if (s == "semi_open" || s == "semi-open") return AnnulusType::semi_open;
    if (s == "closed") return AnnulusType::closed;
    throw parse_error("unknown annulus type: " + s);
}

Laurent Laurent::zero(const FieldPtr& f, int e, AnnulusType type, int trunc, int prec) {
    if (e < 1) throw domain_error("annulus modulus must be positive");
    if (trunc < 1) throw domain_error("truncation degree must be positive");
    Laurent L;
    L.f_ = f;
    L.e_ = e;
    L.type_ = type;
    L.trunc_ = trunc;
    L.prec_ = prec;
    L.a_.assign(trunc + 1, Dvr::zero(f, prec));
    L.b_.assign(trunc, Dvr::zero(f, prec));
    return L;
}

Laurent Laurent::constant(const Dvr& c, int e, AnnulusType type, int trunc) {
    Laurent L = zero(c.field(), e, type, trunc, c.precision());
    L.a_[0] = c;
    return L;
}

Laurent Laurent::monomial(const Dvr& c, int degree, int e, AnnulusType type, int trunc) {
    Laurent L = zero(c.field(), e, type, trunc, c.precision());
    if (degree > trunc || degree < -trunc)
        throw domain_error("monomial degree exceeds the truncation window");
    if (degree >= 0) L.a_[degree] = c;
    else L.b_[-degree - 1] = c;
    return L;
}

Laurent Laurent::from_bivariate(const FieldPtr& f, int e, AnnulusType type, int trunc,
                                const std::vector<std::tuple<int, int, Dvr>>& terms,
                                int prec) {
    Laurent L = zero(f, e, type, trunc, prec);
    for (const auto& [i, j, c] : terms) {
        if (i < 0 || j < 0) throw domain_error("bivariate exponents must be nonnegative");
        int m = std::min(i, j);
        int d = i - j;
        if (d > trunc || d < -trunc) continue; // beyond the retained window
        Dvr red = c.shift(e * m);
        if (d >= 0) L.a_[d] = L.a_[d] + red;
        else L.b_[-d - 1] = L.b_[-d - 1] + red;
    }
    return L;
}

Laurent Laurent::from_y_poly(const std::vector<Dvr>& coeffs, int e, AnnulusType type,
                             int trunc) {
    if (coeffs.empty()) throw domain_error("empty polynomial");
    Laurent L = zero(coeffs[0].field(), e, type, trunc, coeffs[0].precision());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (static_cast<int>(i) > trunc)
            throw domain_error("polynomial degree exceeds the truncation window");
        if (i == 0) L.a_[0] = coeffs[0];
        else L.b_[i - 1] = coeffs[i];
    }
    return L;
}

const Dvr& Laurent::xcoeff(int i) const {
    if (i < 0 || i > trunc_) throw domain_error("X-degree outside the truncation window");
    return a_[i];
}

const Dvr& Laurent::ycoeff(int i) const {
    if (i < 1 || i > trunc_) throw domain_error("Y-degree outside the truncation window");
    return b_[i - 1];
}

void Laurent::set_xcoeff(int i, const Dvr& c) {
    if (i < 0 || i > trunc_) throw domain_error("X-degree outside the truncation window");
    a_[i] = c;
}

void Laurent::set_ycoeff(int i, const Dvr& c) {
    if (i < 1 || i > trunc_) throw domain_error("Y-degree outside the truncation window");
    b_[i - 1] = c;
}

Dvr Laurent::coeff_at_degree(int d) const {
    return d >= 0 ? xcoeff(d) : ycoeff(-d);
}

bool Laurent::is_zero() const {
    for (const auto& c : a_)
        if (!c.is_zero()) return false;
    for (const auto& c : b_)
        if (!c.is_zero()) return false;
    return true;
}

void Laurent::check_compatible(const Laurent& o) const {
    if (!f_ || !o.f_ || *f_ != *o.f_) throw domain_error("coefficient field mismatch");
    if (e_ != o.e_) throw domain_error("annulus modulus mismatch");
    if (type_ != o.type_) throw domain_error("annulus type mismatch");
}

Laurent Laurent::operator+(const Laurent& o) const {
    check_compatible(o);
    int trunc = std::min(trunc_, o.trunc_);
    Laurent out = zero(f_, e_, type_, trunc, std::min(prec_, o.prec_));
    for (int i = 0; i <= trunc; ++i) out.a_[i] = a_[i] + o.a_[i];
    for (int i = 1; i <= trunc; ++i) out.b_[i - 1] = b_[i - 1] + o.b_[i - 1];
    return out;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator-() const {
    Laurent out = *this;
    for (auto& c : out.a_) c = -c;
    for (auto& c : out.b_) c = -c;
    return out;
}

Laurent Laurent::operator*(const Laurent& o) const {
    check_compatible(o);
    int trunc = std::min(trunc_, o.trunc_);
    Laurent out = zero(f_, e_, type_, trunc, std::min(prec_, o.prec_));
    auto add_term = [&](int i, int j, const Dvr& c) {
        int m = std::min(i, j);
        int d = i - j;
        if (d > trunc || d < -trunc) return;
        Dvr red = m > 0 ? c.shift(e_ * m) : c;
        if (d >= 0) out.a_[d] = out.a_[d] + red;
        else out.b_[-d - 1] = out.b_[-d - 1] + red;
    };
    // Zero coefficients below the ambient precision still carry tail
    // uncertainty and must feed the min-precision rule.
    auto each = [&](const Laurent& L, auto&& fn) {
        for (int i = 0; i <= L.trunc_; ++i)
            if (!L.a_[i].is_zero() || L.a_[i].precision() < out.prec_)
                fn(i, 0, L.a_[i]);
        for (int i = 1; i <= L.trunc_; ++i)
            if (!L.b_[i - 1].is_zero() || L.b_[i - 1].precision() < out.prec_)
                fn(0, i, L.b_[i - 1]);
    };
    each(*this, [&](int i1, int j1, const Dvr& c1) {
        each(o, [&](int i2, int j2, const Dvr& c2) {
            add_term(i1 + i2, j1 + j2, c1 * c2);
        });
    });
    return out;
}

Laurent Laurent::scaled(const Dvr& c) const {
    Laurent out = *this;
    for (auto& x : out.a_) x = x * c;
    for (auto& x : out.b_) x = x * c;
    return out;
}

Laurent Laurent::pow(long long n) const {
    if (n < 0) throw domain_error("negative power of an annulus function");
    Laurent acc = constant(Dvr::from_integer(f_, 1, prec_), e_, type_, trunc_);
    Laurent base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Laurent Laurent::shift_pi(int k) const {
    Laurent out = *this;
    for (auto& x : out.a_) x = x.shift(k);
    for (auto& x : out.b_) x = x.shift(k);
    out.prec_ = std::max(1, prec_ + k);
    return out;
}

Laurent Laurent::rescale_x(const Dvr& c) const {
    if (!c.is_unit()) throw domain_error("rescaling constant must be a unit");
    Laurent out = *this;
    Dvr cinv = c.invert_unit();
    Dvr pw = Dvr::from_integer(f_, 1, c.precision());
    Dvr pwinv = pw;
    for (int i = 1; i <= trunc_; ++i) {
        pw = pw * c;
        pwinv = pwinv * cinv;
        out.a_[i] = out.a_[i] * pw;
        out.b_[i - 1] = out.b_[i - 1] * pwinv;
    }
    return out;
}

bool Laurent::is_unit() const {
    if (!a_[0].is_unit()) return false;
    if (type_ == AnnulusType::semi_open || type_ == AnnulusType::closed) {
        for (int i = 1; i <= trunc_; ++i) {
            auto v = a_[i].ord();
            if (v && *v == 0) return false;
        }
    }
    if (type_ == AnnulusType::closed) {
        for (int i = 1; i <= trunc_; ++i) {
            auto v = b_[i - 1].ord();
            if (v && *v == 0) return false;
        }
    }
    return true;
}

Laurent Laurent::with_truncation(int trunc) const {
    if (trunc == trunc_) return *this;
    Laurent out = zero(f_, e_, type_, trunc, prec_);
    for (int i = 0; i <= std::min(trunc, trunc_); ++i) out.a_[i] = a_[i];
    for (int i = 1; i <= std::min(trunc, trunc_); ++i) out.b_[i - 1] = b_[i - 1];
    return out;
}

Laurent Laurent::invert_unit() const {
    if (!is_unit()) throw domain_error("annulus function is not a unit for its type");
    // The degree window is not multiplicatively stable: dropped degree-(D+k)
    // terms would re-enter retained degrees with a pi^(e*k) factor.  Widen the
    // window so those effects stay below the precision, then truncate back.
    int margin = prec_ / e_ + 2;
    Laurent big = with_truncation(trunc_ + margin);
    Laurent g = constant(a_[0].invert_unit(), e_, type_, big.trunc_);
    Laurent two = constant(Dvr::from_integer(f_, 2, prec_), e_, type_, big.trunc_);
    for (int it = 0; it < 8; ++it)
        g = g * (two - big * g);
    // verify on the original window, where tail effects sit below the precision
    Laurent check = (big * g).with_truncation(trunc_);
    Laurent one = constant(Dvr::from_integer(f_, 1, prec_), e_, type_, trunc_);
    if (!check.equals(one))
        throw precision_error("unit inversion did not converge on the retained window");
    // The true inverse has an unrepresented tail beyond the window; a tail
    // term at degree D+k feeds back into degree d with a pi^(e*(k+|d'|-|d|))
    // factor, so coefficient d is only certified mod pi^(e*(D+1-|d|)).
    Laurent out = g.with_truncation(trunc_);
    for (int d = -trunc_; d <= trunc_; ++d) {
        int cap = e_ * (trunc_ + 1 - std::abs(d));
        Dvr c = out.coeff_at_degree(d);
        if (c.precision() > cap) c = c.truncated(cap);
        if (d >= 0) out.set_xcoeff(d, c);
        else out.set_ycoeff(-d, c);
    }
    return out;
}

std::vector<std::pair<int, int>> Laurent::lines() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i <= trunc_; ++i) {
        auto v = a_[i].ord();
        if (v) out.emplace_back(i, *v);
    }
    for (int i = 1; i <= trunc_; ++i) {
        auto v = b_[i - 1].ord();
        if (v) out.emplace_back(-i, *v + e_ * i);
    }
    return out;
}

void Laurent::precision_guard(const Rat& r, const Rat& eta) const {
    for (int i = 0; i <= trunc_; ++i) {
        if (a_[i].is_zero()) {
            Rat bound = Rat(a_[i].precision()) + Rat(i) * r;
            if (bound <= eta)
                throw precision_error("coefficient precision too low to certify eta_r");
        }
    }
    for (int i = 1; i <= trunc_; ++i) {
        if (b_[i - 1].is_zero()) {
            Rat bound = Rat(b_[i - 1].precision() + e_ * i) - Rat(i) * r;
            if (bound <= eta)
                throw precision_error("coefficient precision too low to certify eta_r");
        }
    }
}

Rat Laurent::eta_at(const Rat& r) const {
    return std::get<2>(degree_span_at(r));
}

std::tuple<int, int, Rat> Laurent::degree_span_at(const Rat& r) const {
    if (r < Rat(0) || r > Rat(e_)) throw domain_error("radius outside [0, e]");
    auto ls = lines();
    if (ls.empty()) throw precision_error("function is zero at precision; eta_r undefined");
    bool first = true;
    Rat eta;
    int mind = 0, maxd = 0;
    for (const auto& [d, o] : ls) {
        Rat val = Rat(o) + Rat(d) * r;
        if (first || val < eta) {
            eta = val;
            mind = maxd = d;
            first = false;
        } else if (val == eta) {
            mind = std::min(mind, d);
            maxd = std::max(maxd, d);
        }
    }
    precision_guard(r, eta);
    return {mind, maxd, eta};
}

BoundaryData Laurent::boundary() const {
    BoundaryData bd;
    auto [minx, maxx, etax] = degree_span_at(Rat(0));
    bd.eta_x = static_cast<int>(etax.numerator());
    bd.v_x = minx;
    if (type_ == AnnulusType::closed) bd.nu_x = maxx;
    auto [miny, maxy, etay] = degree_span_at(Rat(e_));
    // Y-expansion degrees are the negatives of X-expansion degrees.
    bd.eta_y = static_cast<int>(etay.numerator());
    bd.v_y = -maxy;
    if (type_ == AnnulusType::closed) bd.nu_y = -miny;
    return bd;
}

std::vector<Rat> Laurent::critical_radii() const {
    auto ls = lines();
    if (ls.empty()) throw precision_error("function is zero at precision");
    std::set<Rat> cands;
    for (size_t i = 0; i < ls.size(); ++i)
        for (size_t j = i + 1; j < ls.size(); ++j) {
            auto [d1, o1] = ls[i];
            auto [d2, o2] = ls[j];
            if (d1 == d2) continue;
            Rat r = make_rat(Int(o2 - o1), Int(d1 - d2));
            if (r < Rat(0) || r > Rat(e_)) continue;
            cands.insert(r);
        }
    std::vector<Rat> out;
    for (const Rat& r : cands) {
        if (type_ == AnnulusType::open && (r == Rat(0) || r == Rat(e_))) continue;
        if (type_ == AnnulusType::semi_open && r == Rat(e_)) continue;
        auto [mind, maxd, eta] = degree_span_at(r);
        (void)eta;
        if (mind != maxd) out.push_back(r);
    }
    return out;
}

NewtonPolygon Laurent::newton_polygon() const {
    NewtonPolygon np;
    for (const Rat& r : critical_radii()) {
        auto [mind, maxd, eta] = degree_span_at(r);
        NewtonBreakpoint bp;
        bp.r = r;
        bp.value = eta;
        bp.left_slope = maxd;
        bp.right_slope = mind;
        np.breakpoints.push_back(bp);
    }
    return np;
}

long long Laurent::count_zeros(const Rat& r1, const Rat& r2) const {
    if (r1 > r2) throw domain_error("empty radius range");
    if (r1 < Rat(0) || r2 > Rat(e_)) throw domain_error("range outside the annulus");
    if (type_ == AnnulusType::open && r1 == Rat(0))
        throw domain_error("radius 0 is outside an open annulus");
    if (type_ != AnnulusType::closed && r2 == Rat(e_))
        throw domain_error("radius e is outside this annulus type");
    auto [mind1, maxd1, eta1] = degree_span_at(r1);
    auto [mind2, maxd2, eta2] = degree_span_at(r2);
    (void)mind1; (void)maxd2; (void)eta1; (void)eta2;
    return static_cast<long long>(maxd1) - static_cast<long long>(mind2);
}

Dvr Laurent::evaluate(const Dvr& a) const {
    int r = a.ord_checked();
    if (r > e_) throw domain_error("evaluation point lies outside the annulus");
    Dvr beta = Dvr::div(Dvr::uniformizer_pow(f_, e_, a.precision() + e_), a);
    Dvr acc = a_[0];
    Dvr apow = Dvr::from_integer(f_, 1, a.precision());
    Dvr bpow = apow;
    for (int i = 1; i <= trunc_; ++i) {
        apow = apow * a;
        bpow = bpow * beta;
        acc = acc + a_[i] * apow + b_[i - 1] * bpow;
    }
    return acc;
}

bool Laurent::equals(const Laurent& o) const {
    check_compatible(o);
    int trunc = std::min(trunc_, o.trunc_);
    for (int i = 0; i <= trunc; ++i)
        if (!a_[i].equals(o.a_[i])) return false;
    for (int i = 1; i <= trunc; ++i)
        if (!b_[i - 1].equals(o.b_[i - 1])) return false;
    return true;
}

std::string Laurent::to_string() const {
    std::string s;
    auto emit = [&](const Dvr& c, const std::string& mono) {
        if (c.is_zero()) return;
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")" + mono;
    };
    emit(a_[0], "");
    for (int i = 1; i <= trunc_; ++i)
        emit(a_[i], i == 1 ? "*X" : "*X^" + std::to_string(i));
    for (int i = 1; i <= trunc_; ++i)
        emit(b_[i - 1], i == 1 ? "*Y" : "*Y^" + std::to_string(i));
    if (s.empty()) s = "0";
    return s;
}

Laurent divide_root(const Laurent& f, const Dvr& a) {
    int r = a.ord_checked();
    if (r > f.modulus()) throw domain_error("root lies outside the annulus");
    Dvr fa = f.evaluate(a);
    if (!fa.is_zero())
        throw domain_error("divide_root: the given point is not a zero at precision");
    const FieldPtr& k = f.field();
    int D = f.truncation();
    Dvr beta = Dvr::div(Dvr::uniformizer_pow(k, f.modulus(), a.precision() + f.modulus()), a);
    std::vector<Dvr> apow(D + 1), bpow(D + 1);
    apow[0] = Dvr::from_integer(k, 1, a.precision());
    bpow[0] = apow[0];
    for (int i = 1; i <= D; ++i) {
        apow[i] = apow[i - 1] * a;
        bpow[i] = bpow[i - 1] * beta;
    }
    Laurent g = Laurent::zero(k, f.modulus(), f.type(), D, f.ambient_precision());
    for (int j = 0; j <= D; ++j) {
        Dvr c = Dvr::zero(k, f.ambient_precision());
        for (int kk = j + 1; kk <= D; ++kk)
            c = c + f.xcoeff(kk) * apow[kk - j];
        g.set_xcoeff(j, -c);
    }
    for (int j = 1; j <= D; ++j) {
        Dvr d = Dvr::zero(k, f.ambient_precision());
        for (int kk = j; kk <= D; ++kk)
            d = d + f.ycoeff(kk) * bpow[kk - j];
        g.set_ycoeff(j, d);
    }
    return g;
}

WeierstrassData weierstrass_prepare(const Laurent& f) {
    const FieldPtr& k = f.field();
    Laurent g = f;
    std::vector<Dvr> betas;
    int guard = 0;
    while (true) {
        auto radii = g.critical_radii();
        if (radii.empty()) break;
        Rat r = radii.front();
        if (!rat_is_integer(r))
            throw unsupported_error(
                "critical radius " + rat_to_string(r) +
                " is not an integer; apply a ramified base change first");
        int ri = static_cast<int>(r.numerator());
        auto [mind, maxd, etaq] = g.degree_span_at(r);
        int eta = static_cast<int>(etaq.numerator());
        // residual polynomial at this radius
        std::vector<FElem> q;
        for (int d = mind; d <= maxd; ++d) {
            Dvr c = g.coeff_at_degree(d);
            if (c.is_zero()) {
                q.push_back(FElem::zero(k));
                continue;
            }
            int sh = d * ri - eta + (d < 0 ? -d * g.modulus() : 0);
            q.push_back(c.shift(sh).residue());
        }
        // simple roots of q over k
        int deg = static_cast<int>(q.size()) - 1;
        std::vector<FElem> dq;
        for (int i = 1; i <= deg; ++i)
            dq.push_back(q[i] * FElem::from_integer(k, i));
        auto eval = [&](const std::vector<FElem>& p, const FElem& x) {
            FElem acc = FElem::zero(k);
            for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
                acc = acc * x + p[i];
            return acc;
        };
        std::optional<FElem> root;
        if (k->is_finite()) {
            for (long long i = 1; i < k->size(); ++i) {
                FElem x = field_element_by_index(k, i);
                if (x.is_zero() || !eval(q, x).is_zero()) continue;
                if (eval(dq, x).is_zero())
                    throw unsupported_error(
                        "non-simple residual root at critical radius " + rat_to_string(r));
                root = x;
                break;
            }
        } else {
            // rational roots of the cleared-denominator polynomial
            Int lcm = 1;
            for (const auto& c : q)
                lcm = lcm / boost::multiprecision::gcd(lcm, c.rational_value().denominator()) *
                      c.rational_value().denominator();
            std::vector<Int> zc;
            for (const auto& c : q) {
                Rat v = c.rational_value() * Rat(lcm);
                zc.push_back(v.numerator());
            }
            Int c0 = zc.front(), cl = zc.back();
            if (c0 == 0) throw unsupported_error("residual polynomial has a zero root");
            auto divisors = [](Int n) {
                if (n < 0) n = -n;
                std::vector<Int> out;
                for (Int d = 1; d * d <= n; ++d)
                    if (n % d == 0) { out.push_back(d); out.push_back(n / d); }
                return out;
            };
            for (const Int& num : divisors(c0)) {
                for (const Int& den : divisors(cl)) {
                    for (int sgn : {1, -1}) {
                        Rat cand(sgn * num, den);
                        FElem x = FElem::from_rational(k, cand);
                        if (!eval(q, x).is_zero()) continue;
                        if (eval(dq, x).is_zero())
                            throw unsupported_error(
                                "non-simple residual root at critical radius " +
                                rat_to_string(r));
                        root = x;
                    }
                    if (root) break;
                }
                if (root) break;
            }
        }
        if (!root)
            throw unsupported_error(
                "residual polynomial does not split over the coefficient field at radius " +
                rat_to_string(r));
        // Hensel-lift along the circle |X| = |pi|^r
        auto ls_min = mind, ls_max = maxd;
        for (int d = -g.truncation(); d <= g.truncation(); ++d) {
            if (!g.coeff_at_degree(d).is_zero()) {
                ls_min = std::min(ls_min, d);
                ls_max = std::max(ls_max, d);
            }
        }
        std::vector<Dvr> psi;
        for (int d = ls_min; d <= ls_max; ++d) {
            Dvr c = g.coeff_at_degree(d);
            // X-expansion coefficient at degree d is c * pi^(e*|d|) for d < 0
            int sh = d * ri - eta + (d < 0 ? -d * g.modulus() : 0);
            if (c.is_zero()) psi.push_back(Dvr::zero(k, std::max(1, c.precision() + sh)));
            else psi.push_back(c.shift(sh));
        }
        Dvr t = hensel_lift_root(psi, Dvr::constant(*root, g.ambient_precision()));
        Dvr aroot = t.shift(ri);
        Dvr beta = Dvr::div(Dvr::uniformizer_pow(k, f.modulus(), t.precision() + f.modulus()),
                            aroot);
        betas.push_back(beta);
        g = divide_root(g, aroot);
        if (++guard > 4 * f.truncation())
            throw precision_error("Weierstrass preparation failed to terminate");
    }
    auto [mind, maxd, etaq] = g.degree_span_at(Rat(0));
    (void)maxd;
    int eta_x = static_cast<int>(etaq.numerator());
    int v = mind;
    WeierstrassData out;
    out.alpha = static_cast<int>(betas.size()) + v;
    out.eta = eta_x + f.modulus() * v;
    if (out.eta < 0)
        throw domain_error("negative pi-content after zero removal");
    Dvr one = Dvr::from_integer(k, 1, g.ambient_precision());
    // g = pi^eta_x X^v u, so g * (Y^v or X^{-v}) = pi^(eta_x + e*max(v,0)) * u
    Laurent u = g * Laurent::monomial(one, -v, f.modulus(), f.type(), f.truncation());
    u = u.shift_pi(-(eta_x + f.modulus() * std::max(v, 0)));
    if (!u.is_unit())
        throw unsupported_error("residual factor is not a unit; preparation incomplete");
    out.unit = u;
    out.roots = betas;
    out.distinguished = {Dvr::from_integer(k, 1, f.ambient_precision())};
    for (const Dvr& b : betas) {
        std::vector<Dvr> next(out.distinguished.size() + 1, Dvr::zero(k, f.ambient_precision()));
        for (size_t i = 0; i < out.distinguished.size(); ++i) {
            next[i + 1] = next[i + 1] + out.distinguished[i];
            next[i] = next[i] - out.distinguished[i] * b;
        }
        out.distinguished = std::move(next);
    }
    return out;
}

} // namespace nonarch
