#include "nonarch/field.hpp"

#include <algorithm>
#include <numeric>

#include "nonarch/errors.hpp"

namespace nonarch {

namespace {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long long mod_norm(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

long long mod_inv(long long a, long long p) {
    long long t = 0, newt = 1, r = p, newr = mod_norm(a, p);
    while (newr != 0) {
        long long q = r / newr;
        std::swap(t, newt); newt -= q * t;
        std::swap(r, newr); newr -= q * r;
    }
    if (r != 1) throw domain_error("element not invertible mod " + std::to_string(p));
    return mod_norm(t, p);
}

using PolyZ = std::vector<long long>; // coefficients mod p, constant first

void poly_trim(PolyZ& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyZ poly_mul_mod(const PolyZ& a, const PolyZ& b, const PolyZ& mod, long long p) {
    PolyZ out(a.size() + b.size() > 0 ? a.size() + b.size() - 1 : 0, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = mod_norm(out[i + j] + a[i] * b[j], p);
    // reduce modulo the monic polynomial `mod`
    size_t d = mod.size() - 1;
    while (out.size() > d) {
        long long lead = out.back();
        size_t k = out.size() - 1;
        if (lead != 0)
            for (size_t i = 0; i < mod.size(); ++i)
                out[k - d + i] = mod_norm(out[k - d + i] - lead * mod[i], p);
        out.pop_back();
    }
    poly_trim(out);
    return out;
}

PolyZ poly_mod(PolyZ a, const PolyZ& mod, long long p) {
    size_t d = mod.size() - 1;
    while (a.size() > d) {
        long long lead = a.back();
        size_t k = a.size() - 1;
        if (lead != 0)
            for (size_t i = 0; i < mod.size(); ++i)
                a[k - d + i] = mod_norm(a[k - d + i] - lead * mod[i], p);
        a.pop_back();
    }
    poly_trim(a);
    return a;
}

PolyZ poly_gcd(PolyZ a, PolyZ b, long long p) {
    poly_trim(a); poly_trim(b);
    while (!b.empty()) {
        // make b monic, then a mod b
        long long inv = mod_inv(b.back(), p);
        for (auto& c : b) c = mod_norm(c * inv, p);
        a = poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// x^(p^e) mod f, by repeated p-th powering
PolyZ frob_power_poly(const PolyZ& f, long long p, int e) {
    PolyZ x = {0, 1};
    x = poly_mod(x, f, p);
    for (int i = 0; i < e; ++i) {
        // compute x^p mod f by square-and-multiply
        PolyZ base = x, acc = {1};
        long long n = p;
        while (n > 0) {
            if (n & 1) acc = poly_mul_mod(acc, base, f, p);
            base = poly_mul_mod(base, base, f, p);
            n >>= 1;
        }
        x = acc;
    }
    return x;
}

bool poly_irreducible(const PolyZ& f, long long p) {
    int r = static_cast<int>(f.size()) - 1;
    if (r < 1) return false;
    if (r == 1) return true;
    // f irreducible over F_p iff x^(p^r) = x mod f and gcd(x^(p^(r/q)) - x, f) = 1
    // for every prime q | r
    PolyZ xr = frob_power_poly(f, p, r);
    PolyZ x = {0, 1};
    if (xr != x) return false;
    for (int q = 2; q <= r; ++q) {
        if (r % q != 0) continue;
        bool qprime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) { qprime = false; break; }
        if (!qprime) continue;
        PolyZ xq = frob_power_poly(f, p, r / q);
        PolyZ diff = xq;
        diff.resize(std::max<size_t>(diff.size(), 2), 0);
        diff[1] = mod_norm(diff[1] - 1, p);
        poly_trim(diff);
        PolyZ g = poly_gcd(diff, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace

FieldPtr Field::rationals() {
    return FieldPtr(new Field(0, std::nullopt));
}

FieldPtr Field::prime(long long p) {
    if (!is_prime(p)) throw domain_error("characteristic must be prime: " + std::to_string(p));
    return FieldPtr(new Field(p, std::nullopt));
}

FieldPtr Field::extension(long long p, std::vector<long long> min_poly) {
    if (!is_prime(p)) throw domain_error("characteristic must be prime: " + std::to_string(p));
    for (auto& c : min_poly) c = mod_norm(c, p);
    while (!min_poly.empty() && min_poly.back() == 0) min_poly.pop_back();
    int deg = static_cast<int>(min_poly.size()) - 1;
    if (deg < 2) throw domain_error("extension degree must be at least 2");
    if (min_poly.back() != 1) throw domain_error("extension polynomial must be monic");
    if (!poly_irreducible(min_poly, p))
        throw domain_error("extension polynomial is reducible over F_" + std::to_string(p));
    ExtensionDesc ext;
    ext.degree = deg;
    ext.min_poly = std::move(min_poly);
    return FieldPtr(new Field(p, std::move(ext)));
}

long long Field::size() const {
    if (!is_finite()) throw domain_error("field is infinite");
    long long s = 1;
    for (int i = 0; i < degree(); ++i) s *= p_;
    return s;
}

bool Field::operator==(const Field& o) const {
    if (p_ != o.p_) return false;
    if (ext_.has_value() != o.ext_.has_value()) return false;
    if (ext_ && (ext_->degree != o.ext_->degree || ext_->min_poly != o.ext_->min_poly))
        return false;
    return true;
}

static void check_same_field(const FElem& a, const FElem& b) {
    if (!a.field() || !b.field() || *a.field() != *b.field())
        throw domain_error("coefficient field mismatch");
}

FElem FElem::zero(const FieldPtr& f) {
    FElem e;
    e.f_ = f;
    if (f->is_finite()) e.c_.assign(f->degree(), 0);
    return e;
}

FElem FElem::one(const FieldPtr& f) {
    return from_integer(f, 1);
}

FElem FElem::from_integer(const FieldPtr& f, const Int& n) {
    FElem e = zero(f);
    if (f->is_finite()) {
        Int r = n % f->characteristic();
        if (r < 0) r += f->characteristic();
        e.c_[0] = r.convert_to<long long>();
    } else {
        e.q_ = Rat(n);
    }
    return e;
}

FElem FElem::from_rational(const FieldPtr& f, const Rat& q) {
    if (f->is_finite()) {
        FElem num = from_integer(f, q.numerator());
        FElem den = from_integer(f, q.denominator());
        return num / den;
    }
    FElem e = zero(f);
    e.q_ = q;
    return e;
}

FElem FElem::from_coords(const FieldPtr& f, std::vector<long long> coords) {
    if (!f->is_finite()) throw domain_error("coordinates only apply to finite fields");
    if (static_cast<int>(coords.size()) > f->degree())
        throw domain_error("too many coordinates for field degree");
    FElem e = zero(f);
    for (size_t i = 0; i < coords.size(); ++i)
        e.c_[i] = mod_norm(coords[i], f->characteristic());
    return e;
}

bool FElem::is_zero() const {
    if (!f_) throw domain_error("uninitialized field element");
    if (f_->is_finite())
        return std::all_of(c_.begin(), c_.end(), [](long long c) { return c == 0; });
    return q_.numerator() == 0;
}

bool FElem::is_one() const { return *this == one(f_); }

FElem FElem::operator+(const FElem& o) const {
    check_same_field(*this, o);
    FElem e = *this;
    if (f_->is_finite()) {
        for (int i = 0; i < f_->degree(); ++i)
            e.c_[i] = mod_norm(e.c_[i] + o.c_[i], f_->characteristic());
    } else {
        e.q_ = q_ + o.q_;
    }
    return e;
}

FElem FElem::operator-(const FElem& o) const { return *this + (-o); }

FElem FElem::operator-() const {
    FElem e = *this;
    if (f_->is_finite()) {
        for (auto& c : e.c_) c = mod_norm(-c, f_->characteristic());
    } else {
        e.q_ = -q_;
    }
    return e;
}

FElem FElem::operator*(const FElem& o) const {
    check_same_field(*this, o);
    FElem e = zero(f_);
    if (f_->is_finite()) {
        if (f_->degree() == 1) {
            e.c_[0] = mod_norm(c_[0] * o.c_[0], f_->characteristic());
        } else {
            PolyZ prod = poly_mul_mod(c_, o.c_, f_->extension_desc()->min_poly,
                                      f_->characteristic());
            prod.resize(f_->degree(), 0);
            e.c_ = std::move(prod);
        }
    } else {
        e.q_ = q_ * o.q_;
    }
    return e;
}

FElem FElem::inverse() const {
    if (is_zero()) throw domain_error("division by zero in coefficient field");
    if (!f_->is_finite()) {
        FElem e = *this;
        e.q_ = Rat(q_.denominator(), q_.numerator());
        return e;
    }
    if (f_->degree() == 1) {
        FElem e = *this;
        e.c_[0] = mod_inv(c_[0], f_->characteristic());
        return e;
    }
    // a^(q-2) = a^(-1) in F_q
    return pow(f_->size() - 2);
}

FElem FElem::pow(long long n) const {
    if (n < 0) return inverse().pow(-n);
    FElem acc = one(f_), base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

bool FElem::operator==(const FElem& o) const {
    check_same_field(*this, o);
    return f_->is_finite() ? c_ == o.c_ : q_ == o.q_;
}

FElem FElem::frobenius(int e) const {
    if (!f_ || !f_->is_finite() || f_->degree() == 1) return *this;
    int r = f_->degree();
    int k = ((e % r) + r) % r;
    FElem acc = *this;
    for (int i = 0; i < k; ++i) acc = acc.pow(f_->characteristic());
    return acc;
}

long long FElem::mult_order() const {
    if (!f_->is_finite()) throw domain_error("multiplicative order needs a finite field");
    if (is_zero()) throw domain_error("zero has no multiplicative order");
    long long n = f_->size() - 1;
    FElem acc = *this;
    for (long long k = 1; k <= n; ++k) {
        if (acc.is_one()) return k;
        acc = acc * *this;
    }
    throw domain_error("multiplicative order not found");
}

const Rat& FElem::rational_value() const {
    if (f_->is_finite()) throw domain_error("not a rational field element");
    return q_;
}

std::string FElem::to_string() const {
    if (!f_) return "<null>";
    if (!f_->is_finite()) return rat_to_string(q_);
    if (f_->degree() == 1) return std::to_string(c_[0]);
    std::string s = "[";
    for (int i = 0; i < f_->degree(); ++i) {
        if (i) s += ",";
        s += std::to_string(c_[i]);
    }
    return s + "]";
}

FElem field_element_by_index(const FieldPtr& f, long long idx) {
    if (!f->is_finite()) throw domain_error("cannot enumerate an infinite field");
    std::vector<long long> coords(f->degree(), 0);
    for (int i = 0; i < f->degree(); ++i) {
        coords[i] = idx % f->characteristic();
        idx /= f->characteristic();
    }
    return FElem::from_coords(f, std::move(coords));
}

std::optional<FElem> find_root_of_unity(const FieldPtr& f, long long m) {
    if (m < 1) throw domain_error("root-of-unity order must be positive");
    if (!f->is_finite()) {
        if (m == 1) return FElem::one(f);
        if (m == 2) return -FElem::one(f);
        return std::nullopt;
    }
    if ((f->size() - 1) % m != 0) return std::nullopt;
    for (long long i = 1; i < f->size(); ++i) {
        FElem x = field_element_by_index(f, i);
        if (!x.is_zero() && x.mult_order() == m) return x;
    }
    return std::nullopt;
}

std::string rat_to_string(const Rat& r) {
    std::string s = r.numerator().str();
    if (r.denominator() != 1) s += "/" + r.denominator().str();
    return s;
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator: " + s);
        return make_rat(std::move(num), std::move(den));
    } catch (const std::exception&) {
        throw parse_error("malformed rational: " + s);
    }
}

} // namespace nonarch
