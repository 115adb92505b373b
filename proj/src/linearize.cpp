#include "nonarch/linearize.hpp"

#include <algorithm>

#include "nonarch/errors.hpp"

namespace nonarch {

namespace {

// Multiplicative order of a constant root of unity.
long long zeta_order(const Dvr& zeta) {
    FElem z = zeta.residue();
    if (!zeta.field()->is_finite())
        return z == -FElem::one(zeta.field()) ? 2 : 1;
    return z.mult_order();
}

void check_compatible(const AnnulusAutomorphism& aut, const Laurent& f) {
    if (*f.field() != *aut.sigma_x.field() || f.modulus() != aut.sigma_x.modulus() ||
        f.type() != aut.sigma_x.type() || f.truncation() != aut.sigma_x.truncation())
        throw domain_error("function does not live on the automorphism's annulus");
}

} // namespace

Dvr aut_twist(const AnnulusAutomorphism& aut, const Dvr& c) {
    FElem zr = aut.zeta.residue();
    int fp = aut.frobenius_power;
    return c.map_coeffs([&](const FElem& x, int n) {
        FElem y = fp != 0 ? x.frobenius(fp) : x;
        return n == 0 ? y : y * zr.pow(n);
    });
}

AutApplier::AutApplier(const AnnulusAutomorphism& aut) : aut_(&aut) {
    int trunc = aut.sigma_x.truncation();
    xp_.reserve(trunc);
    yp_.reserve(trunc);
    for (int i = 0; i < trunc; ++i) {
        xp_.push_back(i == 0 ? aut.sigma_x : xp_.back() * aut.sigma_x);
        yp_.push_back(i == 0 ? aut.sigma_y : yp_.back() * aut.sigma_y);
    }
}

Laurent AutApplier::operator()(const Laurent& f) const {
    check_compatible(*aut_, f);
    int trunc = f.truncation();
    int prec = std::min(f.ambient_precision(), aut_->sigma_x.ambient_precision());
    Laurent out = Laurent::constant(aut_twist(*aut_, f.xcoeff(0)), f.modulus(), f.type(), trunc);
    for (int i = 1; i <= trunc; ++i) {
        const Dvr& cx = f.xcoeff(i);
        if (!cx.is_zero() || cx.precision() < prec)
            out = out + xp_[i - 1].scaled(aut_twist(*aut_, cx));
        const Dvr& cy = f.ycoeff(i);
        if (!cy.is_zero() || cy.precision() < prec)
            out = out + yp_[i - 1].scaled(aut_twist(*aut_, cy));
    }
    return out;
}

Laurent aut_apply(const AnnulusAutomorphism& aut, const Laurent& f) {
    return AutApplier(aut)(f);
}

Laurent substitute_unit(const Laurent& f, const Laurent& g) {
    if (!g.is_unit()) throw domain_error("coordinate rescaling requires a unit");
    int trunc = f.truncation();
    Laurent ginv = g.invert_unit();
    Laurent out = Laurent::constant(f.xcoeff(0), f.modulus(), f.type(), trunc);
    Laurent one = Laurent::constant(Dvr::from_integer(f.field(), 1, f.ambient_precision()),
                                    f.modulus(), f.type(), trunc);
    Laurent gp = one, gip = one;
    int prec = f.ambient_precision();
    for (int i = 1; i <= trunc; ++i) {
        gp = gp * g;
        gip = gip * ginv;
        const Dvr& cx = f.xcoeff(i);
        if (!cx.is_zero() || cx.precision() < prec)
            out = out + (gp * Laurent::monomial(cx, i, f.modulus(), f.type(), trunc));
        const Dvr& cy = f.ycoeff(i);
        if (!cy.is_zero() || cy.precision() < prec)
            out = out + (gip * Laurent::monomial(cy, -i, f.modulus(), f.type(), trunc));
    }
    return out;
}

void AnnulusAutomorphism::validate() const {
    const FieldPtr& k = sigma_x.field();
    if (order < 1) throw domain_error("automorphism order must be positive");
    int prec = sigma_x.ambient_precision();
    Dvr one = Dvr::from_integer(k, 1, prec);
    if (!zeta.is_unit() || !zeta.is_constant())
        throw domain_error("zeta must be a constant unit");
    if (!zeta.pow(order).equals(one))
        throw domain_error("zeta^order != 1");
    if (k->is_finite() && (frobenius_power * order) % k->degree() != 0)
        throw domain_error("residue action does not have the stated order");
    int e = modulus();
    Laurent expect =
        Laurent::constant(zeta.pow(e).shift(e), e, sigma_x.type(), sigma_x.truncation());
    if (!(sigma_x * sigma_y).equals(expect))
        throw domain_error("sigma(X) sigma(Y) != zeta^e pi^e");
    AutApplier ap(*this);
    Laurent x = Laurent::monomial(one, 1, e, sigma_x.type(), sigma_x.truncation());
    Laurent cur = x;
    for (long long i = 0; i < order; ++i) cur = ap(cur);
    if (!cur.equals(x))
        throw domain_error("the order-fold iterate is not the identity at this precision");
}

BranchBehavior classify_branches(const AnnulusAutomorphism& aut) {
    BoundaryData b = aut.sigma_x.boundary();
    if (b.eta_x == 0 && b.v_x == 1) return BranchBehavior::fixes;
    if (b.eta_x == aut.modulus() && b.v_x == -1) {
        if (aut.sigma_x.type() == AnnulusType::semi_open)
            throw domain_error(
                "an automorphism of a semi-open annulus cannot switch the ends");
        return BranchBehavior::switches;
    }
    throw domain_error("coordinate image does not define an automorphism of the annulus");
}

LinearizationCertificate linearize_fixed(const AnnulusAutomorphism& aut) {
    const FieldPtr& k = aut.sigma_x.field();
    long long p = k->characteristic();
    if (p != 0 && aut.order % p == 0)
        throw unsupported_error("wild automorphism: order divisible by the residue characteristic");
    if (classify_branches(aut) != BranchBehavior::fixes)
        throw domain_error("automorphism switches the ends; use the switching form");

    int e = aut.modulus();
    AnnulusType type = aut.sigma_x.type();
    int trunc = aut.sigma_x.truncation();
    int prec = aut.sigma_x.ambient_precision();
    Dvr one = Dvr::from_integer(k, 1, prec);
    Laurent xmono = Laurent::monomial(one, 1, e, type, trunc);
    Laurent ymono = Laurent::monomial(one, -1, e, type, trunc);

    // sigma(X) must be a unit multiple of X: no zeros on the annulus.
    WeierstrassData w = weierstrass_prepare(aut.sigma_x);
    if (w.distinguished.size() != 1 || w.alpha != 1 || w.eta != e)
        throw domain_error("sigma(X)/X is not a unit on the annulus");
    Dvr u = w.unit.coeff_at_degree(0).teichmuller();

    // Twisted averaging: X' = sum_j (prod_{i<j} sigma^i(u^{-1})) sigma^j(X),
    // which satisfies sigma(X') = u X' because the orbit norm of u is 1.
    AutApplier ap(aut);
    Dvr uinv = u.invert_unit();
    Laurent acc = Laurent::zero(k, e, type, trunc, prec);
    Laurent cur = xmono;
    Dvr scal = one;
    for (long long j = 0; j < aut.order; ++j) {
        acc = acc + cur.scaled(scal);
        scal = scal * uinv;
        uinv = aut_twist(aut, uinv);
        cur = ap(cur);
    }
    Laurent etaL = (acc * ymono).shift_pi(-e);
    if (!etaL.is_unit())
        throw domain_error("averaged coordinate is not a unit multiple of X");
    if (etaL.coeff_at_degree(0).residue() != FElem::from_integer(k, aut.order))
        throw domain_error("averaged coordinate has the wrong residue; input is not an "
                           "automorphism of the stated order");

    LinearizationCertificate cert;
    cert.new_x = acc;
    cert.u = u;
    long long zord = zeta_order(aut.zeta);
    if (zord == aut.order) {
        if (!u.pow(aut.order).equals(one)) {
            if (aut.frobenius_power == 0)
                throw domain_error("multiplier is not a root of unity of the stated order");
            cert.u_normalized = false;
        }
    } else if (zord == 1) {
        if (aut.frobenius_power != 0 && !u.equals(one)) {
            // norm equation: v = u sigma(v), then rescaling by v makes the
            // multiplier 1
            Dvr v = hilbert90_solve(u, aut.frobenius_power);
            cert.new_x = cert.new_x.scaled(v);
            etaL = etaL.scaled(v);
            cert.u = one;
        }
    } else {
        cert.u_normalized = false;
    }
    cert.new_y = etaL.invert_unit() * ymono;

    Laurent d1 = ap(cert.new_x) - cert.new_x.scaled(cert.u);
    Laurent d2 = ap(cert.new_y) - cert.new_y.scaled(aut.zeta.pow(e) * cert.u.invert_unit());
    if (!d1.is_zero() || !d2.is_zero())
        throw precision_error("linearized coordinates fail the eigenvalue identity");
    cert.verified_to_precision = std::min(d1.ambient_precision(), d2.ambient_precision());
    return cert;
}

LinearizationCertificate linearize_switched(const AnnulusAutomorphism& aut) {
    const FieldPtr& k = aut.sigma_x.field();
    if (aut.order != 2)
        throw domain_error("end-switching linearization requires an involution");
    if (k->characteristic() == 2)
        throw unsupported_error("wild automorphism: order divisible by the residue characteristic");
    if (classify_branches(aut) != BranchBehavior::switches)
        throw domain_error("automorphism fixes the ends; use the fixed form");

    int e = aut.modulus();
    AnnulusType type = aut.sigma_x.type();
    int trunc = aut.sigma_x.truncation();
    int prec = aut.sigma_x.ambient_precision();
    Dvr one = Dvr::from_integer(k, 1, prec);
    if (!aut.zeta.pow(2).equals(one)) throw domain_error("zeta^2 != 1 for an involution");
    if (!aut.zeta.pow(e).equals(one))
        throw domain_error("no switching form: zeta^e != 1 for odd modulus");

    Laurent xmono = Laurent::monomial(one, 1, e, type, trunc);
    Laurent ymono = Laurent::monomial(one, -1, e, type, trunc);
    AutApplier ap(aut);

    // V = sigma(X) X / pi^e is a sigma-invariant unit; we solve
    // eta sigma(eta) = v V^{-1} with v a sigma-invariant constant, one pi-adic
    // level at a time.
    Laurent V = (aut.sigma_x * xmono).shift_pi(-e);
    if (!V.is_unit()) throw domain_error("sigma(X)/Y is not a unit on the annulus");
    Laurent T = V.invert_unit();

    // residual level: T-bar = c (1 + x-part + y-part), take the x-part for
    // eta and c^{-1} for v
    FElem c = T.coeff_at_degree(0).residue();
    Laurent eta = Laurent::constant(one, e, type, trunc);
    for (int d = 1; d <= trunc; ++d) {
        FElem pd = T.xcoeff(d).residue() / c;
        if (!pd.is_zero()) eta.set_xcoeff(d, Dvr::constant(pd, prec));
    }
    Dvr v = Dvr::constant(c.inverse(), prec);
    Laurent seta = ap(eta);

    FElem zr = aut.zeta.residue();
    int fp = aut.frobenius_power;
    for (int n = 0; n + 1 < prec; ++n) {
        Laurent ratio = V.scaled(v.invert_unit()) * (eta * seta) -
                        Laurent::constant(one, e, type, trunc);
        Laurent corr = Laurent::constant(one, e, type, trunc);
        Dvr vcorr = one;
        bool changed = false;
        for (int d = -trunc; d <= trunc; ++d) {
            Dvr cd = ratio.coeff_at_degree(d);
            if (auto o = cd.ord(); o && *o <= n)
                throw precision_error("defect failed to shrink by one pi-adic level");
            if (cd.precision() <= n + 1) continue;
            FElem r = cd.coeff(n + 1);
            if (r.is_zero()) continue;
            if (d > 0) {
                corr.set_xcoeff(d, Dvr::from_terms(k, {{n + 1, -r}}, prec));
                changed = true;
            } else if (d == 0) {
                if (r.frobenius(fp) * zr.pow(n + 1) != r)
                    throw precision_error("constant defect is not sigma-invariant");
                vcorr = one + Dvr::from_terms(k, {{n + 1, r}}, prec);
            }
            // d < 0 is removed by the twisted image of the x-part
        }
        if (changed) {
            eta = eta * corr;
            seta = seta * ap(corr);
        }
        v = v * vcorr;
    }

    LinearizationCertificate cert;
    Dvr vinv = v.invert_unit();
    cert.new_x = (eta * xmono).scaled(vinv);
    cert.new_y = eta.invert_unit() * ymono;
    cert.u = vinv;

    Laurent d1 = ap(cert.new_x) - cert.new_y;
    Laurent d2 = ap(cert.new_y) - cert.new_x;
    Laurent d3 = cert.new_x * cert.new_y -
                 Laurent::constant(cert.u.shift(e), e, type, trunc);
    if (!d1.is_zero() || !d2.is_zero() || !d3.is_zero())
        throw precision_error("linearized coordinates fail the switching identities");
    if (!aut_twist(aut, cert.u).equals(cert.u))
        throw precision_error("cross-term constant is not sigma-invariant");
    cert.verified_to_precision = std::min(
        {d1.ambient_precision(), d2.ambient_precision(), d3.ambient_precision()});
    return cert;
}

} // namespace nonarch
