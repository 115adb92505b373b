#include "nonarch/descent.hpp"

#include <algorithm>

#include "nonarch/errors.hpp"

namespace nonarch {

namespace {

// Constant units and characters must land in the target coefficient field.
FElem to_base_felem(const FElem& x, const FieldPtr& base) {
    if (*x.field() == *base) return x;
    if (x.field()->characteristic() != base->characteristic())
        throw domain_error("coefficient field mismatch");
    for (size_t q = 1; q < x.coords().size(); ++q)
        if (x.coords()[q] != 0)
            throw unsupported_error("unit factor does not lie in the base field");
    return FElem::from_integer(base, Int(x.coords().empty() ? 0 : x.coords()[0]));
}

FElem scalar_of(const VarAction& va, const FElem& zeta) {
    long long order = zeta.is_zero() ? 1 : zeta.mult_order();
    long long e = ((va.zeta_exp % order) + order) % order;
    return va.unit * zeta.pow(e);
}

struct AnnulusShape {
    int e = 0;
    Dvr unit; // X Y = unit * pi^e
};

// Recognize R{X,Y}/(XY - u pi^e).
std::optional<AnnulusShape> parse_annulus(const Presentation& p) {
    if (p.vars.size() != 2 || p.relations.size() != 1) return std::nullopt;
    const Polynomial& rel = p.relations[0];
    if (rel.term_count() != 2) return std::nullopt;
    Monomial xy = Monomial::var(0) * Monomial::var(1);
    Dvr c1 = rel.coeff(xy);
    Dvr c0 = rel.coeff(Monomial::one());
    if (c1.is_zero() || c0.is_zero() || !c1.is_unit()) return std::nullopt;
    AnnulusShape out;
    Dvr q = Dvr::div(-c0, c1);
    out.e = q.ord_checked();
    out.unit = q.shift(-out.e);
    return out;
}

} // namespace

Polynomial MonomialAction::apply(const Polynomial& p) const {
    if (residue_step != 0)
        throw unsupported_error("coefficient-twisting actions cannot be applied directly");
    Polynomial out(p.field());
    for (const auto& [m, c] : p.terms()) {
        Monomial m2;
        FElem s = FElem::one(p.field());
        for (const auto& [v, e] : m.factors) {
            if (v >= static_cast<int>(vars.size()))
                throw domain_error("action does not cover all variables");
            m2 = m2 * Monomial::var(vars[v].target, e);
            FElem lam = scalar_of(vars[v], zeta);
            for (int i = 0; i < e; ++i) s = s * lam;
        }
        out.add_term(m2, c.scaled(s));
    }
    return out;
}

void MonomialAction::check_order(int n_vars) const {
    for (int v = 0; v < n_vars; ++v) {
        int cur = v;
        FElem s = FElem::one(zeta.field());
        for (long long k = 0; k < order; ++k) {
            s = s * scalar_of(vars[cur], zeta);
            cur = vars[cur].target;
        }
        if (cur != v || !s.is_one())
            throw domain_error("action iterate of the declared order is not the identity");
    }
}

MonomialAction induce_action(const MonomialAction& action, const ExtensionSpec& ext,
                             const FieldPtr& base, int n_orig_vars) {
    int rho = ext.rho;
    int r = ext.residue_degree;
    int m = rho * r;
    if (static_cast<int>(action.vars.size()) != n_orig_vars)
        throw domain_error("action does not match the variable count");
    MonomialAction out;
    out.order = action.order;
    out.t = 0;
    out.residue_step = 0;
    out.zeta = action.order == 1 ? FElem::one(base) : to_base_felem(action.zeta, base);
    if (action.order > 1 && out.zeta.mult_order() != action.order)
        throw domain_error("character root of unity has the wrong order");
    if (rho > 1 && action.order % rho != 0)
        throw domain_error("action order is not divisible by the ramification index");
    long long zstep = rho > 1 ? action.order / rho : 0;
    int step = r > 1 ? std::max(action.residue_step, 1) : 0;
    out.vars.resize(static_cast<size_t>(n_orig_vars) * m);
    for (int q = 0; q < n_orig_vars; ++q) {
        const VarAction& va = action.vars[q];
        FElem u = to_base_felem(va.unit, base);
        for (int l = 0; l < r; ++l)
            for (int i = 0; i < rho; ++i) {
                VarAction nv;
                nv.target = va.target * m + ((l + step) % r) * rho + i;
                long long c = va.zeta_exp - action.t * i * zstep;
                nv.zeta_exp = ((c % action.order) + action.order) % action.order;
                nv.unit = u;
                out.vars[q * m + l * rho + i] = std::move(nv);
            }
    }
    return out;
}

Presentation coinvariants(const Presentation& pres, const MonomialAction& action,
                          std::vector<std::string>* eliminated) {
    int n = static_cast<int>(pres.vars.size());
    if (static_cast<int>(action.vars.size()) != n)
        throw domain_error("action does not match the variable count");
    long long p = pres.field->characteristic();
    if (p > 0 && action.order % p == 0) {
        bool nontrivial = false;
        for (int v = 0; v < n; ++v)
            if (action.vars[v].target != v || !scalar_of(action.vars[v], action.zeta).is_one())
                nontrivial = true;
        if (nontrivial)
            throw unsupported_error(
                "coinvariants need the action order prime to the residue characteristic");
    }
    action.check_order(n);

    // substitution[v] = (representative index or -1, scalar) with T_v = s * T_rep
    std::vector<int> rep(n, -2);
    std::vector<FElem> scal(n, FElem::one(pres.field));
    std::vector<char> seen(n, 0);
    for (int v0 = 0; v0 < n; ++v0) {
        if (seen[v0]) continue;
        // collect the cycle through v0
        std::vector<int> cycle{v0};
        std::vector<FElem> lambda{scalar_of(action.vars[v0], action.zeta)};
        int cur = action.vars[v0].target;
        while (cur != v0) {
            cycle.push_back(cur);
            lambda.push_back(scalar_of(action.vars[cur], action.zeta));
            cur = action.vars[cur].target;
        }
        int s = static_cast<int>(cycle.size());
        FElem prod = FElem::one(pres.field);
        for (const auto& l : lambda) prod = prod * l;
        bool survives = prod.is_one();
        for (int j = 0; j < s; ++j) {
            seen[cycle[j]] = 1;
            if (!survives) {
                rep[cycle[j]] = -1;
                continue;
            }
            rep[cycle[j]] = v0;
            FElem sc = FElem::one(pres.field);
            for (int i = j; i < s; ++i) sc = sc * lambda[i];
            scal[cycle[j]] = sc;
            if (pres.vars[cycle[j]].weight != pres.vars[v0].weight)
                throw unsupported_error("identified variables carry different weights");
        }
    }

    Presentation out;
    out.field = pres.field;
    std::vector<int> new_index(n, -1);
    for (int v = 0; v < n; ++v) {
        if (rep[v] == v) {
            new_index[v] = static_cast<int>(out.vars.size());
            out.vars.push_back(pres.vars[v]);
        }
    }
    if (eliminated) {
        for (int v = 0; v < n; ++v)
            if (rep[v] != v) eliminated->push_back(pres.vars[v].name);
    }

    auto rewrite = [&](const Polynomial& rel) {
        Polynomial outp(pres.field);
        for (const auto& [m, c] : rel.terms()) {
            Monomial m2;
            FElem s = FElem::one(pres.field);
            bool dead = false;
            for (const auto& [v, e] : m.factors) {
                if (rep[v] < 0) { dead = true; break; }
                m2 = m2 * Monomial::var(new_index[rep[v]], e);
                for (int i = 0; i < e; ++i) s = s * scal[v];
            }
            if (dead) continue;
            outp.add_term(m2, c.scaled(s));
        }
        return outp;
    };

    auto scalar_multiple = [&](const Polynomial& a, const Polynomial& b) {
        if (a.term_count() != b.term_count()) return false;
        auto ia = a.terms().begin();
        auto ib = b.terms().begin();
        std::optional<Dvr> ratio;
        for (; ia != a.terms().end(); ++ia, ++ib) {
            if (!(ia->first == ib->first)) return false;
            if (ia->second.ord() != ib->second.ord()) return false;
            Dvr r = Dvr::div(ib->second, ia->second);
            if (!ratio) ratio = r;
            else if (!ratio->equals(r)) return false;
        }
        return true;
    };

    for (const auto& rel : pres.relations) {
        Polynomial q = rewrite(rel);
        if (q.is_zero()) continue;
        bool dup = false;
        for (const auto& have : out.relations)
            if (scalar_multiple(have, q)) { dup = true; break; }
        if (!dup) out.relations.push_back(std::move(q));
    }
    return out;
}

namespace {

std::optional<NormalFormInfo> identify_normal_form(const Presentation& p) {
    if (p.vars.size() != 2 || p.relations.size() != 1) return std::nullopt;
    const Polynomial& rel = p.relations[0];
    // fractional annulus: c1 * X Y + c0
    if (auto ann = parse_annulus(p)) {
        NormalFormInfo nf;
        nf.kind = "fractional_annulus";
        nf.weight_x = p.vars[0].weight;
        nf.weight_y = p.vars[1].weight;
        nf.pi_exponent = ann->e;
        nf.unit = ann->unit;
        return nf;
    }
    // quadric: c2 X^2 + c1 Y^2 + c0
    Monomial x2 = Monomial::var(0, 2);
    Monomial y2 = Monomial::var(1, 2);
    Dvr c2 = rel.coeff(x2);
    Dvr c1 = rel.coeff(y2);
    Dvr c0 = rel.coeff(Monomial::one());
    if (rel.term_count() == 3 && !c2.is_zero() && !c1.is_zero() && !c0.is_zero() &&
        c2.is_unit()) {
        NormalFormInfo nf;
        nf.kind = "quadric";
        nf.weight_x = p.vars[0].weight;
        nf.weight_y = p.vars[1].weight;
        Dvr q = Dvr::div(-c0, c2);
        nf.pi_exponent = q.ord_checked();
        nf.unit = q.shift(-nf.pi_exponent);
        return nf;
    }
    return std::nullopt;
}

DescentReport run_pipeline(const RestrictionResult& restriction,
                           const MonomialAction& induced) {
    DescentReport report;
    report.restriction = restriction;
    report.induced = induced;
    Presentation cov =
        coinvariants(restriction.presentation, induced, &report.eliminated);
    FlattenResult flat = remove_pi_torsion(cov);
    report.unflattened = flat.unflattened;
    report.flattened = flat.presentation.relations.size() != cov.relations.size();
    if (!report.flattened)
        for (size_t i = 0; i < cov.relations.size(); ++i)
            if (!flat.presentation.relations[i].equals(cov.relations[i]))
                report.flattened = true;
    report.surviving = std::move(flat.presentation);
    report.normal_form = identify_normal_form(report.surviving);
    return report;
}

} // namespace

DescentReport descend(const Presentation& model, const ExtensionSpec& ext,
                      const MonomialAction& action) {
    RestrictionResult restriction = dilated_weil_restrict(model, ext);
    if (ext.degree() == 1) {
        DescentReport report;
        report.restriction = restriction;
        report.induced = action;
        Presentation cov = coinvariants(model, action, &report.eliminated);
        FlattenResult flat = remove_pi_torsion(cov);
        report.unflattened = flat.unflattened;
        report.surviving = std::move(flat.presentation);
        report.normal_form = identify_normal_form(report.surviving);
        return report;
    }
    MonomialAction induced = induce_action(action, ext, restriction.presentation.field,
                                           static_cast<int>(model.vars.size()));
    return run_pipeline(restriction, induced);
}

DescentReport descend_switched(const Presentation& model, AnnulusType type,
                               const ExtensionSpec& ext, const MonomialAction& action) {
    if (model.field->characteristic() == 2)
        throw unsupported_error("switched descent needs residue characteristic != 2");
    if (type == AnnulusType::semi_open)
        throw domain_error("the two ends of a semi-open annulus cannot be exchanged");
    if (ext.degree() != 2)
        throw domain_error("switched descent needs a quadratic extension");
    if (action.order != 2 || action.vars.size() != 2 || action.vars[0].target != 1 ||
        action.vars[1].target != 0)
        throw domain_error("switched descent needs an order-2 coordinate swap");
    auto shape = parse_annulus(model);
    if (!shape) throw domain_error("model is not an annulus presentation");
    if (ext.rho == 2 && shape->e % 2 != 0)
        throw domain_error("no descended form: the modulus is odd for the ramified "
                           "quadratic extension");

    if (ext.rho == 2) {
        RestrictionResult restriction = dilated_weil_restrict(model, ext);
        MonomialAction induced = induce_action(action, ext, restriction.presentation.field,
                                               2);
        return run_pipeline(restriction, induced);
    }

    // Unramified: use the {1, alpha} basis with alpha^2 in the prime field, so
    // that the involution acts diagonally on the components.
    FieldPtr kp = model.field;
    if (!kp->is_finite() || kp->degree() != 2)
        throw unsupported_error("unramified switched descent needs a quadratic "
                                "residue field extension");
    FieldPtr base = Field::prime(kp->characteristic());
    long long p = kp->characteristic();
    FElem alpha;
    bool found = false;
    for (long long idx = 0; idx < kp->size() && !found; ++idx) {
        FElem cand = field_element_by_index(kp, idx);
        if (cand.coords()[1] == 0) continue; // lies in the prime field
        FElem sq = cand * cand;
        if (sq.coords()[1] == 0) {
            alpha = cand;
            found = true;
        }
    }
    if (!found) throw domain_error("no square-root generator in the quadratic extension");
    long long a_val = alpha.coords().empty() ? 0 : (alpha * alpha).coords()[0];

    BasisData b;
    b.base = base;
    b.ext = kp;
    b.degree = 2;
    b.rho = 1;
    b.labels = {"1", "alpha"};
    b.weights = {Rat(0), Rat(0)};
    b.nilpotent = {0, 0};
    Dvr one = Dvr::from_integer(base, 1);
    Dvr zero = Dvr::zero(base);
    b.unit = {one, zero};
    Dvr a_dvr = Dvr::from_integer(base, a_val);
    b.table = {{{one, zero}, {zero, one}}, {{zero, one}, {a_dvr, zero}}};
    // coordinates in {1, alpha}: invert the column matrix ((1, a0), (0, a1))
    long long a0 = alpha.coords()[0];
    long long a1 = alpha.coords()[1];
    long long inv_a1 = 1, acc = ((a1 % p) + p) % p;
    for (long long e2 = p - 2; e2 > 0; e2 >>= 1) {
        if (e2 & 1) inv_a1 = inv_a1 * acc % p;
        acc = acc * acc % p;
    }
    b.residue_coords = {{1, ((-a0 % p + p) % p) * inv_a1 % p}, {0, inv_a1}};
    b.validate();

    RestrictionResult restriction = weil_restrict(model, b);
    MonomialAction induced;
    induced.order = 2;
    induced.t = 0;
    induced.residue_step = 0;
    induced.zeta = -FElem::one(base);
    FElem u = to_base_felem(action.vars[0].unit, base);
    FElem up = to_base_felem(action.vars[1].unit, base);
    induced.vars = {{2, 0, u}, {3, 1, u}, {0, 0, up}, {1, 1, up}};
    return run_pipeline(restriction, induced);
}

Presentation annulus_presentation(const FieldPtr& f, int e, const Dvr& u) {
    Presentation p;
    p.field = f;
    p.vars = {{"X", VarKind::restricted, Rat(0)}, {"Y", VarKind::restricted, Rat(0)}};
    Polynomial rel(f);
    rel.add_term(Monomial::var(0) * Monomial::var(1), Dvr::from_integer(f, 1, u.precision()));
    rel.add_term(Monomial::one(), -(u.shift(e)));
    p.relations = {rel};
    return p;
}

Presentation base_change_presentation(const Presentation& pres, const ExtensionSpec& ext) {
    FieldPtr target = pres.field;
    if (ext.residue_degree > 1) {
        if (pres.field->degree() != 1)
            throw unsupported_error("base change of an already-extended coefficient field");
        target = ext.residual_field(Field::prime(pres.field->characteristic()));
    }
    Presentation out;
    out.field = target;
    out.vars = pres.vars;
    for (const auto& rel : pres.relations) {
        Polynomial q(target);
        for (const auto& [m, c] : rel.terms()) {
            Dvr cr = c.base_change_ramified(ext.rho);
            std::vector<std::pair<int, FElem>> terms;
            for (int i = 0; i < cr.precision(); ++i) {
                FElem x = cr.coeff(i);
                if (x.is_zero()) continue;
                terms.emplace_back(i, *target == *x.field()
                                          ? x
                                          : FElem::from_integer(target, Int(x.coords()[0])));
            }
            q.add_term(m, Dvr::from_terms(target, terms, cr.precision()));
        }
        out.relations.push_back(std::move(q));
    }
    return out;
}

namespace {

// Square root of a DVR element over a finite residue field; nullopt when the
// residue is a non-square or the valuation is odd.
std::optional<Dvr> dvr_sqrt(const Dvr& a) {
    auto v = a.ord();
    if (!v) return std::nullopt;
    if (*v % 2 != 0) return std::nullopt;
    Dvr u = a.shift(-*v);
    const FieldPtr& k = u.field();
    if (!k->is_finite()) return std::nullopt;
    FElem r = u.residue();
    for (long long idx = 0; idx < k->size(); ++idx) {
        FElem c = field_element_by_index(k, idx);
        if (c * c == r) {
            Dvr root = hensel_lift_root(
                {-u, Dvr::zero(k, u.precision()), Dvr::from_integer(k, 1, u.precision())},
                Dvr::constant(c, u.precision()));
            return root.shift(*v / 2);
        }
    }
    return std::nullopt;
}

} // namespace

VerifyStatus verify_base_change(const DescentReport& descended, const ExtensionSpec& ext,
                                const Presentation& original) {
    if (!descended.normal_form) return VerifyStatus::unverifiable;
    auto orig = parse_annulus(original);
    if (!orig) return VerifyStatus::unverifiable;
    const NormalFormInfo& nf = *descended.normal_form;

    if (nf.kind == "fractional_annulus") {
        // X = w^(m wx) X', Y = w^(m wy) Y' turns X'Y' - u pi^b into the
        // original relation; the exponents must balance the modulus.
        Rat gamma = nf.weight_x + nf.weight_y + Rat(nf.pi_exponent);
        if (Rat(ext.rho) * gamma != Rat(orig->e)) return VerifyStatus::failed;
        Dvr u_bc = nf.unit.base_change_ramified(ext.rho);
        if (*u_bc.field() != *orig->unit.field()) {
            if (ext.residue_degree == 1) return VerifyStatus::unverifiable;
            // embed through the same coefficient map as the presentations
            Presentation dummy;
            dummy.field = nf.unit.field();
            dummy.vars = {};
            Polynomial c(nf.unit.field());
            c.add_term(Monomial::one(), nf.unit);
            dummy.relations = {c};
            Presentation emb = base_change_presentation(dummy, ext);
            u_bc = emb.relations[0].coeff(Monomial::one());
        }
        return u_bc.equals(orig->unit) ? VerifyStatus::verified : VerifyStatus::failed;
    }

    if (nf.kind == "quadric") {
        // relation X0^2 - a X1^2 - u pi^(e/rho); over R' the change of
        // variables X' = X0 + sqrt(a) X1, Y' = w(X0 - sqrt(a) X1) recovers
        // X'Y' = w u pi^(e/rho); it exists iff a becomes a square.
        const Presentation& s = descended.surviving;
        if (s.relations.size() != 1) return VerifyStatus::unverifiable;
        const Polynomial& rel = s.relations[0];
        Dvr c2 = rel.coeff(Monomial::var(0, 2));
        Dvr c1 = rel.coeff(Monomial::var(1, 2));
        if (c2.is_zero() || c1.is_zero()) return VerifyStatus::unverifiable;
        Dvr a = Dvr::div(-c1, c2);
        // move a to the extension side
        Presentation dummy;
        dummy.field = a.field();
        Polynomial c(a.field());
        c.add_term(Monomial::one(), a);
        dummy.relations = {c};
        Dvr a_ext = base_change_presentation(dummy, ext).relations[0].coeff(Monomial::one());
        if (!dvr_sqrt(a_ext)) return VerifyStatus::failed;
        if (ext.rho * nf.pi_exponent != orig->e) return VerifyStatus::failed;
        return VerifyStatus::verified;
    }
    return VerifyStatus::unverifiable;
}

} // namespace nonarch
