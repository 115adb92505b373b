#include "nonarch/moduli.hpp"

#include <algorithm>

#include "nonarch/errors.hpp"

namespace nonarch {

Rat annulus_modulus(const FractionalAnnulus& v) {
    Rat m = v.beta - v.alpha;
    if (m <= Rat(0)) throw domain_error("annulus radii must satisfy alpha < beta");
    return m;
}

AnnulusClass normal_form(const FractionalAnnulus& v) {
    AnnulusClass out;
    out.modulus = annulus_modulus(v);
    Rat abar = rat_mod1(v.alpha);
    if (v.type == AnnulusType::semi_open) {
        out.alpha_class = abar;
        return out;
    }
    Rat other = rat_mod1(-out.modulus - abar);
    out.alpha_class = std::min(abar, other);
    return out;
}

bool isomorphic(const FractionalAnnulus& a, const FractionalAnnulus& b) {
    return a.type == b.type && normal_form(a) == normal_form(b);
}

int count_forms(AnnulusType type, int rho, int e) {
    if (rho != 1 && rho != 2) throw domain_error("quadratic setting: rho must be 1 or 2");
    if (e <= 0) throw domain_error("modulus must be positive");
    if (type != AnnulusType::semi_open && rho == 2 && e % 2 == 0) return 3;
    if (type == AnnulusType::semi_open && rho == 2) return 2;
    if (type != AnnulusType::semi_open && rho == 1) return 2;
    return 1;
}

FractionalAnnulus descended_radii(int e, int m, int alpha_exp, int beta_exp,
                                  AnnulusType type) {
    if (m <= 0) throw domain_error("extension degree must be positive");
    if (((alpha_exp + beta_exp - e) % m + m) % m != 0)
        throw domain_error("character exponents must satisfy alpha + beta = e mod m");
    FractionalAnnulus out;
    out.alpha = make_rat(Int(-alpha_exp), Int(m));
    out.beta = out.alpha + make_rat(Int(e), Int(m));
    out.type = type;
    return out;
}

} // namespace nonarch
