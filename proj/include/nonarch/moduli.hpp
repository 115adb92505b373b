#pragma once

#include "laurent.hpp"
#include "rational.hpp"

namespace nonarch {

// Annulus of radii |pi|^beta < |x| < |pi|^alpha (boundaries per type).
struct FractionalAnnulus {
    Rat alpha;
    Rat beta;
    AnnulusType type = AnnulusType::closed;
};

Rat annulus_modulus(const FractionalAnnulus& v);

struct AnnulusClass {
    Rat modulus;
    Rat alpha_class; // in [0, 1)
    bool operator==(const AnnulusClass& o) const {
        return modulus == o.modulus && alpha_class == o.alpha_class;
    }
};

// Isomorphism invariant (modulus, alpha mod 1), reduced for open/closed types
// by the inversion x -> pi^c / x which replaces alpha-bar with (-modulus -
// alpha) mod 1; semi-open annuli have oriented ends, so nothing is identified.
AnnulusClass normal_form(const FractionalAnnulus& v);

bool isomorphic(const FractionalAnnulus& a, const FractionalAnnulus& b);

// Number of twisted forms of an annulus of modulus e along a quadratic
// extension of ramification index rho (residue characteristic != 2).
int count_forms(AnnulusType type, int rho, int e);

// Radii of the annulus produced by diagonal descent along a degree-m totally
// ramified extension with character exponents alpha_exp, beta_exp.
FractionalAnnulus descended_radii(int e, int m, int alpha_exp, int beta_exp,
                                  AnnulusType type = AnnulusType::closed);

} // namespace nonarch
