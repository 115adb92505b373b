#pragma once

#include <string>

#include "laurent.hpp"

namespace nonarch {

enum class BranchBehavior { fixes, switches };

// Finite-order automorphism of an annulus, given by the images of the two
// coordinates, the constant root of unity acting on pi, and the power of
// Frobenius acting on residue coefficients.
struct AnnulusAutomorphism {
    Laurent sigma_x;
    Laurent sigma_y;
    long long order = 1;
    Dvr zeta;                // sigma(pi) = zeta * pi, zeta^order = 1
    int frobenius_power = 0; // coefficients map through x -> x^(p^power)

    int modulus() const { return sigma_x.modulus(); }
    // sigma_x * sigma_y = zeta^e pi^e and the order-fold iterate fixes X.
    void validate() const;
};

// Image of a constant under the automorphism: coefficient n maps through
// Frobenius and picks up zeta^n.
Dvr aut_twist(const AnnulusAutomorphism& aut, const Dvr& c);

// Image of f under the automorphism (coefficientwise twist by zeta and
// Frobenius, then substitution of the coordinate images).
Laurent aut_apply(const AnnulusAutomorphism& aut, const Laurent& f);

// Caches the powers of the coordinate images; equivalent to aut_apply but
// cheap to call repeatedly.
class AutApplier {
public:
    explicit AutApplier(const AnnulusAutomorphism& aut);
    Laurent operator()(const Laurent& f) const;

private:
    const AnnulusAutomorphism* aut_;
    std::vector<Laurent> xp_, yp_; // xp_[i] = sigma_x^(i+1)
};

// Substitute X -> g X, Y -> g^{-1} Y for a unit function g.
Laurent substitute_unit(const Laurent& f, const Laurent& g);

BranchBehavior classify_branches(const AnnulusAutomorphism& aut);

struct LinearizationCertificate {
    Laurent new_x;
    Laurent new_y;
    Dvr u;
    int verified_to_precision = 0;
    // false when zeta has intermediate order and u admits no further
    // normalization
    bool u_normalized = true;
};

// Branch-fixing case: returns (new_x, new_y) with sigma(new_x) = u new_x and
// sigma(new_y) = zeta^e u^{-1} new_y; u is an m-th root of unity when zeta is
// primitive and 1 after the norm-equation step when zeta = 1 with a
// nontrivial residue action.
LinearizationCertificate linearize_fixed(const AnnulusAutomorphism& aut);

// Branch-switching involution: returns (new_x, new_y) with sigma swapping
// them and new_x * new_y = u pi^e, sigma(u) = u.
LinearizationCertificate linearize_switched(const AnnulusAutomorphism& aut);

} // namespace nonarch
