#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laurent.hpp"
#include "presentation.hpp"

namespace nonarch {

// sigma(T_v) = unit * zeta^zeta_exp * T_target
struct VarAction {
    int target = 0;
    long long zeta_exp = 0;
    FElem unit;
};

// Monomial action of a cyclic group generator on a presentation.  zeta is a
// fixed root of unity whose order equals `order` (or 1 for trivial
// characters).  On the extension side, t records sigma(varpi) = zeta^t varpi
// and residue_step the number of Frobenius steps applied to coefficients; the
// induced action on a restriction has t = residue_step = 0.
struct MonomialAction {
    long long order = 1;
    long long t = 1;
    int residue_step = 0;
    FElem zeta;
    std::vector<VarAction> vars;

    // Image of p under the action (coefficientwise trivial; base side only).
    Polynomial apply(const Polynomial& p) const;
    // Symbolic check that the order-fold iterate fixes every variable.
    void check_order(int n_vars) const;
};

// Identification of a surviving presentation with a known normal form.
struct NormalFormInfo {
    std::string kind; // "fractional_annulus" or "quadric"
    // fractional annulus X Y = u pi^b with weighted variables
    Rat weight_x{0};
    Rat weight_y{0};
    int pi_exponent = 0;
    Dvr unit; // the u above, or the quadric's constant-term unit
};

struct DescentReport {
    RestrictionResult restriction;
    MonomialAction induced;
    std::vector<std::string> eliminated;
    Presentation surviving;
    bool flattened = false;   // remove_pi_torsion divided a relation
    bool unflattened = false; // a common pi factor had to be left in place
    std::optional<NormalFormInfo> normal_form;
};

// Action on the restricted variables T_{v,l*rho+i}: character exponents shift
// by -t*i in the ramified direction, indices step cyclically in the residual
// direction.
MonomialAction induce_action(const MonomialAction& action, const ExtensionSpec& ext,
                             const FieldPtr& base, int n_orig_vars);

// Coinvariants A_G: variables with nontrivial character vanish, permutation
// orbits are identified (or vanish when the orbit scalar is nontrivial),
// relations are rewritten, deduplicated, and zero relations dropped.
Presentation coinvariants(const Presentation& pres, const MonomialAction& action,
                          std::vector<std::string>* eliminated = nullptr);

// Full pipeline: dilated restriction, induced action, coinvariants, pi-torsion
// removal, and normal-form identification.
DescentReport descend(const Presentation& model, const ExtensionSpec& ext,
                      const MonomialAction& action);

// Quadratic switched descent (the involution swaps the two annulus
// coordinates): produces the quadric X_0^2 - a X_1^2 - u pi^(e/rho).
DescentReport descend_switched(const Presentation& model, AnnulusType type,
                               const ExtensionSpec& ext, const MonomialAction& action);

enum class VerifyStatus { verified, failed, unverifiable };

// Does descended (x) R' reproduce the original presentation under the library
// of explicit changes of variables?
VerifyStatus verify_base_change(const DescentReport& descended, const ExtensionSpec& ext,
                                const Presentation& original);

// The annulus algebra R{X,Y}/(XY - u pi^e) as a presentation.
Presentation annulus_presentation(const FieldPtr& f, int e, const Dvr& u);

// Coefficientwise base change of a presentation along ext (uniformizer
// reindexing and residue-field embedding).
Presentation base_change_presentation(const Presentation& pres, const ExtensionSpec& ext);

} // namespace nonarch
