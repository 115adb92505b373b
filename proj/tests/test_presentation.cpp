#include <doctest.h>

#include "nonarch/errors.hpp"
#include "nonarch/presentation.hpp"
#include "util.hpp"

using namespace nonarch;
using namespace testutil;

namespace {

Polynomial xvar(const FieldPtr& f, int i) { return Polynomial::variable(f, i); }

} // namespace

TEST_CASE("basis expansion of the annulus relation over a ramified quadratic") {
    auto f7 = Field::prime(7);
    ExtensionSpec ext{2, 1, {}, 1, 1};
    BasisData b = BasisData::from_extension(f7, ext);
    CHECK(b.degree == 2);
    CHECK(b.weights[1] == rat(1, 2));
    CHECK(b.nilpotent[1]);

    // X*Y - w  (w^2 = pi), variables X=0, Y=1
    Polynomial p = xvar(f7, 0) * xvar(f7, 1) -
                   Polynomial::constant(Dvr::uniformizer_pow(f7, 1));
    auto comps = expand_in_basis(p, b, 2);
    REQUIRE(comps.size() == 2);
    // component of 1:  X_0 Y_0 + pi X_1 Y_1
    Polynomial want0 =
        xvar(f7, 0) * xvar(f7, 2) + (xvar(f7, 1) * xvar(f7, 3)).shift_pi(1);
    CHECK(comps[0].equals(want0));
    // component of w:  X_0 Y_1 + X_1 Y_0 - 1
    Polynomial want1 = xvar(f7, 0) * xvar(f7, 3) + xvar(f7, 1) * xvar(f7, 2) -
                       Polynomial::constant(Dvr::from_integer(f7, 1));
    CHECK(comps[1].equals(want1));
}

TEST_CASE("basis expansion of linear and constant inputs") {
    auto f7 = Field::prime(7);
    ExtensionSpec ext{3, 1, {}, 1, 1};
    BasisData b = BasisData::from_extension(f7, ext);
    auto comps = expand_in_basis(xvar(f7, 0), b, 1);
    for (int j = 0; j < 3; ++j) CHECK(comps[j].equals(xvar(f7, j)));
    // a constant of R, rewritten over the extension, lands in the 1-component
    Dvr c = rand_dvr(f7);
    comps = expand_in_basis(Polynomial::constant(c.base_change_ramified(3)), b, 1);
    CHECK(comps[0].equals(Polynomial::constant(c)));
    for (int j = 1; j < 3; ++j) CHECK(comps[j].is_zero());
}

TEST_CASE("basis expansion is additive") {
    auto f7 = Field::prime(7);
    ExtensionSpec ext{2, 1, {}, 1, 1};
    BasisData b = BasisData::from_extension(f7, ext);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial p(f7), q(f7);
        for (int t = 0; t < 3; ++t) {
            Monomial m = Monomial::var(static_cast<int>(rand_int(0, 1)),
                                       static_cast<int>(rand_int(1, 2)));
            p.add_term(m, rand_dvr(f7));
            Monomial m2 = Monomial::var(static_cast<int>(rand_int(0, 1)),
                                        static_cast<int>(rand_int(1, 2)));
            q.add_term(m2, rand_dvr(f7));
        }
        auto a = expand_in_basis(p, b, 2);
        auto c = expand_in_basis(q, b, 2);
        auto s = expand_in_basis(p + q, b, 2);
        for (int j = 0; j < 2; ++j) CHECK(s[j].equals(a[j] + c[j]));
    }
}

TEST_CASE("normal basis coordinates of a residual extension round trip") {
    auto f7 = Field::prime(7);
    ExtensionSpec ext{1, 2, {1, 0, 1}, 1, 1};
    BasisData b = BasisData::from_extension(f7, ext);
    CHECK(b.degree == 2);
    auto f49 = ext.residual_field(f7);
    // 1 has all-ones coordinates in a trace-one normal basis
    auto one = b.decompose(Dvr::from_integer(f49, 1));
    CHECK(one[0].equals(Dvr::from_integer(f7, 1)));
    CHECK(one[1].equals(Dvr::from_integer(f7, 1)));
    // decompose respects multiplication through the table
    for (int trial = 0; trial < 20; ++trial) {
        Dvr x = rand_dvr(f49);
        Dvr y = rand_dvr(f49);
        auto prod = b.decompose(x * y);
        auto via = b.multiply(b.decompose(x), b.decompose(y));
        for (int l = 0; l < 2; ++l) CHECK(prod[l].equals(via[l]));
    }
}

TEST_CASE("ramified coefficient splitting respects multiplication") {
    auto f7 = Field::prime(7);
    for (int rho : {2, 3}) {
        ExtensionSpec ext{rho, 1, {}, 1, 1};
        BasisData b = BasisData::from_extension(f7, ext);
        for (int trial = 0; trial < 20; ++trial) {
            Dvr x = rand_dvr(f7);
            Dvr y = rand_dvr(f7);
            auto prod = b.decompose(x * y);
            auto via = b.multiply(b.decompose(x), b.decompose(y));
            for (int l = 0; l < rho; ++l) CHECK(prod[l].equals(via[l]));
        }
    }
}

TEST_CASE("characteristic polynomial of a quadratic basis") {
    auto q = Field::rationals();
    BasisData b = BasisData::quadratic_root(q, Dvr::from_integer(q, 7), rat(1, 2));
    auto c = charpoly_coeffs(b);
    REQUIRE(c.size() == 2);
    // c_1 = -2 x_0, c_0 = x_0^2 - 7 x_1^2
    CHECK(c[1].equals(xvar(q, 0).scaled(Dvr::from_integer(q, -2))));
    CHECK(c[0].equals(xvar(q, 0) * xvar(q, 0) -
                      (xvar(q, 1) * xvar(q, 1)).scaled(Dvr::from_integer(q, 7))));
}

TEST_CASE("characteristic polynomial of a cubic power basis") {
    auto f7 = Field::prime(7);
    ExtensionSpec ext{3, 1, {}, 1, 1};
    BasisData b = BasisData::from_extension(f7, ext);
    auto c = charpoly_coeffs(b);
    REQUIRE(c.size() == 3);
    // c_0 = -(x_0^3 + pi x_1^3 + pi^2 x_2^3 - 3 pi x_0 x_1 x_2)
    Polynomial det = xvar(f7, 0) * xvar(f7, 0) * xvar(f7, 0) +
                     (xvar(f7, 1) * xvar(f7, 1) * xvar(f7, 1)).shift_pi(1) +
                     (xvar(f7, 2) * xvar(f7, 2) * xvar(f7, 2)).shift_pi(2) -
                     (xvar(f7, 0) * xvar(f7, 1) * xvar(f7, 2))
                         .scaled(Dvr::from_integer(f7, 3))
                         .shift_pi(1);
    CHECK(c[0].equals(-det));
}

TEST_CASE("characteristic polynomial along the scalar direction") {
    // c_j(t, 0, ..., 0) = binom(m, j) (-t)^(m-j)
    auto f7 = Field::prime(7);
    for (int rho : {2, 3}) {
        ExtensionSpec ext{rho, 1, {}, 1, 1};
        BasisData b = BasisData::from_extension(f7, ext);
        auto c = charpoly_coeffs(b);
        for (int trial = 0; trial < 5; ++trial) {
            Dvr t = rand_dvr(f7);
            for (int j = 0; j < rho; ++j) {
                Polynomial ev = c[j].substitute(0, Polynomial::constant(t));
                for (int i = 1; i < rho; ++i)
                    ev = ev.substitute(i, Polynomial(f7));
                long long binom = 1;
                for (int i = 0; i < rho - j; ++i) binom = binom * (rho - i) / (i + 1);
                Dvr want = (-t).pow(rho - j).scaled(
                    FElem::from_integer(f7, Int(binom)));
                CHECK(ev.coeff(Monomial::one()).equals(want));
                CHECK(ev.term_count() <= 1);
            }
        }
    }
}

TEST_CASE("restriction variable bookkeeping") {
    auto f7 = Field::prime(7);
    ExtensionSpec ext{2, 1, {}, 1, 1};
    Presentation pres;
    pres.field = f7;
    pres.vars = {{"X", VarKind::restricted, Rat(0)}, {"Y", VarKind::formal, Rat(0)}};
    RestrictionResult r = dilated_weil_restrict(pres, ext);
    REQUIRE(r.presentation.vars.size() == 4);
    CHECK(r.presentation.vars[0].name == "X_0");
    CHECK(r.presentation.vars[0].kind == VarKind::restricted);
    CHECK(r.presentation.vars[1].weight == rat(1, 2));
    // the formal variable's nilpotent-direction component becomes restricted
    CHECK(r.presentation.vars[2].kind == VarKind::formal);
    CHECK(r.presentation.vars[3].kind == VarKind::restricted);
}

TEST_CASE("trivial extension restriction is the identity") {
    auto f7 = Field::prime(7);
    ExtensionSpec ext{1, 1, {}, 1, 1};
    Presentation pres;
    pres.field = f7;
    pres.vars = {{"X", VarKind::restricted, Rat(0)}};
    Polynomial rel = xvar(f7, 0) * xvar(f7, 0) -
                     Polynomial::constant(Dvr::uniformizer_pow(f7, 3));
    pres.relations = {rel};
    RestrictionResult r = dilated_weil_restrict(pres, ext);
    CHECK(r.presentation.vars.size() == 1);
    REQUIRE(r.presentation.relations.size() == 1);
    CHECK(r.presentation.relations[0].equals(rel));
}

TEST_CASE("mixed extensions compose the two directions") {
    auto f3 = Field::prime(3);
    ExtensionSpec ext{2, 2, {2, 2, 1}, 1, 1}; // rho=2 and residue degree 2
    auto f9 = ext.residual_field(f3);
    Presentation pres;
    pres.field = f9;
    pres.vars = {{"X", VarKind::restricted, Rat(0)}};
    RestrictionResult r = dilated_weil_restrict(pres, ext);
    CHECK(r.presentation.vars.size() == 4);
    int half_weight = 0;
    for (const auto& v : r.presentation.vars)
        if (v.weight == rat(1, 2)) ++half_weight;
    CHECK(half_weight == 2);
}

TEST_CASE("pi torsion removal") {
    auto f7 = Field::prime(7);
    Presentation pres;
    pres.field = f7;
    pres.vars = {{"X", VarKind::restricted, Rat(0)}, {"Y", VarKind::restricted, Rat(0)}};
    // pi X Y - pi^3  ->  X Y - pi^2
    Polynomial rel = (xvar(f7, 0) * xvar(f7, 1)).shift_pi(1) -
                     Polynomial::constant(Dvr::uniformizer_pow(f7, 3));
    pres.relations = {rel, Polynomial(f7)};
    FlattenResult fr = remove_pi_torsion(pres);
    CHECK_FALSE(fr.unflattened);
    REQUIRE(fr.presentation.relations.size() == 1); // zero relation dropped
    Polynomial want = xvar(f7, 0) * xvar(f7, 1) -
                      Polynomial::constant(Dvr::uniformizer_pow(f7, 2));
    CHECK(fr.presentation.relations[0].equals(want));

    // no pi factor: unchanged
    pres.relations = {xvar(f7, 0) - Polynomial::constant(Dvr::from_integer(f7, 2))};
    fr = remove_pi_torsion(pres);
    CHECK_FALSE(fr.unflattened);
    CHECK(fr.presentation.relations[0].equals(pres.relations[0]));

    // three terms with a common factor: flagged, unchanged
    Polynomial wide = (xvar(f7, 0) + xvar(f7, 1) +
                       Polynomial::constant(Dvr::from_integer(f7, 1)))
                          .shift_pi(2);
    pres.relations = {wide};
    fr = remove_pi_torsion(pres);
    CHECK(fr.unflattened);
    CHECK(fr.presentation.relations[0].equals(wide));
}

TEST_CASE("extension validation is enforced") {
    auto f7 = Field::prime(7);
    Presentation pres;
    pres.field = f7;
    pres.vars = {{"X", VarKind::restricted, Rat(0)}};
    CHECK_THROWS_AS(dilated_weil_restrict(pres, ExtensionSpec{7, 1, {}, 1, 1}),
                    unsupported_error);
    pres.vars[0].weight = rat(1, 2);
    CHECK_THROWS_AS(dilated_weil_restrict(pres, ExtensionSpec{2, 1, {}, 1, 1}),
                    domain_error);
}
