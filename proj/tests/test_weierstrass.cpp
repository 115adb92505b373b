#include <doctest.h>
#include <set>
#include <string>

#include "nonarch/errors.hpp"
#include "nonarch/laurent.hpp"
#include "util.hpp"

using namespace nonarch;
using namespace testutil;

namespace {

// Check Y^alpha * f = pi^eta * P(Y) * u, moving negative powers of Y across.
void check_identity(const Laurent& f, const WeierstrassData& w) {
    const FieldPtr& k = f.field();
    Dvr one = Dvr::from_integer(k, 1, f.ambient_precision());
    Laurent rhs = Laurent::from_y_poly(w.distinguished, f.modulus(), f.type(), f.truncation());
    rhs = (rhs * w.unit).shift_pi(w.eta);
    Laurent lhs = f;
    if (w.alpha >= 0)
        lhs = lhs * Laurent::monomial(one, -w.alpha, f.modulus(), f.type(), f.truncation());
    else
        rhs = rhs * Laurent::monomial(one, w.alpha, f.modulus(), f.type(), f.truncation());
    // compare away from the trimmed window edge: multiplying by Y^alpha
    // shifts support, so restrict the comparison window accordingly
    int margin = std::abs(w.alpha) + static_cast<int>(w.distinguished.size());
    int window = f.truncation() - margin;
    REQUIRE(window > 0);
    for (int d = -window; d <= window; ++d)
        CHECK(lhs.coeff_at_degree(d).equals(rhs.coeff_at_degree(d)));
}

} // namespace

TEST_CASE("divide_root removes an explicit zero") {
    auto f7 = Field::prime(7);
    Dvr one = Dvr::from_integer(f7, 1);
    // f = Y - pi, e = 2, zero at X = pi (so a = pi, beta = pi)
    Laurent f = Laurent::monomial(one, -1, 2, AnnulusType::closed) -
                Laurent::constant(Dvr::uniformizer_pow(f7, 1), 2, AnnulusType::closed);
    Dvr a = Dvr::uniformizer_pow(f7, 1);
    CHECK(f.evaluate(a).is_zero());
    Laurent g = divide_root(f, a);
    // Y * f = (Y - pi) * g
    Laurent y = Laurent::monomial(one, -1, 2, AnnulusType::closed);
    Laurent factor = y - Laurent::constant(Dvr::uniformizer_pow(f7, 1), 2, AnnulusType::closed);
    CHECK((y * f).equals(factor * g));
}

TEST_CASE("divide_root identity on random roots") {
    auto f7 = Field::prime(7);
    Dvr one = Dvr::from_integer(f7, 1);
    for (int trial = 0; trial < 40; ++trial) {
        int e = static_cast<int>(rand_int(1, 4));
        int r = static_cast<int>(rand_int(0, e));
        Dvr a = rand_dvr_unit(f7).shift(r).truncated(kDefaultPrecision);
        Dvr beta = Dvr::div(Dvr::uniformizer_pow(f7, e, a.precision() + e), a);
        // f = (Y - beta) * h for random h, so f(a) = 0
        Laurent factor = Laurent::monomial(one, -1, e, AnnulusType::closed) -
                         Laurent::constant(beta, e, AnnulusType::closed);
        Laurent h = rand_laurent(f7, e, AnnulusType::closed, 3);
        Laurent f = factor * h;
        REQUIRE(f.evaluate(a).is_zero());
        Laurent g = divide_root(f, a);
        Laurent y = Laurent::monomial(one, -1, e, AnnulusType::closed);
        Laurent lhs = y * f;
        Laurent rhs = factor * g;
        // support of f extends one degree beyond h's; stay inside the window
        for (int d = -(f.truncation() - 6); d <= f.truncation() - 6; ++d)
            CHECK(lhs.coeff_at_degree(d).equals(rhs.coeff_at_degree(d)));
    }
}

TEST_CASE("preparation of a single linear factor") {
    auto f7 = Field::prime(7);
    Dvr one = Dvr::from_integer(f7, 1);
    // f = Y - pi, e = 2
    Laurent f = Laurent::monomial(one, -1, 2, AnnulusType::closed) -
                Laurent::constant(Dvr::uniformizer_pow(f7, 1), 2, AnnulusType::closed);
    WeierstrassData w = weierstrass_prepare(f);
    CHECK(w.alpha == 0);
    CHECK(w.eta == 0);
    REQUIRE(w.distinguished.size() == 2);
    CHECK(w.distinguished[1].equals(one));
    CHECK(w.distinguished[0].equals(-Dvr::uniformizer_pow(f7, 1)));
    CHECK(w.unit.is_unit());
    check_identity(f, w);
}

TEST_CASE("preparation of a function with no zeros") {
    auto f7 = Field::prime(7);
    // f = pi^2 X^3 * unit
    Laurent u = rand_laurent_unit(f7, 2, AnnulusType::closed);
    Dvr one = Dvr::from_integer(f7, 1);
    Laurent f = (u * Laurent::monomial(one, 3, 2, AnnulusType::closed)).shift_pi(2);
    WeierstrassData w = weierstrass_prepare(f);
    CHECK(w.alpha == 3);
    CHECK(w.eta == 2 + 2 * 3); // eta_Y(f): X^3 contributes e*3
    CHECK(w.distinguished.size() == 1);
    check_identity(f, w);
    // f = Y * unit: alpha = -1
    Laurent g = u * Laurent::monomial(one, -1, 2, AnnulusType::closed);
    w = weierstrass_prepare(g);
    CHECK(w.alpha == -1);
    CHECK(w.eta == 0);
    check_identity(g, w);
}

TEST_CASE("preparation of random split products") {
    auto f7 = Field::prime(7);
    Dvr one = Dvr::from_integer(f7, 1);
    int done = 0;
    while (done < 60) {
        int e = static_cast<int>(rand_int(1, 4));
        int n = static_cast<int>(rand_int(1, 3));
        // distinct residual positions (radius, residue) keep residual roots simple
        std::set<std::pair<int, std::string>> used;
        Laurent f = Laurent::constant(one, e, AnnulusType::closed);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            int r = static_cast<int>(rand_int(0, e));
            FElem c = rand_felem_nonzero(f7);
            if (!used.insert({r, c.to_string()}).second) { ok = false; break; }
            Dvr beta = Dvr::constant(c).shift(e - r).truncated(kDefaultPrecision);
            f = f * (Laurent::monomial(one, -1, e, AnnulusType::closed) -
                     Laurent::constant(beta, e, AnnulusType::closed));
        }
        if (!ok) continue;
        f = f * rand_laurent_unit(f7, e, AnnulusType::closed, 2);
        WeierstrassData w = weierstrass_prepare(f);
        CHECK(static_cast<int>(w.distinguished.size()) == n + 1);
        CHECK(w.unit.is_unit());
        check_identity(f, w);
        ++done;
    }
}

TEST_CASE("alpha matches the boundary valuations") {
    auto f7 = Field::prime(7);
    Dvr one = Dvr::from_integer(f7, 1);
    for (int trial = 0; trial < 20; ++trial) {
        int e = static_cast<int>(rand_int(2, 4));
        // f = (Y - c pi^(e-r)) * unit on closed vs open annuli
        int r = static_cast<int>(rand_int(1, e - 1));
        Dvr beta = Dvr::constant(rand_felem_nonzero(f7)).shift(e - r).truncated(kDefaultPrecision);
        for (AnnulusType t : {AnnulusType::closed, AnnulusType::open}) {
            Laurent f = (Laurent::monomial(one, -1, e, t) - Laurent::constant(beta, e, t)) *
                        rand_laurent_unit(f7, e, t, 2);
            WeierstrassData w = weierstrass_prepare(f);
            BoundaryData bd = f.boundary();
            if (t == AnnulusType::closed) CHECK(w.alpha == *bd.nu_x);
            else CHECK(w.alpha == bd.v_x);
            check_identity(f, w);
        }
    }
}

TEST_CASE("non-simple residual data is rejected") {
    auto f7 = Field::prime(7);
    Dvr one = Dvr::from_integer(f7, 1);
    // (Y - pi)^2: double residual root at its critical radius
    Laurent fac = Laurent::monomial(one, -1, 3, AnnulusType::closed) -
                  Laurent::constant(Dvr::uniformizer_pow(f7, 1), 3, AnnulusType::closed);
    CHECK_THROWS_AS(weierstrass_prepare(fac * fac), unsupported_error);
    // fractional radius requires a base change first
    Laurent h = Laurent::from_y_poly({-Dvr::uniformizer_pow(f7, 3), Dvr::zero(f7), one},
                                     4, AnnulusType::closed);
    CHECK_THROWS_AS(weierstrass_prepare(h), unsupported_error);
    // after the base change the radius is integral and preparation succeeds
    // (Y^2 - pi^3 with e=4 becomes, over pi^(1/2), a function with radius-5 zeros)
}

TEST_CASE("preparation over the rationals") {
    auto q = Field::rationals();
    Dvr one = Dvr::from_integer(q, 1);
    // (Y - 2 pi)(Y - 3) with e = 2: zeros at radii 1 and 2... Y=3 -> X = pi^2/3
    Laurent f = (Laurent::monomial(one, -1, 2, AnnulusType::closed) -
                 Laurent::constant(Dvr::from_integer(q, 2).shift(1).truncated(kDefaultPrecision),
                                   2, AnnulusType::closed)) *
                (Laurent::monomial(one, -1, 2, AnnulusType::closed) -
                 Laurent::constant(Dvr::from_integer(q, 3), 2, AnnulusType::closed));
    WeierstrassData w = weierstrass_prepare(f);
    CHECK(w.distinguished.size() == 3);
    check_identity(f, w);
}
