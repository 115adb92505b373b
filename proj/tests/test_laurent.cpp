#include <doctest.h>

#include "nonarch/errors.hpp"
#include "nonarch/laurent.hpp"
#include "util.hpp"

using namespace nonarch;
using namespace testutil;

namespace {

// Independent oracle for eta_r: scan every retained monomial directly.
Rat eta_oracle(const Laurent& f, const Rat& r) {
    bool first = true;
    Rat best;
    for (int i = 0; i <= f.truncation(); ++i) {
        auto v = f.xcoeff(i).ord();
        if (v) {
            Rat val = Rat(*v) + Rat(i) * r;
            if (first || val < best) { best = val; first = false; }
        }
    }
    for (int i = 1; i <= f.truncation(); ++i) {
        auto v = f.ycoeff(i).ord();
        if (v) {
            Rat val = Rat(*v) + Rat(i) * (Rat(f.modulus()) - r);
            if (first || val < best) { best = val; first = false; }
        }
    }
    REQUIRE_FALSE(first);
    return best;
}

} // namespace

TEST_CASE("bivariate reduction via XY = pi^e") {
    auto f7 = Field::prime(7);
    Dvr one = Dvr::from_integer(f7, 1);
    // X^2 Y -> pi^e X
    Laurent f = Laurent::from_bivariate(f7, 2, AnnulusType::closed, 10, {{2, 1, one}});
    CHECK(f.xcoeff(1).equals(Dvr::uniformizer_pow(f7, 2)));
    // X Y -> pi^e constant
    Laurent g = Laurent::from_bivariate(f7, 3, AnnulusType::closed, 10, {{1, 1, one}, {0, 0, one}});
    CHECK(g.xcoeff(0).equals(one + Dvr::uniformizer_pow(f7, 3)));
}

TEST_CASE("multiplication matches evaluation") {
    auto f7 = Field::prime(7);
    for (int trial = 0; trial < 30; ++trial) {
        int e = static_cast<int>(rand_int(1, 4));
        Laurent f = rand_laurent(f7, e, AnnulusType::closed);
        Laurent g = rand_laurent(f7, e, AnnulusType::closed);
        Laurent h = f * g;
        // oracle: evaluate both sides at a random unit point
        Dvr a = rand_dvr_unit(f7);
        CHECK(h.evaluate(a).equals(f.evaluate(a) * g.evaluate(a)));
        // and at points of any valuation in [0, e]
        Dvr b = rand_dvr_unit(f7).shift(static_cast<int>(rand_int(0, e))).truncated(kDefaultPrecision);
        CHECK(h.evaluate(b).equals(f.evaluate(b) * g.evaluate(b)));
    }
}

TEST_CASE("unit criterion depends on the annulus type") {
    auto f7 = Field::prime(7);
    Dvr one = Dvr::from_integer(f7, 1);
    auto one_plus = [&](int d, AnnulusType t) {
        return Laurent::constant(one, 2, t) + Laurent::monomial(one, d, 2, t);
    };
    // 1 + X: unit on the open annulus only
    CHECK(one_plus(1, AnnulusType::open).is_unit());
    CHECK_FALSE(one_plus(1, AnnulusType::semi_open).is_unit());
    CHECK_FALSE(one_plus(1, AnnulusType::closed).is_unit());
    // 1 + Y: unit unless the annulus is closed
    CHECK(one_plus(-1, AnnulusType::open).is_unit());
    CHECK(one_plus(-1, AnnulusType::semi_open).is_unit());
    CHECK_FALSE(one_plus(-1, AnnulusType::closed).is_unit());
    // 1 + pi X is always a unit
    Laurent u = Laurent::constant(one, 2, AnnulusType::closed) +
                Laurent::monomial(Dvr::uniformizer_pow(f7, 1), 1, 2, AnnulusType::closed);
    CHECK(u.is_unit());
}

TEST_CASE("unit inversion round trips") {
    auto f7 = Field::prime(7);
    for (AnnulusType t : {AnnulusType::open, AnnulusType::semi_open, AnnulusType::closed}) {
        for (int trial = 0; trial < 20; ++trial) {
            int e = static_cast<int>(rand_int(1, 3));
            Laurent u = rand_laurent_unit(f7, e, t);
            REQUIRE(u.is_unit());
            Laurent v = u.invert_unit();
            Laurent one = Laurent::constant(Dvr::from_integer(f7, 1), e, t);
            CHECK((u * v).equals(one));
        }
    }
}

TEST_CASE("boundary valuations") {
    auto f7 = Field::prime(7);
    // f = pi^2 X^(-1)... i.e. Y with e = 2: eta_X = 2 at degree -1
    Laurent y = Laurent::monomial(Dvr::from_integer(f7, 1), -1, 2, AnnulusType::closed);
    BoundaryData bd = y.boundary();
    CHECK(bd.eta_x == 2);
    CHECK(bd.v_x == -1);
    CHECK(bd.nu_x == -1);
    CHECK(bd.eta_y == 0);
    CHECK(bd.v_y == 1);
    // f = X + Y, e = 2: eta_X = 0 attained only at X; on the Y boundary at Y
    Laurent f = Laurent::monomial(Dvr::from_integer(f7, 1), 1, 2, AnnulusType::closed) + y;
    bd = f.boundary();
    CHECK(bd.eta_x == 0);
    CHECK(bd.v_x == 1);
    CHECK(bd.nu_x == 1);
    CHECK(bd.eta_y == 0);
    CHECK(bd.v_y == 1);
    CHECK(bd.nu_y == 1);
}

TEST_CASE("eta_r agrees with the monomial oracle and is additive") {
    auto f7 = Field::prime(7);
    for (int trial = 0; trial < 40; ++trial) {
        int e = static_cast<int>(rand_int(1, 4));
        Laurent f = rand_laurent(f7, e, AnnulusType::closed);
        if (f.is_zero()) continue;
        for (int num = 0; num <= 2 * e; ++num) {
            Rat r(Int(num), Int(2));
            if (r > Rat(e)) break;
            CHECK(f.eta_at(r) == eta_oracle(f, r));
        }
        Laurent g = rand_laurent(f7, e, AnnulusType::closed);
        if (g.is_zero()) continue;
        Rat r(Int(rand_int(0, e)), Int(1));
        CHECK((f * g).eta_at(r) == f.eta_at(r) + g.eta_at(r));
    }
}

TEST_CASE("critical radii of explicit products") {
    auto f7 = Field::prime(7);
    Dvr one = Dvr::from_integer(f7, 1);
    // f = Y - pi on the closed e = 2 annulus: single zero at radius 1
    Laurent f = Laurent::monomial(one, -1, 2, AnnulusType::closed) -
                Laurent::constant(Dvr::uniformizer_pow(f7, 1), 2, AnnulusType::closed);
    auto radii = f.critical_radii();
    REQUIRE(radii.size() == 1);
    CHECK(radii[0] == Rat(1));
    CHECK(f.count_zeros(Rat(0), Rat(2)) == 1);
    CHECK(f.count_zeros(Rat(0), Rat(Int(1), Int(2))) == 0);
    CHECK(f.count_zeros(Rat(1), Rat(1)) == 1);

    // (Y - pi)(Y - pi^2) with e = 3: radii {1, 2}
    Laurent g = Laurent::from_y_poly({Dvr::uniformizer_pow(f7, 3),
                                      -(Dvr::uniformizer_pow(f7, 1) + Dvr::uniformizer_pow(f7, 2)),
                                      Dvr::from_integer(f7, 1)},
                                     3, AnnulusType::closed);
    radii = g.critical_radii();
    REQUIRE(radii.size() == 2);
    CHECK(radii[0] == Rat(1));
    CHECK(radii[1] == Rat(2));
    CHECK(g.count_zeros(Rat(0), Rat(3)) == 2);
    CHECK(g.count_zeros(Rat(2), Rat(3)) == 1);

    // fractional critical radius: Y^2 - pi^3, e = 4 -> zero radius e - 3/2
    Laurent h = Laurent::from_y_poly({-Dvr::uniformizer_pow(f7, 3), Dvr::zero(f7),
                                      Dvr::from_integer(f7, 1)},
                                     4, AnnulusType::closed);
    radii = h.critical_radii();
    REQUIRE(radii.size() == 1);
    CHECK(radii[0] == Rat(Int(5), Int(2)));
}

TEST_CASE("Newton polygon breakpoints carry slopes") {
    auto f7 = Field::prime(7);
    Laurent g = Laurent::from_y_poly({Dvr::uniformizer_pow(f7, 3),
                                      -(Dvr::uniformizer_pow(f7, 1) + Dvr::uniformizer_pow(f7, 2)),
                                      Dvr::from_integer(f7, 1)},
                                     3, AnnulusType::closed);
    NewtonPolygon np = g.newton_polygon();
    REQUIRE(np.breakpoints.size() == 2);
    // slope drop at each breakpoint equals the number of zeros at that radius
    for (const auto& bp : np.breakpoints)
        CHECK(bp.left_slope - bp.right_slope == g.count_zeros(bp.r, bp.r));
    // polygon value matches eta_r
    CHECK(np.breakpoints[0].value == g.eta_at(np.breakpoints[0].r));
}

TEST_CASE("count_zeros validates the range by type") {
    auto f7 = Field::prime(7);
    Dvr one = Dvr::from_integer(f7, 1);
    Laurent f = Laurent::monomial(one, 1, 2, AnnulusType::open) +
                Laurent::constant(Dvr::uniformizer_pow(f7, 1), 2, AnnulusType::open);
    CHECK_THROWS_AS(f.count_zeros(Rat(0), Rat(1)), domain_error);
    CHECK_THROWS_AS(f.count_zeros(Rat(1), Rat(2)), domain_error);
    CHECK(f.count_zeros(Rat(Int(1), Int(2)), Rat(Int(3), Int(2))) == 1);
    Laurent c = Laurent::monomial(one, 1, 2, AnnulusType::closed);
    CHECK_THROWS_AS(c.count_zeros(Rat(0), Rat(3)), domain_error);
    CHECK_THROWS_AS(c.count_zeros(Rat(2), Rat(1)), domain_error);
}

TEST_CASE("zero counts match constructed products") {
    auto f7 = Field::prime(7);
    for (int trial = 0; trial < 40; ++trial) {
        int e = static_cast<int>(rand_int(2, 5));
        int n = static_cast<int>(rand_int(1, 3));
        std::vector<int> radii;
        Laurent f = Laurent::constant(Dvr::from_integer(f7, 1), e, AnnulusType::closed);
        for (int i = 0; i < n; ++i) {
            int r = static_cast<int>(rand_int(0, e));
            radii.push_back(r);
            // factor Y - c pi^(e - r): zero with |X| = |pi|^r
            Dvr c = Dvr::constant(rand_felem_nonzero(f7)).shift(e - r).truncated(kDefaultPrecision);
            Laurent fac = Laurent::monomial(Dvr::from_integer(f7, 1), -1, e, AnnulusType::closed) -
                          Laurent::constant(c, e, AnnulusType::closed);
            f = f * fac;
        }
        f = f * rand_laurent_unit(f7, e, AnnulusType::closed);
        for (int r1 = 0; r1 <= e; ++r1)
            for (int r2 = r1; r2 <= e; ++r2) {
                long long expect = 0;
                for (int r : radii)
                    if (r1 <= r && r <= r2) ++expect;
                CHECK(f.count_zeros(Rat(r1), Rat(r2)) == expect);
            }
    }
}

TEST_CASE("evaluate rejects points off the annulus") {
    auto f7 = Field::prime(7);
    Laurent f = rand_laurent(f7, 2, AnnulusType::closed);
    CHECK_THROWS_AS(f.evaluate(Dvr::uniformizer_pow(f7, 3)), domain_error);
    CHECK_THROWS_AS(f.evaluate(Dvr::zero(f7)), precision_error);
}
