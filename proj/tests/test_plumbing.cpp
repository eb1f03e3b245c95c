#include "oracles.hpp"
#include "stratglue/error.hpp"
#include "stratglue/plumbing.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace stratglue;
using namespace stratglue::plumbing;

namespace {

const double pi = std::numbers::pi;

HorocycleStructure series(std::vector<Complex> coefficients, double delta)
{
    HorocycleStructure h;
    h.delta = delta;
    h.coefficients = std::move(coefficients);
    return h;
}

Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den)
{
    std::uniform_int_distribution<long> num(lo * den, hi * den);
    Rational q(num(rng), den);
    q.canonicalize();
    return q;
}

} // namespace

TEST_CASE("cusp coordinate")
{
    CHECK(std::abs(cusp_to_disk({0, 1}) - std::exp(-2 * pi)) < 1e-15);
    CHECK(std::abs(cusp_to_disk({1, 1}) - cusp_to_disk({0, 1})) < 1e-15);
    CHECK(std::abs(cusp_to_disk({0, 2}) - std::exp(-4 * pi)) < 1e-18);
    CHECK_THROWS_AS(cusp_to_disk({0, 0.5}), DomainError);
    // Horocycles Im zeta = y land on |z| = e^{-2 pi y}.
    for (double y : {1.0, 1.25, 2.0, 3.5}) {
        for (double x : {-0.4, 0.0, 0.3, 0.9}) {
            CHECK(std::abs(std::abs(cusp_to_disk({x, y})) - std::exp(-2 * pi * y)) < 1e-15);
        }
    }
}

TEST_CASE("horocycle length")
{
    CHECK(horocycle_length(std::exp(-4 * pi)) == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(horocycle_length(std::exp(-3 * pi)) == Catch::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(std::abs(horocycle_length(std::exp(-3 * pi)) - oracle::horocycle_length_numeric(std::exp(-3 * pi))) < 1e-9);
    CHECK_THROWS_AS(horocycle_length(0.5), DomainError);
    CHECK_THROWS_AS(horocycle_length(0), DomainError);
    double previous = 0;
    for (int k = 0; k < 50; ++k) {
        // log-spaced from e^{-200} up to just below e^{-2 pi}
        const double c = std::exp(-200 + (200 - 2 * pi - 0.01) * k / 49.0);
        const double l = horocycle_length(c);
        CHECK(l > previous);
        previous = l;
        CHECK(std::abs(l - oracle::horocycle_length_numeric(c)) < 1e-9);
    }
}

TEST_CASE("plumbing examples")
{
    const PlumbingFixture f{Complex(Rational(1, 16)), Rational(1, 2)};
    CHECK(plumb(Complex(Rational(1, 4)), f) == Complex(Rational(1, 4)));
    CHECK_THROWS_AS(plumb(Complex(Rational(1, 2)), f), RegionError);
    CHECK_THROWS_AS(plumb(Complex(Rational(1, 8)), f), RegionError);
    CHECK_THROWS_AS(plumb(Complex(Rational(1, 4)), PlumbingFixture{Complex(Rational(1, 4)), Rational(1, 2)}), DomainError);
    CHECK_THROWS_AS(plumb(Complex(Rational(1, 4)), PlumbingFixture{Complex(), Rational(1, 2)}), DomainError);
}

TEST_CASE("plumbing is an exact involution")
{
    std::mt19937_64 rng(20261016);
    int checked = 0;
    while (checked < 1000) {
        const Rational delta = random_rational(rng, 0, 1, 64);
        if (sgn(delta) <= 0) continue;
        const Complex t(random_rational(rng, -1, 1, 97), random_rational(rng, -1, 1, 89));
        const PlumbingFixture f{t, delta};
        if (t.is_zero() || !(t.norm2() < delta * delta * delta * delta)) continue;
        const Complex z(random_rational(rng, -1, 1, 101), random_rational(rng, -1, 1, 103));
        if (!in_annulus(z, f)) continue;
        const Complex w = plumb(z, f);
        CHECK(z * w == t);
        CHECK(in_annulus(w, f));
        CHECK(plumb(w, f) == z);
        ++checked;
    }
}

TEST_CASE("excision regions")
{
    const Rational delta(1, 2);
    const auto nodal = excision_region({Complex()}, delta);
    REQUIRE(nodal.size() == 1);
    CHECK(nodal[0].nodal);
    CHECK(nodal[0].inner2 == 0);

    const auto glued = excision_region({Complex(Rational(1, 16))}, delta);
    CHECK_FALSE(glued[0].nodal);
    CHECK(glued[0].inner2 == Rational(1, 64));
    CHECK(glued[0].outer2 == Rational(1, 4));

    const auto mixed = excision_region({Complex(Rational(1, 16)), Complex()}, delta);
    CHECK_FALSE(mixed[0].nodal);
    CHECK(mixed[1].nodal);

    CHECK_THROWS_AS(excision_region({Complex(Rational(1, 4))}, delta), DomainError);
}

TEST_CASE("horocycle validation")
{
    CHECK(validate_horocycle(canonical_horocycle()).ok);
    auto bad = canonical_horocycle();
    bad.coefficients[1] = Complex(2);
    CHECK_FALSE(validate_horocycle(bad).ok);
    auto shifted = canonical_horocycle();
    shifted.coefficients[0] = Complex(Rational(1, 3));
    CHECK_FALSE(validate_horocycle(shifted).ok);
    const auto wild = series({Complex(), Complex(1), Complex(1000)}, 0.01);
    CHECK_FALSE(validate_horocycle(wild).ok);
}

TEST_CASE("blending")
{
    const auto h = series({Complex(), Complex(1), Complex(Rational(1, 4), Rational(1, 8))}, 1.0);
    REQUIRE(validate_horocycle(h).ok);
    const auto same = blend(h, h, Rational(1, 3));
    CHECK(same.coefficients == h.coefficients);
    CHECK(same.delta == h.delta);

    const auto h0 = series({Complex(), Complex(1), Complex()}, 3.0);
    const auto h1 = series({Complex(), Complex(1), Complex(Rational(1, 4))}, 1.5);
    const auto s0 = blend(h0, h1, 0);
    CHECK(s0.coefficients == h0.coefficients);
    CHECK(s0.delta <= h0.delta);

    const auto mid = blend(h0, h1, Rational(1, 2));
    CHECK(mid.coefficients[2] == Complex(Rational(1, 8)));
    CHECK(mid.coefficients[0].is_zero());
    CHECK(mid.coefficients[1] == Complex(1));
    CHECK(validate_horocycle(mid).ok);
    CHECK(mid.delta < 4);

    // A radius beyond the certificate gets cut back by bisection.
    const auto far0 = series({Complex(), Complex(1), Complex(Rational(1, 4))}, 10.0);
    const auto far = blend(far0, far0, Rational(1, 2));
    CHECK(far.delta == Catch::Approx(2.0).margin(1e-11));
    CHECK(validate_horocycle(far).ok);

    // Convex paths compose: blend(blend(h0,h1,s),h1,s') = blend(h0,h1,s+s'(1-s)).
    const Rational s(1, 3), t(2, 5);
    CHECK(blend(blend(h0, h1, s), h1, t).coefficients == blend(h0, h1, s + t * (1 - s)).coefficients);
    CHECK(blend(blend(h0, h1, s), h1, t).scale == blend(h0, h1, s + t * (1 - s)).scale);
    CHECK_THROWS_AS(blend(h0, h1, Rational(3, 2)), DomainError);
}

TEST_CASE("blend accepts an unreduced parameter")
{
    const auto h0 = series({Complex(), Complex(1), Complex()}, 3.0);
    const auto h1 = series({Complex(), Complex(1), Complex(Rational(1, 4))}, 1.5);
    for (int k : {0, 4, 8}) {
        const auto b = blend(h0, h1, Rational(k, 8));
        CHECK(b.coefficients[1] == Complex(1));
        CHECK(validate_horocycle(b).ok);
    }
}
