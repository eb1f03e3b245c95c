#include "stratglue/chart_map.hpp"
#include "stratglue/error.hpp"
#include "stratglue/region.hpp"

#include <catch_amalgamated.hpp>

using namespace stratglue;
using namespace stratglue::glue;
using strata::make_stratification;

namespace {

constexpr Subset E = 0, S1 = 1, S2 = 2, S12 = 3;

Region interval(const Rational& lo, const Rational& hi) { return Region(1, {Box{{Interval{lo, hi}}}}); }

Point pt(std::initializer_list<Rational> xs)
{
    Point p;
    for (const auto& x : xs) p.emplace_back(x);
    return p;
}

} // namespace

TEST_CASE("box membership is open")
{
    const Region r = interval(1, 2);
    CHECK(r.contains(pt({Rational(3, 2)}), Field::Real));
    CHECK_FALSE(r.contains(pt({1}), Field::Real));
    CHECK_FALSE(r.contains(pt({2}), Field::Real));
    CHECK(Region::whole(2).is_whole());
    CHECK_FALSE(Region::cube(2, -1, 1).is_whole());
}

TEST_CASE("boundary type on the line")
{
    const auto s = make_stratification(1, Field::Real, {{E}, {S1}});
    CHECK(is_boundary_type(Region::whole(1), s, 1));
    CHECK_FALSE(is_boundary_type(interval(1, 2), s, 1));
    CHECK(is_boundary_type(interval(0, 1).unite(interval(-1, 0)), s, 1));
    CHECK(is_boundary_type(interval(-1, 1), s, 1));
    CHECK_FALSE(is_boundary_type(interval(0, 1), s, 1));
    // The bottom stratum has no boundary.
    CHECK(is_boundary_type(interval(5, 6), s, 0));
}

TEST_CASE("boundary type in the complex plane")
{
    const auto s = make_stratification(1, Field::Complex, {{E}, {S1}});
    const Region disc(2, {Box{{Interval{-1, 1}, Interval{-1, 1}}}});
    CHECK(is_boundary_type(disc, s, 1));
    const Region half(2, {Box{{Interval{0, 1}, Interval{-1, 1}}}});
    CHECK_FALSE(is_boundary_type(half, s, 1));
}

TEST_CASE("subset and closure subtraction")
{
    const auto s = make_stratification(1, Field::Real, {{E}, {S1}});
    CHECK(region_subset(interval(0, 1), interval(-1, 2), s, 1));
    CHECK_FALSE(region_subset(interval(0, 3), interval(-1, 2), s, 1));
    const Region cut = interval(-2, 2).subtract_closure(interval(1, 2));
    CHECK(cut.contains(pt({Rational(1, 2)}), Field::Real));
    CHECK_FALSE(cut.contains(pt({1}), Field::Real));
    CHECK_FALSE(cut.contains(pt({Rational(3, 2)}), Field::Real));
    CHECK(is_boundary_type(cut, s, 1));
}

TEST_CASE("rewrite rules reach the expected normal forms")
{
    CHECK(normal_form({phi(0), tau(0, 1)}) == Word{phi(1), bundle_map(0, 1)});
    CHECK(normal_form({phi(0), psi(0, 1)}) == Word{phi(1)});
    CHECK(normal_form({bundle_map(0, 2), tau_nu(0, 1, 2)}) == Word{bundle_map(1, 2), bundle_map(0, 1)});
    CHECK(normal_form({bundle_map(0, 2), psi_nu(0, 1, 2)}) == Word{bundle_map(1, 2)});
    CHECK(normal_form({restriction(), phi(2), restriction()}) == Word{phi(2)});
    CHECK(word_text({phi(1), bundle_map(0, 1)}) == "phi[1] . Phi[0,1]");
}

TEST_CASE("evaluation on the m=2 chain")
{
    const auto s = make_stratification(2, Field::Real, {{E}, {S1, S2}, {S12}});
    const Point x = pt({3, 0});
    const Point v = pt({0, Rational(1, 2)});
    CHECK(evaluate({phi(1)}, s, {x, v}) == Tower{pt({3, Rational(1, 2)})});
    // psi splits off the dominant coordinate.
    CHECK(evaluate({psi(1, 2)}, s, {pt({3, Rational(1, 2)})}) == Tower{x, v});
    CHECK_THROWS_AS(evaluate({psi(1, 2)}, s, {pt({1, 1})}), DomainError);
    CHECK(dominant_base(s, 1, pt({1, 5})) == S2);
    CHECK_FALSE(dominant_base(s, 1, pt({2, 2})).has_value());
}
