#pragma once

#include "stratglue/number.hpp"

#include <complex>
#include <string>
#include <vector>

namespace stratglue::plumbing {

/// exp(2 pi i zeta); needs Im zeta >= 1.
std::complex<double> cusp_to_disk(std::complex<double> zeta);

/// Hyperbolic length -2 pi / log c of the horocycle |z| = c, for 0 < c < e^{-2 pi}.
double horocycle_length(double c);

struct PlumbingFixture {
    Complex t;
    Rational delta;
};

/// Throws DomainError unless 0 < |t| < delta^2.
void check_fixture(const PlumbingFixture& f);

/// w = t / z on the annulus |t|/delta < |z| < delta. RegionError outside it.
Complex plumb(const Complex& z, const PlumbingFixture& f);
bool in_annulus(const Complex& z, const PlumbingFixture& f);

/// Per node: either the nodal pair of punctured disks or one annulus glued by z w = t.
struct NodeRegion {
    Complex t;
    bool nodal = false;
    /// Squared radii of the kept annulus |t|/delta < |z| < delta (the inner one is 0 when nodal).
    Rational inner2;
    Rational outer2;
    std::string text;
};

/// Throws DomainError if some |t_i| >= delta^2.
std::vector<NodeRegion> excision_region(const std::vector<Complex>& ts, const Rational& delta);

/// Chart h(z) = sum_{k>=1} a_k z^k; coefficients[k] is a_k, coefficients[0] the constant term.
struct HorocycleStructure {
    Rational scale{1};
    double delta = 0;
    std::vector<Complex> coefficients;
};

constexpr int default_degree = 8;

/// Identity chart, delta = e^{-2 pi}, scale 1.
HorocycleStructure canonical_horocycle(int degree = default_degree);

/// 1 - sum_{k>=2} k |a_k| delta^{k-1}.
double injectivity_margin(const std::vector<Complex>& coefficients, double delta);

struct HorocycleCheck {
    bool ok = true;
    std::string reason;
};

HorocycleCheck validate_horocycle(const HorocycleStructure& h);

/// Convex combination of scales and coefficients; delta is the largest radius
/// up to the smaller input radius that keeps a positive margin. Throws
/// DomainError when none is found.
HorocycleStructure blend(const HorocycleStructure& h0, const HorocycleStructure& h1, const Rational& s);

} // namespace stratglue::plumbing
