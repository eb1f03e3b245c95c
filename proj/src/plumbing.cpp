#include "stratglue/plumbing.hpp"

#include "stratglue/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stratglue::plumbing {

std::complex<double> cusp_to_disk(std::complex<double> zeta)
{
    if (zeta.imag() < 1) throw DomainError("cusp coordinate needs Im zeta >= 1");
    return std::exp(std::complex<double>(0, 2 * std::numbers::pi) * zeta);
}

double horocycle_length(double c)
{
    if (!(c > 0 && c < std::exp(-2 * std::numbers::pi))) throw DomainError("horocycle level must lie in (0, e^{-2 pi})");
    return -2 * std::numbers::pi / std::log(c);
}

void check_fixture(const PlumbingFixture& f)
{
    if (sgn(f.delta) <= 0) throw DomainError("delta must be positive");
    const Rational d2 = f.delta * f.delta;
    if (f.t.is_zero() || !(f.t.norm2() < d2 * d2)) throw DomainError("gluing parameter needs 0 < |t| < delta^2");
}

bool in_annulus(const Complex& z, const PlumbingFixture& f)
{
    const Rational z2 = z.norm2();
    return f.t.norm2() < f.delta * f.delta * z2 && z2 < f.delta * f.delta;
}

Complex plumb(const Complex& z, const PlumbingFixture& f)
{
    check_fixture(f);
    if (!in_annulus(z, f)) throw RegionError("z lies outside the annulus |t|/delta < |z| < delta");
    return f.t / z;
}

std::vector<NodeRegion> excision_region(const std::vector<Complex>& ts, const Rational& delta)
{
    if (sgn(delta) <= 0) throw DomainError("delta must be positive");
    const Rational d2 = delta * delta;
    std::vector<NodeRegion> out;
    for (const auto& t : ts) {
        if (!(t.norm2() < d2 * d2)) throw DomainError("gluing parameter needs |t| < delta^2");
        NodeRegion r;
        r.t = t;
        r.outer2 = d2;
        if (t.is_zero()) {
            r.nodal = true;
            r.text = "nodal: 0 < |z| < " + format_rational(delta) + ", 0 < |w| < " + format_rational(delta);
        } else {
            r.inner2 = t.norm2() / d2;
            r.text = "annulus: |t|/" + format_rational(delta) + " < |z| < " + format_rational(delta) +
                     ", z w = " + format_complex(t);
        }
        out.push_back(std::move(r));
    }
    return out;
}

HorocycleStructure canonical_horocycle(int degree)
{
    HorocycleStructure h;
    h.delta = std::exp(-2 * std::numbers::pi);
    h.coefficients.assign(static_cast<std::size_t>(std::max(degree, 1)) + 1, Complex());
    h.coefficients[1] = Complex(1);
    return h;
}

double injectivity_margin(const std::vector<Complex>& coefficients, double delta)
{
    double sum = 0;
    for (std::size_t k = 2; k < coefficients.size(); ++k) {
        sum += static_cast<double>(k) * std::sqrt(coefficients[k].norm2().get_d()) * std::pow(delta, double(k - 1));
    }
    return 1 - sum;
}

HorocycleCheck validate_horocycle(const HorocycleStructure& h)
{
    if (h.coefficients.size() < 2) return {false, "series needs a linear term"};
    if (!h.coefficients[0].is_zero()) return {false, "constant term must vanish"};
    if (!(h.coefficients[1] == Complex(1))) return {false, "linear coefficient must be 1"};
    if (sgn(h.scale) <= 0) return {false, "metric scale must be positive"};
    if (!(h.delta > 0)) return {false, "radius must be positive"};
    if (!(injectivity_margin(h.coefficients, h.delta) > 0)) return {false, "injectivity certificate fails at delta"};
    return {};
}

HorocycleStructure blend(const HorocycleStructure& h0, const HorocycleStructure& h1, const Rational& weight)
{
    Rational s = weight;
    s.canonicalize();
    if (s < 0 || s > 1) throw DomainError("blend parameter must lie in [0,1]");
    HorocycleStructure out;
    const Rational r = 1 - s;
    out.scale = r * h0.scale + s * h1.scale;
    out.scale.canonicalize();
    const std::size_t n = std::max(h0.coefficients.size(), h1.coefficients.size());
    out.coefficients.assign(n, Complex());
    for (std::size_t k = 0; k < n; ++k) {
        const Complex a = k < h0.coefficients.size() ? h0.coefficients[k] : Complex();
        const Complex b = k < h1.coefficients.size() ? h1.coefficients[k] : Complex();
        out.coefficients[k] = Complex(r) * a + Complex(s) * b;
        out.coefficients[k].re.canonicalize();
        out.coefficients[k].im.canonicalize();
    }
    const double cap = std::min(h0.delta, h1.delta);
    if (!(cap > 0)) throw DomainError("inputs need positive radii");
    if (injectivity_margin(out.coefficients, cap) > 0) {
        out.delta = cap;
        return out;
    }
    double lo = 0;
    double hi = cap;
    while (hi - lo > 1e-12) {
        const double mid = (lo + hi) / 2;
        (injectivity_margin(out.coefficients, mid) > 0 ? lo : hi) = mid;
    }
    if (!(lo > 0)) throw DomainError("no positive radius certifies injectivity");
    out.delta = lo;
    return out;
}

} // namespace stratglue::plumbing
