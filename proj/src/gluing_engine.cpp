#include "stratglue/gluing_engine.hpp"

#include "stratglue/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace stratglue::glue {

using strata::contains;
using strata::support_of;

ModelPtr linear_model(const LinearStratification& s, std::vector<Rational> scale)
{
    const auto report = strata::validate(s.dim(), s.classes());
    if (!report.valid()) {
        throw PartitionError(report.violations.front().kind + ": " + report.violations.front().detail);
    }
    if (scale.empty()) scale.assign(static_cast<std::size_t>(s.dim()), Rational(1));
    if (static_cast<int>(scale.size()) != s.dim()) throw DomainError("metric scale has the wrong length");
    for (const auto& x : scale) {
        if (sgn(x) <= 0) throw DomainError("metric scale must be positive");
    }
    auto model = std::make_shared<LinearModel>(LinearModel{s, std::move(scale), s.layers()});
    return model;
}

Metric::Metric(std::vector<Rational> base) : base_(std::move(base))
{
    for (const auto& x : base_) {
        if (sgn(x) <= 0) throw DomainError("metric scale must be positive");
    }
}

Metric Metric::with_patch(Region where, std::vector<Rational> scale) const
{
    if (scale.size() != base_.size()) throw DomainError("patch scale has the wrong length");
    for (const auto& x : scale) {
        if (sgn(x) <= 0) throw DomainError("metric scale must be positive");
    }
    Metric out = *this;
    out.patches_.emplace_back(std::move(where), std::move(scale));
    return out;
}

const std::vector<Rational>& Metric::at(const Point& x, Field field) const
{
    if (patches_.empty()) return base_;
    const auto flat = flatten(x, field);
    for (const auto& [where, scale] : patches_) {
        if (where.contains_flat(flat)) return scale;
    }
    return base_;
}

Rational Metric::smallest() const
{
    Rational out = base_.empty() ? Rational(1) : *std::min_element(base_.begin(), base_.end());
    for (const auto& [where, scale] : patches_) {
        if (!scale.empty()) out = std::min(out, *std::min_element(scale.begin(), scale.end()));
    }
    return out;
}

Domain Domain::image(DatumPtr source)
{
    const int axes = source->model->axes();
    return Domain({DomainTerm{Region::whole(axes), std::move(source)}});
}

bool Domain::contains(const Point& y, Field field) const
{
    const auto flat = flatten(y, field);
    return std::any_of(terms_.begin(), terms_.end(), [&](const DomainTerm& t) {
        return t.box.contains_flat(flat) && (!t.image_of || t.image_of->in_image(y));
    });
}

bool Domain::box_only() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const DomainTerm& t) { return !t.image_of; });
}

Region Domain::boxes(int axes) const
{
    Region out(axes, {});
    for (const auto& t : terms_) out = out.unite(t.box);
    return out;
}

Domain Domain::intersect(const Region& r) const
{
    std::vector<DomainTerm> out;
    for (const auto& t : terms_) out.push_back({t.box.intersect(r), t.image_of});
    return Domain(std::move(out));
}

Domain Domain::unite(const Domain& other) const
{
    std::vector<DomainTerm> out = terms_;
    out.insert(out.end(), other.terms_.begin(), other.terms_.end());
    return Domain(std::move(out));
}

namespace {

Rational rho2(const Point& x, Subset base)
{
    std::optional<Rational> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(base & (Subset{1} << i))) continue;
        const Rational n = x[i].norm2();
        if (!out || n < *out) out = n;
    }
    return out.value_or(Rational(1));
}

Rational weighted_norm2(const Point& v, const std::vector<Rational>& scale, Subset coords)
{
    Rational out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (coords & (Subset{1} << k)) out += scale[k] * v[k].norm2();
    }
    return out;
}

Subset all_coords(int m) { return (Subset{1} << m) - 1; }

} // namespace

bool GluingDatum::in_domain(const Point& base) const
{
    return model->strat.class_of(support_of(base)) == stratum && domain.contains(base, model->field());
}

std::vector<Rational> GluingDatum::metric_at(const Point& base) const
{
    switch (source) {
    case MetricSource::Explicit: return metric->at(base, model->field());
    case MetricSource::Induced: {
        const DatumPtr& parent = parents.front();
        const auto I = dominant_base(model->strat, parent->stratum, base);
        if (!I) throw DomainError("base point is not in the image of the parent datum");
        return parent->metric_at(restrict_to(base, *I));
    }
    case MetricSource::Sewn:
        for (const auto& p : parents) {
            if (p->in_domain(base)) return p->metric_at(base);
        }
        throw DomainError("base point is outside every sewn piece");
    }
    throw DomainError("unknown metric source");
}

bool GluingDatum::in_ball(const Point& base, const Point& fibre) const
{
    const Subset I = support_of(base);
    if (support_of(fibre) & I) return false;
    const auto scale = metric_at(base);
    return weighted_norm2(fibre, scale, all_coords(model->dim()) & ~I) < eps * eps * rho2(base, I);
}

std::optional<Subset> GluingDatum::base_of(const Point& y) const
{
    const Subset support = support_of(y);
    for (Subset I : model->strat.members(stratum)) {
        if (!contains(support, I)) continue;
        const Point x = restrict_to(y, I);
        if (!domain.contains(x, model->field())) continue;
        if (in_ball(x, restrict_to(y, support & ~I))) return I;
    }
    return std::nullopt;
}

namespace {

void check_radius(const Rational& eps, const Rational& smallest)
{
    if (sgn(eps) <= 0) throw DomainError("radius must be positive");
    if (!(eps * eps < smallest)) throw DomainError("radius too large for the metric: eps^2 must stay below every scale");
}

std::shared_ptr<GluingDatum> base_datum(const ModelPtr& model, int alpha)
{
    if (alpha < 0 || alpha >= static_cast<int>(model->strat.size())) throw DomainError("unknown stratum");
    auto d = std::make_shared<GluingDatum>();
    d->model = model;
    d->stratum = alpha;
    d->phi = {phi(alpha)};
    for (int beta : model->strat.above(alpha)) d->bundle[beta] = {bundle_map(alpha, beta)};
    return d;
}

DatumPtr with_domain(const DatumPtr& d, Domain u)
{
    auto out = std::make_shared<GluingDatum>(*d);
    out->domain = std::move(u);
    return out;
}

} // namespace

DatumPtr canonical_datum(const ModelPtr& model, int alpha, const Rational& eps)
{
    return explicit_datum(model, alpha, Region::whole(model->axes()), Metric(model->scale), eps);
}

DatumPtr explicit_datum(const ModelPtr& model, int alpha, Region u, Metric metric, const Rational& eps)
{
    if (static_cast<int>(metric.base().size()) != model->dim()) throw DomainError("metric has the wrong length");
    check_radius(eps, metric.smallest());
    auto d = base_datum(model, alpha);
    d->domain = Domain::region(std::move(u));
    d->eps = eps;
    d->metric = std::move(metric);
    return d;
}

DatumPtr restrict(const DatumPtr& d, const Region& u, const Rational& eps)
{
    if (sgn(eps) <= 0 || eps > d->eps) throw DomainError("restricted radius must lie in (0, eps]");
    const auto& model = *d->model;
    bool inside = true;
    if (d->domain.box_only()) {
        inside = region_subset(u, d->domain.boxes(model.axes()), model.strat, d->stratum);
    } else {
        for (const auto& x : domain_samples(model, d->stratum, Domain::region(u), 200, 0x5eed0001)) {
            if (!d->domain.contains(x, model.field())) {
                inside = false;
                break;
            }
        }
    }
    if (!inside) throw RegionError("restriction domain is not contained in the datum's domain");
    auto out = std::make_shared<GluingDatum>(*d);
    out->domain = d->domain.intersect(u);
    out->eps = eps;
    out->phi = normal_form(compose(d->phi, {restriction()}));
    return out;
}

DatumPtr shrink(const DatumPtr& d, const Rational& eps)
{
    if (sgn(eps) <= 0 || eps > d->eps) throw DomainError("restricted radius must lie in (0, eps]");
    auto out = std::make_shared<GluingDatum>(*d);
    out->eps = eps;
    return out;
}

DatumPtr induce(const DatumPtr& d, int beta, const Domain& u, const Rational& eps)
{
    const auto& model = *d->model;
    const int alpha = d->stratum;
    if (beta < 0 || beta >= static_cast<int>(model.strat.size()) || !model.strat.less(alpha, beta)) {
        throw OrderError("induced stratum must lie strictly above the datum's stratum");
    }
    if (sgn(eps) <= 0) throw DomainError("radius must be positive");

    std::vector<Point> samples = domain_samples(model, beta, u, 100, 0x1d0ce000u + static_cast<unsigned>(beta));
    if (u.box_only()) {
        const Region r = u.boxes(model.axes());
        for (auto& x : cell_representatives({&r}, model.strat, beta)) {
            if (r.contains(x, model.field())) samples.push_back(std::move(x));
        }
    }
    for (const auto& y : samples) {
        const auto I = d->base_of(y);
        if (!I) throw RegionError("domain leaves the image of the gluing map");
        const Subset J = support_of(y);
        const Point x = restrict_to(y, *I);
        const auto scale = d->metric_at(x);
        // psi(y, w) = (y|_I, y|_{J\I} + w) must stay in the ball of d for every w in the new ball.
        const Rational worst = weighted_norm2(y, scale, J & ~*I) + eps * eps * rho2(y, J);
        if (worst > d->eps * d->eps * rho2(y, *I)) {
            throw DomainError("radius too large: psi leaves the ball of the parent datum");
        }
    }

    auto out = std::make_shared<GluingDatum>();
    out->model = d->model;
    out->stratum = beta;
    out->domain = u;
    out->eps = eps;
    out->phi = normal_form(compose(d->phi, {psi(alpha, beta)}));
    for (int gamma : model.strat.above(beta)) {
        out->bundle[gamma] = normal_form(compose(d->bundle.at(gamma), {psi_nu(alpha, beta, gamma)}));
    }
    out->source = MetricSource::Induced;
    out->parents = {d};
    return out;
}

namespace {

/// Shrinks `v` by halving until base + v passes both balls.
std::optional<Point> fit_fibre(const GluingDatum& d1, const GluingDatum& d2, const Point& base, Point v)
{
    for (int i = 0; i < 200; ++i) {
        if (d1.in_ball(base, v) && d2.in_ball(base, v)) return v;
        for (auto& c : v) c = Complex(c.re / 2, c.im / 2);
    }
    return std::nullopt;
}

std::vector<Point> overlap_samples(const DatumPtr& d1, const DatumPtr& d2)
{
    const auto& model = *d1->model;
    std::vector<Point> out;
    auto take = [&](const DatumPtr& from, const DatumPtr& other, std::uint64_t seed) {
        for (auto& x : domain_samples(model, from->stratum, from->domain, 100, seed)) {
            if (other->in_domain(x)) out.push_back(std::move(x));
        }
    };
    take(d1, d2, 0xc0ffee01u + static_cast<unsigned>(d1->stratum));
    take(d2, d1, 0xc0ffee02u + static_cast<unsigned>(d2->stratum));
    if (d1->domain.box_only() && d2->domain.box_only()) {
        const Region r1 = d1->domain.boxes(model.axes());
        const Region r2 = d2->domain.boxes(model.axes());
        for (auto& x : cell_representatives({&r1, &r2}, model.strat, d1->stratum)) {
            if (d1->in_domain(x) && d2->in_domain(x)) out.push_back(std::move(x));
        }
    }
    return out;
}

} // namespace

Comparison compare(const DatumPtr& d1, const DatumPtr& d2)
{
    Comparison out;
    if (d1->stratum != d2->stratum) {
        out.same = false;
        out.reason = "data live over different strata";
        return out;
    }
    if (normal_form(d1->phi) != normal_form(d2->phi)) {
        out.same = false;
        out.reason = "gluing maps differ: " + word_text(d1->phi) + " vs " + word_text(d2->phi);
        return out;
    }
    for (const auto& [beta, w] : d1->bundle) {
        const auto it = d2->bundle.find(beta);
        if (it == d2->bundle.end() || normal_form(it->second) != normal_form(w)) {
            out.same = false;
            out.reason = "bundle maps over stratum " + std::to_string(beta) + " differ";
            return out;
        }
    }
    const auto& model = *d1->model;
    const int m = model.dim();
    const auto& strat = model.strat;
    for (const Point& x : overlap_samples(d1, d2)) {
        ++out.samples;
        const Subset I = support_of(x);
        const Subset normal = all_coords(m) & ~I;
        const auto s1 = d1->metric_at(x);
        const auto s2 = d2->metric_at(x);
        for (int k = 0; k < m; ++k) {
            if ((normal & (Subset{1} << k)) && s1[k] != s2[k]) {
                out.same = false;
                out.witness = x;
                out.reason = "metrics differ on the overlap";
                return out;
            }
        }

        Point w(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            if (normal & (Subset{1} << k)) w[k] = Complex(Rational(k + 1, 3));
        }
        if (const auto fw = fit_fibre(*d1, *d2, x, w)) {
            const Tower t{x, *fw};
            if (evaluate(d1->phi, strat, t) != evaluate(d2->phi, strat, t)) {
                out.same = false;
                out.witness = x;
                out.reason = "gluing maps disagree at a sample";
                return out;
            }
        }
        for (const auto& [beta, word] : d1->bundle) {
            const auto& members = strat.members(beta);
            const auto J = std::find_if(members.begin(), members.end(), [&](Subset j) { return contains(j, I); });
            if (J == members.end()) continue;
            Point v(static_cast<std::size_t>(m));
            Point u(static_cast<std::size_t>(m));
            for (int k = 0; k < m; ++k) {
                if ((*J & ~I) & (Subset{1} << k)) v[k] = Complex(Rational(1, k + 2));
                if (!(*J & (Subset{1} << k))) u[k] = Complex(Rational(-1, k + 3));
            }
            const auto fitted = fit_fibre(*d1, *d2, x, add(v, u));
            if (!fitted) continue;
            // Recover the two components after the common halving.
            Tower t{x, restrict_to(*fitted, *J & ~I), restrict_to(*fitted, all_coords(m) & ~*J)};
            if (evaluate(word, strat, t) != evaluate(d2->bundle.at(beta), strat, t)) {
                out.same = false;
                out.witness = x;
                out.reason = "bundle maps disagree at a sample";
                return out;
            }
        }
    }
    return out;
}

DatumPtr sew(const DatumPtr& d1, const DatumPtr& d2)
{
    if (d1->stratum != d2->stratum) throw SewingError("cannot sew data over different strata");
    const auto cmp = compare(d1, d2);
    if (!cmp.same) throw SewingError("data do not coincide: " + cmp.reason);
    auto out = std::make_shared<GluingDatum>();
    out->model = d1->model;
    out->stratum = d1->stratum;
    out->domain = d1->domain.unite(d2->domain);
    out->eps = std::min(d1->eps, d2->eps) / 2;
    out->phi = d1->phi;
    out->bundle = d1->bundle;
    out->source = MetricSource::Sewn;
    out->parents = {d1, d2};
    return out;
}

bool frontier_condition(const LinearStratification& s, int alpha)
{
    for (Subset I : s.members(alpha)) {
        for (Subset sub = (I - 1) & I; I != 0; sub = (sub - 1) & I) {
            if (!s.less(s.class_of(sub), alpha)) return false;
            if (sub == 0) break;
        }
    }
    return true;
}

bool is_boundary_type(const Domain& u, const LinearModel& model, int alpha)
{
    if (u.box_only()) return is_boundary_type(u.boxes(model.axes()), model.strat, alpha);
    std::set<int> sources;
    for (const auto& t : u.terms()) {
        const bool global_source = t.image_of && t.image_of->domain.box_only() &&
                                   t.image_of->domain.boxes(model.axes()).is_whole();
        if (!t.box.is_whole() || !global_source) {
            throw RegionError("boundary type is only decided for box regions or unions of global images");
        }
        sources.insert(t.image_of->stratum);
    }
    for (Subset I : model.strat.members(alpha)) {
        for (Subset sub = (I - 1) & I; I != 0; sub = (sub - 1) & I) {
            if (!sources.count(model.strat.class_of(sub))) return false;
            if (sub == 0) break;
        }
    }
    return true;
}

DatumPtr inward_extend(const DatumPtr& d)
{
    const auto& model = d->model;
    if (!is_boundary_type(d->domain, *model, d->stratum)) {
        throw RegionError("inward extension needs a boundary-type domain");
    }
    const bool explicit_metric = d->source == MetricSource::Explicit;
    if (explicit_metric && d->metric->patches().empty() && d->domain.box_only() &&
        d->domain.boxes(model->axes()).is_whole()) {
        return d;
    }
    Metric metric(explicit_metric ? d->metric->base() : model->scale);
    Rational eps = d->eps;
    while (!(eps * eps < metric.smallest())) eps /= 2;
    const DatumPtr ext = explicit_datum(model, d->stratum, Region::whole(model->axes()), metric, eps);

    Domain agree = d->domain;
    if (explicit_metric && !d->metric->patches().empty()) {
        if (!d->domain.box_only()) throw RegionError("metric patches need a box domain");
        Region kept = d->domain.boxes(model->axes());
        for (const auto& [where, scale] : d->metric->patches()) kept = kept.subtract_closure(where);
        if (!is_boundary_type(kept, model->strat, d->stratum)) {
            throw RegionError("agreement region is not of boundary type");
        }
        agree = Domain::region(kept);
    }
    const auto cmp = compare(with_domain(ext, agree), with_domain(d, agree));
    if (!cmp.same) throw SewingError("inward extension disagrees with the datum: " + cmp.reason);
    return ext;
}

Comparison compatible(const DatumPtr& d1, const DatumPtr& d2)
{
    const auto& strat = d1->model->strat;
    Comparison total;
    auto lift = [](const DatumPtr& d, int beta) {
        if (beta == d->stratum) return d;
        const Rational half = d->eps / 2;
        return induce(d, beta, Domain::image(shrink(d, half)), half);
    };
    for (int beta : strat.above(d1->stratum)) {
        if (!strat.leq(d2->stratum, beta)) continue;
        const auto cmp = compare(lift(d1, beta), lift(d2, beta));
        total.samples += cmp.samples;
        if (!cmp.same) {
            total.same = false;
            total.witness = cmp.witness;
            total.reason = "over stratum " + std::to_string(beta) + ": " + cmp.reason;
            return total;
        }
    }
    return total;
}

GridSpec grid_from_environment(GridSpec fallback)
{
    if (const char* v = std::getenv("STRATGLUE_GRID")) {
        const int n = std::atoi(v);
        if (n >= 2) fallback.real_per_axis = n;
    }
    if (const char* v = std::getenv("STRATGLUE_COMPLEX_GRID")) {
        const int n = std::atoi(v);
        if (n >= 2) fallback.complex_per_axis = n;
    }
    return fallback;
}

std::vector<Point> sample_grid(const LinearModel& model, const GridSpec& spec)
{
    const bool complex = model.field() == Field::Complex;
    const int per_axis = complex ? spec.complex_per_axis : spec.real_per_axis;
    std::vector<Rational> axis;
    for (int k = 0; k < per_axis; ++k) axis.push_back(Rational(-1) + Rational(2 * k, per_axis - 1));
    std::vector<Complex> values;
    for (const auto& a : axis) {
        if (complex) {
            for (const auto& b : axis) values.emplace_back(a, b);
        } else {
            values.emplace_back(a);
        }
    }
    const int m = model.dim();
    std::vector<Point> out;
    std::vector<std::size_t> digit(static_cast<std::size_t>(m), 0);
    while (true) {
        Point p(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) p[i] = values[digit[i]];
        out.push_back(std::move(p));
        int i = 0;
        while (i < m && ++digit[i] == values.size()) digit[i++] = 0;
        if (i == m) break;
    }
    return out;
}

namespace {

Rational random_in(std::mt19937_64& rng, const Rational& lo, const Rational& hi)
{
    const unsigned long n = 3 + rng() % 61;
    const unsigned long k = 1 + rng() % (n - 1);
    Rational out = lo + (hi - lo) * Rational(static_cast<long>(k), static_cast<long>(n));
    out.canonicalize();
    return out;
}

Rational random_on_axis(std::mt19937_64& rng, const Interval& axis)
{
    const Rational lo = axis.lo ? *axis.lo : (axis.hi ? std::min(Rational(-1), Rational(*axis.hi - 1)) : Rational(-1));
    const Rational hi = axis.hi ? *axis.hi : std::max(Rational(1), Rational(lo + 1));
    return random_in(rng, lo, hi);
}

Rational abs_max(const Complex& c) { return std::max(abs(c.re), abs(c.im)); }

} // namespace

std::vector<Point> domain_samples(const LinearModel& model, int alpha, const Domain& u, std::size_t want,
                                  std::uint64_t seed)
{
    std::vector<Point> out;
    if (u.terms().empty() || want == 0) return out;
    std::mt19937_64 rng(seed);
    const int m = model.dim();
    const bool complex = model.field() == Field::Complex;
    const auto& strat = model.strat;
    const auto& members = strat.members(alpha);
    auto accept = [&](const Point& y) {
        return strat.class_of(support_of(y)) == alpha && u.contains(y, model.field());
    };

    const std::size_t max_attempts = want * 30;
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < want; ++attempt) {
        const DomainTerm& term = u.terms()[rng() % u.terms().size()];
        if (term.image_of) {
            const DatumPtr& src = term.image_of;
            const auto bases = domain_samples(model, src->stratum, src->domain, 1, rng());
            if (bases.empty()) continue;
            const Point& x = bases.front();
            const Subset I = support_of(x);
            std::vector<Subset> targets;
            for (Subset J : members) {
                if (contains(J, I) && J != I) targets.push_back(J);
            }
            if (targets.empty()) continue;
            const Subset J = targets[rng() % targets.size()];
            Rational reach(1);
            for (int i = 0; i < m; ++i) {
                if (I & (Subset{1} << i)) reach = std::min(reach, abs_max(x[i]));
            }
            reach *= src->eps;
            Point v(static_cast<std::size_t>(m));
            for (int k = 0; k < m; ++k) {
                if (!((J & ~I) & (Subset{1} << k))) continue;
                Rational re = random_in(rng, -reach, reach);
                if (re == 0) re = reach / 2;
                v[k] = complex ? Complex(re, random_in(rng, -reach, reach)) : Complex(re);
            }
            for (int halvings = 0; halvings < 12; ++halvings) {
                const Point y = add(x, v);
                if (accept(y)) {
                    out.push_back(y);
                    break;
                }
                for (auto& c : v) c = Complex(c.re / 2, c.im / 2);
            }
            continue;
        }
        const Subset J = members[rng() % members.size()];
        Point y(static_cast<std::size_t>(m));
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) {
            if (!(J & (Subset{1} << k))) continue;
            if (complex) {
                y[k] = Complex(random_on_axis(rng, term.box.boxes().empty() ? Interval{} : term.box.boxes()[rng() % term.box.boxes().size()].axes[2 * k]),
                               random_on_axis(rng, Interval{}));
            } else {
                const auto& boxes = term.box.boxes();
                y[k] = Complex(random_on_axis(rng, boxes.empty() ? Interval{} : boxes[rng() % boxes.size()].axes[k]));
            }
            ok = !y[k].is_zero();
        }
        if (ok && accept(y)) out.push_back(std::move(y));
    }
    return out;
}

std::optional<PairWitness> find_separation_failure(const LinearModel& model, const std::vector<DatumPtr>& atlas,
                                                   const std::vector<Point>& grid)
{
    const auto& strat = model.strat;
    const int n = static_cast<int>(atlas.size());
    std::vector<bool> present(static_cast<std::size_t>(n));
    for (const auto& y : grid) {
        for (int a = 0; a < n; ++a) present[a] = atlas[a] && atlas[a]->in_image(y);
        for (int a = 0; a < n; ++a) {
            if (!present[a]) continue;
            for (int b = a + 1; b < n; ++b) {
                if (!present[b] || strat.leq(a, b) || strat.leq(b, a)) continue;
                bool covered = false;
                for (int g = 0; g < n && !covered; ++g) {
                    covered = present[g] && strat.leq(g, a) && strat.leq(g, b);
                }
                if (!covered) return PairWitness{y, a, b};
            }
        }
    }
    return std::nullopt;
}

std::optional<Point> find_uncovered(const std::vector<DatumPtr>& atlas, const std::vector<Point>& grid)
{
    for (const auto& y : grid) {
        const bool hit = std::any_of(atlas.begin(), atlas.end(), [&](const DatumPtr& d) { return d && d->in_image(y); });
        if (!hit) return y;
    }
    return std::nullopt;
}

bool AtlasReport::all_compatible() const
{
    for (const auto& row : compatible) {
        for (bool b : row) {
            if (!b) return false;
        }
    }
    return true;
}

AtlasReport build_atlas(const ModelPtr& model, const AtlasOptions& options)
{
    const auto& strat = model->strat;
    const int n = static_cast<int>(strat.size());
    AtlasReport report;
    report.layers = model->layers;
    report.strata.resize(static_cast<std::size_t>(n));
    report.atlas.assign(static_cast<std::size_t>(n), nullptr);
    const auto grid = sample_grid(*model, options.grid);
    report.grid_points = grid.size();

    Rational start = options.eps0;
    while (!(start * start < Metric(model->scale).smallest())) start /= 2;

    for (std::size_t k = 0; k < model->layers.size(); ++k) {
        const auto& layer = model->layers[k];
        Rational cap = start;
        if (k > 0) {
            for (int g : model->layers.front()) cap = std::min(cap, report.atlas[g]->eps);
            cap /= 2;
        }
        for (int alpha : layer) {
            StratumReport& info = report.strata[alpha];
            info.index = alpha;
            info.layer = static_cast<int>(k) + 1;
            info.frontier = frontier_condition(strat, alpha);
            const DatumPtr global = canonical_datum(model, alpha, cap);
            if (k == 0) {
                report.atlas[alpha] = global;
                continue;
            }
            // Boundary datum: data induced from every lower stratum, sewn together.
            DatumPtr boundary;
            for (int gamma = 0; gamma < n; ++gamma) {
                if (!strat.less(gamma, alpha)) continue;
                info.sources.push_back(gamma);
                const DatumPtr& lower = report.atlas[gamma];
                const Rational half = lower->eps / 2;
                const DatumPtr piece = induce(lower, alpha, Domain::image(shrink(lower, half)), half);
                boundary = boundary ? sew(boundary, piece) : piece;
            }
            info.boundary_type = is_boundary_type(boundary->domain, *model, alpha);
            if (info.boundary_type) {
                const DatumPtr ext = inward_extend(boundary);
                info.extension_agrees = coincide(ext, global);
            }
            const auto agreement = compare(global, boundary);
            info.extension_agrees = info.extension_agrees && agreement.same;
            info.extension_samples = agreement.samples;
            report.atlas[alpha] = global;
        }

        // Shrink the radii of this layer until separation holds on the grid.
        while (true) {
            const auto failure = find_separation_failure(*model, report.atlas, grid);
            if (!failure) break;
            // Shrinking the stratum that contains the witness cannot help.
            const int own = strat.class_of(support_of(failure->point));
            bool shrunk = false;
            for (int a : {failure->alpha, failure->beta}) {
                if (a == own) continue;
                const Rational next = report.atlas[a]->eps / 2;
                if (next < options.floor) continue;
                report.atlas[a] = shrink(report.atlas[a], next);
                shrunk = true;
            }
            if (!shrunk) {
                report.separation = false;
                report.separation_witness = failure;
                break;
            }
        }
        ++report.passes;
    }
    for (int a = 0; a < n; ++a) report.strata[a].eps = report.atlas[a]->eps;

    report.compatible.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), true));
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            const auto cmp = compatible(report.atlas[a], report.atlas[b]);
            report.compatible[a][b] = report.compatible[b][a] = cmp.same;
            if (!cmp.same) report.incompatible.push_back({cmp.witness.value_or(Point{}), a, b});
        }
    }
    if (report.separation) {
        if (const auto failure = find_separation_failure(*model, report.atlas, grid)) {
            report.separation = false;
            report.separation_witness = failure;
        }
    }
    if (const auto miss = find_uncovered(report.atlas, grid)) {
        report.cover = false;
        report.uncovered = miss;
    }
    return report;
}

} // namespace stratglue::glue
