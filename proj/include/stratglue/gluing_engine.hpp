#pragma once

#include "stratglue/chart_map.hpp"
#include "stratglue/linear_strata.hpp"
#include "stratglue/region.hpp"

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace stratglue::glue {

/// Coordinate model of a linear stratification: strata M_a = V_a, gluing
/// bundles N(V_a) with fibre V^{I^c} over V^{[I]}, canonical charts the
/// inclusions, and a diagonal metric `scale` on V.
struct LinearModel {
    LinearStratification strat;
    std::vector<Rational> scale;
    std::vector<std::vector<int>> layers;

    int dim() const { return strat.dim(); }
    Field field() const { return strat.field(); }
    int axes() const { return axis_count(strat.dim(), strat.field()); }
    int stratum_dim(int alpha) const { return strat.rank(alpha); }
    int fibre_dim(int alpha) const { return strat.dim() - strat.rank(alpha); }
    /// Fibre dimension of Gl^a_b; with stratum_dim(a) it adds up to stratum_dim(b).
    int bundle_fibre_dim(int alpha, int beta) const { return strat.rank(beta) - strat.rank(alpha); }
};

using ModelPtr = std::shared_ptr<const LinearModel>;

/// Validates the stratification; default scale is 1 on every coordinate.
ModelPtr linear_model(const LinearStratification& s, std::vector<Rational> scale = {});

/// Diagonal metric on fibres, optionally replaced by other diagonals on boxes
/// of base points (first matching patch wins).
class Metric {
public:
    explicit Metric(std::vector<Rational> base);

    Metric with_patch(Region where, std::vector<Rational> scale) const;
    const std::vector<Rational>& at(const Point& x, Field field) const;
    const std::vector<Rational>& base() const { return base_; }
    const std::vector<std::pair<Region, std::vector<Rational>>>& patches() const { return patches_; }
    Rational smallest() const;

private:
    std::vector<Rational> base_;
    std::vector<std::pair<Region, std::vector<Rational>>> patches_;
};

struct GluingDatum;
using DatumPtr = std::shared_ptr<const GluingDatum>;

/// box ∩ R(image_of) when image_of is set, otherwise just the box region.
struct DomainTerm {
    Region box;
    DatumPtr image_of;
};

class Domain {
public:
    Domain() = default;
    explicit Domain(std::vector<DomainTerm> terms) : terms_(std::move(terms)) {}

    static Domain region(Region r) { return Domain({DomainTerm{std::move(r), nullptr}}); }
    static Domain image(DatumPtr source);

    const std::vector<DomainTerm>& terms() const { return terms_; }
    bool contains(const Point& y, Field field) const;
    bool box_only() const;
    /// Union of the boxes; only meaningful when box_only().
    Region boxes(int axes) const;
    Domain intersect(const Region& r) const;
    Domain unite(const Domain& other) const;

private:
    std::vector<DomainTerm> terms_;
};

enum class MetricSource { Explicit, Induced, Sewn };

/// (U, metric, eps, phi, {Phi_b}) over stratum `stratum`. The ball over a base
/// point x with support I is sum_{k not in I} s_k |v_k|^2 < eps^2 rho(x)^2 with
/// rho(x) = min_{i in I} |x_i| (1 when I is empty).
struct GluingDatum {
    ModelPtr model;
    int stratum = 0;
    Domain domain;
    Rational eps;
    Word phi;
    std::map<int, Word> bundle;
    MetricSource source = MetricSource::Explicit;
    std::optional<Metric> metric;
    std::vector<DatumPtr> parents;

    std::vector<Rational> metric_at(const Point& base) const;
    bool in_domain(const Point& base) const;
    bool in_ball(const Point& base, const Point& fibre) const;
    /// Base support I with y|_I in the domain and the rest in the ball.
    std::optional<Subset> base_of(const Point& y) const;
    bool in_image(const Point& y) const { return base_of(y).has_value(); }
};

/// Global canonical datum of a stratum: whole domain, model metric, inclusion chart.
DatumPtr canonical_datum(const ModelPtr& model, int alpha, const Rational& eps);
DatumPtr explicit_datum(const ModelPtr& model, int alpha, Region u, Metric metric, const Rational& eps);

/// Throws RegionError if U' is not inside U, DomainError if eps' > eps.
DatumPtr restrict(const DatumPtr& d, const Region& u, const Rational& eps);
DatumPtr shrink(const DatumPtr& d, const Rational& eps);

/// Datum over beta induced through phi^a_b on a domain inside R(a,b).
/// Throws OrderError unless beta is strictly above the stratum of d,
/// RegionError if a sample of U lies outside the image, DomainError if eps
/// lets psi leave the ball of d.
DatumPtr induce(const DatumPtr& d, int beta, const Domain& u, const Rational& eps);

struct Comparison {
    bool same = true;
    std::size_t samples = 0;
    std::optional<Point> witness;
    std::string reason;
};

/// Equality of metric, phi and bundle maps on the overlap of the domains:
/// normal-form equality of words plus exact evaluation on samples.
Comparison compare(const DatumPtr& d1, const DatumPtr& d2);
inline bool coincide(const DatumPtr& d1, const DatumPtr& d2) { return compare(d1, d2).same; }

/// Throws SewingError unless the data coincide.
DatumPtr sew(const DatumPtr& d1, const DatumPtr& d2);

/// Every proper subset of every member of J_alpha lies in a class below alpha.
bool frontier_condition(const LinearStratification& s, int alpha);

/// Box domains are decided on the cell decomposition. Image domains must be
/// unions of images of global data; the boundary points of M_alpha are then
/// covered iff the class of every proper subset of a member supplies a term.
bool is_boundary_type(const Domain& u, const LinearModel& model, int alpha);

/// Global datum agreeing with d on U minus the closures of its metric patches.
/// Throws RegionError if the domain is not of boundary type, SewingError if
/// the agreement check fails.
DatumPtr inward_extend(const DatumPtr& d);

/// For every common upper stratum, the induced data coincide on the overlap.
Comparison compatible(const DatumPtr& d1, const DatumPtr& d2);
inline bool check_compatible(const DatumPtr& d1, const DatumPtr& d2) { return compatible(d1, d2).same; }

struct GridSpec {
    int real_per_axis = 21;
    int complex_per_axis = 5;
};

/// Grid density from STRATGLUE_GRID / STRATGLUE_COMPLEX_GRID when set.
GridSpec grid_from_environment(GridSpec fallback = {});

/// Points of [-1,1]^m on the grid (real and imaginary parts for complex fields).
std::vector<Point> sample_grid(const LinearModel& model, const GridSpec& spec);

/// Deterministic samples of base points of `alpha` lying in `u`.
std::vector<Point> domain_samples(const LinearModel& model, int alpha, const Domain& u, std::size_t want,
                                  std::uint64_t seed);

struct PairWitness {
    Point point;
    int alpha;
    int beta;
};

struct StratumReport {
    int index = 0;
    int layer = 0;
    Rational eps;
    bool frontier = true;
    bool boundary_type = true;
    bool extension_agrees = true;
    std::size_t extension_samples = 0;
    std::vector<int> sources;
};

struct AtlasReport {
    std::size_t passes = 0;
    std::vector<std::vector<int>> layers;
    std::vector<StratumReport> strata;
    std::vector<DatumPtr> atlas;
    std::vector<std::vector<bool>> compatible;
    std::vector<PairWitness> incompatible;
    bool separation = true;
    std::optional<PairWitness> separation_witness;
    bool cover = true;
    std::optional<Point> uncovered;
    std::size_t grid_points = 0;

    bool all_compatible() const;
    bool ok() const { return all_compatible() && separation && cover; }
};

struct AtlasOptions {
    GridSpec grid;
    Rational eps0{1, 2};
    Rational floor{Rational(1) / Rational(mpz_class(1) << 32)};
};

/// Layered construction: minimal strata get canonical data with eps shrunk
/// until their images are disjoint; each later stratum sews the data induced
/// from below, extends inward, takes eps <= half the smallest first-layer eps
/// and halves it until separation holds on the grid.
AtlasReport build_atlas(const ModelPtr& model, const AtlasOptions& options = {});

/// First incomparable pair meeting outside every common lower image, if any.
std::optional<PairWitness> find_separation_failure(const LinearModel& model, const std::vector<DatumPtr>& atlas,
                                                   const std::vector<Point>& grid);

/// Every grid point lies in some image; returns the first uncovered point.
std::optional<Point> find_uncovered(const std::vector<DatumPtr>& atlas, const std::vector<Point>& grid);
inline bool verify_cover(const std::vector<DatumPtr>& atlas, const std::vector<Point>& grid)
{
    return !find_uncovered(atlas, grid).has_value();
}

} // namespace stratglue::glue
