#pragma once

#include "stratglue/linear_strata.hpp"

#include <optional>
#include <vector>

namespace stratglue::glue {

using strata::Field;
using strata::LinearStratification;
using strata::Point;
using strata::Subset;

/// Open interval; a missing end is infinite.
struct Interval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    bool contains(const Rational& x) const { return (!lo || *lo < x) && (!hi || x < *hi); }
    bool empty() const { return lo && hi && !(*lo < *hi); }
};

/// Product of open intervals over the flattened real coordinates
/// (x_1..x_m for real fields, re_1, im_1, re_2, ... for complex ones).
struct Box {
    std::vector<Interval> axes;

    bool contains(const std::vector<Rational>& flat) const;
    bool empty() const;
};

std::vector<Rational> flatten(const Point& x, Field field);
Point unflatten(const std::vector<Rational>& flat, Field field);
inline int axis_count(int m, Field field) { return field == Field::Complex ? 2 * m : m; }

/// Finite union of open boxes. Intersected with a stratum wherever used.
class Region {
public:
    Region() = default;
    Region(int axes, std::vector<Box> boxes);

    static Region whole(int axes);
    /// Box with every axis in (lo, hi).
    static Region cube(int axes, const Rational& lo, const Rational& hi);

    int axes() const { return axes_; }
    const std::vector<Box>& boxes() const { return boxes_; }

    bool contains_flat(const std::vector<Rational>& flat) const;
    bool contains(const Point& x, Field field) const { return contains_flat(flatten(x, field)); }

    Region intersect(const Region& other) const;
    Region unite(const Region& other) const;
    /// Removes the closure of `other`.
    Region subtract_closure(const Region& other) const;

    bool is_whole() const;

private:
    int axes_ = 0;
    std::vector<Box> boxes_;
};

/// One representative per cell of the decomposition cut out by every box end
/// of `regions` and by 0, restricted to cells inside the stratum alpha.
std::vector<Point> cell_representatives(const std::vector<const Region*>& regions, const LinearStratification& s,
                                        int alpha);

/// Exact test of inner ∩ M_alpha ⊆ outer.
bool region_subset(const Region& inner, const Region& outer, const LinearStratification& s, int alpha);

/// U ⊆ M_alpha is of boundary type iff M_alpha \ U has no limit point in the
/// boundary of M_alpha. Decided exactly on the cell decomposition.
bool is_boundary_type(const Region& u, const LinearStratification& s, int alpha);

} // namespace stratglue::glue
