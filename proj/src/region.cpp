#include "stratglue/region.hpp"

#include "stratglue/error.hpp"

#include <algorithm>
#include <functional>

namespace stratglue::glue {

bool Box::contains(const std::vector<Rational>& flat) const
{
    for (std::size_t k = 0; k < axes.size(); ++k) {
        if (!axes[k].contains(flat[k])) return false;
    }
    return true;
}

bool Box::empty() const
{
    return std::any_of(axes.begin(), axes.end(), [](const Interval& i) { return i.empty(); });
}

std::vector<Rational> flatten(const Point& x, Field field)
{
    std::vector<Rational> out;
    out.reserve(field == Field::Complex ? 2 * x.size() : x.size());
    for (const auto& c : x) {
        out.push_back(c.re);
        if (field == Field::Complex) out.push_back(c.im);
    }
    return out;
}

Point unflatten(const std::vector<Rational>& flat, Field field)
{
    Point out;
    if (field == Field::Complex) {
        for (std::size_t k = 0; k + 1 < flat.size(); k += 2) out.emplace_back(flat[k], flat[k + 1]);
    } else {
        for (const auto& r : flat) out.emplace_back(r);
    }
    return out;
}

Region::Region(int axes, std::vector<Box> boxes) : axes_(axes)
{
    for (auto& b : boxes) {
        if (static_cast<int>(b.axes.size()) != axes) throw RegionError("box has the wrong number of axes");
        if (!b.empty()) boxes_.push_back(std::move(b));
    }
}

Region Region::whole(int axes) { return Region(axes, {Box{std::vector<Interval>(static_cast<std::size_t>(axes))}}); }

Region Region::cube(int axes, const Rational& lo, const Rational& hi)
{
    return Region(axes, {Box{std::vector<Interval>(static_cast<std::size_t>(axes), Interval{lo, hi})}});
}

bool Region::contains_flat(const std::vector<Rational>& flat) const
{
    return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return b.contains(flat); });
}

namespace {

std::optional<Rational> max_end(const std::optional<Rational>& a, const std::optional<Rational>& b)
{
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
}

std::optional<Rational> min_end(const std::optional<Rational>& a, const std::optional<Rational>& b)
{
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

} // namespace

Region Region::intersect(const Region& other) const
{
    if (other.axes_ != axes_) throw RegionError("regions live in different spaces");
    std::vector<Box> out;
    for (const auto& a : boxes_) {
        for (const auto& b : other.boxes_) {
            Box c;
            for (int k = 0; k < axes_; ++k) {
                c.axes.push_back({max_end(a.axes[k].lo, b.axes[k].lo), min_end(a.axes[k].hi, b.axes[k].hi)});
            }
            out.push_back(std::move(c));
        }
    }
    return Region(axes_, std::move(out));
}

Region Region::unite(const Region& other) const
{
    if (other.axes_ != axes_) throw RegionError("regions live in different spaces");
    std::vector<Box> out = boxes_;
    out.insert(out.end(), other.boxes_.begin(), other.boxes_.end());
    return Region(axes_, std::move(out));
}

Region Region::subtract_closure(const Region& other) const
{
    if (other.axes_ != axes_) throw RegionError("regions live in different spaces");
    std::vector<Box> current = boxes_;
    for (const auto& cut : other.boxes_) {
        std::vector<Box> next;
        for (const auto& a : current) {
            // a minus the closed box: points of a below or above cut on some axis.
            for (int k = 0; k < axes_; ++k) {
                if (cut.axes[k].lo) {
                    Box below = a;
                    below.axes[k].hi = min_end(a.axes[k].hi, cut.axes[k].lo);
                    if (!below.empty()) next.push_back(std::move(below));
                }
                if (cut.axes[k].hi) {
                    Box above = a;
                    above.axes[k].lo = max_end(a.axes[k].lo, cut.axes[k].hi);
                    if (!above.empty()) next.push_back(std::move(above));
                }
            }
        }
        current = std::move(next);
    }
    return Region(axes_, std::move(current));
}

bool Region::is_whole() const
{
    return std::any_of(boxes_.begin(), boxes_.end(), [](const Box& b) {
        return std::all_of(b.axes.begin(), b.axes.end(), [](const Interval& i) { return !i.lo && !i.hi; });
    });
}

namespace {

struct AxisCell {
    Rational rep;
    bool is_zero_point;
    bool closure_has_zero;
};

std::vector<AxisCell> axis_cells(std::vector<Rational> cuts)
{
    cuts.push_back(0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<AxisCell> out;
    out.push_back({cuts.front() - 1, false, false});
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const bool zero = cuts[i] == 0;
        out.push_back({cuts[i], zero, zero});
        if (i + 1 < cuts.size()) {
            out.push_back({(cuts[i] + cuts[i + 1]) / 2, false, zero || cuts[i + 1] == 0});
        } else {
            out.push_back({cuts[i] + 1, false, zero});
        }
    }
    // The unbounded cell below the first cut touches zero only if that cut is 0.
    out.front().closure_has_zero = cuts.front() == 0;
    return out;
}

/// Calls visit(flat representative, support I, coordinates whose closure reaches 0)
/// for every cell contained in M_alpha.
void for_each_cell(const std::vector<const Region*>& regions, const LinearStratification& s, int alpha,
                   const std::function<void(const std::vector<Rational>&, Subset, Subset)>& visit)
{
    const int m = s.dim();
    const bool complex = s.field() == Field::Complex;
    const int axes = axis_count(m, s.field());
    std::vector<std::vector<AxisCell>> cells(static_cast<std::size_t>(axes));
    for (int k = 0; k < axes; ++k) {
        std::vector<Rational> cuts;
        for (const Region* r : regions) {
            if (r->axes() != axes) throw RegionError("region does not match the model dimension");
            for (const auto& b : r->boxes()) {
                if (b.axes[k].lo) cuts.push_back(*b.axes[k].lo);
                if (b.axes[k].hi) cuts.push_back(*b.axes[k].hi);
            }
        }
        cells[k] = axis_cells(std::move(cuts));
    }
    for (Subset support : s.members(alpha)) {
        std::vector<Rational> flat(static_cast<std::size_t>(axes));
        std::function<void(int, Subset)> rec = [&](int coord, Subset reach) {
            if (coord == m) {
                visit(flat, support, reach);
                return;
            }
            const bool active = support & (Subset{1} << coord);
            if (!complex) {
                for (const auto& c : cells[coord]) {
                    if (active == c.is_zero_point) continue;
                    flat[coord] = c.rep;
                    rec(coord + 1, reach | (active && c.closure_has_zero ? Subset{1} << coord : 0));
                }
                return;
            }
            for (const auto& re : cells[2 * coord]) {
                for (const auto& im : cells[2 * coord + 1]) {
                    const bool zero = re.is_zero_point && im.is_zero_point;
                    if (active == zero) continue;
                    flat[2 * coord] = re.rep;
                    flat[2 * coord + 1] = im.rep;
                    const bool touches = active && re.closure_has_zero && im.closure_has_zero;
                    rec(coord + 1, reach | (touches ? Subset{1} << coord : 0));
                }
            }
        };
        rec(0, 0);
    }
}

} // namespace

std::vector<Point> cell_representatives(const std::vector<const Region*>& regions, const LinearStratification& s,
                                        int alpha)
{
    std::vector<Point> out;
    for_each_cell(regions, s, alpha,
                  [&](const std::vector<Rational>& flat, Subset, Subset) { out.push_back(unflatten(flat, s.field())); });
    return out;
}

bool region_subset(const Region& inner, const Region& outer, const LinearStratification& s, int alpha)
{
    bool ok = true;
    for_each_cell({&inner, &outer}, s, alpha, [&](const std::vector<Rational>& flat, Subset, Subset) {
        if (ok && inner.contains_flat(flat) && !outer.contains_flat(flat)) ok = false;
    });
    return ok;
}

bool is_boundary_type(const Region& u, const LinearStratification& s, int alpha)
{
    bool ok = true;
    for_each_cell({&u}, s, alpha, [&](const std::vector<Rational>& flat, Subset, Subset reach) {
        if (ok && reach != 0 && !u.contains_flat(flat)) ok = false;
    });
    return ok;
}

} // namespace stratglue::glue
