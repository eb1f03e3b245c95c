#include "stratglue/linear_strata.hpp"

#include "stratglue/error.hpp"

#include <algorithm>
#include <bit>

namespace stratglue::strata {

int cardinality(Subset s) { return std::popcount(s); }

std::string subset_text(Subset s)
{
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < 32; ++i) {
        if (!(s & (Subset{1} << i))) continue;
        if (!first) out += ',';
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

LinearStratification::LinearStratification(int m, Field field, std::vector<std::vector<Subset>> classes)
    : m_(m), field_(field), classes_(std::move(classes))
{
    if (m < 0 || m > 16) throw PartitionError("dimension out of supported range");
    const Subset total = Subset{1} << m;
    owner_.assign(total, -1);
    for (std::size_t a = 0; a < classes_.size(); ++a) {
        if (classes_[a].empty()) throw PartitionError("class " + std::to_string(a) + " is empty");
        std::sort(classes_[a].begin(), classes_[a].end());
        for (Subset s : classes_[a]) {
            if (s >= total) throw PartitionError("subset " + subset_text(s) + " is not in the power set");
            if (owner_[s] >= 0) throw PartitionError("subset " + subset_text(s) + " occurs twice");
            owner_[s] = static_cast<int>(a);
        }
    }
    for (Subset s = 0; s < total; ++s) {
        if (owner_[s] < 0) throw PartitionError("subset " + subset_text(s) + " is missing");
    }
    const std::size_t n = classes_.size();
    order_.assign(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            order_[a][b] = std::all_of(classes_[a].begin(), classes_[a].end(), [&](Subset i) {
                return std::any_of(classes_[b].begin(), classes_[b].end(), [&](Subset j) { return contains(j, i); });
            });
        }
    }
}

std::vector<int> LinearStratification::above(int alpha) const
{
    std::vector<int> out;
    for (int b = 0; b < static_cast<int>(size()); ++b) {
        if (leq(alpha, b)) out.push_back(b);
    }
    return out;
}

std::vector<std::vector<int>> LinearStratification::layers() const
{
    const int n = static_cast<int>(size());
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    std::vector<std::vector<int>> out;
    int remaining = n;
    while (remaining > 0) {
        std::vector<int> layer;
        for (int a = 0; a < n; ++a) {
            if (placed[a]) continue;
            bool minimal = true;
            for (int b = 0; b < n && minimal; ++b) {
                if (!placed[b] && less(b, a)) minimal = false;
            }
            if (minimal) layer.push_back(a);
        }
        if (layer.empty()) throw OrderError("induced relation has a cycle");
        for (int a : layer) placed[a] = true;
        remaining -= static_cast<int>(layer.size());
        out.push_back(std::move(layer));
    }
    return out;
}

ValidationReport validate(int m, const std::vector<std::vector<Subset>>& classes,
                          const std::optional<std::vector<std::pair<int, int>>>& declared_order)
{
    ValidationReport report;
    auto add = [&](std::string kind, std::string detail) {
        report.violations.push_back({std::move(kind), std::move(detail)});
    };
    if (m < 0 || m > 16) {
        add("dimension", "m must lie in 0..16");
        return report;
    }
    const Subset total = Subset{1} << m;
    std::vector<int> seen(total, 0);
    for (std::size_t a = 0; a < classes.size(); ++a) {
        if (classes[a].empty()) {
            add("partition", "class " + std::to_string(a) + " is empty");
            continue;
        }
        for (Subset s : classes[a]) {
            if (s >= total) {
                add("partition", "subset " + subset_text(s) + " is outside the power set");
                continue;
            }
            if (++seen[s] == 2) add("partition", "subset " + subset_text(s) + " occurs more than once");
        }
        const int k = cardinality(classes[a].front());
        for (Subset s : classes[a]) {
            if (cardinality(s) != k) {
                add("cardinality", "class " + std::to_string(a) + " mixes " + subset_text(classes[a].front()) +
                                       " and " + subset_text(s));
                break;
            }
        }
    }
    for (Subset s = 0; s < total; ++s) {
        if (seen[s] == 0) add("partition", "subset " + subset_text(s) + " is missing");
    }
    if (declared_order && report.valid()) {
        const LinearStratification strat(m, Field::Real, classes);
        const int n = static_cast<int>(classes.size());
        std::vector<std::vector<bool>> declared(static_cast<std::size_t>(n), std::vector<bool>(n, false));
        for (auto [lo, hi] : *declared_order) {
            if (lo < 0 || hi < 0 || lo >= n || hi >= n) {
                add("order", "declared pair refers to an unknown class");
                continue;
            }
            declared[lo][hi] = true;
        }
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                if (declared[a][b] != strat.less(a, b)) {
                    add("order", "declared relation between classes " + std::to_string(a) + " and " +
                                     std::to_string(b) + (declared[a][b] ? " does not hold" : " is missing"));
                }
            }
        }
    }
    return report;
}

LinearStratification make_stratification(int m, Field field, std::vector<std::vector<Subset>> classes)
{
    const auto report = validate(m, classes);
    if (!report.valid()) {
        const auto& v = report.violations.front();
        if (v.kind == "order") throw OrderError(v.detail);
        throw PartitionError(v.kind + ": " + v.detail);
    }
    return LinearStratification(m, field, std::move(classes));
}

LinearStratification cardinality_stratification(int m, Field field)
{
    std::vector<std::vector<Subset>> classes(static_cast<std::size_t>(m + 1));
    for (Subset s = 0; s < (Subset{1} << m); ++s) classes[cardinality(s)].push_back(s);
    return make_stratification(m, field, std::move(classes));
}

Subset support_of(const Point& x)
{
    Subset s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i].is_zero()) s |= Subset{1} << i;
    }
    return s;
}

StratumHit stratum_of(const LinearStratification& s, const Point& x)
{
    if (static_cast<int>(x.size()) != s.dim()) {
        throw DomainError("point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(s.dim()));
    }
    if (s.field() == Field::Real) {
        for (const auto& c : x) {
            if (!c.is_real()) throw DomainError("complex coordinate in a real stratification");
        }
    }
    const Subset support = support_of(x);
    return {s.class_of(support), support};
}

std::vector<NormalPiece> normal_stratum(const LinearStratification& s, int alpha, int beta)
{
    if (!s.leq(alpha, beta)) {
        throw OrderError("class " + std::to_string(beta) + " is not above class " + std::to_string(alpha));
    }
    std::vector<NormalPiece> out;
    for (Subset i : s.members(alpha)) {
        NormalPiece piece{i, {}};
        for (Subset j : s.members(beta)) {
            if (contains(j, i)) piece.fibre.push_back(j);
        }
        out.push_back(std::move(piece));
    }
    return out;
}

std::vector<DoubleNormalPiece> double_normal(const LinearStratification& s, int alpha, int beta)
{
    if (!s.less(alpha, beta)) {
        throw OrderError("class " + std::to_string(alpha) + " is not strictly below class " + std::to_string(beta));
    }
    const Subset all = (Subset{1} << s.dim()) - 1;
    std::vector<DoubleNormalPiece> out;
    for (const auto& piece : normal_stratum(s, alpha, beta)) {
        for (Subset j : piece.fibre) out.push_back({piece.base, j, all & ~j});
    }
    return out;
}

TaggedPoint tau_embed(const LinearStratification& s, int alpha, int beta, Subset base, Subset declared, const Point& x)
{
    const Subset total = Subset{1} << s.dim();
    if (base >= total || declared >= total) throw SupportError("support outside the power set");
    if (s.class_of(base) != alpha) throw SupportError(subset_text(base) + " is not a member of the source class");
    if (s.class_of(declared) != beta) throw SupportError(subset_text(declared) + " is not a member of the target class");
    if (!contains(declared, base)) throw SupportError(subset_text(declared) + " does not contain " + subset_text(base));
    const StratumHit hit = stratum_of(s, x);
    if (hit.support != declared) {
        throw SupportError("point has support " + subset_text(hit.support) + ", not " + subset_text(declared));
    }
    return {x, hit.alpha, hit.support};
}

int matrix_rank(Matrix a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c].is_zero()) continue;
            const Complex f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

bool preserves_stratification(const Matrix& a, const LinearStratification& s)
{
    const int m = s.dim();
    if (static_cast<int>(a.size()) != m) throw DomainError("matrix size does not match the dimension");
    for (const auto& row : a) {
        if (static_cast<int>(row.size()) != m) throw DomainError("matrix is not square");
    }
    if (matrix_rank(a) != m) throw SingularMatrixError("matrix is singular");

    // Column j is the image of the j-th coordinate vector; V^I goes to the
    // span of columns in I, a coordinate subspace iff their supports cover
    // exactly |I| coordinates.
    std::vector<Subset> column_support(static_cast<std::size_t>(m), 0);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            if (!a[r][c].is_zero()) column_support[c] |= Subset{1} << r;
        }
    }
    for (Subset i = 0; i < (Subset{1} << m); ++i) {
        Subset image = 0;
        for (int c = 0; c < m; ++c) {
            if (i & (Subset{1} << c)) image |= column_support[c];
        }
        if (cardinality(image) != cardinality(i) || s.class_of(image) != s.class_of(i)) return false;
    }
    return true;
}

bool preserves_metric_and_strata(const Matrix& a, const LinearStratification& s, const std::vector<Rational>& scale)
{
    if (!preserves_stratification(a, s)) return false;
    const int m = s.dim();
    if (static_cast<int>(scale.size()) != m) throw DomainError("metric has the wrong number of entries");
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Complex entry;
            for (int k = 0; k < m; ++k) entry += a[k][i].conj() * Complex(scale[k]) * a[k][j];
            if (!(entry == Complex(i == j ? scale[i] : Rational(0)))) return false;
        }
    }
    return true;
}

} // namespace stratglue::strata
