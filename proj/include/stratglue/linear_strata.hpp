#pragma once

#include "stratglue/number.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stratglue::strata {

/// Subset of {1..m} as a bitmask: bit i-1 stands for coordinate i.
using Subset = std::uint32_t;

enum class Field { Real, Complex };

inline bool contains(Subset big, Subset small) { return (big & small) == small; }
int cardinality(Subset s);
/// "{1,3}" style rendering.
std::string subset_text(Subset s);

/// Partition of the power set of {1..m} into index classes J_alpha, with the
/// order alpha <= beta iff every member of J_alpha lies in some member of J_beta.
/// Construction only requires a partition; use validate() for the full axioms.
class LinearStratification {
public:
    LinearStratification(int m, Field field, std::vector<std::vector<Subset>> classes);

    int dim() const { return m_; }
    Field field() const { return field_; }
    std::size_t size() const { return classes_.size(); }
    const std::vector<std::vector<Subset>>& classes() const { return classes_; }
    const std::vector<Subset>& members(int alpha) const { return classes_.at(static_cast<std::size_t>(alpha)); }

    int class_of(Subset s) const { return owner_.at(s); }
    /// Common cardinality of the members (that of the first member if mixed).
    int rank(int alpha) const { return cardinality(members(alpha).front()); }

    bool leq(int alpha, int beta) const { return order_[alpha][beta]; }
    bool less(int alpha, int beta) const { return alpha != beta && leq(alpha, beta); }

    /// beta with alpha <= beta, in index order.
    std::vector<int> above(int alpha) const;
    /// S_1 = minimal classes, then minimal among the rest, and so on.
    std::vector<std::vector<int>> layers() const;

private:
    int m_;
    Field field_;
    std::vector<std::vector<Subset>> classes_;
    std::vector<int> owner_;
    std::vector<std::vector<bool>> order_;
};

struct Violation {
    std::string kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

/// Checks partition, equal cardinality within classes and, if given, that the
/// declared strict order pairs (lower, upper) match the induced order.
ValidationReport validate(int m, const std::vector<std::vector<Subset>>& classes,
                          const std::optional<std::vector<std::pair<int, int>>>& declared_order = std::nullopt);

/// Validates and builds; throws PartitionError or OrderError with the first violation.
LinearStratification make_stratification(int m, Field field, std::vector<std::vector<Subset>> classes);

/// Classes {subsets of size k} for k = 0..m.
LinearStratification cardinality_stratification(int m, Field field = Field::Real);

using Point = std::vector<Complex>;

struct StratumHit {
    int alpha;
    Subset support;
};

Subset support_of(const Point& x);
StratumHit stratum_of(const LinearStratification& s, const Point& x);

/// One base support I of J_alpha together with the J in J_beta containing it.
struct NormalPiece {
    Subset base;
    std::vector<Subset> fibre;
};

/// (N(V_alpha))_beta as pieces, for alpha <= beta. Throws OrderError otherwise.
std::vector<NormalPiece> normal_stratum(const LinearStratification& s, int alpha, int beta);

/// Normal bundle of the piece V^{[J]} inside N(V^{[I]}): its fibre runs over the
/// coordinates outside J, and tau^nu sends it onto the piece (J, {J}) of N(V_beta).
struct DoubleNormalPiece {
    Subset base;
    Subset support;
    Subset fibre_coords;
};

/// Requires alpha strictly below beta.
std::vector<DoubleNormalPiece> double_normal(const LinearStratification& s, int alpha, int beta);

struct TaggedPoint {
    Point point;
    int alpha;
    Subset support;
};

/// Inclusion of the beta-piece (I, J) of N(V_alpha) into V. Throws SupportError
/// unless I is in J_alpha, J in J_beta, J contains I and the point has support J.
TaggedPoint tau_embed(const LinearStratification& s, int alpha, int beta, Subset base, Subset declared, const Point& x);

using Matrix = std::vector<std::vector<Complex>>;

int matrix_rank(Matrix a);

/// True iff the invertible matrix permutes coordinate subspaces class-wise.
/// Throws SingularMatrixError.
bool preserves_stratification(const Matrix& a, const LinearStratification& s);

/// Stratification-preserving and isometric for the diagonal metric `scale`.
bool preserves_metric_and_strata(const Matrix& a, const LinearStratification& s, const std::vector<Rational>& scale);

} // namespace stratglue::strata
