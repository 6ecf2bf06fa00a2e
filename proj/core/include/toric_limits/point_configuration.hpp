#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toric_limits/growth.hpp"
#include "toric_limits/rational.hpp"

namespace toric_limits {

// How hull/subdivision combinatorics treat the input coordinates: `rational`
// runs fully exact; `floating` runs the same exact core on the doubles' exact
// values and then applies a relative incidence tolerance (eps_hull) when
// collecting facet members.
enum class ScalarMode { rational, floating };

inline constexpr double kEpsHull = 1e-9;

// A finite labeled point configuration in R^dim. Coordinates are stored
// exactly; labels are unique and keep their given order, which fixes every
// deterministic tie-break downstream.
struct PointConfiguration {
  int dim = 0;
  ScalarMode mode = ScalarMode::rational;
  std::vector<std::string> labels;
  std::vector<QVec> points;  // one row per label, each of size dim

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const;  // -1 when absent
  // rank of the affine span plus one is cached at construction
  int affine_rank = 0;  // rank of rows (1, a); spans() iff == dim + 1
  bool spans() const { return affine_rank == dim + 1; }
};

// Validates and builds a configuration: dim >= 1, at least one point, labels
// unique, points pairwise distinct. Throws std::invalid_argument otherwise.
PointConfiguration new_configuration(int dim, std::vector<std::string> labels,
                                     std::vector<QVec> points,
                                     ScalarMode mode = ScalarMode::rational);

// Restriction to a subset of labels (indices into the parent, kept in order).
PointConfiguration subconfiguration(const PointConfiguration& A,
                                    const std::vector<int>& members);

// A function A -> R given by its values in label order.
struct FunctionOnA {
  QVec values;
};

// Strictly positive weights stored as logs (entries like e^{-200} must
// survive). value(i) may underflow to 0 in double; the log is the state.
struct WeightVector {
  std::vector<double> log_values;

  int size() const { return static_cast<int>(log_values.size()); }
  double value(int i) const;
  static WeightVector ones(int n);
  static WeightVector from_values(const std::vector<double>& w);  // validates > 0
  static WeightVector from_logs(std::vector<double> logs);        // validates finite
};

// Basis of the functions on A that extend to affine functions of the ambient
// coordinates: the constant function and the coordinate functions, thinned to
// an independent set (size == affine_rank).
std::vector<QVec> affine_function_space(const PointConfiguration& A);

// Gauge for reduction modulo the affine function space: orthogonal complement,
// or "zero at these labels" (labels must name affinely independent points,
// exactly affine_rank of them).
struct OrthogonalGauge {};
struct LabelGauge {
  std::vector<std::string> labels;
};
using Gauge = std::variant<OrthogonalGauge, LabelGauge>;

QVec reduce_mod_aff(const PointConfiguration& A, const QVec& values,
                    const Gauge& gauge = OrthogonalGauge{});
FunctionOnA reduce_mod_aff(const PointConfiguration& A, const FunctionOnA& f,
                           const Gauge& gauge = OrthogonalGauge{});
// Coefficient-wise reduction of a vector of growth polynomials.
std::vector<GrowthPoly> reduce_mod_aff(const PointConfiguration& A,
                                       const std::vector<GrowthPoly>& values,
                                       const Gauge& gauge = OrthogonalGauge{});
std::vector<double> reduce_mod_aff(const PointConfiguration& A,
                                   const std::vector<double>& values,
                                   const Gauge& gauge = OrthogonalGauge{});

// True iff the value vector is the restriction of an affine function.
bool is_affine_on(const PointConfiguration& A, const QVec& values);

// Tautological/moment map: sum_a z_a * a for a point z of the simplex on A.
std::vector<double> taut(const PointConfiguration& A, const std::vector<double>& z);

// A face of conv(A) together with a supporting halfspace certificate:
// <normal, x> <= offset holds on all of A with equality exactly on members.
// For the full face the certificate is the zero form. When A does not span,
// normals are meaningful restricted to the affine span of A.
struct ConfigFace {
  std::vector<int> members;  // sorted config indices
  QVec normal;
  Rational offset;
  int dim = 0;  // affine dimension of the face
};

// All nonempty faces of conv(A) (as label subsets A ∩ face), including the
// full face, sorted by (dim, members). Works within the affine span when A
// does not span R^dim.
std::vector<ConfigFace> faces_of_configuration(const PointConfiguration& A);

// Smallest face whose span-saturated member set contains p (p given in
// ambient coordinates, assumed in conv(A) up to tol). Returns indices of the
// face's members. tol is a relative incidence tolerance on the certificates.
std::vector<int> face_containing(const PointConfiguration& A,
                                 const std::vector<ConfigFace>& faces,
                                 const std::vector<double>& p, double tol);

// Barycentric-style helper: weights u over `points` (rows) with sum 1 and
// sum u_i points[i] = x, exact; free coordinates resolved deterministically.
// Returns nullopt when x is outside the affine span of the points.
std::optional<QVec> affine_combination_weights(const QMat& points, const QVec& x);

// Lex-first (in index order) affinely independent subset of the given members
// spanning their affine hull.
std::vector<int> lex_first_affine_basis(const PointConfiguration& A,
                                        const std::vector<int>& members);

}  // namespace toric_limits
