#pragma once

// Frequency sequences with multiplicities, separation measures and the
// union-of-disks clustering into groups.

#include <limits>
#include <string>
#include <vector>

#include "expbasis/numkit.hpp"
#include "json.hpp"

namespace expbasis {

struct SpectrumPoint {
  cplx value;
  int multiplicity = 1;
};

/// Points sorted by (Re, Im), all inside the horizontal strip alpha <= Im <= beta.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(std::vector<SpectrumPoint> points, double alpha, double beta);

  /// Strip taken as the tightest one containing the points.
  static Spectrum fitted(std::vector<SpectrumPoint> points);
  static Spectrum from_values(const std::vector<cplx>& values);

  /// {"alpha": a, "beta": b, "points": [{"re": x, "im": y, "mult": m}, ...]}
  static Spectrum from_json(const nlohmann::json& j);
  static Spectrum load(const std::string& path);
  nlohmann::json to_json() const;

  const std::vector<SpectrumPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  /// Number of points counted with multiplicity.
  int count() const;
  /// Point values repeated by multiplicity, in sorted order.
  std::vector<cplx> expanded() const;

 private:
  std::vector<SpectrumPoint> points_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

/// inf over distinct index pairs of |lambda_k - lambda_n|; 0 with any multiple point.
/// Throws InputError with fewer than two points counted with multiplicity.
double separation(const Spectrum& spectrum);

struct UnionCount {
  int n = 0;          // smallest N with min_n (Re l_{n+N} - Re l_n) > gap_floor
  double gap = 0.0;   // that minimum
  bool pathological = false;  // no N below the point count qualifies
};

/// Real-sequence union count over a finite sample (points expanded by
/// multiplicity). Gaps at or below `gap_floor` count as collapsed.
UnionCount min_union_count(const Spectrum& spectrum, double gap_floor = 0.0);

/// Cluster radius bound delta / (2N) below which groups have at most N points.
double r0(double delta, int n);

struct Group {
  std::vector<std::size_t> members;  // indices into Spectrum::points(), ascending
  double radius = 0.0;
  double delta = std::numeric_limits<double>::infinity();

  /// GDD node order: members expanded by multiplicity.
  std::vector<cplx> nodes(const Spectrum& spectrum) const;
  int count(const Spectrum& spectrum) const;
};

/// Connected components of the graph joining points at distance < 2r.
/// Groups are ordered by their leftmost member.
std::vector<Group> cluster(const Spectrum& spectrum, double r);

/// Minimum pairwise distance inside the group (0 with a multiple point,
/// +inf for a simple singleton).
double group_delta(const Group& group, const Spectrum& spectrum);

}  // namespace expbasis
