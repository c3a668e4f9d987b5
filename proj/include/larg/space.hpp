//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace larg {

/// Default tolerance for floors and fractional-part comparisons near ties.
inline constexpr double kDefaultGuard = 1e-9;

enum class SpaceKind { FiniteDim, C, Ca, C0 };

/// Which ambient space a point lives in: l_inf^d, c, c_a or c_0.
class SpaceTag {
 public:
  static SpaceTag finite_dim(std::size_t d);
  static SpaceTag c() { return SpaceTag(SpaceKind::C, 0, 0.0); }
  static SpaceTag ca(double a);
  static SpaceTag c0() { return SpaceTag(SpaceKind::C0, 0, 0.0); }

  SpaceKind kind() const noexcept { return kind_; }
  /// Dimension, meaningful for FiniteDim only.
  std::size_t dim() const noexcept { return dim_; }
  /// Forced limit of every point: a for Ca, 0 for C0.
  double a() const noexcept { return a_; }

  bool is_sequence_space() const noexcept {
    return kind_ != SpaceKind::FiniteDim;
  }
  /// Ca and C0 have a fixed limit; their i.d.f. check skips the limit.
  bool has_fixed_limit() const noexcept {
    return kind_ == SpaceKind::Ca || kind_ == SpaceKind::C0;
  }

  /// True when points tagged `*this` and `other` can be measured against
  /// each other: any two sequence-space tags, or FiniteDim of equal d.
  bool compatible(const SpaceTag &other) const noexcept;

  std::string to_string() const;

  friend bool operator==(const SpaceTag &, const SpaceTag &) = default;

 private:
  SpaceTag(SpaceKind kind, std::size_t dim, double a)
      : kind_(kind), dim_(dim), a_(a) {}

  SpaceKind kind_;
  std::size_t dim_;
  double a_;
};

struct Infinity {
  friend bool operator==(Infinity, Infinity) = default;
};
inline constexpr Infinity kInfinity{};

/// A coordinate position: 1-based finite index or the limit position.
using CoordIndex = std::variant<std::size_t, Infinity>;

std::string to_string(const CoordIndex &j);

/// Eventually-constant sequence: realized prefix x_1..x_N followed by the
/// limit forever. For FiniteDim the prefix is the whole point.
class SeqPoint {
 public:
  SeqPoint(std::vector<double> prefix, double limit, SpaceTag tag);

  /// Point of l_inf^d.
  static SeqPoint finite(std::vector<double> coords);

  const std::vector<double> &prefix() const noexcept { return prefix_; }
  double limit() const noexcept { return limit_; }
  const SpaceTag &tag() const noexcept { return tag_; }
  std::size_t realized() const noexcept { return prefix_.size(); }

  /// x_j for 1-based j; the limit past the prefix.
  double coord(std::size_t j) const;
  double coord(const CoordIndex &j) const;

  friend bool operator==(const SeqPoint &, const SeqPoint &) = default;

 private:
  std::vector<double> prefix_;
  double limit_;
  SpaceTag tag_;
};

double coord(const SeqPoint &x, const CoordIndex &j);

/// Exact sup-norm distance between eventually-constant points.
double sup_dist(const SeqPoint &x, const SeqPoint &y);

/// floor(sup_dist(x, y)); throws UnsafeFloor when the distance sits within
/// `guard` of an integer.
std::int64_t floor_dist(const SeqPoint &x, const SeqPoint &y,
                        double guard = kDefaultGuard);

/// {t} = t - floor(t), always in [0, 1).
double frac(double t);

/// floor(|s - t|) through the four-case floor/fraction table. Throws FracTie
/// when the fractional parts agree within `guard`.
std::int64_t floor_abs_diff(double s, double t, double guard = kDefaultGuard);

/// Distance from t to the nearest integer.
double integer_gap(double t);

struct IdfViolation {
  std::size_t first;
  std::optional<std::size_t> second;  // set for pairwise-difference hits
  CoordIndex coord;
  double value;
  double gap;  // distance of `value` to the nearest integer
};

struct IdfReport {
  bool ok = true;
  std::vector<IdfViolation> violations;
};

/// Integer-distance-free check over realized coordinates, plus the limit
/// position for tag C. Ca and C0 sets skip the limit since every limit
/// agrees.
IdfReport check_idf(std::span<const SeqPoint> points,
                    double guard = kDefaultGuard);

/// Same check restricted to candidate `x` against already-accepted points;
/// used by rejection sampling. Returns true when `x` can join.
bool idf_compatible(const SeqPoint &x, std::span<const SeqPoint> accepted,
                    double guard = kDefaultGuard);

/// Positions of `values` sorted by increasing fractional part. Throws FracTie
/// when two fractional parts agree within `guard`.
std::vector<std::size_t> frac_order(std::span<const double> values,
                                    double guard = kDefaultGuard);

/// Indices (0-based) sorted by increasing fractional part at coordinate j.
std::vector<std::size_t> frac_order_at(std::span<const SeqPoint> points,
                                       const CoordIndex &j,
                                       double guard = kDefaultGuard);

}  // namespace larg
