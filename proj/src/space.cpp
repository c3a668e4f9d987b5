//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include "larg/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "larg/error.hpp"

namespace larg {

SpaceTag SpaceTag::finite_dim(std::size_t d) {
  if (d == 0) {
    throw Error(ErrorCode::InvalidArgument, "finite dimension must be >= 1");
  }
  return SpaceTag(SpaceKind::FiniteDim, d, 0.0);
}

SpaceTag SpaceTag::ca(double a) {
  if (!std::isfinite(a)) {
    throw Error(ErrorCode::InvalidArgument, "c_a limit must be finite");
  }
  return SpaceTag(SpaceKind::Ca, 0, a);
}

bool SpaceTag::compatible(const SpaceTag &other) const noexcept {
  if (kind_ == SpaceKind::FiniteDim || other.kind_ == SpaceKind::FiniteDim) {
    return kind_ == other.kind_ && dim_ == other.dim_;
  }
  return true;
}

std::string SpaceTag::to_string() const {
  std::ostringstream os;
  switch (kind_) {
  case SpaceKind::FiniteDim: os << "linf^" << dim_; break;
  case SpaceKind::C: os << "c"; break;
  case SpaceKind::Ca: os << "c_" << a_; break;
  case SpaceKind::C0: os << "c0"; break;
  }
  return os.str();
}

std::string to_string(const CoordIndex &j) {
  if (std::holds_alternative<Infinity>(j)) return "inf";
  return std::to_string(std::get<std::size_t>(j));
}

SeqPoint::SeqPoint(std::vector<double> prefix, double limit, SpaceTag tag)
    : prefix_(std::move(prefix)), limit_(limit), tag_(tag) {
  for (double v : prefix_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
    }
  }
  if (!std::isfinite(limit_)) {
    throw Error(ErrorCode::InvalidArgument, "non-finite limit");
  }
  switch (tag_.kind()) {
  case SpaceKind::FiniteDim:
    if (prefix_.size() != tag_.dim()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "finite point needs exactly d coordinates");
    }
    limit_ = 0.0;
    break;
  case SpaceKind::C0:
    if (limit_ != 0.0) {
      throw Error(ErrorCode::WrongTag, "c0 point must have limit 0");
    }
    break;
  case SpaceKind::Ca:
    if (limit_ != tag_.a()) {
      throw Error(ErrorCode::WrongTag, "c_a point must have limit a");
    }
    break;
  case SpaceKind::C: break;
  }
}

SeqPoint SeqPoint::finite(std::vector<double> coords) {
  const auto d = coords.size();
  return SeqPoint(std::move(coords), 0.0, SpaceTag::finite_dim(d));
}

double SeqPoint::coord(std::size_t j) const {
  if (j == 0) {
    throw Error(ErrorCode::InvalidArgument, "coordinates are 1-based");
  }
  return j <= prefix_.size() ? prefix_[j - 1] : limit_;
}

double SeqPoint::coord(const CoordIndex &j) const {
  if (std::holds_alternative<Infinity>(j)) return limit_;
  return coord(std::get<std::size_t>(j));
}

double coord(const SeqPoint &x, const CoordIndex &j) { return x.coord(j); }

double sup_dist(const SeqPoint &x, const SeqPoint &y) {
  if (!x.tag().compatible(y.tag())) {
    throw Error(ErrorCode::DimensionMismatch,
                x.tag().to_string() + " vs " + y.tag().to_string());
  }
  const auto &xp = x.prefix();
  const auto &yp = y.prefix();
  const std::size_t common = std::min(xp.size(), yp.size());
  double best = 0.0;
  for (std::size_t j = 0; j < common; ++j) {
    best = std::max(best, std::abs(xp[j] - yp[j]));
  }
  if (x.tag().kind() == SpaceKind::FiniteDim) return best;
  for (std::size_t j = common; j < xp.size(); ++j) {
    best = std::max(best, std::abs(xp[j] - y.limit()));
  }
  for (std::size_t j = common; j < yp.size(); ++j) {
    best = std::max(best, std::abs(x.limit() - yp[j]));
  }
  return std::max(best, std::abs(x.limit() - y.limit()));
}

double integer_gap(double t) { return std::abs(t - std::round(t)); }

std::int64_t floor_dist(const SeqPoint &x, const SeqPoint &y, double guard) {
  if (!(guard > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "guard must be positive");
  }
  const double d = sup_dist(x, y);
  if (integer_gap(d) < guard) {
    std::ostringstream os;
    os.precision(17);
    os << "distance " << d << " within guard of an integer";
    throw Error(ErrorCode::UnsafeFloor, os.str());
  }
  return static_cast<std::int64_t>(std::floor(d));
}

double frac(double t) {
  const double f = t - std::floor(t);
  // t slightly below an integer can round up to exactly 1.
  return f < 1.0 ? f : std::nextafter(1.0, 0.0);
}

std::int64_t floor_abs_diff(double s, double t, double guard) {
  const double fs = frac(s);
  const double ft = frac(t);
  if (std::abs(fs - ft) < guard) {
    throw Error(ErrorCode::FracTie, "equal fractional parts");
  }
  const auto is = static_cast<std::int64_t>(std::floor(s));
  const auto it = static_cast<std::int64_t>(std::floor(t));
  if (s > t) return fs > ft ? is - it : is - it - 1;
  return ft > fs ? it - is : it - is - 1;
}

namespace {

bool near_integer(double v, double guard) { return integer_gap(v) < guard; }

// Realized width of a pairwise comparison: past both prefixes only the limit
// is left, which is handled separately.
std::size_t pair_width(const SeqPoint &x, const SeqPoint &y) {
  return std::max(x.realized(), y.realized());
}

}  // namespace

IdfReport check_idf(std::span<const SeqPoint> points, double guard) {
  IdfReport report;
  auto flag = [&](std::size_t i, std::optional<std::size_t> k, CoordIndex j,
                  double v) {
    if (near_integer(v, guard)) {
      report.violations.push_back({i, k, j, v, integer_gap(v)});
    }
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto &x = points[i];
    const bool check_limit = x.tag().kind() == SpaceKind::C;
    for (std::size_t j = 1; j <= x.realized(); ++j) flag(i, {}, j, x.coord(j));
    if (check_limit) flag(i, {}, kInfinity, x.limit());
    for (std::size_t k = i + 1; k < points.size(); ++k) {
      const auto &y = points[k];
      if (!x.tag().compatible(y.tag())) {
        throw Error(ErrorCode::DimensionMismatch, "mixed ambient spaces");
      }
      const std::size_t width = pair_width(x, y);
      for (std::size_t j = 1; j <= width; ++j) {
        flag(i, k, j, x.coord(j) - y.coord(j));
      }
      if (check_limit && y.tag().kind() == SpaceKind::C) {
        flag(i, k, kInfinity, x.limit() - y.limit());
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

bool idf_compatible(const SeqPoint &x, std::span<const SeqPoint> accepted,
                    double guard) {
  const bool check_limit = x.tag().kind() == SpaceKind::C;
  const auto &xp = x.prefix();
  for (double v : xp) {
    if (near_integer(v, guard)) return false;
  }
  if (check_limit && near_integer(x.limit(), guard)) return false;
  for (const auto &y : accepted) {
    const auto &yp = y.prefix();
    if (xp.size() == yp.size()) {
      for (std::size_t j = 0; j < xp.size(); ++j) {
        if (near_integer(xp[j] - yp[j], guard)) return false;
      }
    } else {
      const std::size_t width = pair_width(x, y);
      for (std::size_t j = 1; j <= width; ++j) {
        if (near_integer(x.coord(j) - y.coord(j), guard)) return false;
      }
    }
    if (check_limit && y.tag().kind() == SpaceKind::C &&
        near_integer(x.limit() - y.limit(), guard)) {
      return false;
    }
  }
  return true;
}

std::vector<std::size_t> frac_order(std::span<const double> values,
                                    double guard) {
  std::vector<double> fr(values.size());
  std::transform(values.begin(), values.end(), fr.begin(),
                 [](double v) { return frac(v); });
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fr[a] < fr[b] || (fr[a] == fr[b] && a < b);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (fr[order[i]] - fr[order[i - 1]] < guard) {
      throw Error(ErrorCode::FracTie, "fractional parts tie");
    }
  }
  return order;
}

std::vector<std::size_t> frac_order_at(std::span<const SeqPoint> points,
                                       const CoordIndex &j, double guard) {
  std::vector<double> values;
  values.reserve(points.size());
  for (const auto &x : points) values.push_back(x.coord(j));
  return frac_order(values, guard);
}

}  // namespace larg
