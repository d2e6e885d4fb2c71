#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hirsch/errors.hpp"

namespace hirsch {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One interval of the nonnegative half-line. `hi == +inf` is allowed and
/// forces `hi_closed == false`.
struct Interval {
  double lo = 0.0;
  double hi = kInf;
  bool lo_closed = true;
  bool hi_closed = false;

  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval right_open(double lo, double hi) { return {lo, hi, true, false}; }
  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval left_open(double lo, double hi) { return {lo, hi, false, true}; }
  static Interval nonnegative() { return {0.0, kInf, true, false}; }
  static Interval positive() { return {0.0, kInf, false, false}; }

  bool contains(double x) const {
    if (lo_closed ? x < lo : x <= lo) return false;
    if (hi_closed ? x > hi : x >= hi) return false;
    return true;
  }

  bool bounded() const { return std::isfinite(hi); }
  bool degenerate() const { return lo == hi; }

  void validate() const {
    if (!(lo >= 0.0)) throw Error(ErrorKind::InvalidArgument, "interval lo must be >= 0");
    if (!(lo <= hi)) throw Error(ErrorKind::InvalidArgument, "interval requires lo <= hi");
    if (!bounded() && hi_closed)
      throw Error(ErrorKind::InvalidArgument, "unbounded interval cannot be closed above");
  }
};

/// Ordered union of pairwise-disjoint intervals; supports gapped domains
/// such as [0, a) u [b, +inf).
struct DomainSet {
  std::vector<Interval> intervals;

  static DomainSet nonnegative_reals() { return {{Interval::nonnegative()}}; }
  static DomainSet positive_reals() { return {{Interval::positive()}}; }
  static DomainSet single(Interval iv) { return {{iv}}; }

  bool contains(double x) const {
    for (const auto& iv : intervals)
      if (iv.contains(x)) return true;
    return false;
  }

  bool empty() const { return intervals.empty(); }

  double sup() const {
    return intervals.empty() ? 0.0 : intervals.back().hi;
  }

  void validate() const {
    for (const auto& iv : intervals) iv.validate();
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      const Interval& a = intervals[i - 1];
      const Interval& b = intervals[i];
      if (!(a.hi < b.lo || (a.hi == b.lo && !(a.hi_closed && b.lo_closed))))
        throw Error(ErrorKind::InvalidArgument, "domain intervals must be disjoint and ascending");
    }
  }
};

/// Union of two domain sets, normalized to sorted disjoint intervals.
/// Touching or overlapping intervals are merged.
inline DomainSet domain_union(const DomainSet& a, const DomainSet& b) {
  std::vector<Interval> all = a.intervals;
  all.insert(all.end(), b.intervals.begin(), b.intervals.end());
  std::sort(all.begin(), all.end(), [](const Interval& u, const Interval& v) {
    if (u.lo != v.lo) return u.lo < v.lo;
    return u.lo_closed && !v.lo_closed;
  });
  DomainSet out;
  for (const auto& iv : all) {
    if (out.intervals.empty()) {
      out.intervals.push_back(iv);
      continue;
    }
    Interval& last = out.intervals.back();
    bool joins = iv.lo < last.hi || (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
    if (joins) {
      if (iv.hi > last.hi) {
        last.hi = iv.hi;
        last.hi_closed = iv.hi_closed;
      } else if (iv.hi == last.hi) {
        last.hi_closed = last.hi_closed || iv.hi_closed;
      }
    } else {
      out.intervals.push_back(iv);
    }
  }
  return out;
}

}  // namespace hirsch
