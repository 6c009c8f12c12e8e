#pragma once

// Reference computations used to check the library. They deliberately avoid
// the code paths they check: no closed forms, no Boost special functions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

struct Conic {
  double cu, cv;  // center
  double a, b;    // semi axes, a >= b
  double angle;   // major axis angle in [-pi/2, pi/2)
};

/// Least-squares conic A u^2 + B uv + C v^2 + D u + E v = 1 through points
/// given relative to an interior origin, reduced to center and axes.
inline Conic fit_ellipse(const std::vector<std::array<double, 2>>& pts, double ou, double ov) {
  long double m[5][6] = {};
  for (const auto& p : pts) {
    const long double u = p[0] - ou, v = p[1] - ov;
    const long double row[5] = {u * u, u * v, v * v, u, v};
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) m[i][j] += row[i] * row[j];
      m[i][5] += row[i];
    }
  }
  for (int c = 0; c < 5; ++c) {
    int piv = c;
    for (int r = c + 1; r < 5; ++r) {
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    }
    for (int k = 0; k < 6; ++k) std::swap(m[c][k], m[piv][k]);
    for (int r = 0; r < 5; ++r) {
      if (r == c) continue;
      const long double f = m[r][c] / m[c][c];
      for (int k = c; k < 6; ++k) m[r][k] -= f * m[c][k];
    }
  }
  long double x[5];
  for (int i = 0; i < 5; ++i) x[i] = m[i][5] / m[i][i];
  const long double A = x[0], B = x[1], C = x[2], D = x[3], E = x[4];
  const long double det = 4 * A * C - B * B;
  const long double cu = (B * E - 2 * C * D) / det;
  const long double cv = (B * D - 2 * A * E) / det;
  const long double k = 1 - (A * cu * cu + B * cu * cv + C * cv * cv + D * cu + E * cv);
  const long double tr = A + C;
  const long double disc = std::sqrt((A - C) * (A - C) + B * B);
  const long double lmin = 0.5L * (tr - disc), lmax = 0.5L * (tr + disc);
  double angle = 0.5 * std::atan2(static_cast<double>(-B), static_cast<double>(C - A));
  while (angle >= kPi / 2) angle -= kPi;
  while (angle < -kPi / 2) angle += kPi;
  return {static_cast<double>(cu) + ou, static_cast<double>(cv) + ov, static_cast<double>(std::sqrt(k / lmin)),
          static_cast<double>(std::sqrt(k / lmax)), angle};
}

/// Points where boundary generators of the cone (apex, unit axis, half angle)
/// meet the plane z = 0.
inline std::vector<std::array<double, 2>> cone_generators_on_floor(const std::array<double, 3>& apex,
                                                                   const std::array<double, 3>& axis,
                                                                   double half_angle, int count) {
  // Orthonormal pair perpendicular to the axis.
  std::array<double, 3> t = std::fabs(axis[0]) < 0.9 ? std::array<double, 3>{1, 0, 0}
                                                     : std::array<double, 3>{0, 1, 0};
  auto cross = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  auto unit = [](std::array<double, 3> a) {
    const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    return std::array<double, 3>{a[0] / n, a[1] / n, a[2] / n};
  };
  const auto e1 = unit(cross(axis, t));
  const auto e2 = cross(axis, e1);
  std::vector<std::array<double, 2>> pts;
  for (int i = 0; i < count; ++i) {
    const double phi = 2.0 * kPi * i / count;
    std::array<double, 3> g{};
    for (int k = 0; k < 3; ++k) {
      g[k] = std::cos(half_angle) * axis[k] + std::sin(half_angle) * (std::cos(phi) * e1[k] + std::sin(phi) * e2[k]);
    }
    const double s = -apex[2] / g[2];
    pts.push_back({apex[0] + s * g[0], apex[1] + s * g[1]});
  }
  return pts;
}

/// Hypergeometric probability of the 2x2 table with top-left cell `a` and the
/// given margins.
inline long double hypergeom(std::int64_t a, std::int64_t r1, std::int64_t c1, std::int64_t n) {
  // C(c1, a) C(n - c1, r1 - a) / C(n, r1)
  auto lc = [](std::int64_t n_, std::int64_t k) {
    return std::lgammal(n_ + 1.0L) - std::lgammal(k + 1.0L) - std::lgammal(n_ - k + 1.0L);
  };
  return std::exp(lc(c1, a) + lc(n - c1, r1 - a) - lc(n, r1));
}

/// Two-sided Fisher p by enumerating every table with the observed margins.
inline double fisher_two_sided(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const std::int64_t r1 = a + b, c1 = a + c, n = a + b + c + d;
  const std::int64_t lo = std::max<std::int64_t>(0, r1 + c1 - n), hi = std::min(r1, c1);
  const long double p_obs = hypergeom(a, r1, c1, n);
  long double p = 0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    const long double px = hypergeom(x, r1, c1, n);
    if (px <= p_obs * (1 + 1e-7L)) p += px;
  }
  return static_cast<double>(std::min<long double>(1, p));
}

/// Chi-squared density.
inline double chi2_pdf(double x, int k) {
  if (x <= 0) return 0;
  const double h = 0.5 * k;
  return std::exp((h - 1) * std::log(x) - 0.5 * x - h * std::log(2.0) - std::lgamma(h));
}

/// Upper tail by composite Simpson integration of the density on [x, x + 400].
inline double chi2_tail(double x, int k, int intervals = 400000) {
  const double lo = x, hi = x + 400.0;
  const double h = (hi - lo) / intervals;
  double s = chi2_pdf(lo, k) + chi2_pdf(hi, k);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4 : 2) * chi2_pdf(lo + i * h, k);
  return s * h / 3;
}

inline double pearson_statistic(const std::vector<std::vector<std::int64_t>>& t) {
  double n = 0;
  std::vector<double> rs(t.size(), 0), cs(t[0].size(), 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t[i].size(); ++j) {
      rs[i] += t[i][j];
      cs[j] += t[i][j];
      n += t[i][j];
    }
  }
  double s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t[i].size(); ++j) {
      const double e = rs[i] * cs[j] / n;
      s += (t[i][j] - e) * (t[i][j] - e) / e;
    }
  }
  return s;
}

inline double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// One-sided pooled z-tests against -margin and +margin.
struct Tost {
  double z_lower, z_upper, p_lower, p_upper;
};
inline Tost tost(double x1, double n1, double x2, double n2, double margin) {
  const double p1 = x1 / n1, p2 = x2 / n2;
  const double pool = (x1 + x2) / (n1 + n2);
  const double se = std::sqrt(pool * (1 - pool) * (1 / n1 + 1 / n2));
  const double zl = (p1 - p2 + margin) / se;
  const double zu = (p1 - p2 - margin) / se;
  return {zl, zu, 1 - phi(zl), phi(zu)};
}

/// Axis-aligned footprint for the stability oracle: a disk (r > 0) or a box.
struct Foot {
  double u, v;
  double hu, hv;
  double r;  // > 0 for round
  double top;
};

inline bool open_overlap(const Foot& a, const Foot& b) {
  const double du = std::fabs(a.u - b.u), dv = std::fabs(a.v - b.v);
  if (a.r > 0 && b.r > 0) return std::hypot(du, dv) < a.r + b.r;
  if (a.r == 0 && b.r == 0) return du < a.hu + b.hu && dv < a.hv + b.hv;
  const Foot& disk = a.r > 0 ? a : b;
  const Foot& box = a.r > 0 ? b : a;
  const double qu = std::max(0.0, std::fabs(disk.u - box.u) - box.hu);
  const double qv = std::max(0.0, std::fabs(disk.v - box.v) - box.hv);
  return std::hypot(qu, qv) < disk.r;
}

inline bool inside_face(const Foot& f, double u, double v, double margin) {
  if (f.r > 0) return std::hypot(u - f.u, v - f.v) <= f.r - margin;
  return std::fabs(u - f.u) <= f.hu - margin && std::fabs(v - f.v) <= f.hv - margin;
}

/// 1 stable, 0 unstable, -1 equal-height supports.
inline int stable(const std::vector<Foot>& objects, Foot placed, double table_hu, double table_hv, double margin) {
  const Foot* support = nullptr;
  bool tie = false;
  for (const auto& o : objects) {
    if (!open_overlap(o, placed)) continue;
    if (!support || o.top > support->top + 1e-6) {
      support = &o;
      tie = false;
    } else if (std::fabs(o.top - support->top) <= 1e-6) {
      tie = true;
    }
  }
  if (tie) return -1;
  if (!support) {
    return std::fabs(placed.u) <= table_hu - margin && std::fabs(placed.v) <= table_hv - margin;
  }
  return inside_face(*support, placed.u, placed.v, margin);
}

/// One-sample Kolmogorov-Smirnov statistic against U[lo, hi].
inline double ks_uniform(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = std::clamp((xs[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

}  // namespace oracle
