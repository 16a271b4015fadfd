// Lines of principal curvature drawn as polylines: direct integration of the
// two root fields of a dv^2 + b du dv + c du^2 = 0, the lifted field xi near
// the discriminant, contour overlays and SVG output. Everything here is in
// double precision.
#pragma once

#include "umbilic/analysis.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace umbilic {

struct Pt {
  double x = 0, y = 0;
};

struct Box {
  double xmin = -0.5, xmax = 0.5, ymin = -0.5, ymax = 0.5;
  bool contains(const Pt& p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

struct Polyline {
  int family = 1;  ///< 1 or 2
  bool separatrix = false;
  std::vector<Pt> pts;
};

enum class MarkerKind { Umbilic, Folded, Direction };

struct Marker {
  MarkerKind kind = MarkerKind::Umbilic;
  Pt at;
  bool filled = false;
  std::string label;  ///< "S", "N", "F" or a configuration name
};

struct Overlay {
  std::string kind;  ///< "discriminant", "ld" or "lpl"
  std::vector<std::array<Pt, 2>> segments;
};

struct PhasePortrait {
  Box box;
  std::vector<Polyline> lines;
  std::vector<Marker> markers;
  std::vector<Overlay> overlays;
  /// Unit tangent of every separatrix where it leaves the umbilic.
  std::vector<Pt> separatrix_directions;
};

struct PortraitOptions {
  Box box;
  double step = 0.01;
  double max_len = 1.0;
  std::vector<Pt> seeds;  ///< empty: a seed_grid x seed_grid lattice
  int seed_grid = 5;
  bool separatrices = true;
  bool overlays = true;
  int contour_cells = 120;
  bool force_lift = false;  ///< integrate xi everywhere (testing)
};

namespace detail {

/// Polynomial with double coefficients, evaluated by precomputed powers.
class FastPoly {
 public:
  FastPoly() = default;
  explicit FastPoly(const JetPoly& f) {
    for (const auto& [m, c] : f.terms()) {
      terms_.push_back({m.i, m.j, to_double(c)});
      deg_ = std::max({deg_, m.i, m.j});
    }
  }
  double operator()(double u, double v) const {
    double pu[64], pv[64];
    int n = std::min(deg_, 63);
    pu[0] = pv[0] = 1;
    for (int k = 1; k <= n; ++k) {
      pu[k] = pu[k - 1] * u;
      pv[k] = pv[k - 1] * v;
    }
    double r = 0;
    for (const auto& t : terms_) r += t.c * pu[t.i] * pv[t.j];
    return r;
  }
  bool empty() const { return terms_.empty(); }

 private:
  struct Term {
    int i, j;
    double c;
  };
  std::vector<Term> terms_;
  int deg_ = 0;
};

struct FieldJet {
  double a, b, c, au, av, bu, bv, cu, cv;
  double delta() const { return b * b - 4 * a * c; }
  double delta_u() const { return 2 * b * bu - 4 * (au * c + a * cu); }
  double delta_v() const { return 2 * b * bv - 4 * (av * c + a * cv); }
};

class LineField {
 public:
  explicit LineField(const BdeGerm& w)
      : a_(w.a), b_(w.b), c_(w.c),
        au_(w.a.derive(Var::U)), av_(w.a.derive(Var::V)),
        bu_(w.b.derive(Var::U)), bv_(w.b.derive(Var::V)),
        cu_(w.c.derive(Var::U)), cv_(w.c.derive(Var::V)) {}

  FieldJet at(double u, double v) const {
    return {a_(u, v), b_(u, v), c_(u, v), au_(u, v), av_(u, v), bu_(u, v), bv_(u, v), cu_(u, v), cv_(u, v)};
  }

 private:
  FastPoly a_, b_, c_, au_, av_, bu_, bv_, cu_, cv_;
};

inline double norm(const Pt& p) { return std::sqrt(p.x * p.x + p.y * p.y); }

/// Family of a direction line: sign of du (2a dv + b du), read in the chart
/// q = du/dv as -sign(dv (2c du + b dv)). The two expressions agree on root
/// directions, so the label is global on {delta > 0}.
inline int family_of(const FieldJet& j, const Pt& d) {
  double s = std::abs(d.x) >= std::abs(d.y) ? d.x * (2 * j.a * d.y + j.b * d.x) : -d.y * (2 * j.c * d.x + j.b * d.y);
  return s > 0 ? 1 : s < 0 ? 2 : 0;
}

/// Unit root directions of c du^2 + b du dv + a dv^2 = 0.
inline std::vector<Pt> root_directions(const FieldJet& j) {
  std::vector<Pt> out;
  double disc = j.delta();
  if (disc < 0) return out;
  double sq = std::sqrt(disc);
  auto unit = [](double x, double y) {
    double n = std::sqrt(x * x + y * y);
    return Pt{x / n, y / n};
  };
  bool pchart = std::abs(j.a) >= std::abs(j.c);
  double A = pchart ? j.a : j.c, C = pchart ? j.c : j.a;
  if (A == 0 && j.b == 0) return out;
  double qv = -0.5 * (j.b + (j.b >= 0 ? sq : -sq));
  std::vector<double> r;
  if (A != 0 && qv != 0) r = {qv / A, C / qv};
  else if (A != 0) r = {0.0, -j.b / A};
  else r = {-C / j.b};  // one root of the linear equation; the other is the axis
  for (double t : r) out.push_back(pchart ? unit(1, t) : unit(t, 1));
  if (A == 0) out.push_back(pchart ? Pt{0, 1} : Pt{1, 0});
  return out;
}

/// xi in the chart p = dv/du, or in the chart q = du/dv when qchart.
inline std::array<double, 3> xi(const FieldJet& j, bool qchart, double p) {
  if (!qchart) {
    double Fp = 2 * j.a * p + j.b;
    double Fu = j.au * p * p + j.bu * p + j.cu, Fv = j.av * p * p + j.bv * p + j.cv;
    return {Fp, p * Fp, -(Fu + p * Fv)};
  }
  double Gq = j.b + 2 * j.c * p;
  double Gu = j.au + j.bu * p + j.cu * p * p, Gv = j.av + j.bv * p + j.cv * p * p;
  return {p * Gq, Gq, -(Gv + p * Gu)};
}

class Tracer {
 public:
  Tracer(const LineField& f, const PortraitOptions& o, bool umbilic_at_origin)
      : field_(f), opt_(o), umbilic_(umbilic_at_origin) {}

  bool in_tube(const Pt& x) const {
    if (opt_.force_lift) return true;
    FieldJet j = field_.at(x.x, x.y);
    double tube = 4 * opt_.step;
    double g = std::hypot(j.delta_u(), j.delta_v());
    if (std::abs(j.delta()) < tube * g) return true;
    double size = std::abs(j.a) + std::abs(j.b) + std::abs(j.c);
    double grad = std::abs(j.au) + std::abs(j.av) + std::abs(j.bu) + std::abs(j.bv) + std::abs(j.cu) + std::abs(j.cv);
    return size < tube * grad;
  }

  /// Unit direction of the given family at x, oriented along prev.
  std::optional<Pt> direction(const Pt& x, int family, const Pt& prev) const {
    FieldJet j = field_.at(x.x, x.y);
    for (const Pt& d : root_directions(j)) {
      if (family_of(j, d) != family) continue;
      double s = d.x * prev.x + d.y * prev.y;
      return s >= 0 ? d : Pt{-d.x, -d.y};
    }
    return std::nullopt;
  }

  struct Lift {
    bool qchart;
    double u, v, p;
  };

  /// Polylines traced from x0 with family and oriented direction d0; the
  /// result is split wherever the family changes across a fold.
  std::vector<Polyline> trace(Pt x0, int family, Pt d0, std::optional<Lift> lift0 = std::nullopt,
                              bool separatrix = false) const {
    std::vector<Polyline> out;
    Polyline cur{family, separatrix, {x0}};
    const double h = opt_.step;
    double length = 0;
    Pt x = x0, d = d0;
    std::optional<Lift> lift = lift0;
    std::array<double, 3> prev3{d0.x, d0.y, 0};
    int tube_steps = 0;
    auto finish = [&] {
      if (cur.pts.size() > 1) out.push_back(std::move(cur));
    };
    while (length < opt_.max_len) {
      Pt next;
      if (!lift) {
        if (in_tube(x)) {
          lift = enter_lift(x, d, prev3);
          continue;
        }
        auto step = rk4_direct(x, family, d);
        if (!step) {
          FieldJet j = field_.at(x.x, x.y);
          if (j.delta() < 0) break;
          lift = enter_lift(x, d, prev3);
          continue;
        }
        next = step->first;
        d = step->second;
        prev3 = {d.x, d.y, 0};
      } else {
        if (++tube_steps > 400) break;
        auto s = rk4_lift(*lift, prev3);
        if (!s) break;
        lift = *s;
        next = {lift->u, lift->v};
        if (!in_tube(next) && !opt_.force_lift) {
          Pt dir = lift->qchart ? Pt{lift->p, 1} : Pt{1, lift->p};
          double n = norm(dir);
          dir = {dir.x / n, dir.y / n};
          Pt moved{next.x - x.x, next.y - x.y};
          if (dir.x * moved.x + dir.y * moved.y < 0) dir = {-dir.x, -dir.y};
          FieldJet j = field_.at(next.x, next.y);
          int fam = family_of(j, dir);
          if (fam == 0) break;
          if (fam != family) {
            if (!opt_.box.contains(next)) break;
            cur.pts.push_back(next);
            finish();
            family = fam;
            cur = Polyline{family, separatrix, {next}};
            x = next;
            d = dir;
            prev3 = {d.x, d.y, 0};
            lift.reset();
            tube_steps = 0;
            continue;
          }
          d = dir;
          prev3 = {d.x, d.y, 0};
          lift.reset();
          tube_steps = 0;
        }
      }
      if (!opt_.box.contains(next)) {
        cur.pts.push_back(clip(x, next));
        break;
      }
      double seg = std::hypot(next.x - x.x, next.y - x.y);
      cur.pts.push_back(next);
      length += seg;
      x = next;
      if (umbilic_ && norm(x) < 0.5 * h && !separatrix) break;
      if (umbilic_ && separatrix && length > 4 * h && norm(x) < 0.5 * h) break;
    }
    finish();
    return out;
  }

 private:
  Lift enter_lift(const Pt& x, const Pt& d, std::array<double, 3>& prev3) const {
    Lift l;
    l.u = x.x;
    l.v = x.y;
    l.qchart = std::abs(d.x) < std::abs(d.y);
    l.p = l.qchart ? d.x / d.y : d.y / d.x;
    prev3 = {d.x, d.y, 0};
    return l;
  }

  std::optional<std::pair<Pt, Pt>> rk4_direct(const Pt& x, int family, const Pt& d) const {
    const double h = opt_.step;
    auto k1 = direction(x, family, d);
    if (!k1) return std::nullopt;
    auto k2 = direction({x.x + 0.5 * h * k1->x, x.y + 0.5 * h * k1->y}, family, *k1);
    if (!k2) return std::nullopt;
    auto k3 = direction({x.x + 0.5 * h * k2->x, x.y + 0.5 * h * k2->y}, family, *k1);
    if (!k3) return std::nullopt;
    auto k4 = direction({x.x + h * k3->x, x.y + h * k3->y}, family, *k1);
    if (!k4) return std::nullopt;
    Pt step{(k1->x + 2 * k2->x + 2 * k3->x + k4->x) / 6, (k1->y + 2 * k2->y + 2 * k3->y + k4->y) / 6};
    Pt next{x.x + h * step.x, x.y + h * step.y};
    return std::make_pair(next, *k4);
  }

  std::optional<std::array<double, 3>> xi_unit(const Lift& l, const std::array<double, 3>& prev) const {
    FieldJet j = field_.at(l.u, l.v);
    auto v = xi(j, l.qchart, l.p);
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(n > 1e-12)) return std::nullopt;
    double s = v[0] * prev[0] + v[1] * prev[1] + v[2] * prev[2] >= 0 ? 1 / n : -1 / n;
    return std::array<double, 3>{v[0] * s, v[1] * s, v[2] * s};
  }

  std::optional<Lift> rk4_lift(Lift l, std::array<double, 3>& prev) const {
    const double h = opt_.step;
    auto at = [&](const Lift& base, const std::array<double, 3>& k, double t) {
      return Lift{base.qchart, base.u + t * k[0], base.v + t * k[1], base.p + t * k[2]};
    };
    auto k1 = xi_unit(l, prev);
    if (!k1) return std::nullopt;
    auto k2 = xi_unit(at(l, *k1, 0.5 * h), *k1);
    if (!k2) return std::nullopt;
    auto k3 = xi_unit(at(l, *k2, 0.5 * h), *k1);
    if (!k3) return std::nullopt;
    auto k4 = xi_unit(at(l, *k3, h), *k1);
    if (!k4) return std::nullopt;
    std::array<double, 3> k;
    for (int i = 0; i < 3; ++i) k[i] = ((*k1)[i] + 2 * (*k2)[i] + 2 * (*k3)[i] + (*k4)[i]) / 6;
    Lift n = at(l, k, h);
    prev = k;
    if (std::abs(n.p) > 1) {
      // change chart: q = 1/p, dq = -dp/p^2
      double p = n.p;
      n.p = 1 / p;
      n.qchart = !n.qchart;
      prev[2] = -prev[2] / (p * p);
    }
    return n;
  }

  Pt clip(const Pt& a, const Pt& b) const {
    double t = 1;
    const Box& bx = opt_.box;
    auto lim = [&](double from, double to, double lo, double hi) {
      if (to > hi && to != from) t = std::min(t, (hi - from) / (to - from));
      if (to < lo && to != from) t = std::min(t, (lo - from) / (to - from));
    };
    lim(a.x, b.x, bx.xmin, bx.xmax);
    lim(a.y, b.y, bx.ymin, bx.ymax);
    t = std::max(0.0, t);
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  }

  const LineField& field_;
  const PortraitOptions& opt_;
  bool umbilic_;
};

/// Directions along which the root field is radial on a circle of radius
/// rho about the origin; as rho -> 0 these tend to the real roots of phi.
struct RadialDirection {
  Pt dir;  ///< unit vector, dir.x >= 0 up to the vertical
  bool qchart;
  double p;  ///< slope dv/du, or du/dv in the q chart
};

inline std::vector<RadialDirection> radial_directions(const LineField& f, double rho = 1e-9) {
  std::vector<RadialDirection> out;
  auto g = [&](bool qchart, double t) {
    double n = std::sqrt(1 + t * t);
    double u = qchart ? rho * t / n : rho / n, v = qchart ? rho / n : rho * t / n;
    FieldJet j = f.at(u, v);
    return (qchart ? j.a + j.b * t + j.c * t * t : j.a * t * t + j.b * t + j.c) / rho;
  };
  const int N = 4000;
  for (bool qchart : {false, true}) {
    // the q chart covers only |q| < 1 so that p = +-1 is found once
    double lo_end = qchart ? -1 + 1.0 / N : -1, hi_end = qchart ? 1 - 1.0 / N : 1;
    double prev_t = lo_end, prev_g = g(qchart, prev_t);
    for (int k = 1; k <= N; ++k) {
      double t = lo_end + (hi_end - lo_end) * k / N, gt = g(qchart, t);
      if (prev_g == 0 || (prev_g < 0) != (gt < 0)) {
        double lo = prev_t, hi = t, glo = prev_g;
        if (prev_g != 0) {
          for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
            double mid = 0.5 * (lo + hi), gm = g(qchart, mid);
            if ((gm < 0) == (glo < 0)) {
              lo = mid;
              glo = gm;
            } else {
              hi = mid;
            }
          }
        }
        double r = prev_g == 0 ? prev_t : 0.5 * (lo + hi);
        double n = std::sqrt(1 + r * r);
        out.push_back({qchart ? Pt{r / n, 1 / n} : Pt{1 / n, r / n}, qchart, r});
      }
      prev_t = t;
      prev_g = gt;
    }
  }
  return out;
}

/// Segments of {f = 0} by marching squares on an n x n grid.
template <class F>
std::vector<std::array<Pt, 2>> contour(const F& f, const Box& box, int n) {
  std::vector<std::array<Pt, 2>> segs;
  std::vector<double> val((n + 1) * (n + 1));
  auto X = [&](int i) { return box.xmin + box.width() * i / n; };
  auto Y = [&](int j) { return box.ymin + box.height() * j / n; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) val[j * (n + 1) + i] = f(X(i), Y(j));
  auto V = [&](int i, int j) { return val[j * (n + 1) + i]; };
  auto cross = [&](int i0, int j0, int i1, int j1) {
    double a = V(i0, j0), b = V(i1, j1), t = a / (a - b);
    return Pt{X(i0) + t * (X(i1) - X(i0)), Y(j0) + t * (Y(j1) - Y(j0))};
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      bool s0 = V(i, j) >= 0, s1 = V(i + 1, j) >= 0, s2 = V(i + 1, j + 1) >= 0, s3 = V(i, j + 1) >= 0;
      std::vector<Pt> e;
      if (s0 != s1) e.push_back(cross(i, j, i + 1, j));
      if (s1 != s2) e.push_back(cross(i + 1, j, i + 1, j + 1));
      if (s2 != s3) e.push_back(cross(i + 1, j + 1, i, j + 1));
      if (s3 != s0) e.push_back(cross(i, j + 1, i, j));
      if (e.size() == 2) {
        segs.push_back({e[0], e[1]});
      } else if (e.size() == 4) {
        // saddle cell: pair edges by the sign at the centre
        bool centre = f(0.5 * (X(i) + X(i + 1)), 0.5 * (Y(j) + Y(j + 1))) >= 0;
        if (centre == s0) {
          segs.push_back({e[0], e[1]});
          segs.push_back({e[2], e[3]});
        } else {
          segs.push_back({e[0], e[3]});
          segs.push_back({e[1], e[2]});
        }
      }
    }
  return segs;
}

/// Type of the zero of xi at a folded singularity: 'S' (saddle), 'N' (node)
/// or 'F' (focus), from its linearisation restricted to the surface F = 0.
inline char folded_type(const LineField& f, bool qchart, double u, double v, double p) {
  const double e = 1e-6;
  auto X = [&](double uu, double vv, double pp) { return xi(f.at(uu, vv), qchart, pp); };
  double J[3][3];
  for (int k = 0; k < 3; ++k) {
    double d[3] = {0, 0, 0};
    d[k] = e;
    auto plus = X(u + d[0], v + d[1], p + d[2]), minus = X(u - d[0], v - d[1], p - d[2]);
    for (int r = 0; r < 3; ++r) J[r][k] = (plus[r] - minus[r]) / (2 * e);
  }
  // tangent plane of the surface: orthonormal basis of the kernel of grad F
  FieldJet j = f.at(u, v);
  std::array<double, 3> g = qchart ? std::array<double, 3>{j.au + j.bu * p + j.cu * p * p, j.av + j.bv * p + j.cv * p * p,
                                                           j.b + 2 * j.c * p}
                                   : std::array<double, 3>{j.au * p * p + j.bu * p + j.cu,
                                                           j.av * p * p + j.bv * p + j.cv, 2 * j.a * p + j.b};
  double gn = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
  if (gn == 0) return '?';
  for (auto& c : g) c /= gn;
  std::array<double, 3> t1 = std::abs(g[0]) < 0.9 ? std::array<double, 3>{1, 0, 0} : std::array<double, 3>{0, 1, 0};
  double dot = t1[0] * g[0] + t1[1] * g[1] + t1[2] * g[2];
  for (int k = 0; k < 3; ++k) t1[k] -= dot * g[k];
  double n1 = std::sqrt(t1[0] * t1[0] + t1[1] * t1[1] + t1[2] * t1[2]);
  for (auto& c : t1) c /= n1;
  std::array<double, 3> t2{g[1] * t1[2] - g[2] * t1[1], g[2] * t1[0] - g[0] * t1[2], g[0] * t1[1] - g[1] * t1[0]};
  auto apply = [&](const std::array<double, 3>& x) {
    std::array<double, 3> y{};
    for (int r = 0; r < 3; ++r) y[r] = J[r][0] * x[0] + J[r][1] * x[1] + J[r][2] * x[2];
    return y;
  };
  auto dotp = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  auto j1 = apply(t1), j2 = apply(t2);
  double m11 = dotp(t1, j1), m12 = dotp(t1, j2), m21 = dotp(t2, j1), m22 = dotp(t2, j2);
  double det = m11 * m22 - m12 * m21, tr = m11 + m22;
  if (det < 0) return 'S';
  return tr * tr >= 4 * det ? 'N' : 'F';
}

}  // namespace detail

inline PhasePortrait integrate_lines(const BdeGerm& w, const PortraitOptions& opt,
                                     const std::optional<JetPoly>& ld = std::nullopt) {
  if (!(opt.step > 0) || !(opt.max_len > 0) || !(opt.box.width() > 0) || !(opt.box.height() > 0))
    throw Error(ErrorCode::InvalidArgument, "portrait needs a positive step, length and box");
  for (const Pt& s : opt.seeds)
    if (!opt.box.contains(s))
      throw Error(ErrorCode::SeedOutsideDomain, "seed (" + std::to_string(s.x) + ", " + std::to_string(s.y) +
                                                    ") lies outside the box");
  PhasePortrait pp;
  pp.box = opt.box;
  detail::LineField field(w);
  bool umbilic = w.vanishes_at_origin() && opt.box.contains({0, 0});
  detail::Tracer tracer(field, opt, umbilic);

  std::vector<Pt> seeds = opt.seeds;
  if (seeds.empty()) {
    int n = std::max(1, opt.seed_grid);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        seeds.push_back({opt.box.xmin + opt.box.width() * (i + 0.5) / n, opt.box.ymin + opt.box.height() * (j + 0.5) / n});
  }

  // one job per (seed, family), run in parallel, assembled in seed order
  std::vector<std::vector<Polyline>> jobs(seeds.size() * 2);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < jobs.size();) {
      const Pt& s = seeds[k / 2];
      int family = 1 + static_cast<int>(k % 2);
      detail::FieldJet j = field.at(s.x, s.y);
      std::optional<Pt> d;
      for (const Pt& r : detail::root_directions(j))
        if (detail::family_of(j, r) == family) d = r;
      if (!d) continue;
      auto fwd = tracer.trace(s, family, *d);
      auto bwd = tracer.trace(s, family, {-d->x, -d->y});
      std::vector<Polyline>& out = jobs[k];
      // join the two halves through the seed when both start there in this family
      if (!bwd.empty() && !fwd.empty() && bwd.front().family == family && fwd.front().family == family) {
        Polyline joined{family, false, {}};
        joined.pts.assign(bwd.front().pts.rbegin(), bwd.front().pts.rend());
        joined.pts.insert(joined.pts.end(), fwd.front().pts.begin() + 1, fwd.front().pts.end());
        out.push_back(std::move(joined));
        out.insert(out.end(), bwd.begin() + 1, bwd.end());
        out.insert(out.end(), fwd.begin() + 1, fwd.end());
      } else {
        out.insert(out.end(), bwd.begin(), bwd.end());
        out.insert(out.end(), fwd.begin(), fwd.end());
      }
    }
  };
  std::size_t nthreads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& j : jobs)
    for (auto& l : j) pp.lines.push_back(std::move(l));

  if (umbilic) {
    Marker m{MarkerKind::Umbilic, {0, 0}, false, ""};
    ConfigLabel cfg = classify_config(w.truncated(1));
    UPoly phi = cfg.roots.empty() ? UPoly() : phi_alpha(w).phi;
    m.label = cfg.to_string();
    pp.markers.push_back(m);
    double r = 0.08 * std::min(opt.box.width(), opt.box.height());
    auto dirs = detail::radial_directions(field);
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      const auto& rd = dirs[k];
      // saddle/node type from the exact 1-jet analysis, matched by slope
      char type = '?';
      for (const auto& root : cfg.roots) {
        double slope;
        bool q;
        if (root.at_infinity) {
          q = true;
          slope = 0;
        } else {
          RootInterval iv = root.where;
          while (!iv.exact() && iv.hi - iv.lo > Scalar(1, 1) / Scalar(1000000000000LL)) refine_root(phi, iv);
          double p = iv.approx();
          q = std::abs(p) > 1;
          slope = q ? 1 / p : p;
        }
        if (q == rd.qchart && std::abs(slope - rd.p) < 1e-4) type = root.type == RootType::Saddle ? 'S' : 'N';
      }
      pp.markers.push_back({MarkerKind::Direction, {r * rd.dir.x, r * rd.dir.y}, false, std::string(1, type)});
      if (!opt.separatrices || type != 'S') continue;
      for (double sg : {1.0, -1.0}) {
        Pt d{sg * rd.dir.x, sg * rd.dir.y};
        Pt start{opt.step * d.x, opt.step * d.y};
        detail::FieldJet j = field.at(start.x, start.y);
        int fam = detail::family_of(j, d);
        if (fam == 0) fam = 1;
        detail::Tracer::Lift l{rd.qchart, start.x, start.y, rd.p};
        auto pieces = tracer.trace(start, fam, d, l, true);
        if (pieces.empty()) continue;
        pieces.front().pts.insert(pieces.front().pts.begin(), Pt{0, 0});
        pp.separatrix_directions.push_back(d);
        for (auto& pc : pieces) pp.lines.push_back(std::move(pc));
      }
    }
  }

  if (opt.overlays) {
    auto delta = [&](double u, double v) { return field.at(u, v).delta(); };
    Overlay disc{"discriminant", detail::contour(delta, opt.box, opt.contour_cells)};
    if (ld) {
      detail::FastPoly ldf(*ld);
      Overlay ldo{"ld", detail::contour([&](double u, double v) { return ldf(u, v); }, opt.box, opt.contour_cells)};
      Overlay lpl{"lpl", {}};
      std::vector<std::array<Pt, 2>> rest;
      for (const auto& s : disc.segments) {
        Pt m{0.5 * (s[0].x + s[1].x), 0.5 * (s[0].y + s[1].y)};
        (ldf(m.x, m.y) > 0 ? lpl.segments : rest).push_back(s);
      }
      disc.segments = std::move(rest);
      if (!ldo.segments.empty()) pp.overlays.push_back(std::move(ldo));
      if (!lpl.segments.empty()) pp.overlays.push_back(std::move(lpl));
    }
    // folded singularities: the double direction is tangent to the discriminant
    std::vector<std::array<Pt, 2>> all = disc.segments;
    for (const auto& o : pp.overlays)
      if (o.kind == "lpl") all.insert(all.end(), o.segments.begin(), o.segments.end());
    auto tangency = [&](const Pt& x) {
      detail::FieldJet j = field.at(x.x, x.y);
      Pt d = std::abs(j.a) >= std::abs(j.c) ? Pt{2 * j.a, -j.b} : Pt{-j.b, 2 * j.c};
      return j.delta_u() * d.x + j.delta_v() * d.y;
    };
    for (const auto& s : all) {
      double g0 = tangency(s[0]), g1 = tangency(s[1]);
      if ((g0 < 0) == (g1 < 0)) continue;
      double t = g0 / (g0 - g1);
      Pt x{s[0].x + t * (s[1].x - s[0].x), s[0].y + t * (s[1].y - s[0].y)};
      if (umbilic && detail::norm(x) < 4 * opt.step) continue;
      detail::FieldJet j = field.at(x.x, x.y);
      bool q = std::abs(j.a) < std::abs(j.c);
      double p = q ? -j.b / (2 * j.c) : -j.b / (2 * j.a);
      pp.markers.push_back({MarkerKind::Folded, x, true, std::string(1, detail::folded_type(field, q, x.x, x.y, p))});
    }
    if (!disc.segments.empty()) pp.overlays.insert(pp.overlays.begin(), std::move(disc));
  }
  return pp;
}

inline PhasePortrait integrate_lines(const MongePatch& p, const PortraitOptions& opt) {
  BdeGerm w = principal_bde_exact(p);
  std::optional<JetPoly> ld;
  if (p.ambient == Ambient::Minkowski) ld = special_curves(p, JetPoly::kExact).ld;
  return integrate_lines(w, opt, ld);
}

struct PortraitStyle {
  double size = 480;
  double margin = 12;
  double line_width = 0.7;
  double separatrix_width = 1.6;
  double overlay_width = 1.2;
  std::string family1 = "#1f4e9c";
  std::string family2 = "#b03a2e";
  std::string discriminant = "#2e8b57";
  std::string ld = "#8e44ad";
  std::string lpl = "#d68910";
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

}  // namespace detail

/// Deterministic SVG 1.1 rendering.
inline std::string emit_svg(const PhasePortrait& pp, const PortraitStyle& st = {}) {
  using detail::fmt;
  const Box& b = pp.box;
  double scale = st.size / std::max(b.width(), b.height());
  double W = b.width() * scale + 2 * st.margin, H = b.height() * scale + 2 * st.margin;
  auto X = [&](double x) { return fmt(st.margin + (x - b.xmin) * scale); };
  auto Y = [&](double y) { return fmt(st.margin + (b.ymax - y) * scale); };
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(W) << "\" height=\"" << fmt(H)
    << "\" viewBox=\"0 0 " << fmt(W) << " " << fmt(H) << "\">\n";
  o << "<style>\n"
    << "  .frame { fill: none; stroke: #000; stroke-width: 1; }\n"
    << "  .axis { stroke: #999; stroke-width: 0.5; }\n"
    << "  .f1 { fill: none; stroke: " << st.family1 << "; stroke-width: " << st.line_width << "; }\n"
    << "  .f2 { fill: none; stroke: " << st.family2 << "; stroke-width: " << st.line_width
    << "; stroke-dasharray: 4 2; }\n"
    << "  .separatrix { stroke-width: " << st.separatrix_width << "; }\n"
    << "  .discriminant { fill: none; stroke: " << st.discriminant << "; stroke-width: " << st.overlay_width << "; }\n"
    << "  .ld { fill: none; stroke: " << st.ld << "; stroke-width: " << st.overlay_width << "; }\n"
    << "  .lpl { fill: none; stroke: " << st.lpl << "; stroke-width: " << st.overlay_width << "; }\n"
    << "  .umbilic { fill: #fff; stroke: #000; stroke-width: 1.2; }\n"
    << "  .folded { fill: #000; stroke: #000; }\n"
    << "  .direction { font: 10px sans-serif; fill: #000; }\n"
    << "</style>\n";
  o << "<rect class=\"frame\" x=\"" << X(b.xmin) << "\" y=\"" << Y(b.ymax) << "\" width=\"" << fmt(b.width() * scale)
    << "\" height=\"" << fmt(b.height() * scale) << "\"/>\n";
  if (b.ymin < 0 && b.ymax > 0)
    o << "<line class=\"axis\" x1=\"" << X(b.xmin) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(b.xmax) << "\" y2=\"" << Y(0)
      << "\"/>\n";
  if (b.xmin < 0 && b.xmax > 0)
    o << "<line class=\"axis\" x1=\"" << X(0) << "\" y1=\"" << Y(b.ymin) << "\" x2=\"" << X(0) << "\" y2=\"" << Y(b.ymax)
      << "\"/>\n";
  for (const auto& ov : pp.overlays) {
    o << "<path class=\"" << ov.kind << "\" d=\"";
    for (const auto& s : ov.segments) o << "M" << X(s[0].x) << " " << Y(s[0].y) << "L" << X(s[1].x) << " " << Y(s[1].y);
    o << "\"/>\n";
  }
  for (int fam : {1, 2}) {
    o << "<g class=\"f" << fam << "\">\n";
    for (const auto& l : pp.lines) {
      if (l.family != fam || l.pts.size() < 2) continue;
      o << "<path" << (l.separatrix ? " class=\"separatrix\"" : "") << " d=\"";
      for (std::size_t k = 0; k < l.pts.size(); ++k) o << (k ? "L" : "M") << X(l.pts[k].x) << " " << Y(l.pts[k].y);
      o << "\"/>\n";
    }
    o << "</g>\n";
  }
  for (const auto& m : pp.markers) {
    switch (m.kind) {
      case MarkerKind::Umbilic:
        o << "<circle class=\"umbilic\" cx=\"" << X(m.at.x) << "\" cy=\"" << Y(m.at.y) << "\" r=\"4\"/>\n";
        break;
      case MarkerKind::Folded:
        o << "<circle class=\"folded\" cx=\"" << X(m.at.x) << "\" cy=\"" << Y(m.at.y) << "\" r=\"3\"/>\n";
        o << "<text class=\"direction\" x=\"" << X(m.at.x) << "\" y=\"" << Y(m.at.y) << "\" dx=\"4\" dy=\"-4\">" << m.label
          << "</text>\n";
        break;
      case MarkerKind::Direction:
        o << "<text class=\"direction\" x=\"" << X(m.at.x) << "\" y=\"" << Y(m.at.y) << "\">" << m.label << "</text>\n";
        break;
    }
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace umbilic
