#include "trimodal/quadrature.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "trimodal/error.h"

namespace trimodal::specfun {

namespace {

// Kronrod 21-point abscissae/weights; the odd entries are the 10-point Gauss nodes.
constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208041803034, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

enum class Map { finite, right, left };

struct Piece {
  Map map;
  double anchor;
  double scale;
};

struct Segment {
  double lo, hi;
  double value, err;
  int piece;
  bool operator<(const Segment& o) const { return err < o.err; }
};

double eval_mapped(const Integrand& f, const Piece& pc, double t) {
  if (pc.map == Map::finite) return f(t);
  const double u = 1.0 - t;
  const double x = pc.scale * t / u;
  const double jac = pc.scale / (u * u);
  const double xx = pc.map == Map::right ? pc.anchor + x : pc.anchor - x;
  if (!std::isfinite(xx)) return 0.0;
  const double v = f(xx);
  return v == 0.0 ? 0.0 : v * jac;
}

Segment gk21(const Integrand& f, const Piece& pc, int idx, double lo, double hi) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  const double fc = eval_mapped(f, pc, c);
  double rk = fc * wgk[10];
  double rg = 0.0;
  double rabs = std::fabs(rk);
  double fv1[10], fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = h * xgk[j];
    fv1[j] = eval_mapped(f, pc, c - dx);
    fv2[j] = eval_mapped(f, pc, c + dx);
    rk += wgk[j] * (fv1[j] + fv2[j]);
    rabs += wgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    if (j % 2 == 1) rg += wg[j / 2] * (fv1[j] + fv2[j]);
  }
  const double mean = 0.5 * rk;
  double asc = wgk[10] * std::fabs(fc - mean);
  for (int j = 0; j < 10; ++j) asc += wgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));
  const double result = rk * h;
  const double resabs = rabs * std::fabs(h);
  const double resasc = asc * std::fabs(h);
  double err = std::fabs((rk - rg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  if (!std::isfinite(result)) err = std::numeric_limits<double>::infinity();
  return {lo, hi, result, err, idx};
}

} // namespace

QuadResult integrate(const Integrand& f, std::span<const double> points, const QuadratureSpec& spec,
                     double tail_scale) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_subdivisions < 1)
    throw DomainError("integrate: tolerances must be positive and max_subdivisions >= 1");
  if (points.size() < 2) throw DomainError("integrate: need at least two points");
  if (!(tail_scale > 0.0)) throw DomainError("integrate: tail_scale must be positive");

  std::vector<double> pts(points.begin(), points.end());
  for (size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i - 1] < pts[i])) throw DomainError("integrate: points must be strictly increasing");
  // whole line with no interior cut: split at 0
  if (pts.size() == 2 && std::isinf(pts[0]) && std::isinf(pts[1])) pts = {pts[0], 0.0, pts[1]};

  std::vector<Piece> pieces;
  std::priority_queue<Segment> heap;
  QuadResult out;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    if (std::isinf(a) && std::isinf(b)) throw DomainError("integrate: infinite interior point");
    Piece pc{Map::finite, 0.0, tail_scale};
    double lo = a, hi = b;
    if (std::isinf(b)) {
      pc = {Map::right, a, tail_scale};
      lo = 0.0, hi = 1.0;
    } else if (std::isinf(a)) {
      pc = {Map::left, b, tail_scale};
      lo = 0.0, hi = 1.0;
    }
    pieces.push_back(pc);
    heap.push(gk21(f, pieces.back(), static_cast<int>(pieces.size()) - 1, lo, hi));
    out.evaluations += 21;
  }

  auto totals = [&]() {
    double v = 0.0, e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().err;
      copy.pop();
    }
    return std::pair{v, e};
  };

  auto [value, err] = totals();
  int splits = 0;
  while (err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(value)) &&
         splits < spec.max_subdivisions) {
    Segment s = heap.top();
    const double mid = 0.5 * (s.lo + s.hi);
    if (!(mid > s.lo && mid < s.hi)) break;
    heap.pop();
    const Segment l = gk21(f, pieces[s.piece], s.piece, s.lo, mid);
    const Segment r = gk21(f, pieces[s.piece], s.piece, mid, s.hi);
    heap.push(l);
    heap.push(r);
    out.evaluations += 42;
    value += l.value + r.value - s.value;
    err += l.err + r.err - s.err;
    ++splits;
  }
  std::tie(value, err) = totals();
  out.value = value;
  out.err_est = err;
  out.converged = std::isfinite(value) && err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(value));
  return out;
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  if (!(a < b)) throw DomainError("integrate: need a < b");
  const double pts[] = {a, b};
  return integrate(f, pts, spec);
}

} // namespace trimodal::specfun
