#include "sectorsolve/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace sectorsolve::oracles {

double halfplane_profile(double x1) {
  if (x1 < 0) throw std::domain_error("half-plane profile needs x1 >= 0");
  return 2.0 * std::log1p(x1 / std::sqrt(2.0));
}

double disk_closed_form(double R, double x_rel) {
  if (R <= 0) throw std::domain_error("disk radius must be positive");
  if (x_rel < 0 || x_rel > R) throw std::domain_error("point outside the disk");
  const double A = std::sqrt(2.0) + std::sqrt(2.0 + R * R);
  const double A2 = A * A;
  const double q = A2 - x_rel * x_rel;
  return std::log(q * q / (8.0 * A2));
}

namespace {

using State = std::array<double, 2>;  // (v, v')

// Dormand-Prince 5(4) with standard step control. f must be smooth on the
// integration interval.
class AdaptiveRk {
public:
  AdaptiveRk(std::function<void(double, const State&, State&)> f, double tol,
             double abort_above = std::numeric_limits<double>::infinity())
      : f_(std::move(f)), tol_(tol), abort_above_(abort_above) {}

  /// Integrates y from r0 to r1, writing values at the sorted output radii
  /// inside (r0, r1] when provided.
  void integrate(double r0, double r1, State& y,
                 const std::vector<double>* out_r = nullptr,
                 std::vector<State>* out_y = nullptr) {
    size_t next_out = 0;
    if (out_r) {
      while (next_out < out_r->size() && (*out_r)[next_out] <= r0 + 1e-300)
        ++next_out;
    }
    double r = r0;
    double h = (r1 - r0) * 1e-3;
    int steps = 0;
    while (r < r1 - 1e-14 * std::abs(r1)) {
      if (++steps > 2000000) throw OracleFailure("ODE step limit exceeded");
      double target = r1;
      if (out_r && next_out < out_r->size()) target = std::min(target, (*out_r)[next_out]);
      h = std::min(h, target - r);
      State y5;
      const double err = step(r, y, h, y5);
      if (err <= 1.0) {
        r += h;
        y = y5;
        if (out_r && next_out < out_r->size() &&
            std::abs(r - (*out_r)[next_out]) <= 1e-12 * (1 + std::abs(r))) {
          if (out_y) out_y->push_back(y);
          ++next_out;
        }
      }
      const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
      h = std::max(h * factor, 1e-15 * (std::abs(r1 - r0)));
    }
  }

private:
  double step(double r, const State& y, double h, State& y5) const {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    State k1, k2, k3, k4, k5, k6, k7, tmp;
    f_(r, y, k1);
    auto axpy = [&](std::initializer_list<std::pair<double, const State*>> terms) {
      tmp = y;
      for (const auto& [a, k] : terms) {
        tmp[0] += h * a * (*k)[0];
        tmp[1] += h * a * (*k)[1];
      }
    };
    axpy({{1.0 / 5, &k1}});
    f_(r + c2 * h, tmp, k2);
    axpy({{3.0 / 40, &k1}, {9.0 / 40, &k2}});
    f_(r + c3 * h, tmp, k3);
    axpy({{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}});
    f_(r + c4 * h, tmp, k4);
    axpy({{19372.0 / 6561, &k1}, {-25360.0 / 2187, &k2}, {64448.0 / 6561, &k3},
          {-212.0 / 729, &k4}});
    f_(r + c5 * h, tmp, k5);
    axpy({{9017.0 / 3168, &k1}, {-355.0 / 33, &k2}, {46732.0 / 5247, &k3},
          {49.0 / 176, &k4}, {-5103.0 / 18656, &k5}});
    f_(r + h, tmp, k6);
    axpy({{35.0 / 384, &k1}, {500.0 / 1113, &k3}, {125.0 / 192, &k4},
          {-2187.0 / 6784, &k5}, {11.0 / 84, &k6}});
    y5 = tmp;
    f_(r + h, y5, k7);
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600;
    static constexpr double e3 = 500.0 / 1113 - 7571.0 / 16695;
    static constexpr double e4 = 125.0 / 192 - 393.0 / 640;
    static constexpr double e5 = -2187.0 / 6784 + 92097.0 / 339200;
    static constexpr double e6 = 11.0 / 84 - 187.0 / 2100;
    static constexpr double e7 = -1.0 / 40;
    double err = 0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
      const double sc = tol_ + tol_ * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    return err;
  }

  std::function<void(double, const State&, State&)> f_;
  double tol_;
};

// (r v')' = r e^v  <=>  v'' = e^v - v'/r.
void radial_rhs(double r, const State& y, State& dy) {
  dy[0] = y[1];
  dy[1] = std::exp(y[0]) - y[1] / r;
}

// Series start near r = 0: v = v0 + e^{v0} r^2/4 + e^{2 v0} r^4/64.
State series_start(double v0, double r) {
  const double w = std::exp(v0);
  State y;
  y[0] = v0 + w * r * r / 4 + w * w * std::pow(r, 4) / 64;
  y[1] = w * r / 2 + w * w * std::pow(r, 3) / 16;
  return y;
}

double solve_scalar(const std::function<double(double)>& g, double lo, double hi,
                    double tol) {
  double glo = g(lo), ghi = g(hi);
  int widen = 0;
  while (glo * ghi > 0) {
    if (++widen > 60) throw OracleFailure("shooting bracket not found");
    lo -= (hi - lo);
    glo = g(lo);
  }
  for (int i = 0; i < 12; ++i) {  // bisection to localize
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (glo * gm <= 0) {
      hi = mid;
      ghi = gm;
    } else {
      lo = mid;
      glo = gm;
    }
  }
  double a = lo, b = hi, ga = glo, gb = ghi;
  for (int i = 0; i < 100; ++i) {  // secant with bracket safeguard
    if (std::abs(gb - ga) < 1e-300) break;
    double c = b - gb * (b - a) / (gb - ga);
    if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5 * (a + b);
    const double gc = g(c);
    if (std::abs(gc) < tol) return c;
    if (ga * gc <= 0) {
      b = c;
      gb = gc;
    } else {
      a = c;
      ga = gc;
    }
    if (std::abs(b - a) < tol * (1 + std::abs(b))) return 0.5 * (a + b);
  }
  return 0.5 * (a + b);
}

}  // namespace

RadialProfile radial_bvp(RadialKind kind, double r_outer, double epsilon,
                         double r_inner, double ode_tol) {
  if (r_outer <= 0 || epsilon <= 0) throw OracleFailure("radii and epsilon must be positive");
  const double boundary_value = -2.0 * std::log(epsilon);
  RadialProfile profile;
  profile.kind = kind;
  profile.outer_radius = r_outer;
  profile.inner_radius = kind == RadialKind::Ball ? 0.0 : r_inner;
  profile.epsilon = epsilon;

  const int grid_n = 801;

  if (kind == RadialKind::Ball) {
    const double eta = r_outer;
    const double r0 = eta * 1e-7;
    auto end_value = [&](double v0) {
      State y = series_start(v0, r0);
      AdaptiveRk rk(radial_rhs, ode_tol);
      rk.integrate(r0, eta, y);
      return y[0] - boundary_value;
    };
    const double v0 = solve_scalar(end_value, boundary_value - 8, boundary_value,
                                   1e-13 * (1 + std::abs(boundary_value)));
    std::vector<double> out_r;
    for (int i = 1; i < grid_n; ++i) out_r.push_back(eta * i / (grid_n - 1));
    std::vector<State> out_y;
    State y = series_start(v0, r0);
    AdaptiveRk rk(radial_rhs, ode_tol);
    rk.integrate(r0, eta, y, &out_r, &out_y);
    if (out_y.size() != out_r.size()) throw OracleFailure("dense output incomplete");
    profile.r.push_back(0);
    profile.v.push_back(v0);
    profile.vp.push_back(0);
    for (size_t i = 0; i < out_r.size(); ++i) {
      profile.r.push_back(out_r[i]);
      profile.v.push_back(out_y[i][0]);
      profile.vp.push_back(out_y[i][1]);
    }
    profile.vp_outer = profile.vp.back();
    profile.vp_inner = 0;
    // Enforce the boundary value exactly; the shooting residual is below tol.
    profile.v.back() = boundary_value;
    return profile;
  }

  const double a = r_inner, b = r_outer;
  if (!(a > 0) || !(b > a)) throw OracleFailure("annulus needs 0 < a < b");
  auto end_value = [&](double slope) {
    State y{boundary_value, slope};
    AdaptiveRk rk(radial_rhs, ode_tol);
    rk.integrate(a, b, y);
    return y[0] - boundary_value;
  };
  const double bound = 4.0 / a + std::sqrt(2.0) / epsilon;
  const double slope = solve_scalar(end_value, -bound, 0.0,
                                    1e-13 * (1 + std::abs(boundary_value)));
  std::vector<double> out_r;
  for (int i = 1; i < grid_n; ++i) out_r.push_back(a + (b - a) * i / (grid_n - 1));
  std::vector<State> out_y;
  State y{boundary_value, slope};
  AdaptiveRk rk(radial_rhs, ode_tol);
  rk.integrate(a, b, y, &out_r, &out_y);
  if (out_y.size() != out_r.size()) throw OracleFailure("dense output incomplete");
  profile.r.push_back(a);
  profile.v.push_back(boundary_value);
  profile.vp.push_back(slope);
  for (size_t i = 0; i < out_r.size(); ++i) {
    profile.r.push_back(out_r[i]);
    profile.v.push_back(out_y[i][0]);
    profile.vp.push_back(out_y[i][1]);
  }
  profile.v.back() = boundary_value;
  profile.vp_inner = slope;
  profile.vp_outer = profile.vp.back();
  return profile;
}

RadialIdentityReport radial_identity_check(const RadialProfile& profile) {
  RadialIdentityReport report;
  const double eps = profile.epsilon;
  if (profile.kind == RadialKind::Ball) {
    const double eta = profile.outer_radius;
    const double vp = profile.vp_outer;
    const double lhs = eta * eta * vp * vp / 2;
    const double rhs = eta * eta / (eps * eps) - 2 * eta * vp;
    report.identity_residual = std::abs(lhs - rhs);
    // Lower bound implied by the identity: with X = 2 eta^2 / eps^2,
    // v'(eta) = X/eta / (sqrt(4 + X) + 2) >= X/eta / (sqrt(X) + 4).
    const double X = 2 * eta * eta / (eps * eps);
    report.derivative_bound = (X / eta) / (std::sqrt(X) + 4.0);
    report.derivative_bound_ok = vp + 1e-9 >= report.derivative_bound;
    return report;
  }
  const double A = profile.inner_radius;
  const double vpa = profile.vp_inner;
  // Interior critical radius: first sign change of v'.
  report.critical_radius_ok = false;
  double c = 0, vc = 0;
  for (size_t i = 1; i < profile.r.size(); ++i) {
    if (profile.vp[i - 1] <= 0 && profile.vp[i] > 0) {
      const double t = -profile.vp[i - 1] / (profile.vp[i] - profile.vp[i - 1]);
      c = profile.r[i - 1] + t * (profile.r[i] - profile.r[i - 1]);
      vc = profile.v[i - 1] + t * (profile.v[i] - profile.v[i - 1]);
      report.critical_radius_ok = c > profile.inner_radius && c < profile.outer_radius;
      break;
    }
  }
  report.critical_radius = c;
  const double lhs = -(A * vpa) * (A * vpa);
  const double rhs = 2 * c * c * std::exp(vc) - 2 * A * A / (eps * eps) + 4 * A * vpa;
  report.identity_residual = std::abs(lhs - rhs);
  report.derivative_bound = 4.0 / A + std::sqrt(2.0) / eps;
  report.derivative_bound_ok = vpa <= 1e-12 && std::abs(vpa) <= report.derivative_bound;
  return report;
}

}  // namespace sectorsolve::oracles
