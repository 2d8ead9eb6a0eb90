#include "hjsc/curves.hpp"

#include <algorithm>
#include <cmath>

#include "hjsc/errors.hpp"

namespace hjsc {
namespace {

std::vector<Vec> descent_directions(int dimension) {
  if (dimension == 1) return {{1.0, 0.0}, {-1.0, 0.0}};
  std::vector<Vec> out;
  for (int k = 0; k < 16; ++k) {
    const double t = 2.0 * M_PI * k / 16.0;
    out.push_back({std::cos(t), std::sin(t)});
  }
  return out;
}

// Discounted running cost and costate from positions and velocities.
void fill_derived(MinimizingCurve& c, const PowerHamiltonian& h, const RunningCost& f) {
  const std::size_t n = c.times.size();
  c.costates.resize(n);
  c.running_cost.assign(n, 0.0);
  double prev_integrand = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = c.times[k];
    c.costates[k] = (-std::exp(-s)) * gradient_from_velocity(h, c.velocities[k]);
    const double integrand = std::exp(-s) * (h.kinetic_term(c.velocities[k]) + f(c.positions[k]));
    if (k > 0) {
      const double ds = s - c.times[k - 1];
      c.running_cost[k] = c.running_cost[k - 1] + 0.5 * ds * (integrand + prev_integrand);
    }
    prev_integrand = integrand;
  }
}

std::size_t bracket(const std::vector<double>& times, double s) {
  if (times.size() < 2) return 0;
  auto it = std::upper_bound(times.begin(), times.end(), s);
  auto k = static_cast<std::size_t>(std::distance(times.begin(), it));
  return std::clamp<std::size_t>(k, 1, times.size() - 1) - 1;
}

// Least-squares slope of log(speed) against log(distance).
std::optional<double> fit_exponent(const std::vector<double>& dist, const std::vector<double>& speed) {
  if (dist.size() < 6) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    mx += std::log(dist[k]);
    my += std::log(speed[k]);
  }
  mx /= static_cast<double>(dist.size());
  my /= static_cast<double>(dist.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double dx = std::log(dist[k]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(speed[k]) - my);
  }
  if (sxx <= 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace

Vec MinimizingCurve::position_at(double s) const {
  if (times.empty()) throw DomainError("empty curve");
  if (s < times.front() - 1e-12 || s > times.back() + 1e-12) {
    throw DomainError("time outside the curve's range");
  }
  if (times.size() == 1) return positions.front();
  const std::size_t k = bracket(times, s);
  const double t = std::clamp((s - times[k]) / (times[k + 1] - times[k]), 0.0, 1.0);
  return positions[k] + t * (positions[k + 1] - positions[k]);
}

double MinimizingCurve::cost_at(double s) const {
  if (times.empty()) throw DomainError("empty curve");
  if (s < times.front() - 1e-12 || s > times.back() + 1e-12) {
    throw DomainError("time outside the curve's range");
  }
  if (times.size() == 1) return running_cost.front();
  const std::size_t k = bracket(times, s);
  const double t = std::clamp((s - times[k]) / (times[k + 1] - times[k]), 0.0, 1.0);
  return running_cost[k] + t * (running_cost[k + 1] - running_cost[k]);
}

MinimizingCurve make_curve(const PowerHamiltonian& h, const RunningCost& f,
                           std::vector<double> times, std::vector<Vec> positions,
                           std::vector<Vec> velocities) {
  if (times.size() != positions.size() || times.size() != velocities.size() || times.empty()) {
    throw ParameterError("curve samples must be non-empty and of equal length");
  }
  MinimizingCurve c;
  c.start = positions.front();
  c.horizon = times.back();
  c.times = std::move(times);
  c.positions = std::move(positions);
  c.velocities = std::move(velocities);
  fill_derived(c, h, f);
  return c;
}

MinimizingCurve extract_curve(const ValueField& u, const PowerHamiltonian& h, const RunningCost& f,
                              Vec x0, double horizon, double dt_curve,
                              const CurveOptions& options) {
  const Grid& grid = u.grid();
  const Domain& dom = grid.domain();
  if (dom.classify(x0) != Membership::kInterior) {
    throw DomainError("curve start must be an interior point");
  }
  if (!(horizon > 0.0)) throw ParameterError("curve horizon must be positive");
  const double dt = dt_curve > 0.0 ? dt_curve : 0.5 * grid.min_spacing();
  const double band = options.boundary_band > 0.0 ? options.boundary_band : 2.0 * grid.min_spacing();

  double f_max = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid.admissible(k)) f_max = std::max(f_max, std::abs(f(grid.node(k))));
  }
  const double floor = options.gradient_floor > 0.0 ? options.gradient_floor : 1e-8 * (1.0 + f_max);
  const double rest_gap = options.rest_gap > 0.0 ? options.rest_gap : 1e-3 * (1.0 + f_max);
  const double probe = grid.min_spacing();
  const std::vector<Vec> directions = descent_directions(grid.dimension());

  // Where the centred gradient vanishes but f − u is clearly positive, the
  // point is a kink of u rather than a rest point; leave it along the
  // steepest one-sided descent (first direction wins ties).
  auto kink_gradient = [&](Vec p) -> Vec {
    const auto up = u.interpolate(p);
    if (!up || f(p) - *up <= rest_gap) return {};
    double best = 0.0;
    Vec dir;
    for (Vec d : directions) {
      const Vec q = p + probe * d;
      if (!dom.in_closure(q)) continue;
      const auto uq = u.interpolate(q);
      if (!uq) continue;
      const double slope = (*up - *uq) / probe;
      if (slope > best) {
        best = slope;
        dir = d;
      }
    }
    return -best * dir;
  };
  auto velocity = [&](Vec p) -> Vec {
    Vec g = field_gradient(u, p);
    if (norm(g) < floor) g = kink_gradient(p);
    if (norm(g) < floor) return {};
    return feedback_velocity(h, g);
  };

  MinimizingCurve c;
  c.start = x0;
  c.horizon = horizon;
  c.boundary_band = band;

  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  std::vector<double> dist;
  Vec x = x0;
  double s = 0.0;
  for (std::size_t k = 0;; ++k) {
    Vec v = velocity(x);
    c.times.push_back(s);
    c.positions.push_back(x);
    c.velocities.push_back(v);
    dist.push_back(dom.distance_to_boundary(x));

    if (!c.band_entry_time && dist.back() <= band) {
      c.band_entry_time = s;
      // Fit speed ∝ dist^α over the approach through [ε, fit_span·ε].
      std::vector<double> ds;
      std::vector<double> sp;
      for (std::size_t j = 0; j + 1 < dist.size(); ++j) {
        const double rate = (dist[j] - dist[j + 1]) / (c.times[j + 1] - c.times[j]);
        if (dist[j] >= band && dist[j] <= options.fit_span * band && rate > 0.0) {
          ds.push_back(dist[j]);
          sp.push_back(rate);
        }
      }
      c.approach_exponent = fit_exponent(ds, sp);
      if (!c.approach_exponent || *c.approach_exponent < options.escape_exponent) {
        c.hitting_time = s;
        break;
      }
    }
    if (k == steps) break;

    const double step = std::min(dt, horizon - s);
    const Vec predictor = dom.clamp_segment(x, x + step * v);
    const Vec v2 = velocity(predictor);
    const Vec target = x + (0.5 * step) * (v + v2);
    const Vec next = dom.clamp_segment(x, target);
    if (!(next == target)) c.velocities.back() = (next - x) / step;
    x = next;
    s = k + 1 == steps ? horizon : s + step;
  }
  fill_derived(c, h, f);
  return c;
}

MinimizingCurve hamilton_ode(const PowerHamiltonian& h, const RunningCost& f, const Domain& domain,
                             Vec x0, Vec eta0, double horizon, double dt_curve,
                             const CurveOptions& options) {
  if (!domain.in_closure(x0)) throw DomainError("shooting start must lie in the closed domain");
  if (!(horizon > 0.0) || !(dt_curve > 0.0)) {
    throw ParameterError("horizon and step must be positive");
  }
  const double band =
      options.boundary_band > 0.0 ? options.boundary_band : 1e-3 * domain.diameter();
  const double qc = h.q() * h.legendre_coeff();
  const double expo = 1.0 / (h.q() - 1.0);
  auto speed_of = [&](double s, Vec eta) -> Vec {
    const double m = norm(eta);
    if (m == 0.0) return {};
    return (std::pow(std::exp(s) * m / qc, expo) / m) * eta;
  };
  auto eta_rate = [&](double s, Vec x) { return std::exp(-s) * f.gradient(x); };
  const Box& box = domain.bounding_box();
  auto outside_box = [&](Vec p) {
    const double slack = options.boundary_band > 0.0 ? options.boundary_band : band;
    const bool out_x = p.x < box.x_lo - slack || p.x > box.x_hi + slack;
    const bool out_y = domain.dimension() == 2 && (p.y < box.y_lo - slack || p.y > box.y_hi + slack);
    return out_x || out_y || !std::isfinite(p.x) || !std::isfinite(p.y);
  };

  std::vector<double> times;
  std::vector<Vec> xs;
  std::vector<Vec> vs;
  std::vector<Vec> etas;
  Vec x = x0;
  Vec eta = eta0;
  double s = 0.0;
  double hit = kInfiniteTime;
  std::optional<double> entry;
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt_curve - 1e-9));
  for (std::size_t k = 0;; ++k) {
    times.push_back(s);
    xs.push_back(x);
    vs.push_back(speed_of(s, eta));
    etas.push_back(eta);
    if (domain.distance_to_boundary(x) <= band || !domain.in_closure(x)) {
      hit = s;
      entry = s;
      break;
    }
    if (k == steps) break;
    const double dt = std::min(dt_curve, horizon - s);
    const Vec kx1 = speed_of(s, eta);
    const Vec ke1 = eta_rate(s, x);
    const Vec kx2 = speed_of(s + 0.5 * dt, eta + (0.5 * dt) * ke1);
    const Vec ke2 = eta_rate(s + 0.5 * dt, x + (0.5 * dt) * kx1);
    const Vec kx3 = speed_of(s + 0.5 * dt, eta + (0.5 * dt) * ke2);
    const Vec ke3 = eta_rate(s + 0.5 * dt, x + (0.5 * dt) * kx2);
    const Vec kx4 = speed_of(s + dt, eta + dt * ke3);
    const Vec ke4 = eta_rate(s + dt, x + dt * kx3);
    x += (dt / 6.0) * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4);
    eta += (dt / 6.0) * (ke1 + 2.0 * ke2 + 2.0 * ke3 + ke4);
    s = k + 1 == steps ? horizon : s + dt;
    if (outside_box(x)) throw RunawayError("shooting trajectory left the bounding box", s);
  }

  MinimizingCurve c = make_curve(h, f, std::move(times), std::move(xs), std::move(vs));
  c.start = x0;
  c.horizon = horizon;
  c.boundary_band = band;
  c.costates = std::move(etas);
  c.hitting_time = hit;
  c.band_entry_time = entry;
  return c;
}

ElResidual el_residual(const MinimizingCurve& curve, const PowerHamiltonian& h,
                       const RunningCost& f, double speed_floor) {
  ElResidual out;
  const std::size_t n = curve.size();
  bool all_still = true;
  for (const Vec& v : curve.velocities) all_still = all_still && norm(v) <= speed_floor;
  if (all_still) {
    out.stationary = true;
    return out;
  }
  if (n < 3) throw ParameterError("Euler-Lagrange residual needs at least three samples");
  auto momentum = [&](std::size_t k) {
    return (-std::exp(-curve.times[k])) * gradient_from_velocity(h, curve.velocities[k]);
  };
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (norm(curve.velocities[k - 1]) <= speed_floor || norm(curve.velocities[k]) <= speed_floor ||
        norm(curve.velocities[k + 1]) <= speed_floor) {
      continue;
    }
    const double ds = curve.times[k + 1] - curve.times[k - 1];
    const Vec dm = (momentum(k + 1) - momentum(k - 1)) / ds;
    const Vec force = std::exp(-curve.times[k]) * f.gradient(curve.positions[k]);
    out.residual = std::max(out.residual, norm(dm - force));
    ++out.evaluated;
  }
  return out;
}

double dpp_defect(const MinimizingCurve& curve, const ValueField& u, double s) {
  const auto u0 = u.interpolate(curve.start);
  const auto us = u.interpolate(curve.position_at(s));
  if (!u0 || !us) throw DomainError("curve leaves the field's admissible region");
  return *u0 - (curve.cost_at(s) + std::exp(-s) * *us);
}

EnergyBalance energy_balance(const MinimizingCurve& curve, const ValueField& u,
                             const RunningCost& f, const PowerHamiltonian& h) {
  if (curve.size() < 2) throw ParameterError("energy balance needs at least two samples");
  std::size_t k1 = 0;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    if (f(curve.positions[k]) > f(curve.positions[k1])) k1 = k;
  }
  EnergyBalance out;
  out.t1 = curve.times[k1];
  auto gap = [&](std::size_t k) {
    const auto uk = u.interpolate(curve.positions[k]);
    if (!uk) throw DomainError("curve leaves the field's admissible region");
    return h.p() * (f(curve.positions[k]) - *uk);
  };
  double prev = gap(k1);
  for (std::size_t k = k1 + 1; k < curve.size(); ++k) {
    const double cur = gap(k);
    out.integral += 0.5 * (curve.times[k] - curve.times[k - 1]) * (prev + cur);
    prev = cur;
  }
  out.value_at_t1 = *u.interpolate(curve.positions[k1]);
  return out;
}

}  // namespace hjsc
