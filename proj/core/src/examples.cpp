#include "hjsc/examples.hpp"

#include <algorithm>
#include <cmath>

#include "hjsc/errors.hpp"

namespace hjsc {
namespace {

std::shared_ptr<const Reference1D> abs_cone_reference() {
  // u' = −(f − u)^{1/2} on (0, 1) with u(1) = 0, mirrored to (−1, 0).
  static const std::shared_ptr<const Reference1D> ref = [] {
    const PowerHamiltonian h(2.0, 1.0);
    const Reference1D right = integrate_branch(h, costs::abs_cone(), 1.0, 0.0, -1, 0.0);
    return std::make_shared<const Reference1D>(Reference1D::join(right.mirrored(), right));
  }();
  return ref;
}

double simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol) {
  const double fa = g(a);
  const double fb = g(b);
  const double fm = g(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(g, a, b, fa, fm, fb, whole, tol, 40);
}

ExampleCase make_case(std::string id, std::string title, PowerHamiltonian h, RunningCost f,
                      Domain domain) {
  ExampleCase c{std::move(id), std::move(title), h, std::move(f), std::move(domain), {}, {}, {}, {}, {}};
  return c;
}

}  // namespace

std::vector<ExampleCase> catalog() {
  const Domain unit = Domain::interval(-1.0, 1.0);
  std::vector<ExampleCase> out;

  {
    auto ref = abs_cone_reference();
    ExampleCase c = make_case("E1", "cone cost 1-|x|: boundary blow-up, finite hitting", PowerHamiltonian(2.0, 1.0),
                  costs::abs_cone(), unit);
    c.reference_u = [ref](Vec x) { return ref->value(x.x); };
    c.reference_profile = ref;
    c.expected.blowup_at_boundary = true;
    c.expected.finite_hitting_time = true;
    out.push_back(std::move(c));
  }
  {
    ExampleCase c = make_case("E2", "power well (|x|-1/2)^2: interior minimum, semiconcave",
                  PowerHamiltonian(2.0, 0.5), costs::power_well(0.5), unit);
    c.reference_u = [](Vec x) {
      const double r = std::abs(x.x);
      return r >= 0.5 ? 0.5 * (r - 0.5) * (r - 0.5) : 0.0;
    };
    c.reference_curve = [](Vec x0, double s) -> Vec {
      if (x0.x > 0.5) return {0.5 + (x0.x - 0.5) * std::exp(-s), 0.0};
      if (x0.x < -0.5) return {-0.5 + (x0.x + 0.5) * std::exp(-s), 0.0};
      return x0;
    };
    c.expected.globally_semiconcave = true;
    c.expected.infinite_hitting_time = true;
    out.push_back(std::move(c));
  }
  {
    ExampleCase c = make_case("E3", "quadratic x^2", PowerHamiltonian(2.0, 0.5), costs::quadratic(), unit);
    c.reference_u = [](Vec x) { return 0.5 * x.x * x.x; };
    c.expected.globally_semiconcave = true;
    out.push_back(std::move(c));
  }
  {
    ExampleCase c = make_case("E4", "piecewise f2: quadratic core, linear shoulders",
                  PowerHamiltonian(2.0, 0.5), costs::piecewise_f2(), unit);
    c.reference_u = [](Vec x) { return 0.5 * x.x * x.x; };
    c.reference_window = std::pair{-0.1, 0.1};
    c.expected.blowup_at_boundary = true;
    out.push_back(std::move(c));
  }
  // For p = 3/2 the growth bound |f'| ≤ C·f^{1/p} needs f to vanish at least
  // cubically at ±1, so that member uses (1−x²)⁴.
  for (double p : {2.0, 1.5}) {
    const bool quadratic_h = p == 2.0;
    ExampleCase c = make_case(quadratic_h ? "E5" : "E5-p1.5",
                              quadratic_h ? "compliant bump (1-x^2)^2" : "compliant bump (1-x^2)^4",
                              PowerHamiltonian(p, 1.0), costs::bump(quadratic_h ? 1 : 2), unit);
    c.expected.globally_semiconcave = true;
    c.expected.infinite_hitting_time = true;
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<ExampleCase> find_case(std::string_view id) {
  for (ExampleCase& c : catalog()) {
    if (c.id == id) return std::move(c);
  }
  return std::nullopt;
}

Path piecewise_linear_path(std::vector<double> times, std::vector<Vec> points) {
  if (times.empty() || times.size() != points.size() || times.front() != 0.0) {
    throw ParameterError("piecewise-linear path needs matching knots starting at s = 0");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw ParameterError("path knot times must increase");
  }
  auto locate = [times](double s) {
    auto it = std::upper_bound(times.begin(), times.end(), s);
    return static_cast<std::size_t>(std::distance(times.begin(), it));
  };
  Path path;
  path.breakpoints = times;
  path.position = [times, points, locate](double s) -> Vec {
    const std::size_t k = locate(s);
    if (k == 0) return points.front();
    if (k >= times.size()) return points.back();
    const double t = (s - times[k - 1]) / (times[k] - times[k - 1]);
    return points[k - 1] + t * (points[k] - points[k - 1]);
  };
  path.velocity = [times, points, locate](double s) -> Vec {
    const std::size_t k = locate(s);
    if (k == 0 || k >= times.size()) return {};
    return (points[k] - points[k - 1]) / (times[k] - times[k - 1]);
  };
  return path;
}

Path random_competitor(const Domain& domain, Vec start, std::mt19937_64& rng) {
  const Box& box = domain.bounding_box();
  std::uniform_real_distribution<double> ux(box.x_lo, box.x_hi);
  std::uniform_real_distribution<double> uy(box.y_lo, box.y_hi);
  std::uniform_real_distribution<double> duration(0.05, 2.0);
  std::uniform_int_distribution<int> legs(1, 4);

  auto leg_inside = [&](Vec a, Vec b) {
    for (int m = 0; m <= 16; ++m) {
      if (!domain.in_closure(a + (m / 16.0) * (b - a))) return false;
    }
    return true;
  };

  std::vector<double> times{0.0};
  std::vector<Vec> points{start};
  const int n = legs(rng);
  for (int k = 0; k < n; ++k) {
    Vec next = points.back();
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const Vec cand{ux(rng), domain.dimension() == 2 ? uy(rng) : 0.0};
      if (leg_inside(points.back(), cand)) {
        next = cand;
        break;
      }
    }
    times.push_back(times.back() + duration(rng));
    points.push_back(next);
  }
  return piecewise_linear_path(std::move(times), std::move(points));
}

double path_cost(const PowerHamiltonian& h, const RunningCost& f, const Domain& domain,
                 const Path& path, double horizon, double tol) {
  if (!(horizon > 0.0)) throw ParameterError("path horizon must be positive");
  std::vector<double> knots{0.0};
  for (double b : path.breakpoints) {
    if (b > 0.0 && b < horizon) knots.push_back(b);
  }
  knots.push_back(horizon);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    for (int m = 0; m <= 64; ++m) {
      const double s = knots[k] + (knots[k + 1] - knots[k]) * m / 64.0;
      if (!domain.in_closure(path.position(s))) {
        throw AdmissibilityError("competitor path leaves the closed domain");
      }
    }
  }

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k];
    const double b = knots[k + 1];
    // Evaluate the velocity strictly inside the piece so jumps at knots are
    // attributed to the correct side.
    const double shrink = 1e-14 * (1.0 + b);
    auto integrand = [&](double s) {
      const double inner = std::clamp(s, a + shrink, b - shrink);
      return std::exp(-s) * (h.kinetic_term(path.velocity(inner)) + f(path.position(s)));
    };
    total += integrate(integrand, a, b, tol);
  }
  total += std::exp(-horizon) * f(path.position(horizon));
  return total;
}

}  // namespace hjsc
