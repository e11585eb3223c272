// SPDX-License-Identifier: Apache-2.0
#include "expsig/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "expsig/errors.hpp"
#include "expsig/format.hpp"

namespace expsig {

namespace {

using TanhSinh = boost::math::quadrature::tanh_sinh<double>;

// Double-exponential rules handle integrable power-law endpoint
// singularities; max_refinements is the hard cap on adaptive refinement.
TanhSinh& integrator_for(int max_refinements) {
  const int levels = std::clamp(max_refinements, 4, 18);
  thread_local std::array<std::unique_ptr<TanhSinh>, 19> cache;
  auto& slot = cache[static_cast<std::size_t>(levels)];
  if (!slot) slot = std::make_unique<TanhSinh>(static_cast<std::size_t>(levels));
  return *slot;
}

template <typename Fn>
double de_integrate(const Fn& fn, double a, double b, double rel_tol,
                    int max_refinements) {
  if (!(b > a)) return 0.0;
  return integrator_for(max_refinements).integrate(fn, a, b, rel_tol);
}

// dv-integral of f(u, .) over [lo, hi]. When one endpoint sits on the
// singular diagonal (== u), evaluation near it goes through f_near_diagonal
// with the rule's exact distance-to-endpoint, so the blowup is probed
// without cancellation.
double inner_segment(const Kernel& k, double u, double lo, double hi,
                     double rel_tol, int max_refinements) {
  if (!(hi > lo)) return 0.0;
  const bool singular_lo = k.diagonal_singular() && lo == u;
  const bool singular_hi = k.diagonal_singular() && hi == u;
  if (!singular_lo && !singular_hi) {
    return de_integrate([&](double v) { return k.f(u, v); }, lo, hi, rel_tol,
                        max_refinements);
  }
  return de_integrate(
      [&](double v, double vc) {
        // vc is the offset to the nearest endpoint: negative with |vc| = v - lo
        // near lo, positive with vc = hi - v near hi. On subnormal-length
        // segments vc can underflow to 0 right at an endpoint; the mass
        // within such a gap of the diagonal is negligible, so contribute 0
        // rather than evaluate on the diagonal itself.
        if (vc == 0.0) {
          if ((singular_hi && v == hi) || (singular_lo && v == lo)) return 0.0;
          return k.f(u, v);
        }
        if (singular_hi && vc > 0.0) return k.f_near_diagonal(u, vc, false);
        if (singular_lo && vc < 0.0) return k.f_near_diagonal(u, -vc, true);
        return k.f(u, v);
      },
      lo, hi, rel_tol, max_refinements);
}

// Inner dv-integral over [c, d] minus the band |v - u| < band, split at the
// diagonal so any blowup sits at segment endpoints.
double inner_integral(const Kernel& k, double u, double c, double d,
                      double band, double rel_tol) {
  const bool split = k.diagonal_singular() || band > 0.0;
  if (split && u > c && u < d) {
    return inner_segment(k, u, c, std::min(d, u - band), rel_tol, 15) +
           inner_segment(k, u, std::max(c, u + band), d, rel_tol, 15);
  }
  if (band > 0.0) {
    // Diagonal outside [c, d]; clip whichever edge the band reaches.
    const double lo = (u <= c) ? std::max(c, u + band) : c;
    const double hi = (u >= d) ? std::min(d, u - band) : d;
    return inner_segment(k, u, lo, hi, rel_tol, 15);
  }
  return inner_segment(k, u, c, d, rel_tol, 15);
}

}  // namespace

double integrate_f_rectangle(const Kernel& k, double a, double b, double c,
                             double d, double band, double rel_tol) {
  if (!(a <= b) || !(c <= d)) {
    throw ArgumentError(
        "rectangle integral: bounds must satisfy a <= b and c <= d");
  }
  if (!(band >= 0.0) || !(rel_tol > 0.0)) {
    throw ArgumentError("rectangle integral: bad band or tolerance");
  }
  if (a == b || c == d) return 0.0;

  // Split the outer u-integral where the inner value kinks: at the diagonal
  // entry/exit points and at the band edges.
  std::vector<double> cuts{a, b};
  for (double x : {c - band, c, c + band, d - band, d, d + band}) {
    if (x > a && x < b) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += de_integrate(
        [&](double u) { return inner_integral(k, u, c, d, band, rel_tol); },
        cuts[i], cuts[i + 1], rel_tol, 15);
  }
  return total;
}

double Kernel::covariance(double s, double t) const {
  if (!(s >= 0.0) || !(t >= 0.0)) {
    throw ArgumentError("covariance: times must be nonnegative");
  }
  if (s == 0.0 || t == 0.0) return 0.0;
  return integrate_f_rectangle(*this, 0.0, s, 0.0, t);
}

double Kernel::rect_increment_cov(double s, double t, double sigma,
                                  double tau) const {
  if (!(0.0 <= s && s <= t) || !(0.0 <= sigma && sigma <= tau)) {
    throw ArgumentError(
        "rect_increment_cov: intervals must be ordered and nonnegative");
  }
  return integrate_f_rectangle(*this, s, t, sigma, tau);
}

double f_eval(const Kernel& k, double u, double v) {
  if (!std::isfinite(u) || !std::isfinite(v) || u < 0.0 || v < 0.0) {
    throw ArgumentError("f: arguments must be finite and nonnegative");
  }
  if (u == v && k.diagonal_singular()) {
    throw ArgumentError("f: evaluation on the singular diagonal u = v");
  }
  return k.f(u, v);
}

double covariance(const Kernel& k, double s, double t, double horizon) {
  if (!(horizon > 0.0) || !(s >= 0.0) || !(t >= 0.0) || s > horizon ||
      t > horizon) {
    throw ArgumentError("covariance: times must lie in [0, T]");
  }
  return k.covariance(s, t);
}

double rect_increment_cov(const Kernel& k, double s, double t, double sigma,
                          double tau, double horizon) {
  if (!(horizon > 0.0) || !(0.0 <= s && s <= t && t <= horizon) ||
      !(0.0 <= sigma && sigma <= tau && tau <= horizon)) {
    throw ArgumentError(
        "rect_increment_cov: need 0 <= s <= t <= T and 0 <= sigma <= tau <= T");
  }
  return k.rect_increment_cov(s, t, sigma, tau);
}

FbmKernel::FbmKernel(double hurst) : hurst_(hurst) {
  if (!std::isfinite(hurst) || !(hurst > 0.5) || !(hurst < 1.0)) {
    throw ArgumentError("fbm: hurst index must lie in (1/2, 1)");
  }
  c_h_ = std::sqrt(hurst * (2.0 * hurst - 1.0) /
                   std::beta(2.0 - 2.0 * hurst, hurst - 0.5));
}

double FbmKernel::f(double u, double v) const {
  const double gap = std::abs(u - v);
  if (gap == 0.0) {
    throw ArgumentError("fbm: density diverges on the diagonal u = v");
  }
  return hurst_ * (2.0 * hurst_ - 1.0) * std::pow(gap, 2.0 * hurst_ - 2.0);
}

double FbmKernel::f_near_diagonal(double u, double gap, bool) const {
  static_cast<void>(u);
  if (gap == 0.0) {
    throw ArgumentError("fbm: density diverges on the diagonal u = v");
  }
  return hurst_ * (2.0 * hurst_ - 1.0) * std::pow(gap, 2.0 * hurst_ - 2.0);
}

double FbmKernel::covariance(double s, double t) const {
  if (!(s >= 0.0) || !(t >= 0.0)) {
    throw ArgumentError("covariance: times must be nonnegative");
  }
  const double two_h = 2.0 * hurst_;
  return 0.5 * (std::pow(s, two_h) + std::pow(t, two_h) -
                std::pow(std::abs(t - s), two_h));
}

double FbmKernel::rect_increment_cov(double s, double t, double sigma,
                                     double tau) const {
  if (!(0.0 <= s && s <= t) || !(0.0 <= sigma && sigma <= tau)) {
    throw ArgumentError(
        "rect_increment_cov: intervals must be ordered and nonnegative");
  }
  return covariance(t, tau) - covariance(t, sigma) - covariance(s, tau) +
         covariance(s, sigma);
}

std::string FbmKernel::describe() const {
  return "fbm(hurst=" + format_double(hurst_) + ")";
}

double FbmKernel::volterra_K(double t, double s) const {
  if (!(s > 0.0)) {
    throw ArgumentError("fbm volterra kernel: need s > 0");
  }
  if (t <= s) return 0.0;
  const double h = hurst_;
  const double tail = de_integrate(
      [&](double u, double uc) {
        // uc < 0 near the singular endpoint s with |uc| = u - s held exactly;
        // a zero gap means the abscissa underflowed onto s, where the
        // remaining mass is negligible.
        const double from_s = uc < 0.0 ? -uc : u - s;
        if (from_s == 0.0) return 0.0;
        return std::pow(from_s, h - 1.5) * std::pow(u, h - 0.5);
      },
      s, t, 1e-10, 15);
  return c_h_ * std::pow(s, 0.5 - h) * tail;
}

double FbmKernel::volterra_dK(double t, double s) const {
  if (!(s > 0.0) || !(t > s)) {
    throw ArgumentError("fbm volterra kernel derivative: need 0 < s < t");
  }
  const double h = hurst_;
  return c_h_ * std::pow(s, 0.5 - h) * std::pow(t - s, h - 1.5) *
         std::pow(t, h - 0.5);
}

ExplicitFKernel::ExplicitFKernel(PointFn f, std::string name,
                                 bool diagonal_singular,
                                 std::optional<RectFn> rect)
    : f_(std::move(f)),
      name_(std::move(name)),
      diagonal_singular_(diagonal_singular),
      rect_(std::move(rect)) {
  if (!f_) {
    throw ArgumentError("explicit kernel: missing density evaluator");
  }
}

double ExplicitFKernel::f(double u, double v) const {
  if (u == v && diagonal_singular_) {
    throw ArgumentError("explicit kernel: evaluation on the singular diagonal");
  }
  return f_(u, v);
}

double ExplicitFKernel::covariance(double s, double t) const {
  if (!(s >= 0.0) || !(t >= 0.0)) {
    throw ArgumentError("covariance: times must be nonnegative");
  }
  if (rect_) return (*rect_)(0.0, s, 0.0, t);
  return Kernel::covariance(s, t);
}

double ExplicitFKernel::rect_increment_cov(double s, double t, double sigma,
                                           double tau) const {
  if (!(0.0 <= s && s <= t) || !(0.0 <= sigma && sigma <= tau)) {
    throw ArgumentError(
        "rect_increment_cov: intervals must be ordered and nonnegative");
  }
  if (rect_) return (*rect_)(s, t, sigma, tau);
  return Kernel::rect_increment_cov(s, t, sigma, tau);
}

std::string ExplicitFKernel::describe() const { return name_; }

ExplicitFKernel constant_density_kernel(double value) {
  if (!std::isfinite(value)) {
    throw ArgumentError("constant kernel: value must be finite");
  }
  return ExplicitFKernel(
      [value](double, double) { return value; },
      "explicit_f(constant=" + format_double(value) + ")",
      /*diagonal_singular=*/false,
      [value](double a, double b, double c, double d) {
        return value * (b - a) * (d - c);
      });
}

VolterraKernel::VolterraKernel(KernelFn K, KernelFn dK, std::string name,
                               bool diagonal_singular,
                               VolterraQuadratureOptions options)
    : K_(std::move(K)),
      dK_(std::move(dK)),
      name_(std::move(name)),
      diagonal_singular_(diagonal_singular),
      options_(options) {
  if (!K_ || !dK_) {
    throw ArgumentError("volterra kernel: missing K or dK evaluator");
  }
  if (!(options_.rel_tol > 0.0) || options_.max_refinements < 1) {
    throw ArgumentError("volterra kernel: bad quadrature options");
  }
}

double VolterraKernel::f(double u, double v) const {
  if (u == v && diagonal_singular_) {
    throw ArgumentError("volterra kernel: evaluation on the singular diagonal");
  }
  const double upper = std::min(u, v);
  if (!(upper > 0.0)) return 0.0;
  // dK is typically singular at both ends of [0, upper]; abscissas that
  // round onto an endpoint would evaluate it there, so they contribute 0
  // instead (at most one ulp of integration range is lost).
  return de_integrate(
      [&](double r) {
        if (r <= 0.0 || r >= upper) return 0.0;
        return dK_(u, r) * dK_(v, r);
      },
      0.0, upper, options_.rel_tol, options_.max_refinements);
}

std::string VolterraKernel::describe() const { return name_; }

double VolterraKernel::K(double t, double s) const { return K_(t, s); }
double VolterraKernel::dK(double t, double s) const { return dK_(t, s); }

VolterraKernel fbm_volterra_kernel(double hurst) {
  auto fbm = std::make_shared<FbmKernel>(hurst);
  return VolterraKernel(
      [fbm](double t, double s) { return fbm->volterra_K(t, s); },
      [fbm](double t, double s) { return fbm->volterra_dK(t, s); },
      "volterra_fbm(hurst=" + format_double(hurst) + ")",
      /*diagonal_singular=*/true);
}

RegularityReport validate_strict_regularity(const VolterraKernel& k,
                                            std::span<const double> grid,
                                            double horizon) {
  if (!(horizon > 0.0)) {
    throw ArgumentError("regularity screen: horizon must be positive");
  }
  if (grid.empty()) {
    throw ArgumentError("regularity screen: empty grid");
  }
  RegularityReport report;
  for (double r : grid) {
    if (!(r > 0.0) || !(r < horizon)) {
      throw ArgumentError("regularity screen: grid points must lie in (0, T)");
    }
    // Decay of K(r + eps, r) over eps = 1e-2 T .. 1e-4 T: fit the power-law
    // exponent from the outer pair. Resolution over the two decades is about
    // 0.005, so slower decay is reported as no decay.
    const double far = std::abs(k.K(r + 1e-2 * horizon, r));
    const double near = std::abs(k.K(r + 1e-4 * horizon, r));
    if (!std::isfinite(far) || !std::isfinite(near)) {
      report.violations.push_back({"non-finite K(r + eps, r)", r});
      continue;
    }
    if (near > 1e-8 * std::max(1.0, far)) {
      const double exponent =
          std::log(std::max(far, 1e-300) / std::max(near, 1e-300)) /
          std::log(1e2);
      if (!(exponent > 0.005)) {
        report.violations.push_back(
            {"K(r + eps, r) does not vanish as eps -> 0", r});
      }
    }
    // Square-integrable variation profile, using K(T, r) as the variation of
    // K(., r) over (r, T] for kernels increasing in t.
    const double tv = k.K(horizon, r);
    if (!std::isfinite(tv)) {
      report.violations.push_back(
          {"non-finite total-variation profile K(T, r)", r});
    }
  }
  return report;
}

}  // namespace expsig
