// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace expsig {

/// Two-time covariance density of a centered Gaussian process W with
/// W_t = int_0^t K(t,s) dB_s:
///   f(u, v) = int_0^{u /\ v} dK(u, r) dK(v, r) dr,   dK = d/dt K,
/// so that E[(W_t - W_s)(W_tau - W_sigma)] = int_s^t int_sigma^tau f. The
/// pointwise evaluator must be pure and thread-safe.
class Kernel {
public:
  virtual ~Kernel() = default;

  /// Pointwise density value. May diverge on the diagonal u = v.
  virtual double f(double u, double v) const = 0;

  /// True when f blows up on the diagonal (evaluating there is an error).
  virtual bool diagonal_singular() const noexcept { return true; }

  /// f(u, u + gap) (above) or f(u, u - gap) (below) evaluated from the exact
  /// diagonal distance. Quadrature near a singular diagonal calls this so a
  /// kernel whose blowup depends on |u - v| can avoid the cancellation in
  /// forming u +/- gap; the default just evaluates f at the rounded point.
  virtual double f_near_diagonal(double u, double gap, bool above) const {
    return f(u, above ? u + gap : u - gap);
  }

  virtual bool has_closed_form_covariance() const noexcept { return false; }

  /// R(s, t) = E[W_s W_t] = int_0^s int_0^t f(u, v) dv du. Default: nested
  /// adaptive quadrature of f.
  virtual double covariance(double s, double t) const;

  /// E[(W_t - W_s)(W_tau - W_sigma)] = int_s^t int_sigma^tau f(u, v) dv du.
  /// Default: 2-d quadrature of f; overridden where R has a closed form.
  virtual double rect_increment_cov(double s, double t, double sigma,
                                    double tau) const;

  /// Stable one-line description, e.g. "fbm(hurst=0.75)"; echoed into
  /// serialized report metadata.
  virtual std::string describe() const = 0;
};

/// Validated evaluators over a finite horizon [0, T].
double f_eval(const Kernel& k, double u, double v);
double covariance(const Kernel& k, double s, double t, double horizon);
double rect_increment_cov(const Kernel& k, double s, double t, double sigma,
                          double tau, double horizon);

/// int_a^b int_c^d f(u, v) dv du by nested adaptive quadrature, skipping the
/// band |u - v| < band. On singular kernels the inner integral is split at
/// the diagonal and handled by a double-exponential endpoint rule.
double integrate_f_rectangle(const Kernel& k, double a, double b, double c,
                             double d, double band = 0.0,
                             double rel_tol = 1e-8);

/// Fractional Brownian motion with Hurst index in (1/2, 1):
///   f(u, v) = H(2H-1) |u - v|^{2H-2},
///   R(s, t) = (s^{2H} + t^{2H} - |t - s|^{2H}) / 2.
class FbmKernel final : public Kernel {
public:
  explicit FbmKernel(double hurst);

  double hurst() const noexcept { return hurst_; }
  double f(double u, double v) const override;
  double f_near_diagonal(double u, double gap, bool above) const override;
  bool diagonal_singular() const noexcept override { return true; }
  bool has_closed_form_covariance() const noexcept override { return true; }
  double covariance(double s, double t) const override;
  double rect_increment_cov(double s, double t, double sigma,
                            double tau) const override;
  std::string describe() const override;

  /// Square-integrable Volterra representation of the same process:
  ///   K(t, s) = c_H s^{1/2-H} int_s^t (u-s)^{H-3/2} u^{H-1/2} du,  s < t,
  /// with c_H = sqrt(H(2H-1) / B(2-2H, H-1/2)). volterra_dK is its t-partial.
  double volterra_K(double t, double s) const;
  double volterra_dK(double t, double s) const;

private:
  double hurst_;
  double c_h_;
};

/// Kernel given directly by its density f, with an optional closed-form
/// rectangle integral rect(a, b, c, d) = int_a^b int_c^d f.
class ExplicitFKernel final : public Kernel {
public:
  using PointFn = std::function<double(double, double)>;
  using RectFn = std::function<double(double, double, double, double)>;

  ExplicitFKernel(PointFn f, std::string name, bool diagonal_singular = true,
                  std::optional<RectFn> rect = std::nullopt);

  double f(double u, double v) const override;
  bool diagonal_singular() const noexcept override { return diagonal_singular_; }
  bool has_closed_form_covariance() const noexcept override {
    return rect_.has_value();
  }
  double covariance(double s, double t) const override;
  double rect_increment_cov(double s, double t, double sigma,
                            double tau) const override;
  std::string describe() const override;

private:
  PointFn f_;
  std::string name_;
  bool diagonal_singular_;
  std::optional<RectFn> rect_;
};

/// The constant density f == value with its exact rectangle integral.
ExplicitFKernel constant_density_kernel(double value);

struct VolterraQuadratureOptions {
  double rel_tol = 1e-8;    // relative tolerance of the inner r-integral
  int max_refinements = 12; // hard cap on adaptive refinement depth
};

/// Kernel given by a Volterra pair (K, dK); f is computed on demand by
/// adaptive quadrature of dK(u,.) dK(v,.) over [0, u /\ v].
class VolterraKernel final : public Kernel {
public:
  using KernelFn = std::function<double(double, double)>;

  VolterraKernel(KernelFn K, KernelFn dK, std::string name,
                 bool diagonal_singular = true,
                 VolterraQuadratureOptions options = {});

  double f(double u, double v) const override;
  bool diagonal_singular() const noexcept override { return diagonal_singular_; }
  std::string describe() const override;

  double K(double t, double s) const;
  double dK(double t, double s) const;

private:
  KernelFn K_;
  KernelFn dK_;
  std::string name_;
  bool diagonal_singular_;
  VolterraQuadratureOptions options_;
};

/// The fractional Brownian Volterra pair (K_H, d/dt K_H) as a VolterraKernel;
/// its quadrature-computed f must agree with FbmKernel::f.
VolterraKernel fbm_volterra_kernel(double hurst);

/// Outcome of the numerical regularity screen; violations are reported, not
/// thrown.
struct RegularityReport {
  struct Violation {
    std::string what;
    double where = 0.0;
  };
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Numerical screen of the kernel conditions under which expected-signature
/// coefficients are pairing sums: K(r + eps, r) -> 0 as eps -> 0 (checked on
/// the grid by decay over eps = 1e-2, 1e-3, 1e-4 of the horizon) and a finite
/// square integral of the total-variation profile r -> |K|((r, T], r)
/// (checked by finiteness on the grid, using K(T, r) for kernels increasing
/// in t).
RegularityReport validate_strict_regularity(const VolterraKernel& k,
                                            std::span<const double> grid,
                                            double horizon);

}  // namespace expsig
