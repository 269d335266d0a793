#pragma once

// Field propagation in the chi(2) parametric waveguide.
//
// Units: k0 = 1, group velocity 1, hbar = 1. Positions are phase units
// (radians), so a coupling-point spacing of pi is half a wavelength.

#include <complex>

namespace gwqed {

using cplx = std::complex<double>;

struct WaveguideConfig {
  double gain = 0.0;         // parametric gain G per unit length
  double theta_right = 0.0;  // pump phase of the right-moving squeezer
  double theta_left = 0.0;   // pump phase of the left-moving squeezer
  double length = 1.0;       // L
  double loss1 = 0.0;        // alpha_1
  double loss2 = 0.0;        // alpha_2
  double dk = 0.0;           // phase mismatch k1 + k2 - 2 k0

  double theta_plus() const { return theta_right + theta_left; }
  double theta_minus() const { return theta_right - theta_left; }

  /// Builds a config from (theta_plus, theta_minus).
  static WaveguideConfig from_phase_sum_difference(double gain, double theta_plus,
                                                   double theta_minus, double length);

  /// Throws DomainError unless L > 0, G >= 0, losses >= 0.
  void validate() const;
};

/// A_{k1}(z) and A*_{k2}(z) at position z.
struct ModeAmplitudes {
  cplx a1;
  cplx a2_conj;
  double z = 0.0;
};

enum class Direction { Right, Left };

/// cosh / sinh dressing of a field operator after propagating distance d.
struct SqueezeCoeffs {
  double c = 1.0;  // cosh(G d / 2)
  cplx s;          // -i e^{i theta_dir} sinh(G d / 2)
  double distance = 0.0;
};

/// Closed-form lossless solution of the coupled-wave equations from
/// init.z to z. Valid for any sign of G^2 - dk^2 (trigonometric continuation
/// when dk > G). Throws DomainError for a lossy config.
ModeAmplitudes propagate_analytic(const WaveguideConfig& cfg, const ModeAmplitudes& init,
                                  double z);

/// Fixed-step RK4 on the coupled-wave equations, including loss and mismatch.
ModeAmplitudes integrate_coupled_wave(const WaveguideConfig& cfg, const ModeAmplitudes& init,
                                      double z_end, double step = 1e-3);

/// Right-hand side of the coupled-wave equations at (a, z).
ModeAmplitudes coupled_wave_rhs(const WaveguideConfig& cfg, const ModeAmplitudes& a);

SqueezeCoeffs squeeze_coeffs(const WaveguideConfig& cfg, double z, Direction dir);

/// Transmon-waveguide coupling (C_J^g / C_Sigma) sqrt(omega_k / C_W) with
/// hbar = e = 1.
double transmon_coupling(double cjg_over_csigma, double omega_k, double c_w);

/// Coupled-mode parameters of a Josephson traveling-wave amplifier. The
/// circuit-level constants that produce them are treated as opaque inputs.
struct JtwpaParams {
  cplx kappa_s;
  cplx kappa_i;
  cplx alpha_p;
  cplx alpha_s;
  cplx alpha_i;
  double delta_kl = 0.0;

  /// dk = dk_L + 2 alpha_p - alpha_s - alpha_i.
  cplx total_mismatch() const;
  /// b = sqrt(kappa_s kappa_i^* - (dk / 2)^2), principal branch.
  cplx gain_coefficient() const;
};

struct SignalIdler {
  cplx signal;
  cplx idler;
};

/// Closed-form signal/idler amplitudes at position x. These solve the
/// coupled-mode equations exactly when dk is real and kappa_s kappa_i^* is
/// real; otherwise they are the formal continuation of the same expression.
SignalIdler jtwpa_solution(const JtwpaParams& p, cplx a_s0, cplx a_i0, double x);

/// d(a_s, a_i)/dx from the coupled-mode equations.
SignalIdler jtwpa_rhs(const JtwpaParams& p, cplx a_s, cplx a_i, double x);

}  // namespace gwqed
