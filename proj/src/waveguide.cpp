#include "gwqed/waveguide.hpp"

#include <cmath>
#include <string>

#include "gwqed/errors.hpp"

namespace gwqed {

namespace {

constexpr cplx kI{0.0, 1.0};

// cosh(b z) and sinh(b z) / b as functions of b^2, continuous through b = 0
// and into the oscillatory regime b^2 < 0.
struct HyperbolicPair {
  double cosh_bz;
  double sinh_bz_over_b;
};

HyperbolicPair hyperbolic_pair(double b2, double z) {
  if (b2 > 0.0) {
    const double b = std::sqrt(b2);
    return {std::cosh(b * z), std::sinh(b * z) / b};
  }
  if (b2 < 0.0) {
    const double b = std::sqrt(-b2);
    return {std::cos(b * z), std::sin(b * z) / b};
  }
  return {1.0, z};
}

// Complex-argument version for the JTWPA closed forms.
struct ComplexHyperbolicPair {
  cplx cosh_bz;
  cplx sinh_bz_over_b;
};

ComplexHyperbolicPair hyperbolic_pair(cplx b, double x) {
  if (std::abs(b) * std::max(1.0, std::abs(x)) < 1e-300) return {1.0, x};
  return {std::cosh(b * x), std::sinh(b * x) / b};
}

}  // namespace

WaveguideConfig WaveguideConfig::from_phase_sum_difference(double gain, double theta_plus,
                                                           double theta_minus, double length) {
  WaveguideConfig cfg;
  cfg.gain = gain;
  cfg.theta_right = 0.5 * (theta_plus + theta_minus);
  cfg.theta_left = 0.5 * (theta_plus - theta_minus);
  cfg.length = length;
  return cfg;
}

void WaveguideConfig::validate() const {
  if (!(length > 0.0)) throw DomainError("waveguide length must be positive");
  if (!(gain >= 0.0)) throw DomainError("parametric gain must be non-negative");
  if (!(loss1 >= 0.0) || !(loss2 >= 0.0)) throw DomainError("loss rates must be non-negative");
}

ModeAmplitudes propagate_analytic(const WaveguideConfig& cfg, const ModeAmplitudes& init,
                                  double z) {
  if (cfg.loss1 != 0.0 || cfg.loss2 != 0.0) {
    throw DomainError("propagate_analytic: closed form is lossless; use integrate_coupled_wave");
  }
  // In the co-rotating variables X = a1 e^{i dk z / 2}, Y = a2* e^{-i dk z / 2}
  // the equations are autonomous with generator M, M^2 = b^2 I.
  const double dk = cfg.dk;
  const double b2 = 0.25 * (cfg.gain * cfg.gain - dk * dk);
  const double dz = z - init.z;
  const auto [ch, sh_b] = hyperbolic_pair(b2, dz);

  const cplx pump = std::exp(kI * cfg.theta_right);
  const cplx x0 = init.a1 * std::exp(kI * (0.5 * dk * init.z));
  const cplx y0 = init.a2_conj * std::exp(-kI * (0.5 * dk * init.z));

  const cplx x = x0 * (ch + kI * (0.5 * dk) * sh_b) - kI * (0.5 * cfg.gain) * pump * y0 * sh_b;
  const cplx y = y0 * (ch - kI * (0.5 * dk) * sh_b) +
                 kI * (0.5 * cfg.gain) * std::conj(pump) * x0 * sh_b;

  return {x * std::exp(-kI * (0.5 * dk * z)), y * std::exp(kI * (0.5 * dk * z)), z};
}

ModeAmplitudes coupled_wave_rhs(const WaveguideConfig& cfg, const ModeAmplitudes& a) {
  const cplx pump = std::exp(kI * cfg.theta_right);
  const cplx phase = std::exp(kI * (cfg.dk * a.z));
  ModeAmplitudes d;
  d.a1 = -0.5 * cfg.loss1 * a.a1 - 0.5 * kI * cfg.gain * pump * a.a2_conj / phase;
  d.a2_conj = -0.5 * cfg.loss2 * a.a2_conj + 0.5 * kI * cfg.gain * std::conj(pump) * a.a1 * phase;
  d.z = 1.0;
  return d;
}

ModeAmplitudes integrate_coupled_wave(const WaveguideConfig& cfg, const ModeAmplitudes& init,
                                      double z_end, double step) {
  if (!(step > 0.0)) throw DomainError("integrate_coupled_wave: step must be positive");
  if (!(z_end >= init.z)) throw DomainError("integrate_coupled_wave: z_end precedes init.z");
  const double span = z_end - init.z;
  const auto n_steps = static_cast<long>(std::ceil(span / step));
  if (n_steps == 0) return init;
  const double h = span / static_cast<double>(n_steps);

  auto axpy = [](const ModeAmplitudes& y, const ModeAmplitudes& k, double s) {
    return ModeAmplitudes{y.a1 + s * k.a1, y.a2_conj + s * k.a2_conj, y.z + s * k.z};
  };

  ModeAmplitudes y = init;
  for (long n = 0; n < n_steps; ++n) {
    y.z = init.z + static_cast<double>(n) * h;
    const auto k1 = coupled_wave_rhs(cfg, y);
    const auto k2 = coupled_wave_rhs(cfg, axpy(y, k1, 0.5 * h));
    const auto k3 = coupled_wave_rhs(cfg, axpy(y, k2, 0.5 * h));
    const auto k4 = coupled_wave_rhs(cfg, axpy(y, k3, h));
    y.a1 += h / 6.0 * (k1.a1 + 2.0 * k2.a1 + 2.0 * k3.a1 + k4.a1);
    y.a2_conj += h / 6.0 * (k1.a2_conj + 2.0 * k2.a2_conj + 2.0 * k3.a2_conj + k4.a2_conj);
  }
  y.z = z_end;
  return y;
}

SqueezeCoeffs squeeze_coeffs(const WaveguideConfig& cfg, double z, Direction dir) {
  if (z < 0.0 || z > cfg.length) {
    throw DomainError("squeeze_coeffs: z = " + std::to_string(z) + " outside [0, L]");
  }
  const double d = dir == Direction::Right ? z : cfg.length - z;
  const double theta = dir == Direction::Right ? cfg.theta_right : cfg.theta_left;
  const double half = 0.5 * cfg.gain * d;
  return {std::cosh(half), -kI * std::exp(kI * theta) * std::sinh(half), d};
}

double transmon_coupling(double cjg_over_csigma, double omega_k, double c_w) {
  if (cjg_over_csigma < 0.0) throw DomainError("transmon_coupling: capacitance ratio < 0");
  if (!(omega_k > 0.0) || !(c_w > 0.0)) {
    throw DomainError("transmon_coupling: omega_k and C_W must be positive");
  }
  return cjg_over_csigma * std::sqrt(omega_k / c_w);
}

cplx JtwpaParams::total_mismatch() const {
  return delta_kl + 2.0 * alpha_p - alpha_s - alpha_i;
}

cplx JtwpaParams::gain_coefficient() const {
  const cplx half_dk = 0.5 * total_mismatch();
  return std::sqrt(kappa_s * std::conj(kappa_i) - half_dk * half_dk);
}

SignalIdler jtwpa_solution(const JtwpaParams& p, cplx a_s0, cplx a_i0, double x) {
  const cplx dk = p.total_mismatch();
  const cplx b = p.gain_coefficient();
  const auto [ch, sh_b] = hyperbolic_pair(b, x);
  const cplx carrier = std::exp(kI * dk * (0.5 * x));
  const cplx diag = ch - kI * (0.5 * dk) * sh_b;
  return {(a_s0 * diag + kI * p.kappa_s * std::conj(a_i0) * sh_b) * carrier,
          (a_i0 * diag + kI * p.kappa_i * std::conj(a_s0) * sh_b) * carrier};
}

SignalIdler jtwpa_rhs(const JtwpaParams& p, cplx a_s, cplx a_i, double x) {
  const cplx phase = std::exp(kI * p.total_mismatch() * x);
  return {kI * p.kappa_s * std::conj(a_i) * phase, kI * p.kappa_i * std::conj(a_s) * phase};
}

}  // namespace gwqed
