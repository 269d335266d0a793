#include "gwqed/dfree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "gwqed/errors.hpp"

namespace gwqed {

DfProfile df_ratios_m3(double gain, double spacing) {
  if (!(spacing > 0.0)) throw DomainError("df_ratios_m3: spacing must be positive");
  if (!(gain >= 0.0)) throw DomainError("df_ratios_m3: gain must be non-negative");
  const double ch = std::cosh(0.5 * gain * spacing);
  DfProfile p;
  p.spacing = spacing;
  p.gain = gain;
  p.ratios = {1.0, 4.0 * ch * ch, 1.0};
  GiantAtom atom;
  for (int i = 0; i < 3; ++i) atom.points.push_back({i * spacing, p.ratios[i]});
  const auto r = residual_check(atom, gain);
  p.residual_cosh = r.cosh_sum;
  p.residual_sinh = r.sinh_sum;
  return p;
}

Residuals residual_check(const GiantAtom& atom, double gain) {
  const std::size_t m = atom.points.size();
  if (m == 0) throw DomainError("residual_check: atom has no coupling points");
  Residuals r;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = atom.points[i];
    const double sign = ((m - 1 - i) % 2 == 0) ? 1.0 : -1.0;
    const double w = sign * std::sqrt(p.g);
    r.cosh_sum += w * std::cosh(0.5 * gain * p.z);
    r.sinh_sum += w * std::sinh(0.5 * gain * p.z);
  }
  return r;
}

double m2_ratio_gap(double z1, double z2, double gain) {
  if (z1 == z2) throw DomainError("m2_ratio_gap: coincident points make the conditions degenerate");
  if (gain == 0.0) throw DomainError("m2_ratio_gap: zero gain makes the conditions degenerate");
  const double c1 = std::cosh(0.5 * gain * z1);
  const double c2 = std::cosh(0.5 * gain * z2);
  const double s1 = std::sinh(0.5 * gain * z1);
  const double s2 = std::sinh(0.5 * gain * z2);
  if (s1 == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs((c2 * c2) / (c1 * c1) - (s2 * s2) / (s1 * s1));
}

double m2_min_residual(double z1, double z2, double gain) {
  if (z1 == z2) throw DomainError("m2_min_residual: coincident points");
  // With x = sqrt(g1) and g2 = 1 the residuals are |c2 - x c1| and
  // |s2 - x s1|. Their maximum is convex and piecewise linear in x, so the
  // minimum over x >= 0 sits at a kink or at x = 0.
  const double c1 = std::cosh(0.5 * gain * z1);
  const double c2 = std::cosh(0.5 * gain * z2);
  const double s1 = std::sinh(0.5 * gain * z1);
  const double s2 = std::sinh(0.5 * gain * z2);
  auto objective = [&](double x) {
    return std::max(std::abs(c2 - x * c1), std::abs(s2 - x * s1));
  };
  std::vector<double> candidates{0.0, c2 / c1};
  if (s1 != 0.0) candidates.push_back(s2 / s1);
  // c2 - x c1 = +-(s2 - x s1)
  if (c1 != s1) candidates.push_back((c2 - s2) / (c1 - s1));
  candidates.push_back((c2 + s2) / (c1 + s1));
  double best = std::numeric_limits<double>::infinity();
  for (double x : candidates) {
    if (x >= 0.0 && std::isfinite(x)) best = std::min(best, objective(x));
  }
  return best;
}

GiantAtom make_df_atom(double base, double gain, double detuning, double spacing, double g_ref) {
  if (!(g_ref > 0.0)) throw DomainError("reference coupling must be positive");
  const auto profile = df_ratios_m3(gain, spacing);
  GiantAtom atom;
  atom.detuning = detuning;
  for (int i = 0; i < 3; ++i) {
    atom.points.push_back({base + i * spacing, g_ref * profile.ratios[i]});
  }
  return atom;
}

std::pair<GiantAtom, GiantAtom> build_df_pair(double d_s, double gain, double base,
                                              double g_ref) {
  if (!(d_s > 0.0)) throw DomainError("atom separation must be positive");
  return {make_df_atom(base, gain, 0.0, std::numbers::pi, g_ref),
          make_df_atom(base + d_s, gain, 0.0, std::numbers::pi, g_ref)};
}

std::pair<GiantAtom, GiantAtom> build_braided_pair(double d_s, double gain, double base,
                                                   double g_ref) {
  if (!(d_s > 0.0 && d_s < std::numbers::pi)) {
    throw DomainError("braided pair needs 0 < d_s < pi, got d_s = " + std::to_string(d_s));
  }
  return build_df_pair(d_s, gain, base, g_ref);
}

std::vector<GiantAtom> build_braided_chain(int n, double d_s, double gain, double base,
                                           double g_ref) {
  if (n < 2) throw DomainError("braided chain needs at least two atoms");
  if (n > kMaxSites) throw DomainError("braided chain: at most 12 atoms");
  if (!(d_s > 0.0 && d_s < std::numbers::pi)) {
    throw DomainError("braided chain needs 0 < d_s < pi, got d_s = " + std::to_string(d_s));
  }
  constexpr double pi = std::numbers::pi;
  const double pair_offset = 2.0 * pi + 0.5 * d_s;
  std::vector<GiantAtom> chain;
  for (int j = 0; j < n; ++j) {
    const double b = base + (j / 2) * pair_offset + (j % 2) * d_s;
    chain.push_back(make_df_atom(b, gain, 0.0, pi, g_ref));
  }
  return chain;
}

double geometry_extent(const std::vector<GiantAtom>& atoms) {
  double z = 0.0;
  for (const auto& a : atoms) {
    for (const auto& p : a.points) z = std::max(z, p.z);
  }
  return z;
}

}  // namespace gwqed
