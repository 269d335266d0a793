#pragma once

// Decoherence-free coupling profiles: conditions under which the collective
// right- and left-moving jump operators of a giant atom vanish.

#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "gwqed/slh.hpp"

namespace gwqed {

/// Reference coupling strength. With g_ref = 2/pi, sqrt(pi g g' / 2) = 1 for
/// two reference points, which keeps interaction strengths O(1).
inline constexpr double kReferenceCoupling = 2.0 / std::numbers::pi;

struct DfProfile {
  double spacing = std::numbers::pi;
  double gain = 0.0;
  std::vector<double> ratios;  // g_i / g_M
  cplx residual_cosh;
  cplx residual_sinh;
};

struct Residuals {
  cplx cosh_sum;
  cplx sinh_sum;
  double max_abs() const { return std::max(std::abs(cosh_sum), std::abs(sinh_sum)); }
};

/// Three-point profile [1, 4 cosh^2(G d/2), 1]. Residuals are evaluated for
/// an atom at base 0. Throws DomainError for d <= 0 or G < 0.
DfProfile df_ratios_m3(double gain, double spacing = std::numbers::pi);

/// sum_i sqrt(g_i) (-1)^{M-i} cosh(G z_i / 2) and the sinh analogue.
Residuals residual_check(const GiantAtom& atom, double gain);

/// |cosh^2(G z2/2)/cosh^2(G z1/2) - sinh^2(G z2/2)/sinh^2(G z1/2)|, the gap
/// between the two ratio conditions a two-point atom would have to meet.
/// +inf when sinh(G z1/2) = 0. Throws DomainError when z1 = z2 or G = 0.
double m2_ratio_gap(double z1, double z2, double gain);

/// min over the ratio g1/g2 > 0 of max(|cosh residual|, |sinh residual|)
/// for a two-point atom with g2 = 1. Exact minimax over the piecewise
/// linear objective in sqrt(g1).
double m2_min_residual(double z1, double z2, double gain);

/// Three-point atom at base + {0, d, 2d} with the decoherence-free profile,
/// scaled so the last point carries g_ref.
GiantAtom make_df_atom(double base, double gain, double detuning = 0.0,
                       double spacing = std::numbers::pi, double g_ref = kReferenceCoupling);

/// Two decoherence-free atoms with the second shifted by d_s, any d_s > 0.
std::pair<GiantAtom, GiantAtom> build_df_pair(double d_s, double gain, double base = 0.0,
                                              double g_ref = kReferenceCoupling);

/// Braided pair: requires 0 < d_s < pi.
std::pair<GiantAtom, GiantAtom> build_braided_pair(double d_s, double gain, double base = 0.0,
                                                   double g_ref = kReferenceCoupling);

/// Chain of n decoherence-free atoms built from braided pairs. Atom 2m+1 sits
/// d_s after atom 2m; pair m+1 starts 2 pi + d_s / 2 after pair m, so each
/// atom overlaps only its chain neighbours.
std::vector<GiantAtom> build_braided_chain(int n, double d_s, double gain, double base = 0.0,
                                           double g_ref = kReferenceCoupling);

/// Position of the last coupling point over all atoms.
double geometry_extent(const std::vector<GiantAtom>& atoms);

}  // namespace gwqed
