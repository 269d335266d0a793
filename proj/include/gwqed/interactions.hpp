#pragma once

// Closed-form exchange and pairing couplings between decoherence-free giant
// atoms, the two-atom effective Hamiltonian, and parameter scans.

#include <vector>

#include "gwqed/quantum_ops.hpp"
#include "gwqed/scan.hpp"
#include "gwqed/slh.hpp"
#include "gwqed/waveguide.hpp"

namespace gwqed {

/// sum_ij sqrt(pi g_ai g_bj / 2) sin|z_bj - z_ai| cosh(G (z_bj - z_ai) / 2).
double compute_jc(const GiantAtom& a, const GiantAtom& b, const WaveguideConfig& cfg);

/// sum_ij sqrt(pi g_ai g_bj / 2) sgn(z_bj - z_ai) cos(theta_-/2 + z_ai + z_bj)
///        sinh(G (z_bj - z_ai) / 2),
/// the pairing strength in the gauge where the pump phase sum is removed.
double compute_jp(const GiantAtom& a, const GiantAtom& b, const WaveguideConfig& cfg);

struct EffectivePair {
  double jc = 0.0;
  double jp = 0.0;
  double delta_a = 0.0;
  double delta_b = 0.0;
  double theta_minus = 0.0;
  double gain = 0.0;
};

EffectivePair make_effective_pair(const GiantAtom& a, const GiantAtom& b,
                                  const WaveguideConfig& cfg);

/// (D_a/2) sz_a + (D_b/2) sz_b + Jp s+_a s+_b + Jc s+_a s-_b + h.c. on two sites.
Operator effective_hamiltonian(const EffectivePair& pair);

/// Sum of the detuning terms and all pairwise exchange/pairing terms for an
/// arbitrary list of atoms, one site per atom.
Operator pairwise_hamiltonian(const std::vector<GiantAtom>& atoms, const WaveguideConfig& cfg);

enum class PairPlacement {
  Origin,    // first atom starts at z = 0
  Centered,  // midpoint of the pair sits at z = 0
};

enum class SeparationMode {
  Braided,   // 0 < d_s < pi
  Extended,  // any d_s > 0, atoms may stop overlapping
};

struct PairScanOptions {
  PairPlacement placement = PairPlacement::Origin;
  SeparationMode mode = SeparationMode::Braided;
};

/// Builds the pair used by the scans and a waveguide just long enough to
/// hold it (for Centered placement the waveguide is not meaningful and only
/// carries the gain and pump phases).
std::pair<GiantAtom, GiantAtom> scan_pair(double d_s, double gain, const PairScanOptions& opt);

/// Columns gain, jc, jp.
ScanResult scan_vs_gain(double d_s, double theta_minus, const std::vector<double>& gains,
                        const PairScanOptions& opt = {});

/// Columns theta_minus, jc, jp.
ScanResult scan_vs_theta(double d_s, double gain, const std::vector<double>& thetas,
                         const PairScanOptions& opt = {});

struct SeparationScan {
  ScanResult table;              // d_s, jc, jp, jp_over_jc (NaN where jc vanishes)
  std::vector<double> jp_roots;  // refined to 1e-10 in d_s
  std::vector<double> jc_roots;
};

SeparationScan scan_vs_separation(double gain, double theta_minus,
                                  const std::vector<double>& separations,
                                  const PairScanOptions& opt = {});

/// Roots of f over the interior of a sampled grid: bisection on every sign
/// change, plus zeros that the function touches without crossing (local
/// minima of |f| that refine to below touch_tol * max|f|).
std::vector<double> find_roots(const std::function<double(double)>& f,
                               const std::vector<double>& grid, double x_tol = 1e-10,
                               double touch_tol = 1e-10);

}  // namespace gwqed
