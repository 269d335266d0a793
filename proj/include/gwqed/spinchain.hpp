#pragma once

// Anisotropic XY chain realized by the giant-atom array:
//   H = 2 sum_n [(Jp + Jc) sx_n sx_{n+1} + (Jc - Jp) sy_n sy_{n+1}] + sum_n D_n sz_n
// with exact diagonalization, Jordan-Wigner free-fermion forms, and the
// momentum-space dispersion and gap.

#include <vector>

#include <Eigen/Dense>

#include "gwqed/quantum_ops.hpp"

namespace gwqed {

enum class Parity { Even, Odd };
enum class Boundary { Open, Periodic };

/// SpinConsistent: the fermion form obtained by transforming the spin
///   Hamiltonian above (hopping 4 Jc, pairing -4 Jp).
/// UnitHopping: the fermion form with unit hopping Jc and pairing -Jp, which
///   is a quarter of the spin-consistent couplings.
enum class JwConvention { SpinConsistent, UnitHopping };

struct SpinChainSpec {
  int n = 16;
  double jc = 1.0;
  double jp = 0.5;
  std::vector<double> deltas;  // one per site
  Parity parity = Parity::Even;

  static SpinChainSpec uniform(int n, double jc, double jp, double delta,
                               Parity parity = Parity::Even);

  /// Common detuning; throws DomainError when the sites differ.
  double delta() const;
  /// Throws DomainError unless n >= 2 and deltas has n entries.
  void validate() const;
};

/// Dense spin Hamiltonian, n <= 12. The periodic variant adds the bond
/// between the last and first site.
Operator build_xy_hamiltonian(const SpinChainSpec& spec, Boundary boundary);

/// Fermion parity operator prod_n sz_n (+1 on even fermion number, with the
/// ground level |g> counted as occupied).
Operator parity_operator(int n_sites);

/// H = sum_ij A_ij c_i^dag c_j + 1/2 sum_ij (B_ij c_i^dag c_j^dag + h.c.) + constant
struct QuadraticForm {
  Eigen::MatrixXd hopping;  // A, real symmetric
  Eigen::MatrixXd pairing;  // B, real antisymmetric
  double constant = 0.0;
};

/// Fermion form of the chain. For periodic boundaries the wrap bond carries
/// -(-1)^{N_f} with N_f set by spec.parity.
QuadraticForm jw_quadratic_form(const SpinChainSpec& spec, Boundary boundary,
                                JwConvention conv = JwConvention::SpinConsistent);

struct BdgSolution {
  std::vector<double> quasi_energies;  // ascending, >= 0
  double vacuum_energy = 0.0;
  int vacuum_parity = 1;  // +1 even, -1 odd
};

BdgSolution solve_bdg(const QuadraticForm& form);

/// All many-body levels of the chain from the free-fermion solution,
/// ascending. For periodic boundaries the even-parity levels of the
/// antiperiodic form are merged with the odd-parity levels of the periodic
/// form.
std::vector<double> bdg_many_body_spectrum(const SpinChainSpec& spec, Boundary boundary,
                                           JwConvention conv = JwConvention::SpinConsistent);

struct AllowedMomenta {
  std::vector<double> pairs;     // k in (0, pi), each standing for (k, -k)
  std::vector<double> unpaired;  // k = 0 and k = pi in the odd sector
  std::vector<double> all() const;
};

/// Even fermion number: k = (2m+1) pi / n. Odd: k = 2 m pi / n. Requires even n.
AllowedMomenta allowed_momenta(int n, Parity parity);

/// eps_k = 2 sqrt(D^2 + 8(Jp^2 + Jc^2) - 8 D Jc cos k - 8(Jp^2 - Jc^2) cos 2k).
double dispersion(double k, double jc, double jp, double delta);
double dispersion(double k, const SpinChainSpec& spec);

/// Pair-mode energy from the spin-consistent fermion form,
/// sqrt(xi^2 + W^2) with xi = 8 Jc cos k - 2 D and W = 8 Jp sin k.
double dispersion_bdg(double k, double jc, double jp, double delta, JwConvention conv);

/// Angle with tan(2 theta) = -Jp sin k / (Jc cos k + D), theta in (-pi/4, pi/4].
double bogoliubov_angle(double k, const SpinChainSpec& spec);

/// Angle of the pair ground state cos(theta)|0> + i sin(theta)|k,-k> of the
/// spin-consistent form: theta = atan2(-8 Jp sin k, 8 Jc cos k - 2 D) / 2.
double ground_state_angle(double k, double jc, double jp, double delta);

struct MomentumCoeffs {
  double diag;     // 16 Jc cos k - 2 D
  double offdiag;  // -8 Jp sin k
  /// sqrt(diag^2 + offdiag^2), the quasi-particle energy of the 2x2 block.
  double block_energy() const;
};

MomentumCoeffs momentum_hamiltonian_coeffs(double k, const SpinChainSpec& spec);

enum class GapMode { Finite, Continuum };

/// min_k of dispersion over the sector's allowed momenta (Finite) or
/// over [0, pi] with a 10^4-point grid and golden-section refinement.
double energy_gap(const SpinChainSpec& spec, GapMode mode);
double continuum_gap(double jc, double jp, double delta);

/// Sector ground energies from the momentum-space solution (uniform
/// detuning, periodic chain, even n). The odd sector throws NumericalError
/// when its ground level is degenerate.
double sector_ground_energy(const SpinChainSpec& spec, Parity parity);

/// Unpaired mode occupied in the odd-sector ground state: 0 or pi.
double odd_sector_unpaired_mode(const SpinChainSpec& spec);

struct ConventionReport {
  std::vector<double> k;
  std::vector<double> closed_form;      // dispersion
  std::vector<double> spin_consistent;  // dispersion_bdg, SpinConsistent
  std::vector<double> unit_hopping;       // dispersion_bdg, UnitHopping
  std::vector<double> momentum_block;   // MomentumCoeffs::block_energy
  double max_abs_dev_spin_consistent = 0.0;
  double min_ratio_unit_hopping = 0.0, max_ratio_unit_hopping = 0.0;
  double min_ratio_momentum_block = 0.0, max_ratio_momentum_block = 0.0;
  double max_angle_relation_residual = 0.0;  // for bogoliubov_angle
};

ConventionReport convention_report(const SpinChainSpec& spec, int k_points = 257);

}  // namespace gwqed
