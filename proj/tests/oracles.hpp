#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gwqed/quantum_ops.hpp"
#include "gwqed/spinchain.hpp"
#include "gwqed/waveguide.hpp"

namespace oracle {

using gwqed::cplx;

/// Ground vector of H restricted to the eigenspace P = sign of the parity
/// operator prod sz. Also returns the sector ground energy.
struct SectorGround {
  double energy;
  Eigen::VectorXcd state;
  double gap_to_next;
};
SectorGround sector_ground(const gwqed::Operator& h, int parity_sign);

/// All eigenvalues of H within the parity sector, ascending.
std::vector<double> sector_spectrum(const gwqed::Operator& h, int parity_sign);

/// Fermion annihilators c_j = (prod_{i<j} sz_i) sigma_+_j built directly
/// from matrices, with the ground level counted as occupied.
std::vector<Eigen::MatrixXcd> jw_annihilators(int n);

/// Dense Fock-space matrix of a quadratic form using jw_annihilators.
Eigen::MatrixXcd fock_matrix(const gwqed::QuadraticForm& q);

/// Lossless coupled-wave solution via a truncated Taylor series of the
/// co-rotating 2x2 generator (no closed-form hyperbolic functions).
gwqed::ModeAmplitudes waveguide_taylor(const gwqed::WaveguideConfig& cfg,
                                       const gwqed::ModeAmplitudes& init, double z);

/// Brute-force min over a ratio grid of max residual for a two-point atom.
double m2_grid_min_residual(double z1, double z2, double gain, int points = 20000,
                            double ratio_max = 100.0);

/// Central-difference residual of the amplifier closed form against its ODE.
double jtwpa_ode_residual(const gwqed::JtwpaParams& p, cplx a_s0, cplx a_i0, double x,
                          double h = 1e-5);

/// |<a|b>| for normalized vectors.
double overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

}  // namespace oracle
