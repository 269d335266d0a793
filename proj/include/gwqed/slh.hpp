#pragma once

// SLH triplets for giant atoms on a squeezed single-channel waveguide, and
// the right/left cascades that produce the collective jump operators and the
// waveguide-mediated Hamiltonian.

#include <cmath>
#include <numbers>
#include <vector>

#include "gwqed/quantum_ops.hpp"
#include "gwqed/waveguide.hpp"

namespace gwqed {

struct CouplingPoint {
  double z = 0.0;  // position, phase units
  double g = 0.0;  // coupling strength >= 0

  /// gamma = sqrt(2 pi g^2) with unit group velocity.
  double gamma() const { return std::sqrt(2.0 * std::numbers::pi) * g; }
};

struct GiantAtom {
  double detuning = 0.0;
  std::vector<CouplingPoint> points;  // strictly increasing z

  /// Throws DomainError on an empty or unsorted point list or negative g.
  void validate() const;
};

/// (S, L, H) for a single-channel network. An empty `jumps` list means
/// L = 0, and an empty `hamiltonian` means H = 0 in any dimension.
struct SlhTriplet {
  cplx scattering{1.0, 0.0};
  std::vector<Operator> jumps;
  Operator hamiltonian;

  /// Dimension of the Hilbert space, 0 if neither L nor H fixes it.
  std::size_t dim() const;
};

/// Two-channel network from stacking a right- and left-moving triplet.
struct SlhNetwork {
  std::vector<cplx> scattering;  // diagonal of the block scattering matrix
  std::vector<Operator> jumps;
  Operator hamiltonian;
};

/// S_R(z) = cosh(G z/2) sigma_- - i e^{i theta_R} sinh(G z/2) e^{2iz} sigma_+
/// on atom `atom_index`.
Operator jump_op_right(int atom_index, const CouplingPoint& point, const WaveguideConfig& cfg,
                       int n_atoms);

/// S_L(z) with distance L - z, phase theta_L and e^{-2iz}.
Operator jump_op_left(int atom_index, const CouplingPoint& point, const WaveguideConfig& cfg,
                      int n_atoms);

/// Cascade `downstream` after `upstream`:
/// S = S2 S1, L = L2 + S2 L1, H = H1 + H2 + Im(L2^dag S2 L1).
SlhTriplet series_product(const SlhTriplet& downstream, const SlhTriplet& upstream);

/// (e^{i phi}, 0, 0).
SlhTriplet phase_triplet(double phi);

/// Stacks the channels of the two directions; H = H_R + H_L.
SlhNetwork concatenate(const SlhTriplet& right, const SlhTriplet& left);

enum class CascadeOrder {
  Braided,  // exactly two atoms with alternating points, first atom first
  Sorted,   // any number of atoms, points cascaded in order of position
};

/// Right-moving cascade in order of increasing z. The detuning term of each
/// atom rides on its first coupling point.
SlhTriplet cascade_right(const std::vector<GiantAtom>& atoms, const WaveguideConfig& cfg,
                         CascadeOrder order = CascadeOrder::Braided);

/// Left-moving cascade in order of decreasing z. Carries no detuning terms.
SlhTriplet cascade_left(const std::vector<GiantAtom>& atoms, const WaveguideConfig& cfg,
                        CascadeOrder order = CascadeOrder::Braided);

/// Direct phase-weighted sum of the point jump operators, with phases
/// referenced to the most downstream point of each direction.
Operator jump_sum_right(const std::vector<GiantAtom>& atoms, const WaveguideConfig& cfg);
Operator jump_sum_left(const std::vector<GiantAtom>& atoms, const WaveguideConfig& cfg);

/// D H D^dagger with D = (x)_n diag(e^{i phase_n}, 1), i.e.
/// sigma_+^n -> e^{i phase_n} sigma_+^n.
Operator gauge_transform(const Operator& h, const std::vector<double>& phases);

/// Per-atom phases that remove the pump phase sum from the pairing term:
/// every atom gets -theta_plus / 4, so sigma_+^a sigma_+^b picks up
/// e^{-i theta_plus / 2}.
std::vector<double> pump_gauge_phases(double theta_plus, int n_atoms);

/// Coefficient of sigma_+^a sigma_-^b in the Pauli expansion of h.
cplx exchange_coefficient(const Operator& h, int a, int b);

/// Coefficient of sigma_+^a sigma_+^b in the Pauli expansion of h.
cplx pairing_coefficient(const Operator& h, int a, int b);

}  // namespace gwqed
