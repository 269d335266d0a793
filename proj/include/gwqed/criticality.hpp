#pragma once

// Ground-state fidelity, fidelity susceptibility and the (Jp, detuning)
// phase diagram of the XY chain.

#include <string>
#include <vector>

#include "gwqed/spinchain.hpp"

namespace gwqed {

enum class ControlParam { Delta, Jp };

/// Which fermion-parity sector supplies the ground state.
/// Lowest picks the sector with the lower energy and throws NumericalError
/// if that choice differs between h and h + dh.
enum class SectorChoice { Even, Odd, Lowest };

std::string to_string(ControlParam p);

/// Copy of spec with the control parameter set to h.
SpinChainSpec with_param(const SpinChainSpec& spec, ControlParam param, double h);

/// |<psi0(h)|psi0(h + dh)>| from the product over paired momenta of
/// |cos(theta_k(h) - theta_k(h + dh))|, with the pair angles of the
/// spin-consistent fermion form. Periodic chain, uniform detuning, even n.
double ground_fidelity(const SpinChainSpec& spec, ControlParam param, double h, double dh,
                       SectorChoice sector = SectorChoice::Even);

/// -2 ln F / dh^2, +inf when F = 0.
double fidelity_susceptibility(const SpinChainSpec& spec, ControlParam param, double h,
                               double dh = 0.01, SectorChoice sector = SectorChoice::Even);

struct FidelityScan {
  ControlParam param = ControlParam::Delta;
  std::vector<double> grid;
  double delta_h = 0.01;
  std::vector<double> fidelity;
  std::vector<double> chi;
  std::vector<double> peaks;
};

FidelityScan scan_fidelity(const SpinChainSpec& spec, ControlParam param,
                           const std::vector<double>& grid, double dh = 0.01,
                           SectorChoice sector = SectorChoice::Even);

/// Interior local maxima of y over an ascending grid, refined by the vertex
/// of the parabola through the three neighbouring samples.
std::vector<double> find_peaks(const std::vector<double>& grid, const std::vector<double>& y);

/// Grid of n points spanning [lo, hi] shifted by half a step so no sample
/// lands on lo + j * step exactly: lo + (i + 1/2) step, i = 0..n-1.
std::vector<double> half_step_grid(double lo, double hi, double step);

struct PhaseDiagram {
  std::vector<double> delta_grid;
  std::vector<double> jp_grid;
  std::vector<std::vector<double>> gap;  // [i_delta][i_jp]
  std::vector<std::vector<int>> label;   // [i_delta][i_jp]
  double threshold = 1e-3;
};

/// 1: D > 4|Jc|, 2: D < -4|Jc|, 3: inner with Jp > 0, 4: inner with Jp < 0,
/// 0: on a boundary line.
int phase_label(double jc, double jp, double delta);

PhaseDiagram phase_diagram(const std::vector<double>& delta_grid,
                           const std::vector<double>& jp_grid, double jc,
                           double gap_threshold = 1e-3);

/// Number of 4-connected components of cells with gap >= threshold.
int count_gapped_regions(const PhaseDiagram& pd);

}  // namespace gwqed
