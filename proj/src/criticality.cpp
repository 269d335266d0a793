#include "gwqed/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "gwqed/errors.hpp"
#include "gwqed/scan.hpp"

namespace gwqed {

std::string to_string(ControlParam p) { return p == ControlParam::Delta ? "delta" : "jp"; }

SpinChainSpec with_param(const SpinChainSpec& spec, ControlParam param, double h) {
  SpinChainSpec s = spec;
  if (param == ControlParam::Delta) {
    s.deltas.assign(static_cast<std::size_t>(s.n), h);
  } else {
    s.jp = h;
  }
  return s;
}

namespace {

Parity resolve_sector(const SpinChainSpec& s) {
  const double even = sector_ground_energy(s, Parity::Even);
  const double odd = sector_ground_energy(s, Parity::Odd);
  if (std::abs(even - odd) <= 1e-12 * (1.0 + std::abs(even))) {
    throw NumericalError("even and odd ground levels are degenerate");
  }
  return even < odd ? Parity::Even : Parity::Odd;
}

}  // namespace

double ground_fidelity(const SpinChainSpec& spec, ControlParam param, double h, double dh,
                       SectorChoice sector) {
  if (!(dh >= 0.0)) throw DomainError("fidelity step must be non-negative");
  const auto s1 = with_param(spec, param, h);
  const auto s2 = with_param(spec, param, h + dh);
  const double d1 = s1.delta();
  const double d2 = s2.delta();

  Parity parity = Parity::Even;
  if (sector == SectorChoice::Odd) {
    parity = Parity::Odd;
  } else if (sector == SectorChoice::Lowest) {
    parity = resolve_sector(s1);
    if (resolve_sector(s2) != parity) {
      throw NumericalError("ground-state parity changes between h = " + std::to_string(h) +
                           " and h + dh");
    }
  }
  const auto momenta = allowed_momenta(spec.n, parity);
  if (parity == Parity::Odd &&
      odd_sector_unpaired_mode(s1) != odd_sector_unpaired_mode(s2)) {
    return 0.0;
  }
  double f = 1.0;
  for (double k : momenta.pairs) {
    const double t1 = ground_state_angle(k, s1.jc, s1.jp, d1);
    const double t2 = ground_state_angle(k, s2.jc, s2.jp, d2);
    f *= std::abs(std::cos(t1 - t2));
  }
  return f;
}

double fidelity_susceptibility(const SpinChainSpec& spec, ControlParam param, double h, double dh,
                               SectorChoice sector) {
  if (!(dh > 0.0)) throw DomainError("fidelity susceptibility needs dh > 0");
  const double f = ground_fidelity(spec, param, h, dh, sector);
  if (f <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -2.0 * std::log(std::min(f, 1.0)) / (dh * dh));
}

FidelityScan scan_fidelity(const SpinChainSpec& spec, ControlParam param,
                           const std::vector<double>& grid, double dh, SectorChoice sector) {
  FidelityScan out;
  out.param = param;
  out.grid = grid;
  out.delta_h = dh;
  out.fidelity = parallel_map<double>(grid.size(), [&](std::size_t i) {
    return ground_fidelity(spec, param, grid[i], dh, sector);
  });
  for (double f : out.fidelity) {
    out.chi.push_back(f <= 0.0 ? std::numeric_limits<double>::infinity()
                               : std::max(0.0, -2.0 * std::log(std::min(f, 1.0)) / (dh * dh)));
  }
  out.peaks = find_peaks(out.grid, out.chi);
  return out;
}

std::vector<double> find_peaks(const std::vector<double>& grid, const std::vector<double>& y) {
  if (grid.size() != y.size()) throw DomainError("find_peaks: grid and values differ in length");
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    const double x0 = grid[i - 1], x1 = grid[i], x2 = grid[i + 1];
    const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
    if (!std::isfinite(y0) || !std::isfinite(y1) || !std::isfinite(y2)) {
      peaks.push_back(x1);
      continue;
    }
    // Vertex of the interpolating parabola.
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curv = (d12 - d01) / (x2 - x0);
    if (curv >= 0.0) {
      peaks.push_back(x1);
      continue;
    }
    const double x = 0.5 * (x0 + x1) - 0.5 * d01 / curv;
    peaks.push_back(std::clamp(x, x0, x2));
  }
  return peaks;
}

std::vector<double> half_step_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo)) throw DomainError("half_step_grid needs lo < hi and step > 0");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> g;
  for (long i = 0; i < n; ++i) g.push_back(lo + (static_cast<double>(i) + 0.5) * step);
  return g;
}

int phase_label(double jc, double jp, double delta) {
  const double edge = 4.0 * std::abs(jc);
  const double tol = 1e-12 * (1.0 + edge);
  if (std::abs(std::abs(delta) - edge) <= tol) return 0;
  if (delta > edge) return 1;
  if (delta < -edge) return 2;
  if (jp == 0.0) return 0;
  return jp > 0.0 ? 3 : 4;
}

PhaseDiagram phase_diagram(const std::vector<double>& delta_grid,
                           const std::vector<double>& jp_grid, double jc, double gap_threshold) {
  if (!(gap_threshold > 0.0)) throw DomainError("gap threshold must be positive");
  PhaseDiagram pd;
  pd.delta_grid = delta_grid;
  pd.jp_grid = jp_grid;
  pd.threshold = gap_threshold;
  const std::size_t nj = jp_grid.size();
  const auto flat = parallel_map<double>(delta_grid.size() * nj, [&](std::size_t idx) {
    return continuum_gap(jc, jp_grid[idx % nj], delta_grid[idx / nj]);
  });
  pd.gap.assign(delta_grid.size(), std::vector<double>(nj));
  pd.label.assign(delta_grid.size(), std::vector<int>(nj));
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    for (std::size_t j = 0; j < nj; ++j) {
      pd.gap[i][j] = flat[i * nj + j];
      pd.label[i][j] = phase_label(jc, jp_grid[j], delta_grid[i]);
    }
  }
  return pd;
}

int count_gapped_regions(const PhaseDiagram& pd) {
  const std::size_t nd = pd.gap.size();
  if (nd == 0) return 0;
  const std::size_t nj = pd.gap[0].size();
  std::vector<std::vector<int>> seen(nd, std::vector<int>(nj, 0));
  int regions = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t i = 0; i < nd; ++i) {
    for (std::size_t j = 0; j < nj; ++j) {
      if (seen[i][j] || pd.gap[i][j] < pd.threshold) continue;
      ++regions;
      stack.push_back({i, j});
      seen[i][j] = 1;
      while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        auto visit = [&](std::size_t x, std::size_t y) {
          if (!seen[x][y] && pd.gap[x][y] >= pd.threshold) {
            seen[x][y] = 1;
            stack.push_back({x, y});
          }
        };
        if (a > 0) visit(a - 1, b);
        if (a + 1 < nd) visit(a + 1, b);
        if (b > 0) visit(a, b - 1);
        if (b + 1 < nj) visit(a, b + 1);
      }
    }
  }
  return regions;
}

}  // namespace gwqed
