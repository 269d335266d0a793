#include "gwqed/interactions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gwqed/dfree.hpp"
#include "gwqed/errors.hpp"

namespace gwqed {

namespace {

double pair_prefactor(double ga, double gb) {
  return std::sqrt(0.5 * std::numbers::pi * ga * gb);
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

WaveguideConfig scan_config(double gain, double theta_minus) {
  return WaveguideConfig::from_phase_sum_difference(gain, 0.0, theta_minus, 1.0);
}

}  // namespace

double compute_jc(const GiantAtom& a, const GiantAtom& b, const WaveguideConfig& cfg) {
  double jc = 0.0;
  for (const auto& pa : a.points) {
    for (const auto& pb : b.points) {
      const double dz = pb.z - pa.z;
      jc += pair_prefactor(pa.g, pb.g) * std::sin(std::abs(dz)) * std::cosh(0.5 * cfg.gain * dz);
    }
  }
  return jc;
}

double compute_jp(const GiantAtom& a, const GiantAtom& b, const WaveguideConfig& cfg) {
  const double half_tm = 0.5 * cfg.theta_minus();
  double jp = 0.0;
  for (const auto& pa : a.points) {
    for (const auto& pb : b.points) {
      const double dz = pb.z - pa.z;
      jp += pair_prefactor(pa.g, pb.g) * sgn(dz) * std::cos(half_tm + pa.z + pb.z) *
            std::sinh(0.5 * cfg.gain * dz);
    }
  }
  return jp;
}

EffectivePair make_effective_pair(const GiantAtom& a, const GiantAtom& b,
                                  const WaveguideConfig& cfg) {
  return {compute_jc(a, b, cfg), compute_jp(a, b, cfg), a.detuning, b.detuning,
          cfg.theta_minus(), cfg.gain};
}

Operator effective_hamiltonian(const EffectivePair& pair) {
  const auto sp_a = pauli(Pauli::Plus, 0, 2);
  const auto sp_b = pauli(Pauli::Plus, 1, 2);
  const auto sm_b = pauli(Pauli::Minus, 1, 2);
  Operator coupling = pair.jp * (sp_a * sp_b) + pair.jc * (sp_a * sm_b);
  return (0.5 * pair.delta_a) * pauli(Pauli::Z, 0, 2) + (0.5 * pair.delta_b) * pauli(Pauli::Z, 1, 2) +
         coupling + coupling.adjoint();
}

Operator pairwise_hamiltonian(const std::vector<GiantAtom>& atoms, const WaveguideConfig& cfg) {
  const int n = static_cast<int>(atoms.size());
  if (n < 1 || n > kMaxSites) throw DomainError("pairwise_hamiltonian: 1 to 12 atoms");
  Operator h = Operator::zero(std::size_t{1} << n);
  for (int i = 0; i < n; ++i) {
    h += (0.5 * atoms[i].detuning) * pauli(Pauli::Z, i, n);
    for (int j = i + 1; j < n; ++j) {
      const double jc = compute_jc(atoms[i], atoms[j], cfg);
      const double jp = compute_jp(atoms[i], atoms[j], cfg);
      const auto sp_i = pauli(Pauli::Plus, i, n);
      Operator c = jp * (sp_i * pauli(Pauli::Plus, j, n)) + jc * (sp_i * pauli(Pauli::Minus, j, n));
      h += c + c.adjoint();
    }
  }
  return h;
}

std::pair<GiantAtom, GiantAtom> scan_pair(double d_s, double gain, const PairScanOptions& opt) {
  const double base =
      opt.placement == PairPlacement::Centered ? -(std::numbers::pi + 0.5 * d_s) : 0.0;
  return opt.mode == SeparationMode::Braided ? build_braided_pair(d_s, gain, base)
                                             : build_df_pair(d_s, gain, base);
}

ScanResult scan_vs_gain(double d_s, double theta_minus, const std::vector<double>& gains,
                        const PairScanOptions& opt) {
  ScanResult out;
  out.header = {"gain", "jc", "jp"};
  const auto rows = parallel_map<std::vector<double>>(gains.size(), [&](std::size_t i) {
    const auto [a, b] = scan_pair(d_s, gains[i], opt);
    const auto cfg = scan_config(gains[i], theta_minus);
    return std::vector<double>{gains[i], compute_jc(a, b, cfg), compute_jp(a, b, cfg)};
  });
  for (const auto& r : rows) out.add_row(r);
  return out;
}

ScanResult scan_vs_theta(double d_s, double gain, const std::vector<double>& thetas,
                         const PairScanOptions& opt) {
  ScanResult out;
  out.header = {"theta_minus", "jc", "jp"};
  const auto [a, b] = scan_pair(d_s, gain, opt);
  for (double t : thetas) {
    const auto cfg = scan_config(gain, t);
    out.add_row({t, compute_jc(a, b, cfg), compute_jp(a, b, cfg)});
  }
  return out;
}

std::vector<double> find_roots(const std::function<double(double)>& f,
                               const std::vector<double>& grid, double x_tol, double touch_tol) {
  std::vector<double> roots;
  if (grid.size() < 2) return roots;
  std::vector<double> v(grid.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    v[i] = f(grid[i]);
    scale = std::max(scale, std::abs(v[i]));
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (v[i] == 0.0) {
      roots.push_back(grid[i]);
      continue;
    }
    if (v[i] * v[i + 1] < 0.0) {
      double lo = grid[i], hi = grid[i + 1], flo = v[i];
      while (hi - lo > x_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
  }
  if (v.back() == 0.0) roots.push_back(grid.back());

  // Touching zeros: |f| has an interior local minimum without a sign change.
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const bool local_min = std::abs(v[i]) < std::abs(v[i - 1]) && std::abs(v[i]) < std::abs(v[i + 1]);
    const bool same_sign = v[i - 1] * v[i] > 0.0 && v[i] * v[i + 1] > 0.0;
    if (!local_min || !same_sign) continue;
    double a = grid[i - 1], b = grid[i + 1];
    auto g = [&](double x) { return std::abs(f(x)); };
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > x_tol) {
      if (gc < gd) {
        b = d;
        d = c;
        gd = gc;
        c = b - invphi * (b - a);
        gc = g(c);
      } else {
        a = c;
        c = d;
        gc = gd;
        d = a + invphi * (b - a);
        gd = g(d);
      }
    }
    const double x = 0.5 * (a + b);
    if (g(x) <= touch_tol * std::max(scale, 1.0)) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

SeparationScan scan_vs_separation(double gain, double theta_minus,
                                  const std::vector<double>& separations,
                                  const PairScanOptions& opt) {
  SeparationScan out;
  out.table.header = {"d_s", "jc", "jp", "jp_over_jc"};
  const auto cfg = scan_config(gain, theta_minus);
  auto jc_at = [&](double d) {
    const auto [a, b] = scan_pair(d, gain, opt);
    return compute_jc(a, b, cfg);
  };
  auto jp_at = [&](double d) {
    const auto [a, b] = scan_pair(d, gain, opt);
    return compute_jp(a, b, cfg);
  };
  for (double d : separations) {
    const double jc = jc_at(d);
    const double jp = jp_at(d);
    const double ratio =
        std::abs(jc) < 1e-12 ? std::numeric_limits<double>::quiet_NaN() : jp / jc;
    out.table.add_row({d, jc, jp, ratio});
  }
  out.jp_roots = find_roots(jp_at, separations);
  out.jc_roots = find_roots(jc_at, separations);
  return out;
}

}  // namespace gwqed
