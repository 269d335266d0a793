#include "gwqed/spinchain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gwqed/errors.hpp"

namespace gwqed {

namespace {

constexpr double kPi = std::numbers::pi;

void require_even_n(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("momentum-space treatment needs an even chain length");
}

double coupling_scale(JwConvention conv) { return conv == JwConvention::SpinConsistent ? 4.0 : 1.0; }

}  // namespace

SpinChainSpec SpinChainSpec::uniform(int n, double jc, double jp, double delta, Parity parity) {
  SpinChainSpec s;
  s.n = n;
  s.jc = jc;
  s.jp = jp;
  s.deltas.assign(static_cast<std::size_t>(std::max(n, 0)), delta);
  s.parity = parity;
  return s;
}

double SpinChainSpec::delta() const {
  validate();
  for (double d : deltas) {
    if (d != deltas.front()) throw DomainError("momentum-space operations need a uniform detuning");
  }
  return deltas.front();
}

void SpinChainSpec::validate() const {
  if (n < 2) throw DomainError("spin chain needs at least two sites");
  if (static_cast<int>(deltas.size()) != n) throw DomainError("need one detuning per site");
}

Operator build_xy_hamiltonian(const SpinChainSpec& spec, Boundary boundary) {
  spec.validate();
  const int n = spec.n;
  if (n > kMaxSites) throw DomainError("build_xy_hamiltonian: n_sites must lie in [1, 12]");
  Operator h = Operator::zero(std::size_t{1} << n);
  auto bond = [&](int i, int j) {
    h += (2.0 * (spec.jp + spec.jc)) * (pauli(Pauli::X, i, n) * pauli(Pauli::X, j, n));
    h += (2.0 * (spec.jc - spec.jp)) * (pauli(Pauli::Y, i, n) * pauli(Pauli::Y, j, n));
  };
  for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
  if (boundary == Boundary::Periodic) bond(n - 1, 0);
  for (int i = 0; i < n; ++i) h += spec.deltas[i] * pauli(Pauli::Z, i, n);
  return h;
}

Operator parity_operator(int n_sites) {
  Operator p = Operator::identity(std::size_t{1} << n_sites);
  for (int i = 0; i < n_sites; ++i) p = p * pauli(Pauli::Z, i, n_sites);
  return p;
}

QuadraticForm jw_quadratic_form(const SpinChainSpec& spec, Boundary boundary, JwConvention conv) {
  spec.validate();
  const int n = spec.n;
  const double s = coupling_scale(conv);
  QuadraticForm q;
  q.hopping = Eigen::MatrixXd::Zero(n, n);
  q.pairing = Eigen::MatrixXd::Zero(n, n);
  // Bond (i, j = i + 1): hopping s Jc (c_j^dag c_i + h.c.), pairing -s Jp c_j^dag c_i^dag + h.c.
  auto bond = [&](int i, int j, double sign) {
    q.hopping(i, j) += sign * s * spec.jc;
    q.hopping(j, i) += sign * s * spec.jc;
    q.pairing(j, i) += -sign * s * spec.jp;
    q.pairing(i, j) += sign * s * spec.jp;
  };
  for (int i = 0; i + 1 < n; ++i) bond(i, i + 1, 1.0);
  if (boundary == Boundary::Periodic) {
    const double parity_sign = spec.parity == Parity::Even ? 1.0 : -1.0;
    bond(n - 1, 0, -parity_sign);
  }
  for (int i = 0; i < n; ++i) {
    q.hopping(i, i) = -2.0 * spec.deltas[i];
    q.constant += spec.deltas[i];
  }
  return q;
}

BdgSolution solve_bdg(const QuadraticForm& form) {
  const Eigen::Index n = form.hopping.rows();
  Eigen::MatrixXd h(2 * n, 2 * n);
  h << form.hopping, form.pairing, -form.pairing, -form.hopping;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("BdG diagonalization failed");
  BdgSolution sol;
  const auto& ev = es.eigenvalues();
  double sum = 0.0;
  for (Eigen::Index i = n; i < 2 * n; ++i) {
    const double e = std::max(0.0, 0.5 * (ev(i) - ev(2 * n - 1 - i)));
    sol.quasi_energies.push_back(e);
    sum += e;
  }
  std::sort(sol.quasi_energies.begin(), sol.quasi_energies.end());
  sol.vacuum_energy = -0.5 * sum + 0.5 * form.hopping.trace() + form.constant;
  const double det = (form.hopping - form.pairing).determinant();
  sol.vacuum_parity = det < 0.0 ? -1 : 1;
  return sol;
}

namespace {

void append_levels(const BdgSolution& sol, int wanted_parity, std::vector<double>& out) {
  const std::size_t n = sol.quasi_energies.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double e = sol.vacuum_energy;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        e += sol.quasi_energies[i];
        ++count;
      }
    }
    const int parity = sol.vacuum_parity * (count % 2 == 0 ? 1 : -1);
    if (wanted_parity == 0 || parity == wanted_parity) out.push_back(e);
  }
}

}  // namespace

std::vector<double> bdg_many_body_spectrum(const SpinChainSpec& spec, Boundary boundary,
                                           JwConvention conv) {
  spec.validate();
  if (spec.n > 20) throw DomainError("many-body enumeration limited to 20 sites");
  std::vector<double> levels;
  if (boundary == Boundary::Open) {
    append_levels(solve_bdg(jw_quadratic_form(spec, boundary, conv)), 0, levels);
  } else {
    SpinChainSpec even = spec, odd = spec;
    even.parity = Parity::Even;
    odd.parity = Parity::Odd;
    append_levels(solve_bdg(jw_quadratic_form(even, boundary, conv)), 1, levels);
    append_levels(solve_bdg(jw_quadratic_form(odd, boundary, conv)), -1, levels);
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

std::vector<double> AllowedMomenta::all() const {
  std::vector<double> k = pairs;
  k.insert(k.end(), unpaired.begin(), unpaired.end());
  std::sort(k.begin(), k.end());
  return k;
}

AllowedMomenta allowed_momenta(int n, Parity parity) {
  require_even_n(n);
  AllowedMomenta m;
  if (parity == Parity::Even) {
    for (int j = 0; j < n / 2; ++j) m.pairs.push_back((2 * j + 1) * kPi / n);
  } else {
    m.unpaired.push_back(0.0);
    for (int j = 1; j < n / 2; ++j) m.pairs.push_back(2 * j * kPi / n);
    m.unpaired.push_back(kPi);
  }
  return m;
}

double dispersion(double k, double jc, double jp, double delta) {
  const double quarter_sq = delta * delta + 8.0 * (jp * jp + jc * jc) - 8.0 * delta * jc * std::cos(k) -
                            8.0 * (jp * jp - jc * jc) * std::cos(2.0 * k);
  const double scale = delta * delta + 16.0 * (jp * jp + jc * jc) + 1.0;
  if (quarter_sq < -1e-12 * scale) {
    throw NumericalError("dispersion radicand is negative: " + std::to_string(quarter_sq));
  }
  // Same polynomial as a sum of squares, which keeps small values accurate.
  const double a = 4.0 * jc * std::cos(k) - delta;
  const double b = 4.0 * jp * std::sin(k);
  return 2.0 * std::hypot(a, b);
}

double dispersion(double k, const SpinChainSpec& spec) {
  return dispersion(k, spec.jc, spec.jp, spec.delta());
}

double dispersion_bdg(double k, double jc, double jp, double delta, JwConvention conv) {
  const double s = 2.0 * coupling_scale(conv);
  const double xi = s * jc * std::cos(k) - 2.0 * delta;
  const double w = s * jp * std::sin(k);
  return std::hypot(xi, w);
}

double bogoliubov_angle(double k, const SpinChainSpec& spec) {
  const double num = -spec.jp * std::sin(k);
  const double den = spec.jc * std::cos(k) + spec.delta();
  if (den == 0.0) return num == 0.0 ? 0.0 : 0.25 * kPi;
  return 0.5 * std::atan(num / den);
}

double ground_state_angle(double k, double jc, double jp, double delta) {
  return 0.5 * std::atan2(-8.0 * jp * std::sin(k), 8.0 * jc * std::cos(k) - 2.0 * delta);
}

double MomentumCoeffs::block_energy() const { return std::hypot(diag, offdiag); }

MomentumCoeffs momentum_hamiltonian_coeffs(double k, const SpinChainSpec& spec) {
  return {16.0 * spec.jc * std::cos(k) - 2.0 * spec.delta(), -8.0 * spec.jp * std::sin(k)};
}

double continuum_gap(double jc, double jp, double delta) {
  constexpr int kGrid = 10001;
  auto eps = [&](double k) { return dispersion(k, jc, jp, delta); };
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double v = eps(kPi * i / (kGrid - 1));
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = kPi * std::max(best - 1, 0) / (kGrid - 1);
  double b = kPi * std::min(best + 1, kGrid - 1) / (kGrid - 1);
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = eps(c), fd = eps(d);
  while (b - a > 1e-13) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eps(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eps(d);
    }
  }
  return std::min({best_val, fc, fd, eps(0.5 * (a + b))});
}

double energy_gap(const SpinChainSpec& spec, GapMode mode) {
  const double delta = spec.delta();
  if (mode == GapMode::Continuum) return continuum_gap(spec.jc, spec.jp, delta);
  double gap = std::numeric_limits<double>::infinity();
  for (double k : allowed_momenta(spec.n, spec.parity).all()) {
    gap = std::min(gap, dispersion(k, spec.jc, spec.jp, delta));
  }
  return gap;
}

namespace {

struct OddSectorLevels {
  double pairs_ground = 0.0;
  double xi0 = 0.0, xipi = 0.0;
  double min_pair_energy = std::numeric_limits<double>::infinity();
};

double pairs_ground_energy(const std::vector<double>& ks, double jc, double jp, double delta,
                           double* min_pair_energy) {
  double e = 0.0;
  for (double k : ks) {
    const double xi = 8.0 * jc * std::cos(k) - 2.0 * delta;
    const double ek = dispersion_bdg(k, jc, jp, delta, JwConvention::SpinConsistent);
    e += xi - ek;
    if (min_pair_energy) *min_pair_energy = std::min(*min_pair_energy, ek);
  }
  return e;
}

OddSectorLevels odd_levels(const SpinChainSpec& spec) {
  const double delta = spec.delta();
  const auto m = allowed_momenta(spec.n, Parity::Odd);
  OddSectorLevels o;
  o.pairs_ground = pairs_ground_energy(m.pairs, spec.jc, spec.jp, delta, &o.min_pair_energy);
  o.xi0 = 8.0 * spec.jc - 2.0 * delta;
  o.xipi = -8.0 * spec.jc - 2.0 * delta;
  return o;
}

// Lowest odd-sector excitation above the paired ground state; throws when
// the minimum is degenerate.
double odd_unpaired_choice(const OddSectorLevels& o, double* which_k) {
  const double single = std::min(o.xi0, o.xipi);
  const double broken = std::min(o.min_pair_energy, o.xi0 + o.xipi + o.min_pair_energy);
  const double tol = 1e-12 * (1.0 + std::abs(o.xi0) + std::abs(o.xipi));
  if (broken <= single + tol || std::abs(o.xi0 - o.xipi) <= tol) {
    throw NumericalError("odd-parity ground state is degenerate");
  }
  if (which_k) *which_k = o.xi0 < o.xipi ? 0.0 : kPi;
  return single;
}

}  // namespace

double sector_ground_energy(const SpinChainSpec& spec, Parity parity) {
  const double delta = spec.delta();
  require_even_n(spec.n);
  const double constant = spec.n * delta;
  if (parity == Parity::Even) {
    const auto m = allowed_momenta(spec.n, Parity::Even);
    return constant + pairs_ground_energy(m.pairs, spec.jc, spec.jp, delta, nullptr);
  }
  const auto o = odd_levels(spec);
  return constant + o.pairs_ground + odd_unpaired_choice(o, nullptr);
}

double odd_sector_unpaired_mode(const SpinChainSpec& spec) {
  double k = 0.0;
  odd_unpaired_choice(odd_levels(spec), &k);
  return k;
}

ConventionReport convention_report(const SpinChainSpec& spec, int k_points) {
  if (k_points < 2) throw DomainError("convention report needs at least 2 momenta");
  const double delta = spec.delta();
  ConventionReport r;
  r.min_ratio_unit_hopping = r.min_ratio_momentum_block = std::numeric_limits<double>::infinity();
  r.max_ratio_unit_hopping = r.max_ratio_momentum_block = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < k_points; ++i) {
    const double k = kPi * i / (k_points - 1);
    const double p = dispersion(k, spec.jc, spec.jp, delta);
    const double sc = dispersion_bdg(k, spec.jc, spec.jp, delta, JwConvention::SpinConsistent);
    const double ap = dispersion_bdg(k, spec.jc, spec.jp, delta, JwConvention::UnitHopping);
    const double mb = momentum_hamiltonian_coeffs(k, spec).block_energy();
    r.k.push_back(k);
    r.closed_form.push_back(p);
    r.spin_consistent.push_back(sc);
    r.unit_hopping.push_back(ap);
    r.momentum_block.push_back(mb);
    r.max_abs_dev_spin_consistent = std::max(r.max_abs_dev_spin_consistent, std::abs(p - sc));
    if (p > 1e-9) {
      r.min_ratio_unit_hopping = std::min(r.min_ratio_unit_hopping, ap / p);
      r.max_ratio_unit_hopping = std::max(r.max_ratio_unit_hopping, ap / p);
      r.min_ratio_momentum_block = std::min(r.min_ratio_momentum_block, mb / p);
      r.max_ratio_momentum_block = std::max(r.max_ratio_momentum_block, mb / p);
    }
    const double th = bogoliubov_angle(k, spec);
    const double resid = std::sin(2.0 * th) * (spec.jc * std::cos(k) + delta) +
                         spec.jp * std::sin(k) * std::cos(2.0 * th);
    r.max_angle_relation_residual = std::max(r.max_angle_relation_residual, std::abs(resid));
  }
  return r;
}

}  // namespace gwqed
