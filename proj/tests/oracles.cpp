#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

// Columns of the identity that span the parity sector.
Eigen::MatrixXcd sector_basis(int n, int parity_sign) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> idx;
  for (std::size_t b = 0; b < dim; ++b) {
    int ground_count = 0;
    for (int s = 0; s < n; ++s) ground_count += gwqed::site_bit(b, s, n);
    const int sign = ground_count % 2 == 0 ? 1 : -1;
    if (sign == parity_sign) idx.push_back(b);
  }
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                  static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    basis(static_cast<Eigen::Index>(idx[j]), static_cast<Eigen::Index>(j)) = 1.0;
  }
  return basis;
}

}  // namespace

SectorGround sector_ground(const gwqed::Operator& h, int parity_sign) {
  const auto basis = sector_basis(h.n_sites(), parity_sign);
  const Eigen::MatrixXcd hs = basis.adjoint() * h.matrix() * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hs);
  SectorGround g;
  g.energy = es.eigenvalues()(0);
  g.gap_to_next = es.eigenvalues()(1) - es.eigenvalues()(0);
  g.state = basis * es.eigenvectors().col(0);
  return g;
}

std::vector<double> sector_spectrum(const gwqed::Operator& h, int parity_sign) {
  const auto basis = sector_basis(h.n_sites(), parity_sign);
  const Eigen::MatrixXcd hs = basis.adjoint() * h.matrix() * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hs, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

std::vector<Eigen::MatrixXcd> jw_annihilators(int n) {
  Eigen::Matrix2cd sz, sp, id;
  sz << 1, 0, 0, -1;
  sp << 0, 1, 0, 0;
  id.setIdentity();
  std::vector<Eigen::MatrixXcd> cs;
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int s = 0; s < n; ++s) {
      const Eigen::Matrix2cd& f = s < j ? sz : (s == j ? sp : id);
      // m (x) f keeps site 0 as the most significant factor.
      Eigen::MatrixXcd kron(m.rows() * 2, m.cols() * 2);
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) kron.block(r * 2, c * 2, 2, 2) = m(r, c) * f;
      }
      m = kron;
    }
    cs.push_back(m);
  }
  return cs;
}

Eigen::MatrixXcd fock_matrix(const gwqed::QuadraticForm& q) {
  const int n = static_cast<int>(q.hopping.rows());
  const auto c = jw_annihilators(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd h = q.constant * Eigen::MatrixXcd::Identity(dim, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (q.hopping(i, j) != 0.0) h += q.hopping(i, j) * c[i].adjoint() * c[j];
      if (q.pairing(i, j) != 0.0) {
        const Eigen::MatrixXcd t = 0.5 * q.pairing(i, j) * c[i].adjoint() * c[j].adjoint();
        h += t + t.adjoint();
      }
    }
  }
  return h;
}

gwqed::ModeAmplitudes waveguide_taylor(const gwqed::WaveguideConfig& cfg,
                                       const gwqed::ModeAmplitudes& init, double z) {
  const cplx i{0.0, 1.0};
  const double dk = cfg.dk;
  Eigen::Matrix2cd m;
  m << 0.5 * i * dk, -0.5 * i * cfg.gain * std::exp(i * cfg.theta_right),
      0.5 * i * cfg.gain * std::exp(-i * cfg.theta_right), -0.5 * i * dk;
  const double dz = z - init.z;
  // Scaling and squaring keeps the series short and accurate.
  int squarings = 0;
  double norm = m.cwiseAbs().rowwise().sum().maxCoeff() * std::abs(dz);
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  const Eigen::Matrix2cd a = m * (dz / std::pow(2.0, squarings));
  Eigen::Matrix2cd term = Eigen::Matrix2cd::Identity(), e = Eigen::Matrix2cd::Identity();
  for (int k = 1; k < 30; ++k) {
    term = term * a / static_cast<double>(k);
    e += term;
  }
  for (int s = 0; s < squarings; ++s) e = e * e;
  Eigen::Vector2cd v(init.a1 * std::exp(i * 0.5 * dk * init.z),
                     init.a2_conj * std::exp(-i * 0.5 * dk * init.z));
  const Eigen::Vector2cd w = e * v;
  return {w(0) * std::exp(-i * 0.5 * dk * z), w(1) * std::exp(i * 0.5 * dk * z), z};
}

double m2_grid_min_residual(double z1, double z2, double gain, int points, double ratio_max) {
  const double c1 = std::cosh(0.5 * gain * z1), c2 = std::cosh(0.5 * gain * z2);
  const double s1 = std::sinh(0.5 * gain * z1), s2 = std::sinh(0.5 * gain * z2);
  double best = INFINITY;
  for (int k = 1; k <= points; ++k) {
    const double ratio = ratio_max * k / points;  // g1 / g2 with g2 = 1
    const double x = std::sqrt(ratio);
    // alternating signs: -sqrt(g1) f(z1) + sqrt(g2) f(z2)
    best = std::min(best, std::max(std::abs(c2 - x * c1), std::abs(s2 - x * s1)));
  }
  return best;
}

double jtwpa_ode_residual(const gwqed::JtwpaParams& p, cplx a_s0, cplx a_i0, double x, double h) {
  const auto plus = gwqed::jtwpa_solution(p, a_s0, a_i0, x + h);
  const auto minus = gwqed::jtwpa_solution(p, a_s0, a_i0, x - h);
  const auto mid = gwqed::jtwpa_solution(p, a_s0, a_i0, x);
  const cplx ds = (plus.signal - minus.signal) / (2.0 * h);
  const cplx di = (plus.idler - minus.idler) / (2.0 * h);
  const cplx i{0.0, 1.0};
  const cplx phase = std::exp(i * p.total_mismatch() * x);
  const cplx rs = ds - i * p.kappa_s * std::conj(mid.idler) * phase;
  const cplx ri = di - i * p.kappa_i * std::conj(mid.signal) * phase;
  return std::max(std::abs(rs), std::abs(ri));
}

double overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::abs(a.normalized().dot(b.normalized()));
}

}  // namespace oracle
