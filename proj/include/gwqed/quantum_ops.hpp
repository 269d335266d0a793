#pragma once

// Dense operator algebra on multi-qubit Hilbert spaces.
//
// Site 0 is the most significant bit of the computational-basis index and
// the local basis is ordered (|e>, |g>), so sigma_z = diag(1, -1) and
// sigma_+ = |e><g| has its single nonzero entry at (0, 1).

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace gwqed {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxSites = 12;
inline constexpr double kHermitianTol = 1e-12;

enum class Pauli { X, Y, Z, Plus, Minus };

/// Standard: sigma_pm = (sigma_x +- i sigma_y) / 2.
/// Doubled:  sigma_pm = sigma_x +- i sigma_y, the rotation used when the
///           chain Hamiltonian is written in XY form.
enum class LadderConvention { Standard, Doubled };

class Operator {
 public:
  /// Empty operator (dim 0). Acts as a dimension-agnostic zero in SLH
  /// compositions; arithmetic on it is otherwise an error.
  Operator() = default;
  explicit Operator(Matrix m);

  static Operator zero(std::size_t dim);
  static Operator identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  bool empty() const { return m_.size() == 0; }
  int n_sites() const;

  const Matrix& matrix() const { return m_; }
  cplx operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  Operator adjoint() const;
  double max_abs() const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cplx s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Matrix m_;
};

/// Single-site Pauli or ladder operator embedded as I x ... x sigma x ... x I.
Operator pauli(Pauli kind, int site, int n_sites,
               LadderConvention conv = LadderConvention::Standard);

/// Embeds an arbitrary 2x2 matrix at `site`.
Operator embed_local(const Eigen::Matrix2cd& local, int site, int n_sites);

/// True iff max|O - O^dagger| < tol.
bool is_hermitian(const Operator& op, double tol = kHermitianTol);

Operator commutator(const Operator& a, const Operator& b);

/// Largest singular value.
double spectral_norm(const Operator& op);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns
};

/// Full diagonalization of a Hermitian operator. Throws DomainError on
/// non-Hermitian input.
EigenSystem eig_herm(const Operator& op);

/// Basis-index bit of `site` (0 = |e>, 1 = |g>).
inline int site_bit(std::size_t index, int site, int n_sites) {
  return static_cast<int>((index >> (n_sites - 1 - site)) & 1U);
}

}  // namespace gwqed
