#include "gwqed/quantum_ops.hpp"

#include <bit>
#include <string>

#include "gwqed/errors.hpp"

namespace gwqed {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && std::has_single_bit(n); }

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DomainError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                      " vs " + std::to_string(b.dim()) + ")");
  }
}

Eigen::Matrix2cd local_matrix(Pauli kind, LadderConvention conv) {
  const cplx i{0.0, 1.0};
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  const double ladder = conv == LadderConvention::Standard ? 1.0 : 2.0;
  switch (kind) {
    case Pauli::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::Y:
      m(0, 1) = -i;
      m(1, 0) = i;
      break;
    case Pauli::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case Pauli::Plus:
      m(0, 1) = ladder;
      break;
    case Pauli::Minus:
      m(1, 0) = ladder;
      break;
  }
  return m;
}

}  // namespace

Operator::Operator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DomainError("Operator: matrix must be square");
  if (!is_power_of_two(static_cast<std::size_t>(m_.rows()))) {
    throw DomainError("Operator: dimension " + std::to_string(m_.rows()) +
                      " is not a power of two");
  }
}

Operator Operator::zero(std::size_t dim) {
  return Operator(Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

Operator Operator::identity(std::size_t dim) {
  return Operator(
      Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

int Operator::n_sites() const { return std::countr_zero(dim()); }

Operator Operator::adjoint() const { return Operator(m_.adjoint()); }

double Operator::max_abs() const { return empty() ? 0.0 : m_.cwiseAbs().maxCoeff(); }

Operator& Operator::operator+=(const Operator& o) {
  require_same_dim(*this, o, "operator+");
  m_ += o.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  require_same_dim(*this, o, "operator-");
  m_ -= o.m_;
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator*");
  Operator out;
  out.m_ = a.m_ * b.m_;
  return out;
}

Operator embed_local(const Eigen::Matrix2cd& local, int site, int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw DomainError("n_sites must lie in [1, " + std::to_string(kMaxSites) + "], got " +
                      std::to_string(n_sites));
  }
  if (site < 0 || site >= n_sites) {
    throw DomainError("site " + std::to_string(site) + " out of range for " +
                      std::to_string(n_sites) + " sites");
  }
  const std::size_t dim = std::size_t{1} << n_sites;
  const int shift = n_sites - 1 - site;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t row = 0; row < dim; ++row) {
    const int rb = static_cast<int>((row >> shift) & 1U);
    const std::size_t rest = row & ~(std::size_t{1} << shift);
    for (int cb = 0; cb < 2; ++cb) {
      const cplx v = local(rb, cb);
      if (v == cplx{}) continue;
      const std::size_t col = rest | (static_cast<std::size_t>(cb) << shift);
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
    }
  }
  return Operator(std::move(m));
}

Operator pauli(Pauli kind, int site, int n_sites, LadderConvention conv) {
  return embed_local(local_matrix(kind, conv), site, n_sites);
}

bool is_hermitian(const Operator& op, double tol) {
  if (op.empty()) return true;
  return (op.matrix() - op.matrix().adjoint()).cwiseAbs().maxCoeff() < tol;
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

double spectral_norm(const Operator& op) {
  if (op.empty()) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(op.matrix());
  return svd.singularValues()(0);
}

EigenSystem eig_herm(const Operator& op) {
  if (op.empty()) throw DomainError("eig_herm: empty operator");
  // Relative tolerance so large-norm Hamiltonians are not rejected for
  // roundoff in their construction.
  const double tol = kHermitianTol * std::max(1.0, op.max_abs());
  if (!is_hermitian(op, tol)) throw DomainError("eig_herm: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("eig_herm: eigensolver failed");
  EigenSystem out;
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + solver.eigenvalues().size());
  out.vectors = solver.eigenvectors();
  return out;
}

}  // namespace gwqed
