#include "gwqed/slh.hpp"

#include <algorithm>
#include <string>

#include "gwqed/errors.hpp"

namespace gwqed {

namespace {

constexpr cplx kI{0.0, 1.0};

struct PlacedPoint {
  double z;
  int atom;
  int index;  // position within the atom's point list
};

std::vector<PlacedPoint> placed_points(const std::vector<GiantAtom>& atoms,
                                       const WaveguideConfig& cfg, CascadeOrder order) {
  if (atoms.empty()) throw DomainError("cascade: no atoms");
  if (static_cast<int>(atoms.size()) > kMaxSites) {
    throw DomainError("cascade: at most " + std::to_string(kMaxSites) + " atoms");
  }
  std::vector<PlacedPoint> pts;
  for (std::size_t n = 0; n < atoms.size(); ++n) {
    atoms[n].validate();
    for (std::size_t i = 0; i < atoms[n].points.size(); ++i) {
      const double z = atoms[n].points[i].z;
      if (z < 0.0 || z > cfg.length) {
        throw DomainError("cascade: coupling point z = " + std::to_string(z) +
                          " outside the waveguide [0, L]");
      }
      pts.push_back({z, static_cast<int>(n), static_cast<int>(i)});
    }
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const PlacedPoint& a, const PlacedPoint& b) { return a.z < b.z; });
  for (std::size_t j = 1; j < pts.size(); ++j) {
    if (pts[j].z == pts[j - 1].z) throw DomainError("cascade: coincident coupling points");
  }
  if (order == CascadeOrder::Braided) {
    if (atoms.size() != 2 || atoms[0].points.size() != atoms[1].points.size()) {
      throw DomainError("braided cascade needs two atoms with equal point counts");
    }
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (pts[j].atom != static_cast<int>(j % 2)) {
        throw DomainError("braided cascade: coupling points are not interleaved a1 b1 a2 b2 ...");
      }
    }
  }
  return pts;
}

Operator im_part(const Operator& x) { return (x - x.adjoint()) * cplx(0.0, -0.5); }

Operator add_optional(const Operator& a, const Operator& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + b;
}

}  // namespace

void GiantAtom::validate() const {
  if (points.empty()) throw DomainError("giant atom has no coupling points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].g >= 0.0)) throw DomainError("coupling strength must be non-negative");
    if (i > 0 && !(points[i].z > points[i - 1].z)) {
      throw DomainError("giant atom coupling points must be strictly increasing in z");
    }
  }
}

std::size_t SlhTriplet::dim() const {
  if (!hamiltonian.empty()) return hamiltonian.dim();
  for (const auto& l : jumps) {
    if (!l.empty()) return l.dim();
  }
  return 0;
}

Operator jump_op_right(int atom_index, const CouplingPoint& point, const WaveguideConfig& cfg,
                       int n_atoms) {
  const auto sq = squeeze_coeffs(cfg, point.z, Direction::Right);
  return sq.c * pauli(Pauli::Minus, atom_index, n_atoms) +
         (sq.s * std::exp(2.0 * kI * point.z)) * pauli(Pauli::Plus, atom_index, n_atoms);
}

Operator jump_op_left(int atom_index, const CouplingPoint& point, const WaveguideConfig& cfg,
                      int n_atoms) {
  const auto sq = squeeze_coeffs(cfg, point.z, Direction::Left);
  return sq.c * pauli(Pauli::Minus, atom_index, n_atoms) +
         (sq.s * std::exp(-2.0 * kI * point.z)) * pauli(Pauli::Plus, atom_index, n_atoms);
}

SlhTriplet series_product(const SlhTriplet& downstream, const SlhTriplet& upstream) {
  if (downstream.jumps.size() > 1 || upstream.jumps.size() > 1) {
    throw DomainError("series_product: single-channel triplets only");
  }
  const std::size_t d2 = downstream.dim();
  const std::size_t d1 = upstream.dim();
  if (d1 != 0 && d2 != 0 && d1 != d2) throw DomainError("series_product: dimension mismatch");

  SlhTriplet out;
  out.scattering = downstream.scattering * upstream.scattering;

  const Operator l2 = downstream.jumps.empty() ? Operator() : downstream.jumps[0];
  const Operator l1 = upstream.jumps.empty() ? Operator() : upstream.jumps[0];
  Operator l = add_optional(l2, l1.empty() ? Operator() : downstream.scattering * l1);
  if (!l.empty()) out.jumps.push_back(std::move(l));

  Operator h = add_optional(upstream.hamiltonian, downstream.hamiltonian);
  if (!l1.empty() && !l2.empty()) {
    h = add_optional(h, im_part(l2.adjoint() * (downstream.scattering * l1)));
  }
  out.hamiltonian = std::move(h);
  return out;
}

SlhTriplet phase_triplet(double phi) {
  SlhTriplet t;
  t.scattering = std::exp(kI * phi);
  return t;
}

SlhNetwork concatenate(const SlhTriplet& right, const SlhTriplet& left) {
  const std::size_t dr = right.dim();
  const std::size_t dl = left.dim();
  if (dr != 0 && dl != 0 && dr != dl) throw DomainError("concatenate: dimension mismatch");
  SlhNetwork net;
  net.scattering = {right.scattering, left.scattering};
  net.jumps = right.jumps;
  net.jumps.insert(net.jumps.end(), left.jumps.begin(), left.jumps.end());
  net.hamiltonian = add_optional(right.hamiltonian, left.hamiltonian);
  return net;
}

SlhTriplet cascade_right(const std::vector<GiantAtom>& atoms, const WaveguideConfig& cfg,
                         CascadeOrder order) {
  const auto pts = placed_points(atoms, cfg, order);
  const int n = static_cast<int>(atoms.size());
  SlhTriplet total;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j > 0) total = series_product(phase_triplet(pts[j].z - pts[j - 1].z), total);
    const auto& atom = atoms[pts[j].atom];
    const auto& pt = atom.points[pts[j].index];
    SlhTriplet node;
    node.jumps.push_back(std::sqrt(0.5 * pt.gamma()) * jump_op_right(pts[j].atom, pt, cfg, n));
    if (pts[j].index == 0) {
      node.hamiltonian = (0.5 * atom.detuning) * pauli(Pauli::Z, pts[j].atom, n);
    }
    total = series_product(node, total);
  }
  if (total.hamiltonian.empty()) total.hamiltonian = Operator::zero(std::size_t{1} << n);
  return total;
}

SlhTriplet cascade_left(const std::vector<GiantAtom>& atoms, const WaveguideConfig& cfg,
                        CascadeOrder order) {
  auto pts = placed_points(atoms, cfg, order);
  std::reverse(pts.begin(), pts.end());
  const int n = static_cast<int>(atoms.size());
  SlhTriplet total;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j > 0) total = series_product(phase_triplet(pts[j - 1].z - pts[j].z), total);
    const auto& pt = atoms[pts[j].atom].points[pts[j].index];
    SlhTriplet node;
    node.jumps.push_back(std::sqrt(0.5 * pt.gamma()) * jump_op_left(pts[j].atom, pt, cfg, n));
    total = series_product(node, total);
  }
  if (total.hamiltonian.empty()) total.hamiltonian = Operator::zero(std::size_t{1} << n);
  return total;
}

Operator jump_sum_right(const std::vector<GiantAtom>& atoms, const WaveguideConfig& cfg) {
  const auto pts = placed_points(atoms, cfg, CascadeOrder::Sorted);
  const int n = static_cast<int>(atoms.size());
  const double z_ref = pts.back().z;
  Operator sum = Operator::zero(std::size_t{1} << n);
  for (const auto& p : pts) {
    const auto& pt = atoms[p.atom].points[p.index];
    sum += (std::sqrt(0.5 * pt.gamma()) * std::exp(kI * (z_ref - p.z))) *
           jump_op_right(p.atom, pt, cfg, n);
  }
  return sum;
}

Operator jump_sum_left(const std::vector<GiantAtom>& atoms, const WaveguideConfig& cfg) {
  const auto pts = placed_points(atoms, cfg, CascadeOrder::Sorted);
  const int n = static_cast<int>(atoms.size());
  const double z_ref = pts.front().z;
  Operator sum = Operator::zero(std::size_t{1} << n);
  for (const auto& p : pts) {
    const auto& pt = atoms[p.atom].points[p.index];
    sum += (std::sqrt(0.5 * pt.gamma()) * std::exp(kI * (p.z - z_ref))) *
           jump_op_left(p.atom, pt, cfg, n);
  }
  return sum;
}

Operator gauge_transform(const Operator& h, const std::vector<double>& phases) {
  const int n = h.n_sites();
  if (static_cast<int>(phases.size()) != n) {
    throw DomainError("gauge_transform: need one phase per site");
  }
  const std::size_t dim = h.dim();
  Eigen::VectorXcd d(static_cast<Eigen::Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double phase = 0.0;
    for (int s = 0; s < n; ++s) {
      if (site_bit(idx, s, n) == 0) phase += phases[s];
    }
    d(static_cast<Eigen::Index>(idx)) = std::exp(kI * phase);
  }
  return Operator(d.asDiagonal() * h.matrix() * d.conjugate().asDiagonal());
}

std::vector<double> pump_gauge_phases(double theta_plus, int n_atoms) {
  return std::vector<double>(static_cast<std::size_t>(n_atoms), -0.25 * theta_plus);
}

namespace {

cplx pauli_trace_coefficient(const Operator& h, const Operator& dual) {
  const int n = h.n_sites();
  if (n < 2) throw DomainError("coefficient extraction needs at least two sites");
  const cplx tr = (dual.matrix() * h.matrix()).trace();
  return tr / static_cast<double>(std::size_t{1} << (n - 2));
}

}  // namespace

cplx exchange_coefficient(const Operator& h, int a, int b) {
  const int n = h.n_sites();
  return pauli_trace_coefficient(h, pauli(Pauli::Minus, a, n) * pauli(Pauli::Plus, b, n));
}

cplx pairing_coefficient(const Operator& h, int a, int b) {
  const int n = h.n_sites();
  return pauli_trace_coefficient(h, pauli(Pauli::Minus, a, n) * pauli(Pauli::Minus, b, n));
}

}  // namespace gwqed
