#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gwqed/dfree.hpp"
#include "gwqed/errors.hpp"
#include "gwqed/slh.hpp"

using namespace gwqed;
constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

namespace {

WaveguideConfig wg(double gain, double length, double tr = 0.0, double tl = 0.0) {
  WaveguideConfig c;
  c.gain = gain;
  c.length = length;
  c.theta_right = tr;
  c.theta_left = tl;
  return c;
}

GiantAtom small_atom(double z, double g, double detuning = 0.0) {
  GiantAtom a;
  a.detuning = detuning;
  a.points = {{z, g}};
  return a;
}

Operator random_op(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  const int d = 1 << n;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cplx(nd(rng), nd(rng));
  return Operator(m);
}

SlhTriplet random_triplet(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  SlhTriplet t;
  t.scattering = std::exp(I * u(rng));
  t.jumps.push_back(random_op(rng, n));
  const auto h = random_op(rng, n);
  t.hamiltonian = cplx(0.5) * (h + h.adjoint());
  return t;
}

}  // namespace

TEST_CASE("right jump operator") {
  const auto cfg0 = wg(0.0, 4 * pi);
  CHECK((jump_op_right(0, {1.3, 1.0}, cfg0, 2) - pauli(Pauli::Minus, 0, 2)).max_abs() == 0.0);
  const auto cfg = wg(0.8, 4 * pi);
  CHECK((jump_op_right(1, {0.0, 1.0}, cfg, 2) - pauli(Pauli::Minus, 1, 2)).max_abs() < 1e-15);

  const auto s = jump_op_right(0, {pi, 1.0}, cfg, 1);
  CHECK(s(1, 0).real() == doctest::Approx(1.8991).epsilon(1e-4));
  const cplx plus = -I * std::sinh(0.4 * pi) * std::exp(2.0 * I * pi);
  CHECK(std::abs(s(0, 1) - plus) < 1e-12);
  CHECK(std::abs(std::norm(s(1, 0)) - std::norm(s(0, 1)) - 1.0) < 1e-12);
  CHECK_THROWS_AS(jump_op_right(0, {5 * pi, 1.0}, cfg, 1), DomainError);
}

TEST_CASE("left jump operator") {
  auto cfg = wg(0.8, 4 * pi, 0.0, pi / 2);
  CHECK((jump_op_left(0, {4 * pi, 1.0}, cfg, 1) - pauli(Pauli::Minus, 0, 1)).max_abs() < 1e-15);
  CHECK((jump_op_left(0, {2.0, 1.0}, wg(0.0, 4 * pi), 1) - pauli(Pauli::Minus, 0, 1)).max_abs() == 0.0);
  const auto s = jump_op_left(0, {pi, 1.0}, cfg, 1);
  CHECK(s(1, 0).real() == doctest::Approx(std::cosh(1.2 * pi)));
  const cplx plus = -I * std::exp(I * pi / 2.0) * std::sinh(1.2 * pi) * std::exp(-2.0 * I * pi);
  CHECK(std::abs(s(0, 1) - plus) < 1e-9);
}

TEST_CASE("phase triplets") {
  CHECK(phase_triplet(0.0).scattering == cplx(1.0));
  CHECK(phase_triplet(0.0).jumps.empty());
  CHECK(std::abs(phase_triplet(pi).scattering + 1.0) < 1e-15);
  const double phi1 = 0.2 * pi, phi2 = pi - phi1;
  CHECK(std::abs(phase_triplet(phi1).scattering * phase_triplet(phi2).scattering + 1.0) < 1e-15);
  const auto composed = series_product(phase_triplet(0.3), phase_triplet(0.9));
  CHECK(std::abs(composed.scattering - std::exp(1.2 * I)) < 1e-15);
  CHECK(composed.jumps.empty());
  CHECK(composed.hamiltonian.empty());
}

TEST_CASE("series product identity, unitarity and associativity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_triplet(rng, 2), b = random_triplet(rng, 2), c = random_triplet(rng, 2);
    const auto id = series_product(phase_triplet(0.0), a);
    CHECK((id.jumps[0] - a.jumps[0]).max_abs() < 1e-12);
    CHECK((id.hamiltonian - a.hamiltonian).max_abs() < 1e-12);
    const auto id2 = series_product(a, phase_triplet(0.0));
    CHECK((id2.jumps[0] - a.jumps[0]).max_abs() < 1e-12);

    const auto left = series_product(series_product(c, b), a);
    const auto right = series_product(c, series_product(b, a));
    CHECK(std::abs(left.scattering - right.scattering) < 1e-12);
    CHECK(std::abs(std::abs(left.scattering) - 1.0) < 1e-12);
    CHECK((left.jumps[0] - right.jumps[0]).max_abs() < 1e-12);
    CHECK((left.hamiltonian - right.hamiltonian).max_abs() < 1e-12 * (1.0 + left.hamiltonian.max_abs()));
    CHECK(is_hermitian(left.hamiltonian, 1e-12 * (1.0 + left.hamiltonian.max_abs())));
  }
  SlhTriplet small;
  small.jumps.push_back(pauli(Pauli::Minus, 0, 1));
  SlhTriplet big;
  big.jumps.push_back(pauli(Pauli::Minus, 0, 2));
  CHECK_THROWS_AS(series_product(small, big), DomainError);
}

TEST_CASE("two single-point emitters: cascade reproduces the interference term") {
  const double za = 0.4, zb = 1.5, ga = 0.7, gb = 1.1;
  const auto cfg = wg(0.6, 2.0, 0.3);
  const std::vector<GiantAtom> atoms{small_atom(za, ga), small_atom(zb, gb)};
  const auto r = cascade_right(atoms, cfg);
  const auto sa = jump_op_right(0, {za, ga}, cfg, 2), sb = jump_op_right(1, {zb, gb}, cfg, 2);
  const double gamma_a = std::sqrt(2 * pi) * ga, gamma_b = std::sqrt(2 * pi) * gb;
  const cplx pre = std::sqrt(gamma_a * gamma_b) / (4.0 * I);
  const Operator expected =
      pre * (std::exp(I * (zb - za)) * (sb.adjoint() * sa) - std::exp(-I * (zb - za)) * (sa.adjoint() * sb));
  CHECK((r.hamiltonian - expected).max_abs() < 1e-12);
  CHECK(std::abs(r.scattering - std::exp(I * (zb - za))) < 1e-15);
}

TEST_CASE("single small atom without gain") {
  const auto cfg = wg(0.0, 3.0);
  const double g = 0.9, detuning = 1.7;
  const std::vector<GiantAtom> atoms{small_atom(1.0, g, detuning)};
  const auto r = cascade_right(atoms, cfg, CascadeOrder::Sorted);
  const auto l = cascade_left(atoms, cfg, CascadeOrder::Sorted);
  const double amp = std::sqrt(0.5 * std::sqrt(2 * pi) * g);
  CHECK((r.jumps[0] - amp * pauli(Pauli::Minus, 0, 1)).max_abs() < 1e-15);
  CHECK((l.jumps[0] - amp * pauli(Pauli::Minus, 0, 1)).max_abs() < 1e-15);
  CHECK((r.hamiltonian - (0.5 * detuning) * pauli(Pauli::Z, 0, 1)).max_abs() < 1e-15);
  CHECK(l.hamiltonian.max_abs() == 0.0);
}

TEST_CASE("two small atoms without gain exchange with sin(separation)") {
  const double phi = 0.9;
  const auto cfg = wg(0.0, 3.0, 0.4, 1.1);
  const std::vector<GiantAtom> atoms{small_atom(0.5, 0.6), small_atom(0.5 + phi, 0.8)};
  const auto net = concatenate(cascade_right(atoms, cfg), cascade_left(atoms, cfg));
  const double k = std::sqrt(pi * 0.6 * 0.8 / 2.0);
  CHECK(std::abs(exchange_coefficient(net.hamiltonian, 0, 1) - k * std::sin(phi)) < 1e-12);
  CHECK(std::abs(pairing_coefficient(net.hamiltonian, 0, 1)) < 1e-15);
}

TEST_CASE("braided decoherence-free pair has vanishing jump operators") {
  for (double g : {0.0, 0.8, 1.2}) {
    const auto [a, b] = build_braided_pair(0.2 * pi, g);
    const std::vector<GiantAtom> atoms{a, b};
    const auto cfg = wg(g, geometry_extent(atoms), 0.7, -0.2);
    const auto r = cascade_right(atoms, cfg);
    const auto l = cascade_left(atoms, cfg);
    CHECK(spectral_norm(r.jumps[0]) < 1e-10);
    CHECK(spectral_norm(l.jumps[0]) < 1e-10);
    CHECK(std::abs(r.scattering - std::exp(I * (geometry_extent(atoms) - a.points[0].z))) < 1e-12);
  }
}

TEST_CASE("cascaded jump operator equals the phase-weighted direct sum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int m = 1; m <= 3; ++m) {
    for (int trial = 0; trial < 4; ++trial) {
      GiantAtom a, b;
      double z = 0.1;
      for (int i = 0; i < m; ++i) {
        a.points.push_back({z, 0.2 + u(rng)});
        z += 0.1 + 0.8 * u(rng);
        b.points.push_back({z, 0.2 + u(rng)});
        z += 0.1 + 0.8 * u(rng);
      }
      const std::vector<GiantAtom> atoms{a, b};
      const auto cfg = wg(1.2 * u(rng), z, 2 * pi * u(rng), 2 * pi * u(rng));
      const auto r = cascade_right(atoms, cfg);
      const auto l = cascade_left(atoms, cfg);
      CHECK((r.jumps[0] - jump_sum_right(atoms, cfg)).max_abs() < 1e-12);
      CHECK((l.jumps[0] - jump_sum_left(atoms, cfg)).max_abs() < 1e-12);
      CHECK(is_hermitian(r.hamiltonian, 1e-12));
      CHECK(is_hermitian(l.hamiltonian, 1e-12));
    }
  }
}

TEST_CASE("no pairing terms without gain") {
  const auto [a, b] = build_braided_pair(0.3 * pi, 0.0);
  const std::vector<GiantAtom> atoms{a, b};
  const auto cfg = wg(0.0, geometry_extent(atoms), 1.0, 0.5);
  const auto net = concatenate(cascade_right(atoms, cfg), cascade_left(atoms, cfg));
  CHECK(std::abs(pairing_coefficient(net.hamiltonian, 0, 1)) < 1e-14);
  // |ee> <-> |gg> matrix element
  CHECK(std::abs(net.hamiltonian(0, 3)) < 1e-14);
}

TEST_CASE("mirror geometry: right and left Hamiltonians have equal norms") {
  const auto [a, b] = build_braided_pair(0.35 * pi, 0.9);
  const std::vector<GiantAtom> atoms{a, b};
  const auto cfg = wg(0.9, geometry_extent(atoms), 0.4, 0.4);
  const auto r = cascade_right(atoms, cfg);
  const auto l = cascade_left(atoms, cfg);
  CHECK(std::abs(spectral_norm(r.hamiltonian) - spectral_norm(l.hamiltonian)) <
        1e-10 * spectral_norm(r.hamiltonian));
}

TEST_CASE("concatenation stacks channels") {
  const auto [a, b] = build_braided_pair(0.2 * pi, 0.5);
  const std::vector<GiantAtom> atoms{a, b};
  const auto cfg = wg(0.5, geometry_extent(atoms));
  const auto r = cascade_right(atoms, cfg);
  const auto net0 = concatenate(r, SlhTriplet{});
  CHECK(net0.jumps.size() == 1);
  CHECK((net0.hamiltonian - r.hamiltonian).max_abs() == 0.0);
  const auto net = concatenate(r, cascade_left(atoms, cfg));
  CHECK(net.jumps.size() == 2);
  CHECK(net.scattering.size() == 2);
  CHECK(is_hermitian(net.hamiltonian, 1e-12));
}

TEST_CASE("braided order is validated") {
  GiantAtom a, b;
  a.points = {{0.0, 1.0}, {1.0, 1.0}};
  b.points = {{2.0, 1.0}, {3.0, 1.0}};
  const auto cfg = wg(0.0, 4.0);
  CHECK_THROWS_AS(cascade_right({a, b}, cfg), DomainError);
  CHECK_NOTHROW(cascade_right({a, b}, cfg, CascadeOrder::Sorted));
  CHECK_THROWS_AS(cascade_left({b, a}, wg(0.0, 4.0)), DomainError);
  GiantAtom c;
  c.points = {{1.0, 1.0}};
  CHECK_THROWS_AS(cascade_right({a, c}, cfg, CascadeOrder::Sorted), DomainError);  // coincident
  GiantAtom unsorted;
  unsorted.points = {{1.0, 1.0}, {0.5, 1.0}};
  CHECK_THROWS_AS(cascade_right({unsorted}, cfg, CascadeOrder::Sorted), DomainError);
}

TEST_CASE("gauge transform rotates raising operators") {
  const auto sp = pauli(Pauli::Plus, 0, 2) * pauli(Pauli::Plus, 1, 2);
  const auto h = sp + sp.adjoint();
  const auto t = gauge_transform(h, pump_gauge_phases(1.2, 2));
  CHECK(std::abs(pairing_coefficient(t, 0, 1) - std::exp(-0.6 * I)) < 1e-15);
  CHECK(std::abs(pairing_coefficient(h, 0, 1) - 1.0) < 1e-15);
  CHECK_THROWS_AS(gauge_transform(h, {0.1}), DomainError);
}

TEST_CASE("coupling rate") {
  CHECK(CouplingPoint{0.0, 2.0 / pi}.gamma() == doctest::Approx(std::sqrt(2 * pi) * 2.0 / pi));
}
