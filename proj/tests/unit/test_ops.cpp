#include "doctest.h"

#include <cmath>
#include <vector>

#include "qclab/core/cap.hpp"
#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"
#include "test_helpers.hpp"

using namespace qclab;
using test::dm;

namespace {

// Independent fidelity oracle: Tr sqrt(sqrt(b) a sqrt(b)) via eigenvalues,
// squared. Differs from the library route, which uses singular values of
// sqrt(a) sqrt(b).
double fidelity_oracle(const DensityMatrix& a, const DensityMatrix& b) {
  const CMatrix s = psd_sqrt(b.matrix());
  const CMatrix inner_m = s * a.matrix() * s;
  const Eigen::VectorXd ev = eigenvalues(0.5 * (inner_m + inner_m.adjoint()));
  double t = 0;
  for (double x : ev) t += x > 0 ? std::sqrt(x) : 0.0;
  return t * t;
}

}  // namespace

TEST_CASE("tensor examples") {
  const auto ket01 = tensor(PureState::basis(1, 0), PureState::basis(1, 1));
  CHECK(ket01.dim() == 4);
  CHECK(std::abs(ket01[1] - Complex(1.0)) < 1e-15);

  Rng rng(5);
  const auto rho = random_density_matrix(2, rng);
  const auto joint = tensor(rho, DensityMatrix::maximally_mixed(1));
  CHECK(joint.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));

  const auto pp = tensor(dm(test::plus()), dm(test::plus()));
  CHECK(max_abs(pp.matrix() - CMatrix::Constant(4, 4, 0.25)) < 1e-12);
}

TEST_CASE("tensor respects the qubit cap") {
  ScopedQubitCap cap(4);
  const auto a = PureState::basis(3, 0);
  CHECK_THROWS_AS(tensor(a, a), CapExceeded);
  CHECK_THROWS_AS(tensor_power(PureState::basis(1, 0), 5), CapExceeded);
  CHECK(tensor_power(PureState::basis(1, 1), 4).dim() == 16);
}

TEST_CASE("partial trace examples") {
  const auto ket01 = dm(tensor(PureState::basis(1, 0), PureState::basis(1, 1)));
  const std::vector<int> keep0{0};
  const std::vector<int> keep1{1};
  CHECK(max_abs(partial_trace(ket01, keep0).matrix() - dm(PureState::basis(1, 0)).matrix()) < 1e-15);
  CHECK(max_abs(partial_trace(ket01, keep1).matrix() - dm(PureState::basis(1, 1)).matrix()) < 1e-15);

  const auto bell_marginal = partial_trace(dm(test::bell()), keep0);
  CHECK(max_abs(bell_marginal.matrix() - DensityMatrix::maximally_mixed(1).matrix()) < 1e-12);
  CHECK(max_abs(partial_trace(test::bell(), keep0).matrix() - bell_marginal.matrix()) < 1e-12);

  Rng rng(3);
  const auto rho = random_density_matrix(3, rng);
  const std::vector<int> all{0, 1, 2};
  CHECK(max_abs(partial_trace(rho, all).matrix() - rho.matrix()) < 1e-15);

  const std::vector<int> bad{3};
  CHECK_THROWS_AS(partial_trace(rho, bad), IndexOutOfRange);
  const std::vector<int> dup{1, 1};
  CHECK_THROWS_AS(partial_trace(rho, dup), IndexOutOfRange);
}

TEST_CASE("partial trace recovers product factors") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_density_matrix(2, rng);
    const auto b = random_density_matrix(1, rng);
    const auto c = random_density_matrix(1, rng);
    const auto abc = tensor(tensor(a, b), c);
    const std::vector<int> ka{0, 1}, kb{2}, kc{3}, kac{0, 1, 3};
    CHECK(max_abs(partial_trace(abc, ka).matrix() - a.matrix()) < 1e-12);
    CHECK(max_abs(partial_trace(abc, kb).matrix() - b.matrix()) < 1e-12);
    CHECK(max_abs(partial_trace(abc, kc).matrix() - c.matrix()) < 1e-12);
    CHECK(max_abs(partial_trace(abc, kac).matrix() - tensor(a, c).matrix()) < 1e-12);
    const auto psi = haar_sample(3, rng);
    CHECK(max_abs(partial_trace(psi, kb).matrix() - partial_trace(dm(psi), kb).matrix()) < 1e-12);
  }
}

TEST_CASE("permute qubits") {
  const auto ket01 = tensor(PureState::basis(1, 0), PureState::basis(1, 1));
  const std::vector<int> swap{1, 0};
  const auto ket10 = permute_qubits(ket01, swap);
  CHECK(std::abs(ket10[2] - Complex(1.0)) < 1e-15);
  const std::vector<int> bad{0, 0};
  CHECK_THROWS_AS(permute_qubits(ket01, bad), InvalidArgument);
}

TEST_CASE("trace distance examples") {
  Rng rng(2);
  const auto rho = random_density_matrix(2, rng);
  CHECK(trace_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));
  const auto k0 = dm(PureState::basis(1, 0));
  const auto k1 = dm(PureState::basis(1, 1));
  CHECK(trace_distance(k0, k1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(trace_distance(k0, dm(test::plus())) - std::sqrt(0.5)) < 1e-12);
  CHECK(std::abs(trace_distance(PureState::basis(1, 0), test::plus()) - std::sqrt(0.5)) < 1e-12);
  CHECK_THROWS_AS(trace_distance(k0, DensityMatrix::maximally_mixed(2)), DimensionMismatch);
}

TEST_CASE("fidelity examples") {
  Rng rng(4);
  const auto rho = random_density_matrix(2, rng);
  CHECK(std::abs(fidelity(rho, rho) - 1.0) < 1e-9);
  const auto pure = dm(haar_sample(2, rng));
  CHECK(std::abs(fidelity(pure, pure) - 1.0) < 1e-9);
  for (int m = 1; m <= 4; ++m) {
    const double f = fidelity(dm(PureState::basis(m, 0)), DensityMatrix::maximally_mixed(m));
    CHECK(std::abs(f - std::pow(2.0, -m)) < 1e-9);
  }
  CHECK_THROWS_AS(fidelity(rho, DensityMatrix::maximally_mixed(1)), DimensionMismatch);
}

TEST_CASE("distance measure properties over random pairs") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 2;
    const auto a = random_density_matrix(n, rng);
    const auto b = random_density_matrix(n, rng);
    const double td = trace_distance(a, b);
    const double f = fidelity(a, b);
    CHECK(td >= 0.0);
    CHECK(td <= 1.0);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(std::abs(td - trace_distance(b, a)) < 1e-9);
    CHECK(std::abs(f - fidelity(b, a)) < 1e-9);
    CHECK(std::abs(f - fidelity_oracle(a, b)) < 1e-8);
    CHECK(trace_product(a.matrix(), b.matrix()) <= f + 1e-9);

    const auto psi = haar_sample(n, rng);
    const auto phi = haar_sample(n, rng);
    const double pure_td = trace_distance(dm(psi), dm(phi));
    CHECK(std::abs(pure_td * pure_td + overlap_squared(psi, phi) - 1.0) < 1e-8);
    // Fuchs-van de Graaf sandwich as an extra cross-check.
    CHECK(1.0 - std::sqrt(f) <= td + 1e-9);
    CHECK(td <= std::sqrt(1.0 - f) + 1e-9);
  }
}

TEST_CASE("spectral decomposition") {
  CMatrix d(2, 2);
  d << 3.0, 0.0, 0.0, -1.0;
  auto pairs = spectral_decompose(HermitianMatrix(d));
  CHECK(pairs[0].value == doctest::Approx(3.0));
  CHECK(pairs[1].value == doctest::Approx(-1.0));
  CHECK(std::abs(pairs[0].vector[0] - Complex(1.0)) < 1e-12);
  CHECK(std::abs(pairs[1].vector[1] - Complex(1.0)) < 1e-12);

  CMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  pairs = spectral_decompose(HermitianMatrix(x));
  CHECK(pairs[0].value == doctest::Approx(1.0));
  CHECK(pairs[1].value == doctest::Approx(-1.0));
  CHECK(std::abs(std::abs(pairs[0].vector.dot(test::plus().amplitudes())) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(pairs[1].vector.dot(test::minus().amplitudes())) - 1.0) < 1e-12);

  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix h = random_hermitian(8, rng);
    pairs = spectral_decompose(HermitianMatrix(h));
    CMatrix rebuilt = CMatrix::Zero(8, 8);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i > 0) CHECK(pairs[i - 1].value >= pairs[i].value);
      rebuilt += pairs[i].value * pairs[i].vector * pairs[i].vector.adjoint();
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        const double expect = i == j ? 1.0 : 0.0;
        CHECK(std::abs(pairs[i].vector.dot(pairs[j].vector) - expect) < 1e-7);
      }
    }
    CHECK(max_abs(rebuilt - h) < 1e-7);
  }
}

TEST_CASE("positive part projector") {
  CMatrix d(2, 2);
  d << 1.0, 0.0, 0.0, -1.0;
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK(max_abs(positive_part_projector(HermitianMatrix(d)).matrix() - expected) < 1e-12);
  CHECK(max_abs(positive_part_projector(HermitianMatrix(CMatrix::Zero(4, 4))).matrix() -
                CMatrix::Identity(4, 4)) < 1e-12);

  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m0 = random_density_matrix(2, rng);
    const auto m1 = random_density_matrix(2, rng);
    const CMatrix h = m0.matrix() - m1.matrix();
    const auto pi = positive_part_projector(HermitianMatrix(h));
    CHECK(max_abs(pi.matrix() * pi.matrix() - pi.matrix()) < 1e-7);
    const double lhs = trace_product(pi.matrix(), h);
    const double rhs = half_trace_norm(h) + h.trace().real() / 2.0;
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("projector never beats twice the trace norm") {
  Rng rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const CMatrix a = random_hermitian(4, rng);
    const CMatrix b = random_hermitian(4, rng);
    const auto pi = positive_part_projector(HermitianMatrix(random_hermitian(4, rng)));
    CHECK(std::abs(trace_product(pi.matrix(), a - b)) <= 2.0 * half_trace_norm(a - b) + 1e-9);
  }
}

TEST_CASE("swap test") {
  Rng rng(6);
  const auto psi = dm(haar_sample(2, rng));
  CHECK(swap_test_accept_prob(psi, psi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(swap_test_accept_prob(dm(PureState::basis(1, 0)), dm(PureState::basis(1, 1))) ==
        doctest::Approx(0.5));
  const auto mixed = DensityMatrix::maximally_mixed(1);
  CHECK(swap_test_accept_prob(mixed, mixed) == doctest::Approx(0.75));
  CHECK_THROWS_AS(swap_test_accept_prob(mixed, psi), DimensionMismatch);
  int accepts = 0;
  for (int i = 0; i < 10000; ++i) accepts += swap_test_sample(mixed, mixed, rng) ? 1 : 0;
  CHECK(std::abs(accepts / 1e4 - 0.75) < test::three_sigma(0.75, 1e4));
}

TEST_CASE("haar sampling") {
  Rng rng(12);
  CHECK(haar_sample(0, rng).dim() == 1);
  CHECK(std::abs(haar_sample(0, rng)[0] - Complex(1.0)) < 1e-15);
  {
    ScopedQubitCap cap(3);
    CHECK_THROWS_AS(haar_sample(4, rng), CapExceeded);
  }

  const int n = 100000;
  double sum = 0, sum2 = 0;
  int heavy = 0;
  for (int i = 0; i < n; ++i) {
    const double p = std::norm(haar_sample(2, rng)[0]);
    sum += p;
    sum2 += p * p;
    heavy += std::norm(haar_sample(1, rng)[0]) >= 0.5 ? 1 : 0;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::abs(mean - 0.25) < 3.0 * sd / std::sqrt(n));
  CHECK(std::abs(heavy / double(n) - 0.5) < test::three_sigma(0.5, n));
}

TEST_CASE("measurement") {
  Rng rng(13);
  const auto plus = dm(test::plus());
  for (int i = 0; i < 100; ++i) {
    CHECK(measure(plus, Projector::identity(2), rng));
    CHECK_FALSE(measure(plus, Projector::zero(2), rng));
  }
  const auto hits = measure_repeated(plus, Projector::onto(PureState::basis(1, 0)), 10000, rng);
  CHECK(std::abs(hits / 1e4 - 0.5) < test::three_sigma(0.5, 1e4));
  CHECK_THROWS_AS(measure(plus, Projector::identity(4), rng), DimensionMismatch);

  Rng a(77), b(77);
  for (int i = 0; i < 50; ++i) {
    CHECK(measure(plus, Projector::onto(test::plus()), a) == measure(plus, Projector::onto(test::plus()), b));
  }
}
