#include "doctest.h"

#include <cmath>
#include <set>

#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"
#include "qclab/constructions/schemes.hpp"
#include "qclab/primitives/backends.hpp"
#include "qclab/primitives/commitment.hpp"
#include "qclab/primitives/efi.hpp"
#include "qclab/primitives/owsg.hpp"
#include "test_helpers.hpp"

using namespace qclab;

namespace {

// Basis-state scheme: phi_k = |k> on n qubits.
OwsgScheme basis_scheme(int n) {
  return OwsgScheme::with_projection_verifier("basis", n, n,
                                              [n](Key k) { return PureState::basis(n, k); });
}

}  // namespace

TEST_CASE("one-wayness game with an oracle-reading adversary") {
  const auto scheme = basis_scheme(3);
  Adversary honest = [](TargetAccess& access, Rng&) -> std::optional<Key> {
    const auto rho = access.exact_state();
    for (Key k = 0; k < 8; ++k) {
      if (rho.matrix()(k, k).real() > 0.5) return k;
    }
    return std::nullopt;
  };
  Rng rng(1);
  auto report = run_onewayness_game(scheme, honest, {.trials = 200}, rng);
  CHECK(report.estimate == doctest::Approx(1.0));
  CHECK(report.bot_count == 0);
  CHECK(report.access_mode == "oracle");

  // Sampled access refuses to reveal the exact state.
  Rng rng2(1);
  auto failing = run_onewayness_game(scheme, honest,
                                     {.trials = 20, .access = AccessMode::Sampled}, rng2);
  CHECK(failing.failures == 20);
  CHECK(failing.estimate == 0.0);
}

TEST_CASE("one-wayness game with a fixed wrong key") {
  // phi_k = |k> for k in {0..3}; the adversary always answers the key whose
  // state is orthogonal to every generated state by restricting keys to 0..2.
  auto scheme = basis_scheme(2);
  scheme.set_key_gen([](Rng& r) { return r.below(3); });
  Adversary wrong = [](TargetAccess&, Rng&) -> std::optional<Key> { return 3; };
  Rng rng(2);
  const auto report = run_onewayness_game(scheme, wrong, {.trials = 100}, rng);
  CHECK(report.estimate == 0.0);
  CHECK(report.ci95_halfwidth == 0.0);
}

TEST_CASE("game report arithmetic is recomputable from the log") {
  const auto scheme = basis_scheme(2);
  Adversary guess = [](TargetAccess&, Rng& r) -> std::optional<Key> {
    if (r.bernoulli(0.1)) return std::nullopt;
    return r.bits(2);
  };
  Rng rng(3);
  const auto report =
      run_onewayness_game(scheme, guess, {.trials = 500, .scoring = Scoring::Sampled}, rng);
  double wins = 0;
  std::int64_t bots = 0;
  for (const auto& rec : report.log) {
    wins += rec.outcome;
    bots += rec.bot ? 1 : 0;
  }
  CHECK(wins == *report.wins);
  CHECK(bots == report.bot_count);
  CHECK(report.estimate == wins / 500.0);
  CHECK(report.ci95_halfwidth ==
        doctest::Approx(1.96 * std::sqrt(report.estimate * (1 - report.estimate) / 500.0)));

  Rng again(3);
  const auto replay =
      run_onewayness_game(scheme, guess, {.trials = 500, .scoring = Scoring::Sampled}, again);
  CHECK(replay.to_json() == report.to_json());
}

TEST_CASE("sampled access enforces the copy budget") {
  const auto scheme = basis_scheme(1);
  TargetAccess access(scheme, 1, AccessMode::Sampled, 10);
  Rng rng(4);
  CHECK(access.measure_copies(Projector::onto(PureState::basis(1, 1)), 10, rng) == 10);
  CHECK_THROWS_AS(access.measure_copies(Projector::identity(2), 1, rng), AdversaryFailure);
  CHECK_THROWS_AS(access.exact_state(), AdversaryFailure);
  TargetAccess joint(scheme, 0, AccessMode::Sampled, 3);
  CHECK(joint.joint_state().num_qubits() == 3);
}

TEST_CASE("efi game examples") {
  const EfiPair orth("orth", test::dm(PureState::basis(1, 0)), test::dm(PureState::basis(1, 1)));
  Rng rng(5);
  auto constant = run_efi_game(orth, constant_distinguisher(1), 200, rng);
  CHECK(constant.estimate == 0.0);
  auto helstrom = run_efi_game(orth, helstrom_distinguisher(orth), 200, rng);
  CHECK(helstrom.estimate == doctest::Approx(1.0));
  auto exact = run_efi_game(orth, helstrom_distinguisher(orth), 10, rng, Scoring::Exact);
  CHECK(exact.estimate == doctest::Approx(1.0));
  CHECK(exact.arm0->rate == doctest::Approx(0.0));
  CHECK_FALSE(exact.wins.has_value());
}

TEST_CASE("commitment reveal and binding") {
  Rng rng(6);
  const auto prg = make_toy_prg(2, rng);
  const auto com = prg_commitment(prg);

  for (int b = 0; b < 2; ++b) {
    CHECK(reveal_verify(com, b, com.honest_state(b)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(reveal_verify(com, b, test::dm(com.honest_state(b))) == doctest::Approx(1.0).epsilon(1e-9));
  }
  const auto mixed = DensityMatrix::maximally_mixed(com.total_qubits());
  CHECK(reveal_verify(com, 0, mixed) == doctest::Approx(std::ldexp(1.0, -com.total_qubits())));

  // Identical unitaries: binding optimum 1.
  const CanonicalCommitment same("same", com.reveal_qubits(), com.commit_qubits(), com.unitary(0),
                                 com.unitary(0));
  CHECK(honest_binding_optimum(same).fidelity == doctest::Approx(1.0).epsilon(1e-9));

  // Orthogonal C-marginals: |0>|0> vs |0>|1>.
  Circuit zero(2), flip(2);
  flip.permute_basis({1, 0, 3, 2});
  const CanonicalCommitment orth("orth", 1, 1, zero, flip);
  CHECK(honest_binding_optimum(orth).fidelity == doctest::Approx(0.0));
  CHECK(honest_binding_optimum(orth).uhlmann == doctest::Approx(0.0));

  const auto opt = honest_binding_optimum(com);
  CHECK(opt.fidelity <= 0.25 + 1e-9);
  CHECK(std::abs(opt.fidelity - opt.uhlmann) < 1e-9);
  REQUIRE(opt.unitary.has_value());
  const auto attacked = apply_on_reveal(*opt.unitary, com.honest_state(0), com.reveal_qubits());
  CHECK(std::abs(reveal_verify(com, 1, attacked) - opt.fidelity) < 1e-9);

  // Relabeling Q_0 <-> Q_1 leaves the optimum unchanged.
  const CanonicalCommitment swapped("swapped", com.reveal_qubits(), com.commit_qubits(),
                                    com.unitary(1), com.unitary(0));
  CHECK(std::abs(honest_binding_optimum(swapped).fidelity - opt.fidelity) < 1e-9);
  CHECK_THROWS_AS(reveal_verify(com, 0, PureState::basis(2, 0)), DimensionMismatch);
}

TEST_CASE("hiding advantage of the exact Helstrom measurement equals trace distance") {
  Rng rng(7);
  const auto com = prg_commitment(make_toy_prg(2, rng));
  const auto pair = commit_marginals(com);
  const double td = trace_distance(pair.rho0, pair.rho1);
  const auto report = hiding_advantage(com, helstrom_distinguisher(pair), 5, rng, Scoring::Exact);
  CHECK(std::abs(report.estimate - td) < 1e-9);
  CHECK(hiding_advantage(com, constant_distinguisher(0), 50, rng).estimate == 0.0);
}

TEST_CASE("toy back-ends") {
  Rng rng(8);
  const auto prg = make_toy_prg(2, rng);
  std::set<std::uint64_t> image;
  for (std::uint64_t x = 0; x < 4; ++x) {
    CHECK(prg(x) < 16);
    image.insert(prg(x));
  }
  CHECK(image.size() == 4);
  CHECK(prg.injective());

  const auto owf = make_toy_owf("random_table", 3, 3, rng);
  CHECK(owf.table().size() == 8);
  const auto arx = make_toy_owf("arx", 10, 12, rng);
  std::set<std::uint64_t> arx_image(arx.table().begin(), arx.table().end());
  CHECK(arx.injective() == (arx_image.size() == 1024));
  CHECK(make_toy_owf("random_injection", 6, 8, rng).injective());

  const auto prsg = make_haar_prsg(4, 2, rng);
  CHECK(prsg.states().size() == 16);
  for (const auto& s : prsg.states()) CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-12);

  CHECK_THROWS_AS(make_toy_owf("random_table", 21, 8, rng), ParamTooLarge);
  CHECK_THROWS_AS(make_toy_prg(17, rng), ParamTooLarge);
  CHECK_THROWS_AS(make_toy_owf("bogus", 2, 2, rng), InvalidArgument);

  const auto identity = ToyPrg("identity", 3, 0);
  CHECK(identity(5) == ((5u << 3) | 5u));
}

TEST_CASE("back-end descriptors round-trip exactly") {
  Rng rng(9);
  const auto owf = make_toy_owf("random_injection", 8, 10, rng);
  const auto owf2 = ToyOwf::from_json(Json::parse(owf.to_json().dump()));
  CHECK(owf2.table() == owf.table());
  CHECK(owf2.to_json() == owf.to_json());

  const auto prg = make_toy_prg(4, rng);
  const auto prg2 = ToyPrg::from_json(Json::parse(prg.to_json().dump()));
  CHECK(prg2.to_json() == prg.to_json());
  for (std::uint64_t x = 0; x < 16; ++x) CHECK(prg2(x) == prg(x));

  const auto prsg = make_haar_prsg(3, 2, rng);
  const auto prsg2 = HaarPrsg::from_json(Json::parse(prsg.to_json().dump()));
  for (std::uint64_t k = 0; k < 8; ++k) {
    CHECK((prsg2.state(k).amplitudes() - prsg.state(k).amplitudes()).norm() == 0.0);
  }

  Json bad = owf.to_json();
  bad["flags"]["injective"] = false;
  CHECK_THROWS_AS(ToyOwf::from_json(bad), ConfigError);
}

TEST_CASE("shipped schemes are correct") {
  Rng rng(10);
  const auto prsg_scheme = prsg_to_owsg(make_haar_prsg(3, 2, rng));
  const auto phase = phase_owsg(make_toy_owf("random_injection", 4, 8, rng), 16);
  for (const auto* s : {&prsg_scheme, &phase}) {
    for (Key k = 0; k < s->key_count(); ++k) {
      CHECK(std::abs(s->verify(k, s->pure_state(k)) - 1.0) < 1e-9);
      CHECK(std::abs(s->verify(k, s->state(k)) - 1.0) < 1e-9);
    }
  }
}
