#include "doctest.h"

#include <cmath>

#include "qclab/attacks/distinguishers.hpp"
#include "qclab/attacks/net.hpp"
#include "qclab/attacks/owsg_attacks.hpp"
#include "qclab/attacks/tomography.hpp"
#include "qclab/constructions/schemes.hpp"
#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"
#include "qclab/primitives/backends.hpp"
#include "test_helpers.hpp"

using namespace qclab;

namespace {

OwsgScheme basis_scheme(int n) {
  return OwsgScheme::with_projection_verifier("basis", n, n,
                                              [n](Key k) { return PureState::basis(n, k); });
}

OwsgScheme haar_scheme(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  return prsg_to_owsg(make_haar_prsg(n, m, rng));
}

}  // namespace

TEST_CASE("trivial adversary") {
  SUBCASE("single key wins with probability one") {
    const auto scheme = haar_scheme(0, 2, 1);
    Rng rng(1);
    const auto report = run_onewayness_game(scheme, trivial_adversary(scheme), {.trials = 50}, rng);
    CHECK(report.estimate == doctest::Approx(1.0));
    CHECK(trivial_win_law(scheme).by_gram == doctest::Approx(1.0));
  }
  SUBCASE("orthonormal basis states give 2^-n") {
    const auto scheme = basis_scheme(3);
    const auto law = trivial_win_law(scheme);
    CHECK(law.by_verifier == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(law.by_gram == doctest::Approx(0.125).epsilon(1e-12));
  }
  SUBCASE("haar schemes: two routes agree and beat the welch floor") {
    for (auto [n, m] : {std::pair{3, 1}, {4, 2}, {6, 3}}) {
      const auto scheme = haar_scheme(n, m, 100 + static_cast<std::uint64_t>(n));
      const auto law = trivial_win_law(scheme);
      CHECK(std::abs(law.by_verifier - law.by_gram) < 1e-9);
      CHECK(law.by_verifier >= law.floor - 1e-12);

      Rng rng(static_cast<std::uint64_t>(m));
      const auto exact = run_onewayness_game(scheme, trivial_adversary(scheme),
                                             {.trials = 4000, .keep_log = false}, rng);
      CHECK(std::abs(exact.estimate - law.by_verifier) <= 3.0 * exact.sigma + 1e-12);
      const auto sampled = run_onewayness_game(
          scheme, trivial_adversary(scheme),
          {.trials = 4000, .scoring = Scoring::Sampled, .keep_log = false}, rng);
      CHECK(std::abs(sampled.estimate - law.by_verifier) <= 3.0 * sampled.sigma);
    }
  }
}

TEST_CASE("expected pairwise quantities") {
  Rng rng(2);
  const auto constant = OwsgScheme::with_projection_verifier(
      "constant", 3, 1, [](Key) { return PureState::basis(1, 0); });
  CHECK(expected_pairwise_quantities(constant, rng).expected_td == doctest::Approx(0.0));

  const auto two = basis_scheme(1);
  const auto q = expected_pairwise_quantities(two, rng);
  CHECK(q.enumerated);
  CHECK(q.expected_td == doctest::Approx(0.5));
  CHECK(q.bound == doctest::Approx(std::sqrt(0.5)));

  for (int m = 1; m <= 3; ++m) {
    const auto scheme = haar_scheme(4, m, 50 + static_cast<std::uint64_t>(m));
    const auto h = expected_pairwise_quantities(scheme, rng);
    CHECK(h.expected_td <= h.bound + 1e-9);
    CHECK(h.correctness == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(h.win_lb >= h.floor - 1e-9);
    CHECK(h.expected_overlap_sq >= std::ldexp(1.0, -m) - 1e-12);
  }
  const auto big = haar_scheme(12, 1, 3);
  const auto sampled = expected_pairwise_quantities(big, rng, 10, 2000);
  CHECK_FALSE(sampled.enumerated);
  CHECK(sampled.pairs == 2000);
}

TEST_CASE("tomography") {
  Rng rng(3);
  const auto rho = random_density_matrix(1, rng);

  const auto exact = tomography_oracle(rho, 0.1, 0.0, rng);
  CHECK((exact.estimate.matrix() - rho.matrix()).norm() == 0.0);
  CHECK(exact.mode == "oracle");

  const auto perturbed = tomography_oracle(rho, 0.1, 0.07, rng);
  CHECK(half_trace_norm(perturbed.estimate.matrix() - rho.matrix()) ==
        doctest::Approx(0.07).epsilon(1e-12));
  CHECK_THROWS_AS(tomography_oracle(rho, 0.1, 0.2, rng), InvalidArgument);

  CHECK(reference_tomography_copies(16.0, 4, 0.1) == doctest::Approx(58982400.0).epsilon(1e-15));
  CHECK(tomography_shots_per_pauli(2, 0.1, 0.05) ==
        static_cast<std::int64_t>(std::ceil(3200.0 * std::log(160.0))));

  TomographyConfig config;
  config.delta = 0.1;
  config.beta = 0.05;
  for (const auto& target : {DensityMatrix::maximally_mixed(1), rho}) {
    int failures = 0;
    for (std::uint64_t run = 0; run < 200; ++run) {
      Rng r = rng.child(run);
      const auto est = tomography_sampled(target, config, r);
      CHECK(is_hermitian(est.estimate.matrix(), 1e-12));
      if (half_trace_norm(est.estimate.matrix() - target.matrix()) > 0.1) ++failures;
    }
    CHECK(failures <= 10);
  }

  TomographyConfig tight;
  tight.shot_ceiling = 1000;
  CHECK_THROWS_AS(tomography_sampled(rho, tight, rng), BudgetOverflow);
}

TEST_CASE("tomography respects the target copy budget") {
  const auto scheme = basis_scheme(1);
  TargetAccess access(scheme, 1, AccessMode::Sampled, 1000);
  TomographyConfig config;
  Rng rng(4);
  CHECK_THROWS_AS(tomography_sampled(access, config, rng), AdversaryFailure);
}

TEST_CASE("eps net") {
  SUBCASE("vacuous radius") {
    const auto net = build_net(1, 2.0);
    CHECK(net.size() == 1);
    CHECK((net.elements[0].matrix() - CMatrix::Identity(2, 2) / 2.0).norm() < 1e-15);
    Rng rng(5);
    CHECK(audit_net_covering(net, 100, rng).fraction == 1.0);
  }
  SUBCASE("qubit net at gamma 0.5") {
    const auto net = build_net(1, 0.5);
    CHECK(net.size() > 1);
    for (const auto& e : net.elements) CHECK_NOTHROW(DensityMatrix(e.matrix()));
    const double c_impl = net.construction["c_impl"].get<double>();
    CHECK(static_cast<double>(net.size()) <= std::pow(c_impl / 0.5, 4.0));
    Rng rng(6);
    CHECK(audit_net_covering(net, 1000, rng).fraction >= 0.995);
    Rng pure_rng(7);
    const auto pure = audit_net_covering(net, 1000, pure_rng, true);
    CHECK(pure.fraction == 1.0);
    CHECK(pure.max_distance <= 0.5);
  }
  SUBCASE("deterministic") {
    const auto a = build_net(1, 0.2);
    const auto b = build_net(1, 0.2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a.elements[i].matrix() == b.elements[i].matrix());
    }
  }
  SUBCASE("limits") {
    CHECK_THROWS_AS(build_net(2, 0.1), NetTooLarge);
    CHECK_THROWS_AS(build_net(3, 0.5), ParamTooLarge);
    CHECK(build_net(2, 0.8).size() == 1);
  }
  SUBCASE("projection onto states") {
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
      const CMatrix h = random_hermitian(4, rng);
      const auto rho = project_to_states(h);
      CHECK_NOTHROW(DensityMatrix(rho.matrix()));
    }
    const auto inside = random_density_matrix(2, rng);
    CHECK((project_to_states(inside.matrix()).matrix() - inside.matrix()).norm() < 1e-12);
  }
}

TEST_CASE("net attack") {
  SUBCASE("single key") {
    const auto scheme = haar_scheme(0, 1, 9);
    const auto attack = net_attack(scheme, 0.2);
    Rng rng(9);
    const auto report = run_onewayness_game(scheme, attack.adversary, {.trials = 20}, rng);
    CHECK(report.estimate == doctest::Approx(1.0));
  }
  SUBCASE("haar toy scheme with oracle tomography") {
    const auto scheme = haar_scheme(3, 1, 10);
    const auto attack = net_attack(scheme, 0.2);
    const double gamma = attack.params.gamma;
    CHECK(gamma == 0.2 / 6.0);
    CHECK(attack.params.eps_bad == gamma / static_cast<double>(attack.params.net_size));
    CHECK(static_cast<double>(attack.params.iterations) >=
          std::log2(1.0 / attack.params.failure_budget) / attack.params.eps_bad);

    Rng rng(10);
    const auto report = run_onewayness_game(scheme, attack.adversary,
                                            {.trials = 200, .record_td = true}, rng);
    CHECK(report.estimate >= 0.8);
    const double bot_rate = static_cast<double>(report.bot_count) / 200.0;
    CHECK(bot_rate <= gamma + test::three_sigma(gamma, 200.0));
    for (const auto& rec : report.log) {
      if (!rec.bot) CHECK(*rec.td_to_target <= 4.0 * gamma + 1e-12);
    }

    Rng again(10);
    const auto replay = run_onewayness_game(scheme, attack.adversary,
                                            {.trials = 200, .record_td = true}, again);
    CHECK(replay.to_json().dump() == report.to_json().dump());
  }
  SUBCASE("perturbed oracle tomography") {
    const auto scheme = haar_scheme(3, 1, 11);
    NetAttackOptions options;
    options.perturbation_fraction = 0.25;
    options.max_iterations = 500;
    const auto attack = net_attack(scheme, 0.2, options);
    CHECK(attack.params.perturbation == doctest::Approx(0.25 * attack.params.gamma));
    Rng rng(11);
    const auto report = run_onewayness_game(scheme, attack.adversary,
                                            {.trials = 100, .record_td = true}, rng);
    CHECK(report.estimate >= 0.8 - 3.0 * report.sigma);
    for (const auto& rec : report.log) {
      if (!rec.bot) CHECK(*rec.td_to_target <= 4.0 * attack.params.gamma + 1e-12);
    }
  }
}

TEST_CASE("efi distinguisher") {
  Rng rng(12);
  SUBCASE("orthogonal pair with exact estimates") {
    const EfiPair orth("orth", test::dm(PureState::basis(1, 0)), test::dm(PureState::basis(1, 1)));
    const auto attack = efi_distinguisher(orth, {.p = 1.0}, rng);
    const auto report = run_efi_game(orth, attack.distinguisher, 100, rng, Scoring::Exact);
    CHECK(report.estimate == doctest::Approx(1.0));
  }
  SUBCASE("prg pair with adversarial perturbation") {
    const auto pair = prg_efi(make_toy_prg(3, rng));
    const double td = trace_distance(pair.rho0, pair.rho1);
    CHECK(td == doctest::Approx(7.0 / 8.0));
    EfiDistinguisherOptions options{.p = 1.0 / td, .tomography = EfiTomography::Adversarial};
    const CMatrix w = adversarial_efi_perturbation(pair, 1.0 / (16.0 * options.p));
    CHECK(half_trace_norm(w) == doctest::Approx(td / 16.0).epsilon(1e-12));

    const auto attack = efi_distinguisher(pair, options, rng);
    CHECK(attack.guaranteed == doctest::Approx(td / 2.0));
    const auto exact = run_efi_game(pair, attack.distinguisher, 10, rng, Scoring::Exact);
    CHECK(exact.estimate == doctest::Approx(42.0 / 64.0).epsilon(1e-9));
    const auto sampled = run_efi_game(pair, attack.distinguisher, 2000, rng);
    CHECK(sampled.estimate >= td / 2.0 - 3.0 * sampled.sigma);

    options.tomography = EfiTomography::Random;
    const auto random = efi_distinguisher(pair, options, rng);
    const auto rand_report = run_efi_game(pair, random.distinguisher, 50, rng, Scoring::Exact);
    CHECK(rand_report.estimate >= td / 2.0);

    const auto helstrom = efi_distinguisher(pair, {.p = 1.0 / td}, rng);
    const auto h = run_efi_game(pair, helstrom.distinguisher, 10, rng, Scoring::Exact);
    CHECK(h.estimate == doctest::Approx(td).epsilon(1e-9));
  }
  SUBCASE("identical pair is flagged") {
    const auto rho = DensityMatrix::maximally_mixed(1);
    const EfiPair same("same", rho, rho);
    const auto attack = efi_distinguisher(same, {.p = 4.0}, rng);
    CHECK_FALSE(attack.precondition_ok);
    CHECK(run_efi_game(same, attack.distinguisher, 50, rng, Scoring::Exact).estimate == 0.0);
  }
  SUBCASE("sampled tomography on a qubit pair") {
    const EfiPair pair("plus", test::dm(PureState::basis(1, 0)), test::dm(test::plus()));
    const double td = trace_distance(pair.rho0, pair.rho1);
    EfiDistinguisherOptions options{.p = 1.0 / td, .tomography = EfiTomography::Sampled,
                                    .cached = true};
    const auto attack = efi_distinguisher(pair, options, rng);
    const auto report = run_efi_game(pair, attack.distinguisher, 20, rng, Scoring::Exact);
    CHECK(report.estimate >= attack.guaranteed);
  }
}

TEST_CASE("swap hiding attack") {
  SUBCASE("orthogonal pure marginals") {
    Circuit zero(2), flip(2);
    flip.permute_basis({1, 0, 3, 2});
    const CanonicalCommitment orth("orth", 1, 1, zero, flip);
    const auto attack = swap_hiding_attack(orth);
    CHECK(attack.analysis.predicted == doctest::Approx(0.5));
    CHECK(attack.analysis.accept0 == doctest::Approx(1.0));
    CHECK(attack.analysis.accept1 == doctest::Approx(0.5));
  }
  SUBCASE("flavor-converted prg commitment") {
    Rng rng(13);
    const auto converted = flavor_convert(prg_commitment(make_toy_prg(2, rng)));
    const auto attack = swap_hiding_attack(converted);
    const auto& a = attack.analysis;
    CHECK(a.purity0 >= a.rank_bound - 1e-12);
    CHECK(a.predicted == doctest::Approx(0.5 * (a.purity0 - a.overlap01)));
    CHECK(a.predicted >= 0.5 * (a.rank_bound - a.fidelity) - 1e-12);

    const auto report = hiding_advantage(converted, attack.distinguisher, 10000, rng);
    CHECK(std::abs(report.arm0->rate - a.accept0) <= test::three_sigma(a.accept0, 1e4));
    CHECK(std::abs(report.arm1->rate - a.accept1) <= test::three_sigma(a.accept1, 1e4));
    CHECK(report.estimate >= a.predicted - 3.0 * report.sigma);
  }
}
