#include "qclab/attacks/distinguishers.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"

namespace qclab {

std::string to_string(EfiTomography mode) {
  switch (mode) {
    case EfiTomography::Exact:
      return "exact";
    case EfiTomography::Adversarial:
      return "adversarial";
    case EfiTomography::Random:
      return "random";
    case EfiTomography::Sampled:
      return "sampled";
  }
  return "unknown";
}

Json EfiAttack::to_json() const {
  return Json{{"name", distinguisher.name},
              {"delta", delta},
              {"trace_distance", trace_distance},
              {"guaranteed", guaranteed},
              {"precondition_ok", precondition_ok}};
}

CMatrix adversarial_efi_perturbation(const EfiPair& pair, double delta) {
  const std::int64_t dim = pair.rho0.dim();
  const auto eig = spectral_decompose(HermitianMatrix(pair.rho0.matrix() - pair.rho1.matrix()));
  // Negative eigenvalues closest to zero first.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < eig.size(); ++i) {
    if (eig[i].value < 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&eig](std::size_t a, std::size_t b) {
    return eig[a].value > eig[b].value;
  });
  // M_0 - M_1 = (rho_0 - rho_1) - 2 delta W, so w_i = mu_i / (2 delta) zeroes mu_i.
  // The trace norm of delta W is delta sum|w| / 2, so sum|w| = 2.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(eig.size()));
  double budget = 2.0;
  for (std::size_t i : order) {
    if (budget <= 0.0) break;
    const double need = -eig[i].value / (2.0 * delta);
    const double take = std::min(need, budget);
    w[static_cast<Eigen::Index>(i)] = -take;
    budget -= take;
  }
  if (budget > 0.0) {
    // Spend the rest on the largest positive direction; this shrinks but does
    // not flip it.
    const double top = eig.front().value;
    const double room = top > 0.0 ? top / (2.0 * delta) : 0.0;
    w[0] += std::min(budget, room);
    budget -= std::min(budget, room);
  }
  if (budget > 1e-12) {
    throw InvalidArgument("rho_0 - rho_1 too small to absorb a perturbation of size delta");
  }
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < eig.size(); ++i) {
    const double wi = w[static_cast<Eigen::Index>(i)];
    if (wi != 0.0) out += (delta * wi) * eig[i].vector * eig[i].vector.adjoint();
  }
  return out;
}

EfiAttack efi_distinguisher(const EfiPair& pair, const EfiDistinguisherOptions& options, Rng& rng) {
  if (!(options.p >= 1.0)) throw InvalidArgument("p must be at least 1");
  EfiAttack attack;
  attack.delta = 1.0 / (16.0 * options.p);
  attack.trace_distance = trace_distance(pair.rho0, pair.rho1);
  attack.guaranteed = attack.trace_distance - 8.0 * attack.delta;
  attack.precondition_ok = attack.trace_distance >= 1.0 / options.p - 1e-12;

  const double delta = attack.delta;
  const EfiTomography mode = options.tomography;
  const TomographyConfig sampled = [&] {
    TomographyConfig c = options.sampled;
    c.delta = delta;
    return c;
  }();
  CMatrix adversarial;
  if (mode == EfiTomography::Adversarial) adversarial = adversarial_efi_perturbation(pair, delta);

  auto build = [pair, mode, delta, sampled, adversarial](Rng& r) {
    CMatrix m0;
    CMatrix m1;
    Rng r0 = r.child("arm0");
    Rng r1 = r.child("arm1");
    switch (mode) {
      case EfiTomography::Exact:
        m0 = pair.rho0.matrix();
        m1 = pair.rho1.matrix();
        break;
      case EfiTomography::Adversarial:
        m0 = pair.rho0.matrix() - adversarial;
        m1 = pair.rho1.matrix() + adversarial;
        break;
      case EfiTomography::Random:
        m0 = tomography_oracle(pair.rho0, delta, delta, r0).estimate.matrix();
        m1 = tomography_oracle(pair.rho1, delta, delta, r1).estimate.matrix();
        break;
      case EfiTomography::Sampled:
        m0 = tomography_sampled(pair.rho0, sampled, r0).estimate.matrix();
        m1 = tomography_sampled(pair.rho1, sampled, r1).estimate.matrix();
        break;
    }
    const CMatrix diff = m0 - m1;
    return positive_part_projector(HermitianMatrix(unchecked, 0.5 * (diff + diff.adjoint())));
  };

  std::shared_ptr<const Projector> cached;
  if (options.cached) {
    Rng r = rng.child("cached");
    cached = std::make_shared<const Projector>(build(r));
  }
  auto projector_for = [build, cached](Rng& r) {
    if (cached) return *cached;
    Rng t = r.child("tomography");
    return build(t);
  };

  attack.distinguisher.name = "spectral-" + to_string(mode) + (options.cached ? "-cached" : "");
  attack.distinguisher.sample = [projector_for](const DensityMatrix& challenge, Rng& r) {
    const Projector pi = projector_for(r);
    Rng m = r.child("measure");
    return measure(challenge, pi, m) ? 0 : 1;
  };
  attack.distinguisher.prob_one = [projector_for](const DensityMatrix& challenge, Rng& r) {
    return 1.0 - outcome_probability(challenge, projector_for(r));
  };
  return attack;
}

Json SwapAnalysis::to_json() const {
  return Json{{"purity0", purity0},     {"overlap01", overlap01}, {"predicted", predicted},
              {"rank_bound", rank_bound}, {"fidelity", fidelity},   {"accept0", accept0},
              {"accept1", accept1}};
}

SwapHidingAttack swap_hiding_attack(const CanonicalCommitment& c) {
  const DensityMatrix rho0 = c.commit_marginal(0);
  const DensityMatrix rho1 = c.commit_marginal(1);
  SwapHidingAttack attack;
  SwapAnalysis& a = attack.analysis;
  a.purity0 = purity(rho0);
  a.overlap01 = trace_product(rho0.matrix(), rho1.matrix());
  a.predicted = 0.5 * (a.purity0 - a.overlap01);
  a.rank_bound = std::pow(2.0, -c.reveal_qubits());
  a.fidelity = fidelity(rho0, rho1);
  a.accept0 = swap_test_accept_prob(rho0, rho0);
  a.accept1 = swap_test_accept_prob(rho0, rho1);

  attack.distinguisher.name = "swap-test";
  attack.distinguisher.sample = [rho0](const DensityMatrix& challenge, Rng& r) {
    return swap_test_sample(rho0, challenge, r) ? 1 : 0;
  };
  attack.distinguisher.prob_one = [rho0](const DensityMatrix& challenge, Rng&) {
    return swap_test_accept_prob(rho0, challenge);
  };
  return attack;
}

}  // namespace qclab
