#include "qclab/primitives/efi.hpp"

#include <cmath>

#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"

namespace qclab {

EfiPair::EfiPair(std::string n, DensityMatrix r0, DensityMatrix r1, Json meta)
    : name(std::move(n)), rho0(std::move(r0)), rho1(std::move(r1)), metadata(std::move(meta)) {
  if (rho0.dim() != rho1.dim()) throw DimensionMismatch("EFI states differ in size");
}

const DensityMatrix& EfiPair::state(int b) const {
  if (b != 0 && b != 1) throw InvalidArgument("EFI bit must be 0 or 1");
  return b == 0 ? rho0 : rho1;
}

Distinguisher constant_distinguisher(int bit) {
  const double p = bit ? 1.0 : 0.0;
  return {"constant-" + std::to_string(bit), [bit](const DensityMatrix&, Rng&) { return bit; },
          [p](const DensityMatrix&, Rng&) { return p; }};
}

Distinguisher projector_distinguisher(std::string name, const Projector& projector) {
  return {std::move(name),
          [projector](const DensityMatrix& challenge, Rng& rng) {
            return measure(challenge, projector, rng) ? 0 : 1;
          },
          [projector](const DensityMatrix& challenge, Rng&) {
            return 1.0 - outcome_probability(challenge, projector);
          }};
}

Distinguisher helstrom_distinguisher(const EfiPair& pair) {
  const auto pi = positive_part_projector(HermitianMatrix(pair.rho0.matrix() - pair.rho1.matrix()));
  return projector_distinguisher("helstrom", pi);
}

GameReport run_efi_game(const EfiPair& pair, const Distinguisher& distinguisher,
                        std::int64_t trials_per_arm, Rng& rng, Scoring scoring, bool keep_log) {
  if (trials_per_arm < 1) throw InvalidArgument("the game needs at least one trial per arm");
  if (scoring == Scoring::Exact && !distinguisher.prob_one) {
    throw InvalidArgument("exact scoring needs a distinguisher with prob_one");
  }
  GameReport report;
  report.game = "distinguishing";
  report.access_mode = "challenge";
  report.scoring = to_string(scoring);
  report.trials = 2 * trials_per_arm;

  ArmStats arms[2];
  for (int b = 0; b < 2; ++b) {
    const Rng arm_rng = rng.child(b == 0 ? "arm0" : "arm1");
    const DensityMatrix& challenge = pair.state(b);
    arms[b].trials = trials_per_arm;
    for (std::int64_t i = 0; i < trials_per_arm; ++i) {
      Rng trial_rng = arm_rng.child(static_cast<std::uint64_t>(i));
      TrialRecord rec;
      rec.trial = i;
      rec.seed = trial_rng.seed();
      rec.mode = report.scoring;
      rec.arm = b;
      rec.outcome = scoring == Scoring::Exact
                        ? distinguisher.prob_one(challenge, trial_rng)
                        : static_cast<double>(distinguisher.sample(challenge, trial_rng));
      arms[b].ones += rec.outcome;
      if (keep_log) report.log.push_back(rec);
    }
    arms[b].rate = arms[b].ones / static_cast<double>(trials_per_arm);
  }

  const double p0 = arms[0].rate;
  const double p1 = arms[1].rate;
  const auto n = static_cast<double>(trials_per_arm);
  report.estimate = std::abs(p0 - p1);
  report.sigma = std::sqrt(std::max(0.0, p0 * (1 - p0)) / n + std::max(0.0, p1 * (1 - p1)) / n);
  report.ci95_halfwidth = 1.96 * report.sigma;
  report.arm0 = arms[0];
  report.arm1 = arms[1];
  return report;
}

}  // namespace qclab
