#pragma once

#include <functional>
#include <string>

#include "qclab/core/rng.hpp"
#include "qclab/core/state.hpp"
#include "qclab/primitives/owsg.hpp"
#include "qclab/primitives/report.hpp"

namespace qclab {

/// Two l-qubit states (rho_0, rho_1) indexed by a bit.
struct EfiPair {
  std::string name;
  DensityMatrix rho0;
  DensityMatrix rho1;
  Json metadata = Json::object();

  EfiPair(std::string n, DensityMatrix r0, DensityMatrix r1, Json meta = Json::object());

  int num_qubits() const noexcept { return rho0.num_qubits(); }
  const DensityMatrix& state(int b) const;
};

/// Consumes one copy of the challenge and outputs a bit. `prob_one`, when
/// present, returns Pr[output = 1] for the challenge and is used by exact
/// scoring; it may itself be randomised (fresh tomography per call).
struct Distinguisher {
  std::string name;
  std::function<int(const DensityMatrix&, Rng&)> sample;
  std::function<double(const DensityMatrix&, Rng&)> prob_one;
};

Distinguisher constant_distinguisher(int bit);
/// Measures {P, I - P}; outcome P maps to output 0.
Distinguisher projector_distinguisher(std::string name, const Projector& projector);
/// Optimal two-outcome measurement for a known pair: P = positive part of
/// rho_0 - rho_1.
Distinguisher helstrom_distinguisher(const EfiPair& pair);

/// Runs `trials_per_arm` challenges of each bit. Arm b trial i uses
/// rng.child("arm<b>").child(i). estimate = |Pr[1|rho_0] - Pr[1|rho_1]| with
/// sigma = sqrt(p0(1-p0)/n0 + p1(1-p1)/n1).
GameReport run_efi_game(const EfiPair& pair, const Distinguisher& distinguisher,
                        std::int64_t trials_per_arm, Rng& rng, Scoring scoring = Scoring::Sampled,
                        bool keep_log = true);

}  // namespace qclab
