#include "qclab/core/cap.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "qclab/core/error.hpp"

namespace qclab {
namespace {

int initial_cap() {
  const char* env = std::getenv("QCLAB_MAX_QUBITS");
  if (env == nullptr || *env == '\0') return kDefaultQubitCap;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1) return kDefaultQubitCap;
  return value > kHardQubitLimit ? kHardQubitLimit : static_cast<int>(value);
}

std::atomic<int>& cap_storage() {
  static std::atomic<int> cap{initial_cap()};
  return cap;
}

}  // namespace

int qubit_cap() { return cap_storage().load(std::memory_order_relaxed); }

void set_qubit_cap(int qubits) {
  if (qubits < 1 || qubits > kHardQubitLimit) {
    throw InvalidArgument("qubit cap must lie in [1, " + std::to_string(kHardQubitLimit) +
                          "], got " + std::to_string(qubits));
  }
  cap_storage().store(qubits, std::memory_order_relaxed);
}

void require_within_cap(int qubits, const char* what) {
  const int cap = qubit_cap();
  if (qubits > cap) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(qubits) +
                      " qubits exceeds the cap of " + std::to_string(cap));
  }
}

ScopedQubitCap::ScopedQubitCap(int qubits) : previous_(qubit_cap()) { set_qubit_cap(qubits); }

ScopedQubitCap::~ScopedQubitCap() { cap_storage().store(previous_, std::memory_order_relaxed); }

}  // namespace qclab
