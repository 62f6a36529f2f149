#pragma once

namespace qclab {

inline constexpr int kDefaultQubitCap = 12;
inline constexpr int kHardQubitLimit = 16;

/// Process-wide limit on simulated register size. Initialised from the
/// QCLAB_MAX_QUBITS environment variable (default 12, never above 16).
int qubit_cap();

/// Throws InvalidArgument outside [1, kHardQubitLimit].
void set_qubit_cap(int qubits);

/// Throws CapExceeded when `qubits` exceeds the current cap.
void require_within_cap(int qubits, const char* what);

class ScopedQubitCap {
 public:
  explicit ScopedQubitCap(int qubits);
  ~ScopedQubitCap();
  ScopedQubitCap(const ScopedQubitCap&) = delete;
  ScopedQubitCap& operator=(const ScopedQubitCap&) = delete;

 private:
  int previous_;
};

}  // namespace qclab
