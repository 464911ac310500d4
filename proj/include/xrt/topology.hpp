#pragma once

namespace xrt {

// Closed connected oriented 4-manifold: b0 = b4 = 1, b3 = b1.
struct BettiData {
  int b1 = 0;
  int b_plus = 0;
  int b_minus = 0;
};

struct EulerSignature {
  int chi = 0;
  int tau = 0;
};

// chi = 2 - 2 b1 + b+ + b-,  tau = b+ - b-. Throws InvalidBetti on negative input.
EulerSignature euler_signature(const BettiData& b);

enum class NeutralVerdict { Obstructed, Admissible, NecessaryConditionsHold };

struct AdmissibilityReport {
  NeutralVerdict verdict = NeutralVerdict::Obstructed;
  bool chi_plus_tau_ok = false;   // chi + tau = 0 mod 4
  bool chi_minus_tau_ok = false;  // chi - tau = 0 mod 4
};

AdmissibilityReport neutral_admissible(int chi, int tau, bool simply_connected);

enum class ParacomplexVerdict { ObstructsParallelParacomplex, NotObstructed };

ParacomplexVerdict paracomplex_obstruction(int tau);

const char* to_string(NeutralVerdict v) noexcept;
const char* to_string(ParacomplexVerdict v) noexcept;

}  // namespace xrt
