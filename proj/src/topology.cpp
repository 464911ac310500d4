#include "xrt/topology.hpp"

#include "xrt/error.hpp"

namespace xrt {

namespace {

bool divisible_by_4(long long x) { return x % 4 == 0; }

}  // namespace

EulerSignature euler_signature(const BettiData& b) {
  if (b.b1 < 0 || b.b_plus < 0 || b.b_minus < 0) {
    throw Error(ErrorCode::InvalidBetti, "Betti numbers must be nonnegative");
  }
  return {2 - 2 * b.b1 + b.b_plus + b.b_minus, b.b_plus - b.b_minus};
}

AdmissibilityReport neutral_admissible(int chi, int tau, bool simply_connected) {
  AdmissibilityReport r;
  r.chi_plus_tau_ok = divisible_by_4(static_cast<long long>(chi) + tau);
  r.chi_minus_tau_ok = divisible_by_4(static_cast<long long>(chi) - tau);
  if (!r.chi_plus_tau_ok || !r.chi_minus_tau_ok) {
    r.verdict = NeutralVerdict::Obstructed;
  } else {
    r.verdict = simply_connected ? NeutralVerdict::Admissible : NeutralVerdict::NecessaryConditionsHold;
  }
  return r;
}

ParacomplexVerdict paracomplex_obstruction(int tau) {
  return tau != 0 ? ParacomplexVerdict::ObstructsParallelParacomplex : ParacomplexVerdict::NotObstructed;
}

const char* to_string(NeutralVerdict v) noexcept {
  switch (v) {
    case NeutralVerdict::Obstructed: return "Obstructed";
    case NeutralVerdict::Admissible: return "Admissible";
    case NeutralVerdict::NecessaryConditionsHold: return "NecessaryConditionsHold";
  }
  return "unknown";
}

const char* to_string(ParacomplexVerdict v) noexcept {
  return v == ParacomplexVerdict::ObstructsParallelParacomplex ? "ObstructsParallelParacomplex" : "NotObstructed";
}

}  // namespace xrt
