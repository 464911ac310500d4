#include <doctest.h>

#include "xrt/error.hpp"
#include "xrt/topology.hpp"

using namespace xrt;

TEST_CASE("euler number and signature") {
  auto es = euler_signature({0, 0, 0});
  CHECK(es.chi == 2);
  CHECK(es.tau == 0);
  es = euler_signature({0, 1, 0});
  CHECK(es.chi == 3);
  CHECK(es.tau == 1);
  es = euler_signature({2, 3, 3});
  CHECK(es.chi == 4);
  CHECK(es.tau == 0);
  es = euler_signature({0, 3, 19});
  CHECK(es.chi == 24);
  CHECK(es.tau == -16);
  try {
    euler_signature({-1, 0, 0});
    FAIL("expected InvalidBetti");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidBetti);
  }
  CHECK_THROWS_AS(euler_signature({0, -2, 0}), Error);
}

TEST_CASE("neutral admissibility") {
  CHECK(neutral_admissible(2, 0, true).verdict == NeutralVerdict::Obstructed);
  const auto cp2 = neutral_admissible(3, 1, true);
  CHECK(cp2.verdict == NeutralVerdict::Obstructed);
  CHECK(cp2.chi_plus_tau_ok);
  CHECK_FALSE(cp2.chi_minus_tau_ok);
  CHECK(neutral_admissible(24, -16, true).verdict == NeutralVerdict::Admissible);
  CHECK(neutral_admissible(24, -16, false).verdict == NeutralVerdict::NecessaryConditionsHold);
  CHECK(neutral_admissible(0, 0, false).verdict == NeutralVerdict::NecessaryConditionsHold);
  CHECK(neutral_admissible(-4, 0, true).verdict == NeutralVerdict::Admissible);
}

TEST_CASE("parallel paracomplex obstruction") {
  CHECK(paracomplex_obstruction(-16) == ParacomplexVerdict::ObstructsParallelParacomplex);
  CHECK(paracomplex_obstruction(0) == ParacomplexVerdict::NotObstructed);
  CHECK(paracomplex_obstruction(1) == ParacomplexVerdict::ObstructsParallelParacomplex);
}

TEST_CASE("verdict names") {
  CHECK(std::string(to_string(NeutralVerdict::Obstructed)) == "Obstructed");
  CHECK(std::string(to_string(NeutralVerdict::Admissible)) == "Admissible");
  CHECK(std::string(to_string(NeutralVerdict::NecessaryConditionsHold)) == "NecessaryConditionsHold");
  CHECK(std::string(to_string(ParacomplexVerdict::ObstructsParallelParacomplex)) == "ObstructsParallelParacomplex");
}
