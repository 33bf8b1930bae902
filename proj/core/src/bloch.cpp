#include "vitkerr/bloch.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "vitkerr/errors.hpp"

namespace vitkerr {

namespace {

using Mat6 = Eigen::Matrix<cplx, 6, 6>;
using Vec6 = Eigen::Matrix<cplx, 6, 1>;

constexpr double kMaxCondition = 1e12;
constexpr double kMaxResidual = 1e-10;

const char* const kDiagonalNames[6] = {
    "Delta31 + i gamma31 (sigma13, one-photon)",
    "Delta21 + i gamma21 (sigma12, two-photon)",
    "-Delta32 + i gamma32 (sigma32, cavity)",
    "Delta41 + i gamma41 (sigma14, three-photon)",
    "Delta41 - Delta31 + i gamma43 (sigma34)",
    "Delta41 - Delta21 + i gamma42 (sigma24)",
};

[[noreturn]] void degenerate(const Mat6& m, int active, const std::string& why) {
  int worst = 0;
  for (int i = 1; i < active; ++i) {
    if (std::abs(m(i, i)) < std::abs(m(worst, worst))) worst = i;
  }
  throw DegenerateParameters("steady-state system is singular (" + why +
                             "); smallest diagonal term: " + kDiagonalNames[worst]);
}

}  // namespace

LinearSystem build_system(const Emitter& e, Closure closure) {
  const cplx i{0.0, 1.0};
  const DerivedRates& r = e.rates;
  const double d31 = e.delta31;
  const double d32 = e.delta32;
  const double d21 = e.delta21();
  const double d41 = e.delta41();
  const double op = e.omega_p;
  const double oc = e.omega_c;
  const double os = e.omega_s;

  LinearSystem s;
  s.closure = closure;
  auto& m = s.matrix;
  // sigma13
  m[0][0] = i * d31 + r.gamma31_c;
  m[0][1] = -i * oc;
  // sigma12
  m[1][1] = i * d21 + r.gamma21_c;
  m[1][0] = -i * oc;
  m[1][2] = i * op;
  m[1][3] = -i * os;
  // sigma32
  m[2][2] = -i * d32 + r.gamma32_c;
  m[2][1] = i * op;
  m[2][4] = -i * os;
  // sigma14
  m[3][3] = i * d41 + r.gamma41_c;
  m[3][4] = i * op;
  m[3][1] = -i * os;
  // sigma34
  m[4][4] = -i * (d31 - d41) + r.gamma43_c;
  m[4][3] = i * op;
  m[4][5] = i * oc;
  m[4][2] = -i * os;
  // sigma24
  m[5][5] = -i * (d21 - d41) + r.gamma42_c;
  m[5][4] = i * oc;

  s.source[0] = i * op;

  if (closure == Closure::four_coherence) {
    for (int k = 4; k < 6; ++k) {
      for (int j = 0; j < 6; ++j) {
        m[k][j] = 0.0;
        m[j][k] = 0.0;
      }
      m[k][k] = 1.0;
    }
  }
  return s;
}

LinearSystem build_system(const SystemParams& p, Closure closure) {
  return build_system(resolve(p), closure);
}

CoherenceVector solve_steady_state(const LinearSystem& system, SolveReport* report) {
  Mat6 m;
  Vec6 b;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) m(r, c) = system.matrix[r][c];
    b(r) = system.source[r];
  }
  const int active = system.closure == Closure::four_coherence ? 4 : 6;

  Eigen::PartialPivLU<Mat6> lu(m);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxCondition)) {
    degenerate(m, active, "condition estimate " + std::to_string(cond));
  }

  Vec6 x = Vec6::Zero();
  double residual = 0.0;
  if (b.norm() > 0.0) {
    x = lu.solve(b);
    residual = (m * x - b).norm() / b.norm();
    if (!(residual < kMaxResidual)) {
      degenerate(m, active, "relative residual " + std::to_string(residual));
    }
  }
  if (report) {
    report->condition_estimate = cond;
    report->relative_residual = residual;
  }
  return {x(0), x(1), x(2), x(3), x(4), x(5)};
}

cplx chi_from_bloch(const CoherenceVector& sigma, const Emitter& e) {
  if (e.omega_p == 0.0) {
    throw UndefinedChi("chi is undefined for a vanishing probe Rabi frequency");
  }
  return e.k * std::conj(sigma.sigma13) / e.omega_p;
}

cplx chi_bloch(const Emitter& e, Closure closure) {
  return chi_from_bloch(solve_steady_state(build_system(e, closure)), e);
}

}  // namespace vitkerr
