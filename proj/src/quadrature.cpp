#include "xrt/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "xrt/error.hpp"

namespace xrt {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ChartDomain: return "ChartDomain";
    case ErrorCode::NotSameFibre: return "NotSameFibre";
    case ErrorCode::DegenerateSpec: return "DegenerateSpec";
    case ErrorCode::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::NonDecayingIntegrand: return "NonDecayingIntegrand";
    case ErrorCode::BranchFailure: return "BranchFailure";
    case ErrorCode::SingularQuadratureFailure: return "SingularQuadratureFailure";
    case ErrorCode::InvalidBetti: return "InvalidBetti";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

// Kronrod 15-point abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double gauss = fc * kWg[3];
  double kronrod = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opts) {
  QuadratureResult out;
  if (a == b) return out;
  const double sign = b > a ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);

  int panels = 1;
  if (std::isfinite(opts.max_initial_panel) && opts.max_initial_panel > 0.0) {
    panels = std::max(1, static_cast<int>(std::ceil((b - a) / opts.max_initial_panel)));
  }
  std::priority_queue<Panel> queue;
  double total = 0.0;
  double total_err = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels;
    const double hi = (i + 1 == panels) ? b : a + (b - a) * (i + 1) / panels;
    Panel p = gauss_kronrod(f, lo, hi);
    total += p.value;
    total_err += p.error;
    queue.push(p);
  }
  int evals = 15 * panels;

  while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (evals + 30 > opts.max_evaluations) {
      throw Error(ErrorCode::QuadratureBudgetExceeded,
                  "adaptive quadrature: tolerance not met after " + std::to_string(evals) +
                      " evaluations (error estimate " + std::to_string(total_err) + ")");
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw Error(ErrorCode::QuadratureBudgetExceeded,
                  "adaptive quadrature: panel width underflow");
    }
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum to shed the drift from incremental updates.
  total = 0.0;
  total_err = 0.0;
  while (!queue.empty()) {
    total += queue.top().value;
    total_err += queue.top().error;
    queue.pop();
  }
  out.value = sign * total;
  out.error = total_err;
  out.evaluations = evals;
  return out;
}

double integrate_periodic(const std::function<double(double)>& f, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "periodic quadrature needs n >= 1");
  const double step = 2.0 * std::numbers::pi / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += f(step * i);
  return sum * step;
}

}  // namespace xrt
