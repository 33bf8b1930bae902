#include "vitkerr/numerics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <thread>

namespace vitkerr::numerics {

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  // Golub-Welsch for the starting nodes, then Newton on the orthonormal
  // Hermite recurrence to polish nodes and get weights to full precision.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = eig.eigenvalues()(i);
    double pp = 0.0;
    for (int iter = 0; iter < 8; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double step = p1 / pp;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
  }
  // Exact symmetry.
  for (int i = 0; i < n / 2; ++i) {
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    const double node = 0.5 * (x[hi] - x[lo]);
    const double weight = 0.5 * (w[hi] + w[lo]);
    x[lo] = -node;
    x[hi] = node;
    w[lo] = w[hi] = weight;
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0.0;
  return {std::move(x), std::move(w)};
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::complex<double> value;
  double error = 0.0;
  int depth = 0;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<std::complex<double>(double)>& f, double a, double b, int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const std::complex<double> fc = f(c);
  std::complex<double> kronrod = fc * kWgk[7];
  std::complex<double> gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const std::complex<double> s = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * h;
  p.error = std::abs((kronrod - gauss) * h);
  p.depth = depth;
  return p;
}

}  // namespace

AdaptiveResult integrate_adaptive(const std::function<std::complex<double>(double)>& f, double a,
                                  double b, double abs_tol, double rel_tol, int max_depth) {
  std::priority_queue<Panel> panels;
  Panel first = gk15(f, a, b, 0);
  std::complex<double> total = first.value;
  double error = first.error;
  panels.push(first);
  int evaluations = 15;
  constexpr int kMaxPanels = 200000;
  while (error > std::max(abs_tol, rel_tol * std::abs(total)) &&
         static_cast<int>(panels.size()) < kMaxPanels) {
    Panel worst = panels.top();
    if (worst.depth >= max_depth) break;
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid, worst.depth + 1);
    Panel right = gk15(f, mid, worst.b, worst.depth + 1);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the incremental updates.
  total = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  return {total, error, evaluations};
}

double golden_section_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < 400 && (b - a) > tol; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t counter) const {
  const std::uint64_t key = splitmix(seed_ ^ splitmix(stream ^ 0xD1B54A32D192ED03ULL));
  return splitmix(key + counter * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t counter) const {
  return (static_cast<double>(bits(stream, counter) >> 11) + 0.5) * 0x1.0p-53;
}

double inverse_normal_cdf(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("inverse_normal_cdf: u must be in (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  double x = 0.0;
  if (u < plow) {
    const double q = std::sqrt(-2 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (u <= 1 - plow) {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log1p(-u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  // One Halley step brings the rational approximation to full precision.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - u;
  const double step = e * std::sqrt(2 * std::numbers::pi) * std::exp(x * x / 2);
  return x - step / (1 + x * step / 2);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        // Keep the lowest failing index so the reported error is schedule-independent.
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need two equally sized samples of length >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("linspace: n must be >= 2");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw std::invalid_argument("logspace: bounds must be > 0");
  std::vector<double> out = linspace(std::log10(lo), std::log10(hi), n);
  for (auto& v : out) v = std::pow(10.0, v);
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace vitkerr::numerics
