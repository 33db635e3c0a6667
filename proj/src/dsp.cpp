#include "fdlp/dsp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace fdlp {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

void run_r2r(const double* in, double* out, int n, fftw_r2r_kind kind) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_r2r_1d(n, const_cast<double*>(in), out, kind, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

std::vector<double> dct_ii(const std::vector<double>& x) {
  if (x.empty()) throw InvalidArgument("dct_ii: empty input");
  const int n = static_cast<int>(x.size());
  std::vector<double> out(x.size());
  // FFTW REDFT10 computes 2 * sum x[m] cos(pi (2m+1) k / 2N); rescale to the
  // orthonormal convention.
  run_r2r(x.data(), out.data(), n, FFTW_REDFT10);
  const double s0 = 0.5 * std::sqrt(1.0 / n);
  const double sk = 0.5 * std::sqrt(2.0 / n);
  out[0] *= s0;
  for (int k = 1; k < n; ++k) out[k] *= sk;
  return out;
}

std::vector<double> idct_ii(const std::vector<double>& coeffs) {
  if (coeffs.empty()) throw InvalidArgument("idct_ii: empty input");
  const int n = static_cast<int>(coeffs.size());
  std::vector<double> scaled(coeffs);
  scaled[0] *= std::sqrt(1.0 / n);
  const double sk = 0.5 * std::sqrt(2.0 / n);
  for (int k = 1; k < n; ++k) scaled[k] *= sk;
  std::vector<double> out(coeffs.size());
  run_r2r(scaled.data(), out.data(), n, FFTW_REDFT01);
  return out;
}

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x, bool inverse) {
  const int n = static_cast<int>(x.size());
  std::vector<std::complex<double>> out(x.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_1d(
        n,
        reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(x.data())),
        reinterpret_cast<fftw_complex*>(out.data()),
        inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  if (inverse) {
    const double inv = 1.0 / n;
    for (auto& v : out) v *= inv;
  }
  return out;
}

std::vector<double> analytic_envelope(const std::vector<double>& x) {
  if (x.empty()) throw InvalidArgument("analytic_envelope: empty input");
  const int n = static_cast<int>(x.size());
  std::vector<std::complex<double>> buf(x.begin(), x.end());
  auto spec = fft(buf, false);
  // One-sided doubling: keep DC (and Nyquist for even n), double positive
  // frequencies, zero negative frequencies.
  const int half = n / 2;
  for (int k = 1; k < half + (n % 2); ++k) spec[k] *= 2.0;
  for (int k = half + 1; k < n; ++k) spec[k] = 0.0;
  auto analytic = fft(spec, true);
  std::vector<double> env(x.size());
  for (int i = 0; i < n; ++i) env[i] = std::norm(analytic[i]);
  return env;
}

std::vector<double> autocorr(const std::vector<double>& x, int max_lag) {
  const int n = static_cast<int>(x.size());
  if (max_lag >= n) throw InvalidArgument("autocorr: max_lag must be < sequence length");
  if (max_lag < 0) throw InvalidArgument("autocorr: negative max_lag");
  // Skip the zero head/tail; adding exact zeros cannot change the sums.
  int first = 0, last = n - 1;
  while (first < n && x[first] == 0.0) ++first;
  while (last >= first && x[last] == 0.0) --last;
  std::vector<double> r(max_lag + 1, 0.0);
  for (int k = 0; k <= max_lag; ++k) {
    double acc = 0.0;
    const int hi = std::min(last, n - 1 - k);
    for (int i = first; i <= hi; ++i) acc += x[i] * x[i + k];
    r[k] = acc / n;
  }
  return r;
}

LpModel levinson_durbin(const std::vector<double>& r) {
  if (r.size() < 2) throw InvalidArgument("levinson_durbin: need r[0..p] with p >= 1");
  if (!(r[0] > 0.0)) throw InvalidArgument("levinson_durbin: r[0] must be positive");
  const int p = static_cast<int>(r.size()) - 1;
  std::vector<double> a(p + 1, 0.0);
  a[0] = 1.0;
  double err = r[0];
  std::vector<double> prev(p + 1);
  for (int m = 1; m <= p; ++m) {
    double acc = r[m];
    for (int i = 1; i < m; ++i) acc += a[i] * r[m - i];
    const double k = acc / err;
    std::copy(a.begin(), a.begin() + m, prev.begin());
    a[m] = -k;
    for (int i = 1; i < m; ++i) a[i] = prev[i] - k * prev[m - i];
    err *= (1.0 - k * k);
    if (!(err > 0.0)) {
      throw NumericError("levinson_durbin: non-positive prediction error at order " + std::to_string(m));
    }
  }
  LpModel model;
  model.coeffs = std::move(a);
  model.gain = std::sqrt(err);
  return model;
}

std::vector<double> all_pole_envelope(const LpModel& model, int num_points) {
  if (num_points < 1) throw InvalidArgument("all_pole_envelope: num_points must be >= 1");
  if (model.coeffs.empty() || model.coeffs[0] != 1.0 || !(model.gain > 0.0)) {
    throw InvalidArgument("all_pole_envelope: invalid model");
  }
  const int p = static_cast<int>(model.coeffs.size());
  const double g2 = model.gain * model.gain;
  std::vector<double> env(num_points);
  for (int m = 0; m < num_points; ++m) {
    const double w = M_PI * m / num_points;
    double re = 0.0, im = 0.0;
    for (int k = 0; k < p; ++k) {
      re += model.coeffs[k] * std::cos(w * k);
      im -= model.coeffs[k] * std::sin(w * k);
    }
    env[m] = g2 / (re * re + im * im);
  }
  return env;
}

std::vector<double> bandpass_ideal(const std::vector<double>& x, int sample_rate,
                                   double f_lo, double f_hi) {
  if (x.empty()) throw InvalidArgument("bandpass_ideal: empty input");
  if (!(f_lo < f_hi)) throw InvalidArgument("bandpass_ideal: need f_lo < f_hi");
  const int n = static_cast<int>(x.size());
  std::vector<std::complex<double>> buf(x.begin(), x.end());
  auto spec = fft(buf, false);
  for (int k = 0; k < n; ++k) {
    double f = static_cast<double>(k) * sample_rate / n;
    if (f > sample_rate / 2.0) f = sample_rate - f;
    if (f < f_lo || f > f_hi) spec[k] = 0.0;
  }
  auto y = fft(spec, true);
  std::vector<double> out(x.size());
  for (int i = 0; i < n; ++i) out[i] = y[i].real();
  return out;
}

}  // namespace fdlp
