#ifndef FDLP_DSP_HPP
#define FDLP_DSP_HPP

#include <complex>
#include <vector>

#include "fdlp/types.hpp"

namespace fdlp {

// Orthonormal DCT-II. Satisfies Parseval (||dct_ii(x)|| == ||x||) and
// idct_ii(dct_ii(x)) == x. Throws InvalidArgument on empty input.
std::vector<double> dct_ii(const std::vector<double>& x);
std::vector<double> idct_ii(const std::vector<double>& coeffs);

// Squared magnitude of the analytic signal (one-sided spectrum doubling).
std::vector<double> analytic_envelope(const std::vector<double>& x);

// Biased autocorrelation r[k] = sum_n x[n] x[n+k] / N for k = 0..max_lag.
// Biased so the implied Toeplitz matrix stays positive semi-definite.
std::vector<double> autocorr(const std::vector<double>& x, int max_lag);

// Levinson-Durbin recursion on r[0..p]. Throws InvalidArgument when
// r[0] <= 0 and NumericError naming the failing order when the prediction
// error becomes non-positive mid-recursion.
LpModel levinson_durbin(const std::vector<double>& r);

// g^2 / |A(e^{jw})|^2 at num_points uniform frequencies in [0, pi).
std::vector<double> all_pole_envelope(const LpModel& model, int num_points);

// Plumbing shared with reverb-sim and the verification suite.
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x, bool inverse);

// Ideal band-pass: zero all DFT bins outside [f_lo, f_hi] (two-sided).
std::vector<double> bandpass_ideal(const std::vector<double>& x, int sample_rate,
                                   double f_lo, double f_hi);

}  // namespace fdlp

#endif
