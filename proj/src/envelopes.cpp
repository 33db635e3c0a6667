#include "fdlp/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fdlp/dsp.hpp"

namespace fdlp {

namespace {

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

}  // namespace

void FdlpConfig::validate() const {
  if (sample_rate <= 0) throw InvalidArgument("FdlpConfig: sample_rate must be positive");
  if (segment_seconds <= 0) throw InvalidArgument("FdlpConfig: segment_seconds must be positive");
  if (envelope_rate <= 0) throw InvalidArgument("FdlpConfig: envelope_rate must be positive");
  if (num_bands < 1) throw InvalidArgument("FdlpConfig: num_bands must be >= 1");
  if (!(fmin < fmax && fmax < sample_rate / 2.0)) {
    throw InvalidArgument("FdlpConfig: need fmin < fmax < sample_rate/2");
  }
  if (lp_order < 1) throw InvalidArgument("FdlpConfig: lp_order must be >= 1");
  if (!(gain_floor > 0.0)) throw InvalidArgument("FdlpConfig: gain_floor must be positive");
}

std::vector<Segment> segment(const Signal& signal, const FdlpConfig& config) {
  config.validate();
  if (signal.samples.empty()) throw InvalidArgument("segment: empty signal");
  if (signal.sample_rate != config.sample_rate) {
    throw InvalidArgument("segment: signal rate " + std::to_string(signal.sample_rate) +
                          " != configured rate " + std::to_string(config.sample_rate));
  }
  const int seg_len = config.segment_samples();
  const auto& x = signal.samples;
  const int n = static_cast<int>(x.size());
  std::vector<Segment> out;
  for (int start = 0; start < n; start += seg_len) {
    Segment s;
    s.valid_samples = std::min(seg_len, n - start);
    s.samples.assign(seg_len, 0.0);
    std::copy(x.begin() + start, x.begin() + start + s.valid_samples, s.samples.begin());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<double>> mel_band_windows(const FdlpConfig& config) {
  config.validate();
  const int n = config.segment_samples();
  const int q = config.num_bands;
  // Q + 2 mel-uniform edge points; window q rises over (edge[q], edge[q+1]]
  // and falls over (edge[q+1], edge[q+2]).
  std::vector<double> edges(q + 2);
  const double mel_lo = hz_to_mel(config.fmin);
  const double mel_hi = hz_to_mel(config.fmax);
  for (int i = 0; i < q + 2; ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (q + 1));
  }
  std::vector<std::vector<double>> windows(q, std::vector<double>(n, 0.0));
  const double bin_hz = static_cast<double>(config.sample_rate) / (2.0 * n);
  for (int b = 0; b < q; ++b) {
    const double lo = edges[b], c = edges[b + 1], hi = edges[b + 2];
    const int k_lo = std::max(0, static_cast<int>(std::ceil(lo / bin_hz)));
    const int k_hi = std::min(n - 1, static_cast<int>(std::floor(hi / bin_hz)));
    for (int k = k_lo; k <= k_hi; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (f > lo && f <= c) {
        w = (f - lo) / (c - lo);
      } else if (f > c && f < hi) {
        w = (hi - f) / (hi - c);
      }
      windows[b][k] = w;
    }
  }
  return windows;
}

EnvelopeMatrix fdlp_envelopes(const Segment& seg, const FdlpConfig& config) {
  return fdlp_envelopes(seg, config, mel_band_windows(config));
}

EnvelopeMatrix fdlp_envelopes(const Segment& seg, const FdlpConfig& config,
                              const std::vector<std::vector<double>>& windows) {
  config.validate();
  const int n = config.segment_samples();
  const int t = config.envelope_points();
  const int q = config.num_bands;
  if (static_cast<int>(seg.samples.size()) != n) {
    throw InvalidArgument("fdlp_envelopes: segment length " + std::to_string(seg.samples.size()) +
                          " != " + std::to_string(n));
  }
  if (static_cast<int>(windows.size()) != q) {
    throw InvalidArgument("fdlp_envelopes: window count mismatch");
  }

  const auto coeffs = dct_ii(seg.samples);

  EnvelopeMatrix env;
  env.values = Matrix(t, q);
  env.valid_rows = static_cast<int>(
      (static_cast<int64_t>(seg.valid_samples) * t + n - 1) / n);

  std::vector<double> banded(n);
  for (int b = 0; b < q; ++b) {
    for (int k = 0; k < n; ++k) banded[k] = windows[b][k] * coeffs[k];
    const auto r = autocorr(banded, config.lp_order);
    if (r[0] <= 0.0) {
      // Silent band: flat floor instead of aborting the whole batch.
      for (int i = 0; i < t; ++i) env.values(i, b) = config.gain_floor;
      continue;
    }
    LpModel model;
    try {
      model = levinson_durbin(r);
    } catch (const NumericError& e) {
      throw NumericError("fdlp_envelopes: band " + std::to_string(b) + ": " + e.what());
    }
    const auto band_env = all_pole_envelope(model, t);
    for (int i = 0; i < t; ++i) env.values(i, b) = band_env[i];
  }
  return env;
}

GainMatrix gain_targets(const EnvelopeMatrix& clean, const EnvelopeMatrix& reverb,
                        const FdlpConfig& config) {
  if (!clean.values.same_shape(reverb.values)) {
    throw InvalidArgument("gain_targets: shape mismatch");
  }
  const double floor = config.gain_floor;
  const double cap = config.gain_cap();
  const double eps = std::numeric_limits<double>::min();
  GainMatrix g;
  g.values = Matrix(clean.values.rows, clean.values.cols);
  for (size_t i = 0; i < g.values.data.size(); ++i) {
    const double ratio = clean.values.data[i] / (reverb.values.data[i] + eps);
    g.values.data[i] = std::clamp(ratio, floor, cap);
  }
  return g;
}

EnvelopeMatrix apply_gain(const EnvelopeMatrix& reverb, const GainMatrix& gain) {
  if (!reverb.values.same_shape(gain.values)) {
    throw InvalidArgument("apply_gain: shape mismatch");
  }
  EnvelopeMatrix out;
  out.values = Matrix(reverb.values.rows, reverb.values.cols);
  out.valid_rows = reverb.valid_rows;
  for (size_t i = 0; i < out.values.data.size(); ++i) {
    out.values.data[i] = reverb.values.data[i] * gain.values.data[i];
  }
  return out;
}

}  // namespace fdlp
