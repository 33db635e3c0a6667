#ifndef FDLP_ENVELOPES_HPP
#define FDLP_ENVELOPES_HPP

#include <vector>

#include "fdlp/types.hpp"

namespace fdlp {

// Front-end geometry. Defaults give the 800 x 36 representation: 2 s segments
// at 16 kHz, envelopes sampled at 400 Hz, 36 mel bands between 200 and 6500 Hz.
struct FdlpConfig {
  int sample_rate = 16000;
  double segment_seconds = 2.0;
  int envelope_rate = 400;
  int num_bands = 36;
  double fmin = 200.0;
  double fmax = 6500.0;
  int lp_order = 160;
  double gain_floor = 1e-3;  // also the envelope floor used before any log

  int segment_samples() const { return static_cast<int>(segment_seconds * sample_rate); }
  int envelope_points() const { return static_cast<int>(segment_seconds * envelope_rate); }
  double gain_cap() const { return 1.0 / gain_floor; }
  void validate() const;
};

// One fixed-length analysis window. valid_samples < samples.size() marks a
// zero-padded final partial segment.
struct Segment {
  std::vector<double> samples;
  int valid_samples = 0;
};

// T x Q non-negative envelope samples plus the number of rows that came from
// real (non-padding) audio.
struct EnvelopeMatrix {
  Matrix values;
  int valid_rows = 0;
};

// T x Q multiplicative gains, clamped to [gain_floor, 1/gain_floor].
struct GainMatrix {
  Matrix values;
};

std::vector<Segment> segment(const Signal& signal, const FdlpConfig& config);

// Q triangular unit-peak windows over DCT-coefficient indices; centers are
// uniform on the mel scale between fmin and fmax. DCT bin k of an N-point
// segment maps to frequency k * sample_rate / (2N).
std::vector<std::vector<double>> mel_band_windows(const FdlpConfig& config);

EnvelopeMatrix fdlp_envelopes(const Segment& seg, const FdlpConfig& config);
EnvelopeMatrix fdlp_envelopes(const Segment& seg, const FdlpConfig& config,
                              const std::vector<std::vector<double>>& windows);

GainMatrix gain_targets(const EnvelopeMatrix& clean, const EnvelopeMatrix& reverb,
                        const FdlpConfig& config);

EnvelopeMatrix apply_gain(const EnvelopeMatrix& reverb, const GainMatrix& gain);

}  // namespace fdlp

#endif
