#ifndef FDLP_REVERB_HPP
#define FDLP_REVERB_HPP

#include <cstdint>
#include <vector>

#include "fdlp/types.hpp"

namespace fdlp {

// Parametric room impulse response: unit direct impulse followed by a
// pseudo-random noise tail whose amplitude decays as exp(-6.9 t / t60),
// i.e. energy is down 60 dB at t60. Fully determined by the seed.
struct RirSpec {
  double t60 = 0.5;          // seconds
  double direct_delay = 0.0; // seconds
  double length = 0.5;       // seconds
  double tail_scale = 0.5;   // tail amplitude relative to the direct impulse, in [0, 1)
  uint64_t seed = 0;
  int sample_rate = 16000;

  void validate() const;
};

struct Rir {
  std::vector<double> samples;
  RirSpec spec;

  int direct_index() const { return static_cast<int>(spec.direct_delay * spec.sample_rate); }
};

struct ReverbPair {
  Signal clean;
  Signal reverberant;
  Rir rir;
};

Rir synth_rir(const RirSpec& spec);

// Full linear convolution truncated to the clean length.
Signal convolve_truncate(const Signal& clean, const Rir& rir);

// Partition at direct_delay + boundary seconds; early + late == rir exactly.
std::pair<Rir, Rir> split_early_late(const Rir& rir, double boundary);

// Cross-pairing of clean signals with RIR specs. pairs_per_clean == 0 takes
// every combination; otherwise a seeded draw of that many RIRs per clean.
std::vector<ReverbPair> make_dataset(const std::vector<Signal>& clean_signals,
                                     const std::vector<RirSpec>& rir_specs,
                                     uint64_t pairing_seed, int pairs_per_clean = 0);

// Deterministic uniform double in [-1, 1) from a 64-bit RNG draw.
double uniform_pm1(uint64_t raw);

// Synthetic clean material for desk-scale training and verification.
Signal make_am_noise(double f_lo, double f_hi, double mod_hz, double depth,
                     double seconds, int sample_rate, uint64_t seed);
Signal make_click_train(double period_seconds, double seconds, int sample_rate);
Signal make_tone_complex(const std::vector<double>& freqs, double seconds, int sample_rate);

}  // namespace fdlp

#endif
