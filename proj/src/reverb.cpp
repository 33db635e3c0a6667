#include "fdlp/reverb.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "fdlp/dsp.hpp"

namespace fdlp {

namespace {

// Next power of two >= n.
int fft_size(int n) {
  int s = 1;
  while (s < n) s <<= 1;
  return s;
}

}  // namespace

double uniform_pm1(uint64_t raw) {
  // Top 53 bits -> [0,1), mapped to [-1,1). Identical on every platform,
  // unlike std::uniform_real_distribution.
  return 2.0 * ((raw >> 11) * 0x1.0p-53) - 1.0;
}

void RirSpec::validate() const {
  if (!(t60 > 0.0)) throw InvalidArgument("RirSpec: t60 must be positive");
  if (direct_delay < 0.0) throw InvalidArgument("RirSpec: negative direct_delay");
  if (!(length > 0.0)) throw InvalidArgument("RirSpec: length must be positive");
  if (direct_delay >= length) throw InvalidArgument("RirSpec: direct_delay must be < length");
  if (tail_scale < 0.0 || tail_scale >= 1.0) {
    throw InvalidArgument("RirSpec: tail_scale must be in [0, 1)");
  }
  if (sample_rate <= 0) throw InvalidArgument("RirSpec: sample_rate must be positive");
}

Rir synth_rir(const RirSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(spec.length * spec.sample_rate);
  const int d = static_cast<int>(spec.direct_delay * spec.sample_rate);
  Rir rir;
  rir.spec = spec;
  rir.samples.assign(n, 0.0);
  rir.samples[d] = 1.0;
  std::mt19937_64 rng(spec.seed);
  const double rate = -6.9 / (spec.t60 * spec.sample_rate);
  for (int i = d + 1; i < n; ++i) {
    rir.samples[i] = spec.tail_scale * uniform_pm1(rng()) * std::exp(rate * (i - d));
  }
  return rir;
}

Signal convolve_truncate(const Signal& clean, const Rir& rir) {
  if (clean.sample_rate != rir.spec.sample_rate) {
    throw InvalidArgument("convolve_truncate: sample rate mismatch");
  }
  if (clean.samples.empty()) throw InvalidArgument("convolve_truncate: empty signal");
  const int n = static_cast<int>(clean.samples.size());
  const int m = static_cast<int>(rir.samples.size());
  Signal out;
  out.sample_rate = clean.sample_rate;
  out.samples.assign(n, 0.0);
  if (static_cast<int64_t>(n) * m <= 1 << 18) {
    // Direct sum for small sizes.
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      const int k_hi = std::min(i, m - 1);
      for (int k = 0; k <= k_hi; ++k) acc += rir.samples[k] * clean.samples[i - k];
      out.samples[i] = acc;
    }
    return out;
  }
  const int size = fft_size(n + m - 1);
  std::vector<std::complex<double>> a(size), b(size);
  std::copy(clean.samples.begin(), clean.samples.end(), a.begin());
  std::copy(rir.samples.begin(), rir.samples.end(), b.begin());
  auto fa = fft(a, false);
  auto fb = fft(b, false);
  for (int i = 0; i < size; ++i) fa[i] *= fb[i];
  auto prod = fft(fa, true);
  for (int i = 0; i < n; ++i) out.samples[i] = prod[i].real();
  return out;
}

std::pair<Rir, Rir> split_early_late(const Rir& rir, double boundary) {
  const int n = static_cast<int>(rir.samples.size());
  if (!(boundary > 0.0) || boundary >= rir.spec.length) {
    throw InvalidArgument("split_early_late: boundary out of range");
  }
  const int cut = std::min(n, rir.direct_index() +
                           static_cast<int>(boundary * rir.spec.sample_rate));
  Rir early = rir, late = rir;
  std::fill(early.samples.begin() + cut, early.samples.end(), 0.0);
  std::fill(late.samples.begin(), late.samples.begin() + cut, 0.0);
  return {std::move(early), std::move(late)};
}

std::vector<ReverbPair> make_dataset(const std::vector<Signal>& clean_signals,
                                     const std::vector<RirSpec>& rir_specs,
                                     uint64_t pairing_seed, int pairs_per_clean) {
  if (clean_signals.empty()) throw InvalidArgument("make_dataset: no clean signals");
  if (rir_specs.empty()) throw InvalidArgument("make_dataset: no RIR specs");
  const int r = static_cast<int>(rir_specs.size());
  std::vector<ReverbPair> out;
  std::mt19937_64 rng(pairing_seed);
  for (const auto& clean : clean_signals) {
    std::vector<int> picks(r);
    for (int i = 0; i < r; ++i) picks[i] = i;
    if (pairs_per_clean > 0 && pairs_per_clean < r) {
      // Seeded Fisher-Yates prefix draw.
      for (int i = 0; i < pairs_per_clean; ++i) {
        const int j = i + static_cast<int>(rng() % (r - i));
        std::swap(picks[i], picks[j]);
      }
      picks.resize(pairs_per_clean);
      std::sort(picks.begin(), picks.end());
    }
    for (int idx : picks) {
      ReverbPair pair;
      pair.rir = synth_rir(rir_specs[idx]);
      pair.clean = clean;
      pair.reverberant = convolve_truncate(clean, pair.rir);
      out.push_back(std::move(pair));
    }
  }
  return out;
}

Signal make_am_noise(double f_lo, double f_hi, double mod_hz, double depth,
                     double seconds, int sample_rate, uint64_t seed) {
  if (!(f_lo < f_hi) || f_lo < 0.0) throw InvalidArgument("make_am_noise: bad band");
  const int n = static_cast<int>(seconds * sample_rate);
  // Random-phase spectrum inside the band, then modulate.
  std::vector<std::complex<double>> spec(n, 0.0);
  std::mt19937_64 rng(seed);
  const int k_lo = std::max(1, static_cast<int>(f_lo * n / sample_rate));
  const int k_hi = std::min(n / 2 - 1, static_cast<int>(f_hi * n / sample_rate));
  for (int k = k_lo; k <= k_hi; ++k) {
    const double phase = M_PI * (uniform_pm1(rng()) + 1.0);
    spec[k] = std::polar(1.0, phase);
    spec[n - k] = std::conj(spec[k]);
  }
  auto x = fft(spec, true);
  Signal sig;
  sig.sample_rate = sample_rate;
  sig.samples.resize(n);
  double power = 0.0;
  for (int i = 0; i < n; ++i) {
    sig.samples[i] = x[i].real();
    power += sig.samples[i] * sig.samples[i];
  }
  const double norm = power > 0.0 ? 1.0 / std::sqrt(power / n) : 1.0;
  for (int i = 0; i < n; ++i) {
    const double m = 1.0 + depth * std::sin(2.0 * M_PI * mod_hz * i / sample_rate);
    sig.samples[i] *= norm * m;
  }
  return sig;
}

Signal make_click_train(double period_seconds, double seconds, int sample_rate) {
  if (!(period_seconds > 0.0)) throw InvalidArgument("make_click_train: bad period");
  Signal sig;
  sig.sample_rate = sample_rate;
  sig.samples.assign(static_cast<int>(seconds * sample_rate), 0.0);
  const int step = static_cast<int>(period_seconds * sample_rate);
  for (size_t i = 0; i < sig.samples.size(); i += step) sig.samples[i] = 1.0;
  return sig;
}

Signal make_tone_complex(const std::vector<double>& freqs, double seconds, int sample_rate) {
  if (freqs.empty()) throw InvalidArgument("make_tone_complex: no frequencies");
  const int n = static_cast<int>(seconds * sample_rate);
  Signal sig;
  sig.sample_rate = sample_rate;
  sig.samples.assign(n, 0.0);
  const double amp = 1.0 / freqs.size();
  for (size_t j = 0; j < freqs.size(); ++j) {
    // Offset phases so the partials do not all align at t = 0.
    const double phase = 0.7 * static_cast<double>(j);
    for (int i = 0; i < n; ++i) {
      sig.samples[i] += amp * std::cos(2.0 * M_PI * freqs[j] * i / sample_rate + phase);
    }
  }
  return sig;
}

}  // namespace fdlp
