#ifndef FDLP_FEATURES_HPP
#define FDLP_FEATURES_HPP

#include <string>
#include <vector>

#include "fdlp/envelopes.hpp"
#include "fdlp/types.hpp"

namespace fdlp {

// Frame-level log features: 25 ms windows, 10 ms shift. At the 400 Hz
// envelope rate that is 10 envelope samples per window, advancing by 4.
struct FeatureMatrix {
  Matrix frames;           // F x Q
  int window_points = 10;
  int shift_points = 4;
};

// Per band: mean over each window, then natural log with the envelope floor.
// Rows beyond valid_rows (zero padding) are excluded. Returns an empty matrix
// when fewer than window_points valid rows exist.
FeatureMatrix integrate(const EnvelopeMatrix& env, const FdlpConfig& config);

// WAV I/O. Linear PCM only: 16-bit integer or 32-bit float. No resampling:
// a file whose rate differs from expected_rate is rejected (expected_rate 0
// accepts any rate). Multi-channel files require an explicit channel index.
Signal read_wav(const std::string& path, int expected_rate, int channel = 0);

enum class WavFormat { Pcm16, Float32 };
void write_wav(const std::string& path, const Signal& signal, WavFormat format);

// Binary containers (all integers and floats little-endian):
//   feature file: magic "FDLPFEAT", u32 version, u32 rows, u32 cols,
//                 rows*cols float32 row-major
//   envelope dump: magic "FDLPENVL", u32 version, u32 num_segments, then per
//                 segment u32 segment_index, u32 valid_rows, u32 rows,
//                 u32 cols, rows*cols float32 row-major
enum class FeatureFormat { Binary, Csv };

void write_features(const FeatureMatrix& matrix, const std::string& path, FeatureFormat format);
FeatureMatrix read_features(const std::string& path);

void write_envelope_dump(const std::vector<EnvelopeMatrix>& segments, const std::string& path);
std::vector<EnvelopeMatrix> read_envelope_dump(const std::string& path);

}  // namespace fdlp

#endif
