#include "fdlp/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace fdlp {

namespace {

void put_u32(std::ostream& os, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u16(std::ostream& os, uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

uint16_t get_u16(std::istream& is) {
  unsigned char b[2];
  is.read(reinterpret_cast<char*>(b), 2);
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void put_f32_row_major(std::ostream& os, const Matrix& m) {
  std::vector<float> row(m.cols);
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) row[c] = static_cast<float>(m(r, c));
    os.write(reinterpret_cast<const char*>(row.data()), sizeof(float) * row.size());
  }
}

Matrix get_f32_row_major(std::istream& is, int rows, int cols) {
  Matrix m(rows, cols);
  std::vector<float> row(cols);
  for (int r = 0; r < rows; ++r) {
    is.read(reinterpret_cast<char*>(row.data()), sizeof(float) * row.size());
    for (int c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

void expect_magic(std::istream& is, const char* magic, const std::string& path) {
  char buf[8];
  is.read(buf, 8);
  if (!is || std::memcmp(buf, magic, 8) != 0) {
    throw IoError(path + ": bad magic, expected " + magic);
  }
}

}  // namespace

FeatureMatrix integrate(const EnvelopeMatrix& env, const FdlpConfig& config) {
  const int window = 10, shift = 4;
  const int t_valid = std::min(env.valid_rows, env.values.rows);
  const int q = env.values.cols;
  FeatureMatrix out;
  out.window_points = window;
  out.shift_points = shift;
  if (t_valid < window) {
    out.frames = Matrix(0, q);
    return out;
  }
  const int frames = (t_valid - window) / shift + 1;
  out.frames = Matrix(frames, q);
  const double floor = config.gain_floor;
  for (int f = 0; f < frames; ++f) {
    const int start = f * shift;
    for (int c = 0; c < q; ++c) {
      double acc = 0.0;
      for (int i = 0; i < window; ++i) acc += env.values(start + i, c);
      out.frames(f, c) = std::log(std::max(acc / window, floor));
    }
  }
  return out;
}

Signal read_wav(const std::string& path, int expected_rate, int channel) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path + ": cannot open");
  char riff[4];
  is.read(riff, 4);
  if (!is || std::memcmp(riff, "RIFF", 4) != 0) throw IoError(path + ": not a RIFF file");
  get_u32(is);  // total size
  char wave[4];
  is.read(wave, 4);
  if (!is || std::memcmp(wave, "WAVE", 4) != 0) throw IoError(path + ": not a WAVE file");

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool has_fmt = false;
  std::vector<char> payload;
  while (is) {
    char id[4];
    is.read(id, 4);
    if (!is) break;
    uint32_t size = get_u32(is);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      format = get_u16(is);
      channels = get_u16(is);
      rate = get_u32(is);
      get_u32(is);  // byte rate
      get_u16(is);  // block align
      bits = get_u16(is);
      if (size > 16) is.seekg(size - 16, std::ios::cur);
      has_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      payload.resize(size);
      is.read(payload.data(), size);
      break;
    } else {
      is.seekg(size + (size % 2), std::ios::cur);
    }
  }
  if (!has_fmt || payload.empty()) throw IoError(path + ": missing fmt or data chunk");
  if (channels == 0) throw IoError(path + ": zero channels");
  if (channel < 0 || channel >= channels) {
    throw InvalidArgument(path + ": channel " + std::to_string(channel) + " out of range (" +
                          std::to_string(channels) + " channels)");
  }
  if (expected_rate > 0 && static_cast<int>(rate) != expected_rate) {
    throw InvalidArgument(path + ": sample rate " + std::to_string(rate) + " != required " +
                          std::to_string(expected_rate) + " (no implicit resampling)");
  }

  Signal sig;
  sig.sample_rate = static_cast<int>(rate);
  if (format == 1 && bits == 16) {
    const size_t frames = payload.size() / (2 * channels);
    sig.samples.resize(frames);
    for (size_t i = 0; i < frames; ++i) {
      int16_t v;
      std::memcpy(&v, payload.data() + 2 * (i * channels + channel), 2);
      sig.samples[i] = v / 32768.0;
    }
  } else if (format == 3 && bits == 32) {
    const size_t frames = payload.size() / (4 * channels);
    sig.samples.resize(frames);
    for (size_t i = 0; i < frames; ++i) {
      float v;
      std::memcpy(&v, payload.data() + 4 * (i * channels + channel), 4);
      sig.samples[i] = v;
    }
  } else {
    throw IoError(path + ": unsupported encoding (format " + std::to_string(format) + ", " +
                  std::to_string(bits) + " bit); only 16-bit PCM and 32-bit float");
  }
  return sig;
}

void write_wav(const std::string& path, const Signal& signal, WavFormat format) {
  if (signal.sample_rate <= 0) throw InvalidArgument("write_wav: bad sample rate");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError(path + ": cannot open for writing");
  const uint32_t n = static_cast<uint32_t>(signal.samples.size());
  const bool pcm = format == WavFormat::Pcm16;
  const uint32_t bytes_per = pcm ? 2 : 4;
  const uint32_t data_size = n * bytes_per;
  os.write("RIFF", 4);
  put_u32(os, 36 + data_size);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  put_u32(os, 16);
  put_u16(os, pcm ? 1 : 3);
  put_u16(os, 1);
  put_u32(os, static_cast<uint32_t>(signal.sample_rate));
  put_u32(os, static_cast<uint32_t>(signal.sample_rate) * bytes_per);
  put_u16(os, static_cast<uint16_t>(bytes_per));
  put_u16(os, pcm ? 16 : 32);
  os.write("data", 4);
  put_u32(os, data_size);
  if (pcm) {
    for (double v : signal.samples) {
      const double scaled = std::clamp(v, -1.0, 1.0) * 32768.0;
      const int16_t q = static_cast<int16_t>(std::clamp(std::lround(scaled), -32768L, 32767L));
      os.write(reinterpret_cast<const char*>(&q), 2);
    }
  } else {
    for (double v : signal.samples) {
      const float f = static_cast<float>(v);
      os.write(reinterpret_cast<const char*>(&f), 4);
    }
  }
  if (!os) throw IoError(path + ": write failed");
}

void write_features(const FeatureMatrix& matrix, const std::string& path, FeatureFormat format) {
  std::ofstream os(path, format == FeatureFormat::Binary ? std::ios::binary : std::ios::out);
  if (!os) throw IoError(path + ": cannot open for writing");
  if (format == FeatureFormat::Binary) {
    os.write("FDLPFEAT", 8);
    put_u32(os, 1);
    put_u32(os, static_cast<uint32_t>(matrix.frames.rows));
    put_u32(os, static_cast<uint32_t>(matrix.frames.cols));
    put_f32_row_major(os, matrix.frames);
  } else {
    os.precision(9);  // float32 round-trip precision
    for (int r = 0; r < matrix.frames.rows; ++r) {
      for (int c = 0; c < matrix.frames.cols; ++c) {
        if (c) os << ',';
        os << static_cast<float>(matrix.frames(r, c));
      }
      os << '\n';
    }
  }
  if (!os) throw IoError(path + ": write failed");
}

FeatureMatrix read_features(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path + ": cannot open");
  expect_magic(is, "FDLPFEAT", path);
  const uint32_t version = get_u32(is);
  if (version != 1) throw IoError(path + ": unsupported feature file version");
  const uint32_t rows = get_u32(is);
  const uint32_t cols = get_u32(is);
  FeatureMatrix out;
  out.frames = get_f32_row_major(is, static_cast<int>(rows), static_cast<int>(cols));
  if (!is) throw IoError(path + ": truncated feature file");
  return out;
}

void write_envelope_dump(const std::vector<EnvelopeMatrix>& segments, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError(path + ": cannot open for writing");
  os.write("FDLPENVL", 8);
  put_u32(os, 1);
  put_u32(os, static_cast<uint32_t>(segments.size()));
  for (size_t i = 0; i < segments.size(); ++i) {
    put_u32(os, static_cast<uint32_t>(i));
    put_u32(os, static_cast<uint32_t>(segments[i].valid_rows));
    put_u32(os, static_cast<uint32_t>(segments[i].values.rows));
    put_u32(os, static_cast<uint32_t>(segments[i].values.cols));
    put_f32_row_major(os, segments[i].values);
  }
  if (!os) throw IoError(path + ": write failed");
}

std::vector<EnvelopeMatrix> read_envelope_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path + ": cannot open");
  expect_magic(is, "FDLPENVL", path);
  const uint32_t version = get_u32(is);
  if (version != 1) throw IoError(path + ": unsupported envelope dump version");
  const uint32_t count = get_u32(is);
  std::vector<EnvelopeMatrix> out(count);
  for (uint32_t i = 0; i < count; ++i) {
    get_u32(is);  // segment index (sequential by construction)
    out[i].valid_rows = static_cast<int>(get_u32(is));
    const uint32_t rows = get_u32(is);
    const uint32_t cols = get_u32(is);
    out[i].values = get_f32_row_major(is, static_cast<int>(rows), static_cast<int>(cols));
  }
  if (!is) throw IoError(path + ": truncated envelope dump");
  return out;
}

}  // namespace fdlp
