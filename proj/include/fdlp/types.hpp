#ifndef FDLP_TYPES_HPP
#define FDLP_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdlp {

// Error taxonomy. The CLI maps these to distinct exit codes.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense row-major matrix of doubles. Time runs over rows, bands over columns.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {}

  double& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

// Mono audio buffer.
struct Signal {
  std::vector<double> samples;
  int sample_rate = 0;

  Signal() = default;
  Signal(std::vector<double> s, int rate) : samples(std::move(s)), sample_rate(rate) {}
};

// All-pole model of one sub-band envelope: A(z) = sum a[k] z^-k, a[0] = 1,
// gain g > 0. Produced by levinson_durbin, so A(z) is minimum phase.
struct LpModel {
  std::vector<double> coeffs;
  double gain = 0.0;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

}  // namespace fdlp

#endif
