#ifndef FDLP_ENHANCER_HPP
#define FDLP_ENHANCER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fdlp/envelopes.hpp"
#include "fdlp/types.hpp"

namespace fdlp {

struct ConvSpec {
  int filters = 0;
  int kernel_time = 0;
  int kernel_band = 0;
};

// CLSTM gain predictor: log input -> conv stack (same-size zero padding,
// ReLU) -> per-step flatten -> LSTM stack -> exp. The last LSTM layer is
// band-wide, so its hidden state per step is the log-gain.
struct EnhancerConfig {
  std::vector<ConvSpec> conv{{32, 41, 5}, {32, 41, 5}, {64, 21, 3}, {64, 21, 3}};
  std::vector<int> lstm{1024, 1024, 36};
  int bands = 36;
  double reg_weight = 0.05;
  double env_floor = 1e-3;
  int epochs = 10;
  int batch_size = 8;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  uint64_t seed = 1;

  static EnhancerConfig full_scale() { return EnhancerConfig{}; }
  static EnhancerConfig desk_scale();
  void validate() const;
};

struct TensorInfo {
  std::string name;
  std::vector<int> shape;
  size_t offset = 0;
  size_t size = 0;
};

// All parameters live in one flat buffer; layout is a pure function of the
// config, so checkpoints round-trip bit-exactly.
struct EnhancerParams {
  EnhancerConfig config;
  std::vector<TensorInfo> layout;
  std::vector<double> values;

  double* tensor(size_t i) { return values.data() + layout[i].offset; }
  const double* tensor(size_t i) const { return values.data() + layout[i].offset; }
};

EnhancerParams init_params(const EnhancerConfig& config);
// Zeroes the last LSTM layer; forward then emits unit gains exactly.
void zero_final_layer(EnhancerParams& params);

struct ForwardCache {
  Matrix log_env;
  std::vector<std::vector<double>> conv_out;  // per layer, post-ReLU, [C][T][Q]
  std::vector<double> reshaped;               // [T][C*Q]
  std::vector<std::vector<double>> gates;     // per lstm layer, [T][4H] post-nonlinearity
  std::vector<std::vector<double>> cells;     // per lstm layer, [T][H]
  std::vector<std::vector<double>> hidden;    // per lstm layer, [T][H]
  Matrix log_gain;                            // T x Q
};

GainMatrix forward(const Matrix& env, const EnhancerParams& params, ForwardCache* cache = nullptr);

struct LossResult {
  double total = 0.0;
  double mse = 0.0;
  double decorrelation = 0.0;
  Matrix grad;  // w.r.t. the predicted enhanced log-envelope (== w.r.t. log-gain)
  std::vector<int> excluded_channels;
};

// Log-domain MSE between log(gain * reverb_env) and log(clean_env), plus
// reg_weight times the mean squared off-diagonal correlation of the enhanced
// log-envelope channels. Channels with variance < 1e-12 are excluded from the
// correlation term and reported.
LossResult enhancement_loss(const Matrix& predicted_log_gain, const Matrix& reverb_env,
                            const Matrix& clean_env, double reg_weight, double env_floor);
LossResult enhancement_loss(const GainMatrix& predicted_gain, const EnvelopeMatrix& reverb,
                            const EnvelopeMatrix& clean, double reg_weight, double env_floor);

// Exact reverse-mode gradients for every parameter given dL/d(log-gain).
// Requires the cache written by forward() on the same input and parameters.
std::vector<double> backward(const EnhancerParams& params, const ForwardCache& cache,
                             const Matrix& loss_grad);

struct AdamState {
  std::vector<double> m, v;
  int64_t step = 0;
};

void adam_step(EnhancerParams& params, const std::vector<double>& grads, AdamState& state);

struct TrainRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct TrainPair {
  Matrix reverb_env;
  Matrix clean_env;
};

struct TrainResult {
  EnhancerParams best_params;  // best validation loss
  EnhancerParams last_params;
  std::vector<TrainRecord> history;
};

using EpochCallback = std::function<void(const TrainRecord&)>;

// Seeded split + per-epoch shuffles; one Adam step per batch of whole
// segments. On numeric failure the last completed epoch's parameters are
// saved to failure_checkpoint (when non-empty) before rethrowing.
TrainResult train(const std::vector<TrainPair>& pairs, const EnhancerConfig& config,
                  double val_fraction, const EpochCallback& on_epoch = nullptr,
                  const std::string& failure_checkpoint = "");

EnvelopeMatrix enhance(const EnvelopeMatrix& env, const EnhancerParams& params);

// Checkpoint container: magic "FDLPCKPT", u32 version, config block, then
// per-tensor name/shape/float64 little-endian payload.
void save_checkpoint(const EnhancerParams& params, const std::string& path);
EnhancerParams load_checkpoint(const std::string& path);

}  // namespace fdlp

#endif
