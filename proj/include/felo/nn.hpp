#pragma once

#include "felo/common.hpp"
#include "felo/rng.hpp"

#include <string>
#include <vector>

namespace felo {

enum class LayerKind { Dense, Relu, Flatten };

struct LayerSpec {
  LayerKind kind = LayerKind::Dense;
  int in_dim = 0;
  int out_dim = 0;
};

/// One layer of a stack. Relu and flatten carry no parameters; dense layers
/// hold weight (out_dim x in_dim) and bias (out_dim).
struct Layer {
  LayerKind kind = LayerKind::Dense;
  int in_dim = 0;
  int out_dim = 0;
  Matrix weight;
  Vector bias;

  bool has_params() const { return kind == LayerKind::Dense; }
};

using LayerStack = std::vector<Layer>;

/// y[b][o] = sum_i weight[o][i] * x[b][i] + bias[o].
Matrix dense_forward(const Matrix& x, const Matrix& weight, const Vector& bias);

template <typename Derived>
Matrix relu(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseMax(Scalar(0));
}

/// Row-wise softmax, stabilized by max subtraction.
Matrix softmax(const Matrix& logits);

/// Per-row argmax; ties break toward the lowest index.
std::vector<int> argmax_rows(const Matrix& m);

Matrix onehot(const std::vector<int>& labels, int n_classes);

/// Activations recorded by a forward pass: acts[0] is the input, acts[i+1]
/// the output of layer i. Required by stack_backward.
struct StackTrace {
  std::vector<Matrix> acts;

  bool valid() const { return !acts.empty(); }
};

Layer make_dense(int in_dim, int out_dim);
Layer make_relu(int dim);
Layer make_flatten(int dim);

/// Glorot-uniform weights in +-sqrt(6/(in+out)), zero biases, drawn row-major.
void init_layer_params(Layer& layer, Rng& rng);

Matrix stack_forward(const LayerStack& stack, const Matrix& x);
Matrix stack_forward(const LayerStack& stack, const Matrix& x, StackTrace& trace);

struct LayerGrads {
  Matrix dweight;
  Vector dbias;
};

// Aligned with the stack: grads[i] is empty for parameter-free layers.
using StackGrads = std::vector<LayerGrads>;

StackGrads zero_grads(const LayerStack& stack);
void accumulate_grads(StackGrads& into, const StackGrads& from);
void scale_grads(StackGrads& grads, Scalar factor);

/// Backpropagates d_out through the stack; fills grads and returns the
/// gradient with respect to the stack input. Throws UsageError when the
/// trace does not match a prior forward pass.
Matrix stack_backward(const LayerStack& stack, const StackTrace& trace,
                      const Matrix& d_out, StackGrads& grads);

int stack_out_dim(const LayerStack& stack);
long stack_param_count(const LayerStack& stack);

enum class OptimizerKind { Sgd, Adam };

struct OptimizerSpec {
  OptimizerKind kind = OptimizerKind::Sgd;
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Per-parameter-tensor optimizer state. Adam moments are allocated lazily on
/// the first step and must then match parameter shapes exactly.
struct OptimizerState {
  OptimizerSpec spec;
  long step = 0;
  std::vector<Vector> m;
  std::vector<Vector> v;
};

/// Flat view of one parameter tensor paired with its gradient.
struct ParamSlot {
  Scalar* value = nullptr;
  const Scalar* grad = nullptr;
  Index size = 0;
};

/// SGD: p -= lr * g. Adam: bias-corrected moment update. Slot i owns moment
/// vectors m[i], v[i]; the slot list must be stable across steps.
void optimizer_step(std::vector<ParamSlot>& slots, OptimizerState& state);

/// Parameter slots of a stack in layer order (weight then bias per dense
/// layer), paired with the matching gradients.
std::vector<ParamSlot> param_slots(LayerStack& stack, const StackGrads& grads);

}  // namespace felo
