#include "felo/nn.hpp"

#include <cmath>

namespace felo {

Matrix dense_forward(const Matrix& x, const Matrix& weight, const Vector& bias) {
  if (x.cols() != weight.cols() || weight.rows() != bias.size()) {
    throw ConfigError("dense_forward shape mismatch: x " +
                      shape_string(x.rows(), x.cols()) + ", weight " +
                      shape_string(weight.rows(), weight.cols()) + ", bias " +
                      shape_string(bias.size(), 1));
  }
  Matrix y = x * weight.transpose();
  y.rowwise() += bias.transpose();
  return y;
}

Matrix softmax(const Matrix& logits) {
  Matrix p(logits.rows(), logits.cols());
  for (Index r = 0; r < logits.rows(); ++r) {
    const Scalar m = logits.row(r).maxCoeff();
    p.row(r) = (logits.row(r).array() - m).exp();
    p.row(r) /= p.row(r).sum();
  }
  return p;
}

std::vector<int> argmax_rows(const Matrix& m) {
  std::vector<int> out(static_cast<std::size_t>(m.rows()));
  for (Index r = 0; r < m.rows(); ++r) {
    int best = 0;
    for (Index c = 1; c < m.cols(); ++c) {
      if (m(r, c) > m(r, best)) {
        best = static_cast<int>(c);
      }
    }
    out[static_cast<std::size_t>(r)] = best;
  }
  return out;
}

Matrix onehot(const std::vector<int>& labels, int n_classes) {
  Matrix m = Matrix::Zero(static_cast<Index>(labels.size()), n_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= n_classes) {
      throw DataError("label " + std::to_string(labels[i]) + " out of range [0, " +
                      std::to_string(n_classes) + ")");
    }
    m(static_cast<Index>(i), labels[i]) = 1.0;
  }
  return m;
}

Layer make_dense(int in_dim, int out_dim) {
  Layer layer;
  layer.kind = LayerKind::Dense;
  layer.in_dim = in_dim;
  layer.out_dim = out_dim;
  layer.weight = Matrix::Zero(out_dim, in_dim);
  layer.bias = Vector::Zero(out_dim);
  return layer;
}

Layer make_relu(int dim) {
  Layer layer;
  layer.kind = LayerKind::Relu;
  layer.in_dim = dim;
  layer.out_dim = dim;
  return layer;
}

Layer make_flatten(int dim) {
  Layer layer;
  layer.kind = LayerKind::Flatten;
  layer.in_dim = dim;
  layer.out_dim = dim;
  return layer;
}

void init_layer_params(Layer& layer, Rng& rng) {
  if (!layer.has_params()) {
    return;
  }
  const double bound = std::sqrt(6.0 / (layer.in_dim + layer.out_dim));
  for (Index r = 0; r < layer.weight.rows(); ++r) {
    for (Index c = 0; c < layer.weight.cols(); ++c) {
      layer.weight(r, c) = rng.uniform(-bound, bound);
    }
  }
  layer.bias.setZero();
}

Matrix stack_forward(const LayerStack& stack, const Matrix& x) {
  StackTrace trace;
  return stack_forward(stack, x, trace);
}

Matrix stack_forward(const LayerStack& stack, const Matrix& x, StackTrace& trace) {
  trace.acts.clear();
  trace.acts.reserve(stack.size() + 1);
  trace.acts.push_back(x);
  for (const Layer& layer : stack) {
    const Matrix& in = trace.acts.back();
    switch (layer.kind) {
      case LayerKind::Dense:
        trace.acts.push_back(dense_forward(in, layer.weight, layer.bias));
        break;
      case LayerKind::Relu:
        trace.acts.push_back(relu(in));
        break;
      case LayerKind::Flatten:
        trace.acts.push_back(in);
        break;
    }
  }
  return trace.acts.back();
}

StackGrads zero_grads(const LayerStack& stack) {
  StackGrads grads(stack.size());
  for (std::size_t i = 0; i < stack.size(); ++i) {
    if (stack[i].has_params()) {
      grads[i].dweight = Matrix::Zero(stack[i].weight.rows(), stack[i].weight.cols());
      grads[i].dbias = Vector::Zero(stack[i].bias.size());
    }
  }
  return grads;
}

void accumulate_grads(StackGrads& into, const StackGrads& from) {
  for (std::size_t i = 0; i < into.size(); ++i) {
    if (from[i].dweight.size() > 0) {
      into[i].dweight += from[i].dweight;
      into[i].dbias += from[i].dbias;
    }
  }
}

void scale_grads(StackGrads& grads, Scalar factor) {
  for (auto& g : grads) {
    if (g.dweight.size() > 0) {
      g.dweight *= factor;
      g.dbias *= factor;
    }
  }
}

Matrix stack_backward(const LayerStack& stack, const StackTrace& trace,
                      const Matrix& d_out, StackGrads& grads) {
  if (!trace.valid() || trace.acts.size() != stack.size() + 1) {
    throw UsageError("stack_backward called without a matching forward pass");
  }
  if (d_out.rows() != trace.acts.back().rows() ||
      d_out.cols() != trace.acts.back().cols()) {
    throw UsageError("stack_backward upstream gradient shape " +
                     shape_string(d_out.rows(), d_out.cols()) +
                     " does not match forward output " +
                     shape_string(trace.acts.back().rows(), trace.acts.back().cols()));
  }
  grads.resize(stack.size());
  Matrix d = d_out;
  for (std::size_t idx = stack.size(); idx-- > 0;) {
    const Layer& layer = stack[idx];
    const Matrix& in = trace.acts[idx];
    switch (layer.kind) {
      case LayerKind::Dense:
        grads[idx].dweight = d.transpose() * in;
        grads[idx].dbias = d.colwise().sum().transpose();
        d = d * layer.weight;
        break;
      case LayerKind::Relu:
        d = (in.array() > 0.0).select(d, Matrix::Zero(d.rows(), d.cols()));
        break;
      case LayerKind::Flatten:
        break;
    }
  }
  return d;
}

int stack_out_dim(const LayerStack& stack) {
  return stack.empty() ? 0 : stack.back().out_dim;
}

long stack_param_count(const LayerStack& stack) {
  long n = 0;
  for (const Layer& layer : stack) {
    if (layer.has_params()) {
      n += static_cast<long>(layer.weight.size()) + static_cast<long>(layer.bias.size());
    }
  }
  return n;
}

void optimizer_step(std::vector<ParamSlot>& slots, OptimizerState& state) {
  if (state.spec.kind == OptimizerKind::Adam && state.m.empty()) {
    state.m.resize(slots.size());
    state.v.resize(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
      state.m[i] = Vector::Zero(slots[i].size);
      state.v[i] = Vector::Zero(slots[i].size);
    }
  }
  if (state.spec.kind == OptimizerKind::Adam && state.m.size() != slots.size()) {
    throw ConfigError("optimizer state holds " + std::to_string(state.m.size()) +
                      " moment tensors but " + std::to_string(slots.size()) +
                      " parameter tensors were given");
  }
  state.step += 1;
  const double lr = state.spec.learning_rate;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    ParamSlot& s = slots[i];
    Eigen::Map<Vector> p(s.value, s.size);
    Eigen::Map<const Vector> g(s.grad, s.size);
    if (state.spec.kind == OptimizerKind::Sgd) {
      p -= lr * g;
      continue;
    }
    if (state.m[i].size() != s.size) {
      throw ConfigError("adam moment size " + std::to_string(state.m[i].size()) +
                        " does not match parameter size " + std::to_string(s.size));
    }
    const double b1 = state.spec.beta1;
    const double b2 = state.spec.beta2;
    state.m[i] = b1 * state.m[i] + (1.0 - b1) * g;
    state.v[i] = b2 * state.v[i] + (1.0 - b2) * g.cwiseProduct(g);
    const double mc = 1.0 - std::pow(b1, static_cast<double>(state.step));
    const double vc = 1.0 - std::pow(b2, static_cast<double>(state.step));
    p -= (lr * (state.m[i] / mc).array() /
          ((state.v[i] / vc).array().sqrt() + state.spec.epsilon))
             .matrix();
  }
}

std::vector<ParamSlot> param_slots(LayerStack& stack, const StackGrads& grads) {
  if (grads.size() != stack.size()) {
    throw ConfigError("gradient list length " + std::to_string(grads.size()) +
                      " does not match stack length " + std::to_string(stack.size()));
  }
  std::vector<ParamSlot> slots;
  for (std::size_t i = 0; i < stack.size(); ++i) {
    if (!stack[i].has_params()) {
      continue;
    }
    if (grads[i].dweight.rows() != stack[i].weight.rows() ||
        grads[i].dweight.cols() != stack[i].weight.cols()) {
      throw ConfigError("gradient shape " +
                        shape_string(grads[i].dweight.rows(), grads[i].dweight.cols()) +
                        " does not match weight shape " +
                        shape_string(stack[i].weight.rows(), stack[i].weight.cols()));
    }
    slots.push_back({stack[i].weight.data(), grads[i].dweight.data(),
                     static_cast<Index>(stack[i].weight.size())});
    slots.push_back({stack[i].bias.data(), grads[i].dbias.data(),
                     static_cast<Index>(stack[i].bias.size())});
  }
  return slots;
}

}  // namespace felo
