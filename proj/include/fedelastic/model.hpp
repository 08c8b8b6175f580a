#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fedelastic/dataset.hpp"
#include "fedelastic/errors.hpp"
#include "fedelastic/param_ops.hpp"
#include "fedelastic/rng.hpp"

namespace fedelastic {

enum class ModelKind { linear_regression, logistic_regression, mlp };
enum class Activation { relu, tanh };

// Every model is an affine stack over dims = [input, hidden..., out].
// Parameter layout, in flattening order: for each layer l, W_l
// (dims[l] x dims[l+1], column-major) followed by b_l (dims[l+1]).
// linear-regression has out == 1 and a 0.5 * mean squared error head;
// the classifiers end in softmax + cross-entropy.
struct ModelSpec {
  ModelKind kind = ModelKind::logistic_regression;
  int input_dim = 0;
  int num_classes = 2;               // ignored for linear_regression
  std::vector<int> hidden;           // mlp only
  Activation activation = Activation::relu;

  std::vector<int> layer_dims() const {
    std::vector<int> dims{input_dim};
    if (kind == ModelKind::mlp)
      dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(kind == ModelKind::linear_regression ? 1 : num_classes);
    return dims;
  }

  int param_count() const {
    const auto dims = layer_dims();
    int total = 0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l)
      total += dims[l] * dims[l + 1] + dims[l + 1];
    return total;
  }

  bool classification() const { return kind != ModelKind::linear_regression; }
};

namespace detail {

inline void require_dims(const ModelSpec& spec, const ParamVector& theta,
                         Eigen::Index feature_dim) {
  if (theta.size() != spec.param_count())
    throw ConfigError("parameter vector length " + std::to_string(theta.size()) +
                      " does not match model parameter count " +
                      std::to_string(spec.param_count()));
  if (feature_dim != spec.input_dim)
    throw ConfigError("feature dimension " + std::to_string(feature_dim) +
                      " does not match model input_dim " +
                      std::to_string(spec.input_dim));
}

struct LayerView {
  Eigen::Map<const Eigen::MatrixXd> W;
  Eigen::Map<const Eigen::VectorXd> b;
};

inline std::vector<LayerView> layer_views(const ModelSpec& spec, const ParamVector& theta) {
  std::vector<LayerView> layers;
  const auto dims = spec.layer_dims();
  const double* p = theta.data();
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    layers.push_back({Eigen::Map<const Eigen::MatrixXd>(p, dims[l], dims[l + 1]),
                      Eigen::Map<const Eigen::VectorXd>(p + dims[l] * dims[l + 1], dims[l + 1])});
    p += dims[l] * dims[l + 1] + dims[l + 1];
  }
  return layers;
}

// Mean loss over (X, y); writes the mean-loss gradient into *grad_out when
// non-null. One fused forward/backward pass.
inline double loss_and_grad(const ModelSpec& spec, const ParamVector& theta,
                            const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            ParamVector* grad_out) {
  require_dims(spec, theta, X.cols());
  const auto dims = spec.layer_dims();
  const auto layers = layer_views(spec, theta);
  const Eigen::Index B = X.rows();
  const std::size_t L = layers.size();

  std::vector<Eigen::MatrixXd> acts;  // post-activation outputs, acts[0] = X
  acts.reserve(L + 1);
  acts.push_back(X);
  for (std::size_t l = 0; l < L; ++l) {
    Eigen::MatrixXd z = (acts[l] * layers[l].W).rowwise() + layers[l].b.transpose();
    if (l + 1 < L) {
      if (spec.activation == Activation::relu)
        z = z.cwiseMax(0.0);
      else
        z = z.array().tanh().matrix();
    }
    acts.push_back(std::move(z));
  }

  const Eigen::MatrixXd& out = acts.back();
  double loss = 0.0;
  Eigen::MatrixXd dZ;  // d(mean loss)/d(out)

  if (spec.kind == ModelKind::linear_regression) {
    Eigen::VectorXd r = out.col(0) - y;
    loss = 0.5 * r.squaredNorm() / static_cast<double>(B);
    if (grad_out) dZ = (r / static_cast<double>(B)).eval();
  } else {
    // Row-wise stable log-softmax cross-entropy.
    Eigen::VectorXd row_max = out.rowwise().maxCoeff();
    Eigen::MatrixXd shifted = out.colwise() - row_max;
    Eigen::MatrixXd expz = shifted.array().exp().matrix();
    Eigen::VectorXd denom = expz.rowwise().sum();
    for (Eigen::Index i = 0; i < B; ++i) {
      const int cls = static_cast<int>(y(i));
      if (cls < 0 || cls >= spec.num_classes)
        throw ConfigError("class label " + std::to_string(cls) + " outside [0, " +
                          std::to_string(spec.num_classes) + ")");
      loss += std::log(denom(i)) - shifted(i, cls);
    }
    loss /= static_cast<double>(B);
    if (grad_out) {
      dZ = (expz.array().colwise() / denom.array()).matrix();
      for (Eigen::Index i = 0; i < B; ++i) dZ(i, static_cast<int>(y(i))) -= 1.0;
      dZ /= static_cast<double>(B);
    }
  }

  if (grad_out) {
    grad_out->resize(theta.size());
    double* gp = grad_out->data() + theta.size();
    Eigen::MatrixXd delta = std::move(dZ);
    for (std::size_t l = L; l-- > 0;) {
      const Eigen::Index in = dims[l], outd = dims[l + 1];
      gp -= in * outd + outd;
      Eigen::Map<Eigen::MatrixXd> dW(gp, in, outd);
      Eigen::Map<Eigen::VectorXd> db(gp + in * outd, outd);
      dW.noalias() = acts[l].transpose() * delta;
      db = delta.colwise().sum();
      if (l > 0) {
        Eigen::MatrixXd dA = delta * layers[l].W.transpose();
        if (spec.activation == Activation::relu)
          delta = ((acts[l].array() > 0.0).cast<double>() * dA.array()).matrix();
        else
          delta = ((1.0 - acts[l].array().square()) * dA.array()).matrix();
      }
    }
  }
  return loss;
}

inline Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& X, const std::vector<int>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), X.cols());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = X.row(idx[i]);
  return out;
}

inline Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(idx[i]);
  return out;
}

}  // namespace detail

inline double loss(const ModelSpec& spec, const ParamVector& theta, const Dataset& data) {
  return detail::loss_and_grad(spec, theta, data.features, data.labels, nullptr);
}

inline double loss(const ModelSpec& spec, const ParamVector& theta, const Dataset& data,
                   const Batch& batch) {
  return detail::loss_and_grad(spec, theta, detail::gather_rows(data.features, batch.indices),
                               detail::gather(data.labels, batch.indices), nullptr);
}

inline ParamVector grad(const ModelSpec& spec, const ParamVector& theta, const Dataset& data) {
  ParamVector g;
  detail::loss_and_grad(spec, theta, data.features, data.labels, &g);
  return g;
}

inline ParamVector grad(const ModelSpec& spec, const ParamVector& theta, const Dataset& data,
                        const Batch& batch) {
  ParamVector g;
  detail::loss_and_grad(spec, theta, detail::gather_rows(data.features, batch.indices),
                        detail::gather(data.labels, batch.indices), &g);
  return g;
}

// Zeros for the convex models; uniform He/Glorot fan-in scaling for the mlp.
inline ParamVector init_params(const ModelSpec& spec, RngStream rng) {
  ParamVector theta = ParamVector::Zero(spec.param_count());
  if (spec.kind != ModelKind::mlp) return theta;
  const auto dims = spec.layer_dims();
  double* p = theta.data();
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const double limit = spec.activation == Activation::relu
                             ? std::sqrt(6.0 / dims[l])
                             : std::sqrt(6.0 / (dims[l] + dims[l + 1]));
    for (int i = 0; i < dims[l] * dims[l + 1]; ++i)
      p[i] = (2.0 * rng.uniform() - 1.0) * limit;
    p += dims[l] * dims[l + 1] + dims[l + 1];  // biases stay zero
  }
  return theta;
}

// Fraction of correctly argmax-classified examples; NaN for regression.
inline double accuracy(const ModelSpec& spec, const ParamVector& theta, const Dataset& data) {
  if (!spec.classification()) return std::numeric_limits<double>::quiet_NaN();
  detail::require_dims(spec, theta, data.input_dim());
  const auto layers = detail::layer_views(spec, theta);
  Eigen::MatrixXd a = data.features;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Eigen::MatrixXd z = (a * layers[l].W).rowwise() + layers[l].b.transpose();
    if (l + 1 < layers.size()) {
      if (spec.activation == Activation::relu)
        z = z.cwiseMax(0.0);
      else
        z = z.array().tanh().matrix();
    }
    a = std::move(z);
  }
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Eigen::Index best;
    a.row(i).maxCoeff(&best);
    if (best == static_cast<Eigen::Index>(data.labels(i))) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(a.rows());
}

// Structured view of a flat parameter vector; unflatten/flatten round-trip
// is exact by construction.
struct LayerParams {
  Eigen::MatrixXd W;
  Eigen::VectorXd b;
};

inline std::vector<LayerParams> unflatten(const ModelSpec& spec, const ParamVector& theta) {
  if (theta.size() != spec.param_count())
    throw ConfigError("parameter vector length does not match model parameter count");
  std::vector<LayerParams> out;
  for (const auto& v : detail::layer_views(spec, theta)) out.push_back({v.W, v.b});
  return out;
}

inline ParamVector flatten(const ModelSpec& spec, const std::vector<LayerParams>& layers) {
  ParamVector theta(spec.param_count());
  double* p = theta.data();
  for (const auto& layer : layers) {
    std::copy(layer.W.data(), layer.W.data() + layer.W.size(), p);
    p += layer.W.size();
    std::copy(layer.b.data(), layer.b.data() + layer.b.size(), p);
    p += layer.b.size();
  }
  return theta;
}

}  // namespace fedelastic
