#include "sage/tape.hpp"

namespace sage {

void Tape::replay() {
  const size_t n = nodes_.size();
  for (size_t i = 0; i < n; ++i) {
    const Node& nd = nodes_[i];
    double v;
    switch (nd.op) {
      case Op::Const:
      case Op::Input:
        v = vals_[i];
        break;
      case Op::Add:
        v = vals_[sz(nd.a)] + vals_[sz(nd.b)];
        break;
      case Op::Sub:
        v = vals_[sz(nd.a)] - vals_[sz(nd.b)];
        break;
      case Op::Mul:
        v = vals_[sz(nd.a)] * vals_[sz(nd.b)];
        break;
      case Op::Div:
        v = vals_[sz(nd.a)] / vals_[sz(nd.b)];
        break;
      case Op::Neg:
        v = -vals_[sz(nd.a)];
        break;
      case Op::Sin:
        v = std::sin(vals_[sz(nd.a)]);
        break;
      case Op::Cos:
        v = std::cos(vals_[sz(nd.a)]);
        break;
      case Op::Tan:
        v = std::tan(vals_[sz(nd.a)]);
        break;
      case Op::Square:
        v = vals_[sz(nd.a)] * vals_[sz(nd.a)];
        break;
      case Op::Softplus:
        v = softplus_val(vals_[sz(nd.a)]);
        break;
      case Op::LeakyRelu: {
        double t = vals_[sz(nd.a)];
        v = t >= 0.0 ? t : nd.aux * t;
        break;
      }
      case Op::Affine: {
        double acc = vals_[sz(nd.b)];
        for (int k = 0; k < nd.arg_count; ++k) {
          int wi = args_[sz(nd.arg_begin + 2 * k)];
          int xi = args_[sz(nd.arg_begin + 2 * k + 1)];
          acc += vals_[sz(wi)] * vals_[sz(xi)];
        }
        v = acc;
        break;
      }
      case Op::Sum: {
        double acc = 0.0;
        for (int k = 0; k < nd.arg_count; ++k) acc += vals_[sz(args_[sz(nd.arg_begin + k)])];
        v = acc;
        break;
      }
      default:
        throw NumericError("Tape::replay: unregistered primitive");
    }
    vals_[i] = v;
  }
}

std::vector<double> Tape::backward(int output) const {
  std::vector<double> bar(nodes_.size(), 0.0);
  if (output < 0 || output >= size()) throw ConfigError("Tape::backward: bad output id");
  bar[sz(output)] = 1.0;
  for (int i = output; i >= 0; --i) {
    double g = bar[sz(i)];
    if (g == 0.0) continue;
    const Node& nd = nodes_[sz(i)];
    switch (nd.op) {
      case Op::Const:
      case Op::Input:
        break;
      case Op::Add:
        bar[sz(nd.a)] += g;
        bar[sz(nd.b)] += g;
        break;
      case Op::Sub:
        bar[sz(nd.a)] += g;
        bar[sz(nd.b)] -= g;
        break;
      case Op::Mul:
        bar[sz(nd.a)] += g * vals_[sz(nd.b)];
        bar[sz(nd.b)] += g * vals_[sz(nd.a)];
        break;
      case Op::Div: {
        double denom = vals_[sz(nd.b)];
        bar[sz(nd.a)] += g / denom;
        bar[sz(nd.b)] -= g * vals_[sz(nd.a)] / (denom * denom);
        break;
      }
      case Op::Neg:
        bar[sz(nd.a)] -= g;
        break;
      case Op::Sin:
        bar[sz(nd.a)] += g * std::cos(vals_[sz(nd.a)]);
        break;
      case Op::Cos:
        bar[sz(nd.a)] -= g * std::sin(vals_[sz(nd.a)]);
        break;
      case Op::Tan: {
        double y = vals_[sz(i)];
        bar[sz(nd.a)] += g * (1.0 + y * y);
        break;
      }
      case Op::Square:
        bar[sz(nd.a)] += g * 2.0 * vals_[sz(nd.a)];
        break;
      case Op::Softplus: {
        double t = vals_[sz(nd.a)];
        bar[sz(nd.a)] += g / (1.0 + std::exp(-t));
        break;
      }
      case Op::LeakyRelu:
        bar[sz(nd.a)] += g * (vals_[sz(nd.a)] >= 0.0 ? 1.0 : nd.aux);
        break;
      case Op::Affine: {
        bar[sz(nd.b)] += g;
        for (int k = 0; k < nd.arg_count; ++k) {
          int wi = args_[sz(nd.arg_begin + 2 * k)];
          int xi = args_[sz(nd.arg_begin + 2 * k + 1)];
          bar[sz(wi)] += g * vals_[sz(xi)];
          bar[sz(xi)] += g * vals_[sz(wi)];
        }
        break;
      }
      case Op::Sum:
        for (int k = 0; k < nd.arg_count; ++k) bar[sz(args_[sz(nd.arg_begin + k)])] += g;
        break;
      default:
        throw NumericError("Tape::backward: unregistered primitive");
    }
  }
  for (double b : bar)
    if (!std::isfinite(b)) throw NumericError("Tape::backward: non-finite adjoint");
  return bar;
}

}  // namespace sage
