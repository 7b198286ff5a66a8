#pragma once

#include "sage/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sage {

// Reverse-mode autodiff over a dynamic tape of scalar primitives.
//
// One tape records one computation; building is eager (forward values are
// computed as nodes are appended), backward() runs a single reverse sweep
// visiting each node exactly once, and replay() recomputes every forward
// value in recorded order so callers can check bit-exact reproduction.
//
// Registered primitives: add, sub, mul (product), div (quotient), neg,
// sin, cos, tan, square, softplus, leaky-ReLU, fused affine (bias + Σ wᵢxᵢ)
// and fused sum. Anything else fails loudly at build time rather than
// producing a silent zero gradient.
class Tape {
 public:
  enum class Op : uint8_t {
    Const,
    Input,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Sin,
    Cos,
    Tan,
    Square,
    Softplus,
    LeakyRelu,
    Affine,  // val = val[b] + Σ val[args[2i]] * val[args[2i+1]]
    Sum      // val = Σ val[args[i]]
  };

  struct Node {
    Op op;
    int a = -1;
    int b = -1;
    int arg_begin = 0;
    int arg_count = 0;  // pairs for Affine, terms for Sum
    double aux = 0.0;   // constant value / leaky slope
  };

  int size() const { return static_cast<int>(nodes_.size()); }
  double val(int id) const { return vals_[static_cast<size_t>(id)]; }

  int input(double v) { return push({Op::Input}, v); }
  int constant(double v) { return push({Op::Const}, v); }

  int add(int x, int y) { return push2(Op::Add, x, y, vals_[sz(x)] + vals_[sz(y)]); }
  int sub(int x, int y) { return push2(Op::Sub, x, y, vals_[sz(x)] - vals_[sz(y)]); }
  int mul(int x, int y) { return push2(Op::Mul, x, y, vals_[sz(x)] * vals_[sz(y)]); }
  int div(int x, int y) { return push2(Op::Div, x, y, vals_[sz(x)] / vals_[sz(y)]); }
  int neg(int x) { return push1(Op::Neg, x, -vals_[sz(x)]); }
  int sin(int x) { return push1(Op::Sin, x, std::sin(vals_[sz(x)])); }
  int cos(int x) { return push1(Op::Cos, x, std::cos(vals_[sz(x)])); }
  int tan(int x) { return push1(Op::Tan, x, std::tan(vals_[sz(x)])); }
  int square(int x) { return push1(Op::Square, x, vals_[sz(x)] * vals_[sz(x)]); }
  int softplus(int x) { return push1(Op::Softplus, x, softplus_val(vals_[sz(x)])); }

  int leaky_relu(int x, double slope) {
    double t = vals_[sz(x)];
    Node n{Op::LeakyRelu};
    n.a = x;
    n.aux = slope;
    return push_node(n, t >= 0.0 ? t : slope * t);
  }

  // bias + Σ w[i]*x[i]; both weights and inputs are tape nodes.
  int affine(int bias, std::span<const int> w, std::span<const int> x) {
    if (w.size() != x.size()) throw ShapeError("Tape::affine: weight/input arity mismatch");
    Node n{Op::Affine};
    n.b = bias;
    n.arg_begin = static_cast<int>(args_.size());
    n.arg_count = static_cast<int>(w.size());
    double acc = vals_[sz(bias)];
    for (size_t i = 0; i < w.size(); ++i) {
      args_.push_back(w[i]);
      args_.push_back(x[i]);
      acc += vals_[sz(w[i])] * vals_[sz(x[i])];
    }
    return push_node(n, acc);
  }

  int sum(std::span<const int> terms) {
    Node n{Op::Sum};
    n.arg_begin = static_cast<int>(args_.size());
    n.arg_count = static_cast<int>(terms.size());
    double acc = 0.0;
    for (int t : terms) {
      args_.push_back(t);
      acc += vals_[sz(t)];
    }
    return push_node(n, acc);
  }

  // Recompute every node value in recorded order (bit-exact with the values
  // produced while building).
  void replay();

  // Adjoints of `output` w.r.t. every node; callers index by node id.
  // Throws NumericError if any adjoint is non-finite.
  std::vector<double> backward(int output) const;

  void reset() {
    nodes_.clear();
    vals_.clear();
    args_.clear();
  }

 private:
  static size_t sz(int id) { return static_cast<size_t>(id); }

  static double softplus_val(double t) {
    // stable: ln(1+e^t) = max(t,0) + log1p(e^-|t|)
    return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
  }

  int push(Node n, double v) { return push_node(n, v); }
  int push1(Op op, int x, double v) {
    Node n{op};
    n.a = x;
    return push_node(n, v);
  }
  int push2(Op op, int x, int y, double v) {
    Node n{op};
    n.a = x;
    n.b = y;
    return push_node(n, v);
  }
  int push_node(const Node& n, double v) {
    if (!std::isfinite(v))
      throw NumericError("Tape: non-finite value at node " + std::to_string(nodes_.size()));
    nodes_.push_back(n);
    vals_.push_back(v);
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<Node> nodes_;
  std::vector<double> vals_;
  std::vector<int> args_;
};

// Expression handle so numeric code reads like the double version.
struct Var {
  Tape* t = nullptr;
  int id = -1;
  double value() const { return t->val(id); }
};

inline Var make_var(Tape& t, double v) { return {&t, t.input(v)}; }
inline Var make_const(Tape& t, double v) { return {&t, t.constant(v)}; }

inline Var operator+(Var x, Var y) { return {x.t, x.t->add(x.id, y.id)}; }
inline Var operator-(Var x, Var y) { return {x.t, x.t->sub(x.id, y.id)}; }
inline Var operator*(Var x, Var y) { return {x.t, x.t->mul(x.id, y.id)}; }
inline Var operator/(Var x, Var y) { return {x.t, x.t->div(x.id, y.id)}; }
inline Var operator-(Var x) { return {x.t, x.t->neg(x.id)}; }

inline Var operator+(Var x, double c) { return x + make_const(*x.t, c); }
inline Var operator+(double c, Var x) { return x + c; }
inline Var operator-(Var x, double c) { return x - make_const(*x.t, c); }
inline Var operator-(double c, Var x) { return make_const(*x.t, c) - x; }
inline Var operator*(Var x, double c) { return x * make_const(*x.t, c); }
inline Var operator*(double c, Var x) { return x * c; }
inline Var operator/(Var x, double c) { return x / make_const(*x.t, c); }
inline Var operator/(double c, Var x) { return make_const(*x.t, c) / x; }

inline Var sin(Var x) { return {x.t, x.t->sin(x.id)}; }
inline Var cos(Var x) { return {x.t, x.t->cos(x.id)}; }
inline Var tan(Var x) { return {x.t, x.t->tan(x.id)}; }
inline Var square(Var x) { return {x.t, x.t->square(x.id)}; }
inline Var softplus(Var x) { return {x.t, x.t->softplus(x.id)}; }
inline Var leaky_relu(Var x, double slope) { return {x.t, x.t->leaky_relu(x.id, slope)}; }
inline Var recip(Var x) { return make_const(*x.t, 1.0) / x; }

}  // namespace sage
