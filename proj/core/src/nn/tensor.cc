// Copyright 2026 The wavefprint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wavefprint/nn/tensor.h"

#include <cmath>
#include <unordered_set>

#include "wavefprint/errors.h"

namespace wavefprint::nn {

namespace {

thread_local bool g_grad_enabled = true;

void check_finite(std::span<const double> values, const char* op, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(Errc::numeric, std::string("non-finite ") + what + " in " + op);
    }
  }
}

}  // namespace

std::size_t numel(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string to_string(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

std::vector<double>& Node::grad_buffer() {
  if (grad.empty()) grad.assign(value.size(), 0.0);
  return grad;
}

Tensor Tensor::zeros(Shape shape, bool requires_grad) { return full(std::move(shape), 0.0, requires_grad); }

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  const std::size_t n = nn::numel(shape);
  return from(std::move(shape), std::vector<double>(n, value), requires_grad);
}

Tensor Tensor::from(Shape shape, std::vector<double> values, bool requires_grad) {
  if (nn::numel(shape) != values.size()) {
    throw Error(Errc::shape, "shape " + nn::to_string(shape) + " does not hold " +
                                 std::to_string(values.size()) + " values");
  }
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->value = std::move(values);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

double Tensor::item() const {
  if (numel() != 1) throw Error(Errc::shape, "item() on a tensor of shape " + nn::to_string(shape()));
  return node_->value[0];
}

Tensor Tensor::detach() const { return from(shape(), node_->value, false); }

void Tensor::backward() {
  if (numel() != 1) {
    throw Error(Errc::shape, "backward() needs a single-element tensor, got " + nn::to_string(shape()));
  }
  if (!node_->requires_grad) return;

  // Iterative post-order DFS gives a topological order. `owned` keeps every
  // visited node alive while parents are released during the sweep.
  std::vector<Node*> order;
  std::vector<std::shared_ptr<Node>> owned;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, std::size_t>> stack{{node_.get(), 0}};
  visited.insert(node_.get());
  while (!stack.empty()) {
    auto& [n, next] = stack.back();
    if (next < n->parents.size()) {
      const std::shared_ptr<Node>& p = n->parents[next++];
      if (p->requires_grad && visited.insert(p.get()).second) {
        owned.push_back(p);
        stack.emplace_back(p.get(), 0);
      }
    } else {
      order.push_back(n);
      stack.pop_back();
    }
  }

  node_->grad_buffer()[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->is_leaf) continue;
    if (n->backward && !n->grad.empty()) {
      n->backward(*n);
      for (const auto& p : n->parents) {
        if (p->requires_grad && !p->grad.empty()) check_finite(p->grad, n->op, "gradient");
      }
    }
    n->backward = nullptr;
    n->parents.clear();
    if (n != node_.get()) {
      n->grad.clear();
      n->grad.shrink_to_fit();
    }
  }
}

NoGradGuard::NoGradGuard() : previous_(g_grad_enabled) { g_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { g_grad_enabled = previous_; }

bool grad_enabled() { return g_grad_enabled; }

Tensor make_result(Shape shape, std::vector<double> value, std::vector<Tensor> parents,
                   std::function<void(Node&)> backward, const char* op) {
  check_finite(value, op, "value");
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->value = std::move(value);
  node->op = op;
  node->is_leaf = false;
  bool needs = false;
  for (const auto& p : parents) needs = needs || p.requires_grad();
  if (needs && g_grad_enabled) {
    node->requires_grad = true;
    for (auto& p : parents) node->parents.push_back(p.ptr());
    node->backward = std::move(backward);
  }
  return Tensor(std::move(node));
}

}  // namespace wavefprint::nn
