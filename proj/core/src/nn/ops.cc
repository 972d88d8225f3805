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

#include "wavefprint/nn/ops.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "wavefprint/errors.h"

namespace wavefprint::nn {

namespace {

using v8d = double __attribute__((vector_size(64)));

constexpr std::size_t kMr = 4;        // output rows per micro-tile
constexpr std::size_t kNv = 3;        // vectors per micro-tile row
constexpr std::size_t kNr = kNv * 8;  // columns per micro-tile

std::size_t round_up(std::size_t n, std::size_t m) { return (n + m - 1) / m * m; }

inline v8d load(const double* p) {
  v8d v;
  std::memcpy(&v, p, sizeof v);
  return v;
}
inline void store(double* p, v8d v) { std::memcpy(p, &v, sizeof v); }

// C[m, :] = init[m] + sum_k A[m, k] * B[k, :], k ascending.
// A: mp x kd row-major with mp a multiple of kMr; B: kd x n with n a multiple
// of kNr; C: mp x n. init may be null (zero).
void gemm_nn(std::size_t mp, std::size_t n, std::size_t kd, const double* a, const double* b,
             const double* init, double* c) {
  for (std::size_t i0 = 0; i0 < mp; i0 += kMr) {
    for (std::size_t j0 = 0; j0 < n; j0 += kNr) {
      v8d acc[kMr][kNv];
      for (std::size_t r = 0; r < kMr; ++r) {
        const double s = init ? init[i0 + r] : 0.0;
        for (std::size_t v = 0; v < kNv; ++v) acc[r][v] = v8d{} + s;
      }
      const double* arow = a + i0 * kd;
      for (std::size_t k = 0; k < kd; ++k) {
        const double* brow = b + k * n + j0;
        v8d bv[kNv];
        for (std::size_t v = 0; v < kNv; ++v) bv[v] = load(brow + 8 * v);
        for (std::size_t r = 0; r < kMr; ++r) {
          const double w = arow[r * kd + k];
          for (std::size_t v = 0; v < kNv; ++v) acc[r][v] += w * bv[v];
        }
      }
      for (std::size_t r = 0; r < kMr; ++r) {
        for (std::size_t v = 0; v < kNv; ++v) store(c + (i0 + r) * n + j0 + 8 * v, acc[r][v]);
      }
    }
  }
}

// C[m, j] += sum_p A[m, p] * B[j, p]. A: mp x p, B: np x p, both multiples of
// 4 rows; p a multiple of 8.
void gemm_nt_acc(std::size_t mp, std::size_t np, std::size_t p, const double* a, const double* b,
                 double* c, std::size_t ldc, std::size_t m_valid, std::size_t n_valid) {
  for (std::size_t i0 = 0; i0 < mp; i0 += 4) {
    for (std::size_t j0 = 0; j0 < np; j0 += 4) {
      v8d acc[4][4] = {};
      for (std::size_t q = 0; q < p; q += 8) {
        v8d av[4], bv[4];
        for (std::size_t r = 0; r < 4; ++r) av[r] = load(a + (i0 + r) * p + q);
        for (std::size_t s = 0; s < 4; ++s) bv[s] = load(b + (j0 + s) * p + q);
        for (std::size_t r = 0; r < 4; ++r) {
          for (std::size_t s = 0; s < 4; ++s) acc[r][s] += av[r] * bv[s];
        }
      }
      for (std::size_t r = 0; r < 4 && i0 + r < m_valid; ++r) {
        for (std::size_t s = 0; s < 4 && j0 + s < n_valid; ++s) {
          double t = 0;
          for (int l = 0; l < 8; ++l) t += acc[r][s][l];
          c[(i0 + r) * ldc + j0 + s] += t;
        }
      }
    }
  }
}

struct ConvGeom {
  std::size_t batch, cin, h, w, cout, kh, kw, ho, wo;
  int stride, pad, dil;
  std::size_t k() const { return cin * kh * kw; }
  std::size_t p() const { return ho * wo; }
};

// cols[(ci*kh + i)*kw + j][oh*wo + ow], rows padded to ld columns with zeros.
void im2col(const ConvGeom& g, const double* x, double* cols, std::size_t ld) {
  for (std::size_t ci = 0; ci < g.cin; ++ci) {
    const double* plane = x + ci * g.h * g.w;
    for (std::size_t i = 0; i < g.kh; ++i) {
      for (std::size_t j = 0; j < g.kw; ++j) {
        double* row = cols + ((ci * g.kh + i) * g.kw + j) * ld;
        std::size_t q = 0;
        for (std::size_t oh = 0; oh < g.ho; ++oh) {
          const long ih = static_cast<long>(oh) * g.stride - g.pad + static_cast<long>(i) * g.dil;
          const bool row_ok = ih >= 0 && ih < static_cast<long>(g.h);
          for (std::size_t ow = 0; ow < g.wo; ++ow, ++q) {
            const long iw = static_cast<long>(ow) * g.stride - g.pad + static_cast<long>(j) * g.dil;
            row[q] = (row_ok && iw >= 0 && iw < static_cast<long>(g.w))
                         ? plane[static_cast<std::size_t>(ih) * g.w + static_cast<std::size_t>(iw)]
                         : 0.0;
          }
        }
        std::fill(row + q, row + ld, 0.0);
      }
    }
  }
}

void col2im_add(const ConvGeom& g, const double* cols, std::size_t ld, double* dx) {
  for (std::size_t ci = 0; ci < g.cin; ++ci) {
    double* plane = dx + ci * g.h * g.w;
    for (std::size_t i = 0; i < g.kh; ++i) {
      for (std::size_t j = 0; j < g.kw; ++j) {
        const double* row = cols + ((ci * g.kh + i) * g.kw + j) * ld;
        std::size_t q = 0;
        for (std::size_t oh = 0; oh < g.ho; ++oh) {
          const long ih = static_cast<long>(oh) * g.stride - g.pad + static_cast<long>(i) * g.dil;
          if (ih < 0 || ih >= static_cast<long>(g.h)) {
            q += g.wo;
            continue;
          }
          for (std::size_t ow = 0; ow < g.wo; ++ow, ++q) {
            const long iw = static_cast<long>(ow) * g.stride - g.pad + static_cast<long>(j) * g.dil;
            if (iw >= 0 && iw < static_cast<long>(g.w)) {
              plane[static_cast<std::size_t>(ih) * g.w + static_cast<std::size_t>(iw)] += row[q];
            }
          }
        }
      }
    }
  }
}

void require_rank(const Tensor& t, std::size_t rank, const char* op) {
  if (t.rank() != rank) {
    throw Error(Errc::shape, std::string(op) + " expects rank " + std::to_string(rank) +
                                 ", got " + to_string(t.shape()));
  }
}

}  // namespace

long conv_out_size(long in, int kernel, const Conv2dOptions& o) {
  if (o.stride < 1 || o.dilation < 1 || o.padding < 0) return 0;
  const long span = static_cast<long>(o.dilation) * (kernel - 1) + 1;
  const long padded = in + 2L * o.padding;
  if (padded < span) return 0;
  return (padded - span) / o.stride + 1;
}

Tensor conv2d(const Tensor& x, const Tensor& weight, const Tensor& bias, const Conv2dOptions& o) {
  require_rank(x, 4, "conv2d");
  require_rank(weight, 4, "conv2d weight");
  if (weight.dim(1) != x.dim(1) || bias.numel() != weight.dim(0)) {
    throw Error(Errc::shape, "conv2d input " + to_string(x.shape()) + " vs weight " +
                                 to_string(weight.shape()) + " / bias " + to_string(bias.shape()));
  }
  ConvGeom g{x.dim(0), x.dim(1), x.dim(2), x.dim(3), weight.dim(0), weight.dim(2), weight.dim(3),
             0, 0, o.stride, o.padding, o.dilation};
  const long ho = conv_out_size(static_cast<long>(g.h), static_cast<int>(g.kh), o);
  const long wo = conv_out_size(static_cast<long>(g.w), static_cast<int>(g.kw), o);
  if (ho < 1 || wo < 1) {
    throw Error(Errc::shape, "conv2d output collapses for input " + to_string(x.shape()) +
                                 " and weight " + to_string(weight.shape()));
  }
  g.ho = static_cast<std::size_t>(ho);
  g.wo = static_cast<std::size_t>(wo);

  const std::size_t kd = g.k(), p = g.p(), ld = round_up(p, kNr), mp = round_up(g.cout, kMr);
  std::vector<double> wpad(mp * kd, 0.0), bpad(mp, 0.0);
  std::copy(weight.data().begin(), weight.data().end(), wpad.begin());
  std::copy(bias.data().begin(), bias.data().end(), bpad.begin());

  std::vector<double> out(g.batch * g.cout * p);
  std::vector<double> cols(kd * ld), cbuf(mp * ld);
  const double* xd = x.data().data();
  for (std::size_t n = 0; n < g.batch; ++n) {
    im2col(g, xd + n * g.cin * g.h * g.w, cols.data(), ld);
    gemm_nn(mp, ld, kd, wpad.data(), cols.data(), bpad.data(), cbuf.data());
    for (std::size_t co = 0; co < g.cout; ++co) {
      std::copy_n(cbuf.data() + co * ld, p, out.data() + (n * g.cout + co) * p);
    }
  }

  auto backward = [g, kd, p, ld, mp](Node& self) {
    Node& xn = *self.parents[0];
    Node& wn = *self.parents[1];
    Node& bn = *self.parents[2];
    const double* gy = self.grad.data();
    const std::size_t kp = round_up(kd, 4);
    std::vector<double> cols(kp * ld, 0.0), gpad(mp * ld, 0.0);
    std::vector<double> dw(kd * g.cout, 0.0);
    std::vector<double> wt, dcols;
    if (xn.requires_grad) {
      // W^T padded to kp rows for the dcols product.
      wt.assign(kp * mp, 0.0);
      for (std::size_t co = 0; co < g.cout; ++co) {
        for (std::size_t k = 0; k < kd; ++k) wt[k * mp + co] = wn.value[co * kd + k];
      }
      dcols.resize(kp * ld);
    }
    for (std::size_t n = 0; n < g.batch; ++n) {
      for (std::size_t co = 0; co < g.cout; ++co) {
        std::copy_n(gy + (n * g.cout + co) * p, p, gpad.data() + co * ld);
      }
      if (bn.requires_grad) {
        auto& db = bn.grad_buffer();
        for (std::size_t co = 0; co < g.cout; ++co) {
          double s = 0;
          for (std::size_t q = 0; q < p; ++q) s += gpad[co * ld + q];
          db[co] += s;
        }
      }
      if (wn.requires_grad) {
        im2col(g, xn.value.data() + n * g.cin * g.h * g.w, cols.data(), ld);
        gemm_nt_acc(mp, kp, ld, gpad.data(), cols.data(), dw.data(), kd, g.cout, kd);
      }
      if (xn.requires_grad) {
        gemm_nn(kp, ld, mp, wt.data(), gpad.data(), nullptr, dcols.data());
        col2im_add(g, dcols.data(), ld, xn.grad_buffer().data() + n * g.cin * g.h * g.w);
      }
    }
    if (wn.requires_grad) {
      auto& gw = wn.grad_buffer();
      for (std::size_t i = 0; i < dw.size(); ++i) gw[i] += dw[i];
    }
  };
  return make_result({g.batch, g.cout, g.ho, g.wo}, std::move(out), {x, weight, bias}, backward,
                     "conv2d");
}

Tensor batch_norm2d(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                    std::vector<double>& running_mean, std::vector<double>& running_var,
                    bool training, double momentum, double eps) {
  require_rank(x, 4, "batch_norm2d");
  const std::size_t b = x.dim(0), c = x.dim(1), hw = x.dim(2) * x.dim(3);
  if (gamma.numel() != c || beta.numel() != c || running_mean.size() != c || running_var.size() != c) {
    throw Error(Errc::shape, "batch_norm2d parameters do not match " + std::to_string(c) + " channels");
  }
  if (training && b < 2) {
    throw Error(Errc::degenerate_batch, "batch norm in training mode needs at least 2 samples, got " +
                                            std::to_string(b));
  }
  const double* xd = x.data().data();
  const double count = static_cast<double>(b * hw);
  std::vector<double> mean(c), invstd(c);
  if (training) {
    for (std::size_t ch = 0; ch < c; ++ch) {
      double s = 0;
      for (std::size_t n = 0; n < b; ++n) {
        const double* v = xd + (n * c + ch) * hw;
        for (std::size_t i = 0; i < hw; ++i) s += v[i];
      }
      const double m = s / count;
      double ss = 0;
      for (std::size_t n = 0; n < b; ++n) {
        const double* v = xd + (n * c + ch) * hw;
        for (std::size_t i = 0; i < hw; ++i) ss += (v[i] - m) * (v[i] - m);
      }
      const double var = ss / count;
      mean[ch] = m;
      invstd[ch] = 1.0 / std::sqrt(var + eps);
      running_mean[ch] = (1 - momentum) * running_mean[ch] + momentum * m;
      running_var[ch] = (1 - momentum) * running_var[ch] + momentum * (ss / (count - 1));
    }
  } else {
    for (std::size_t ch = 0; ch < c; ++ch) {
      mean[ch] = running_mean[ch];
      invstd[ch] = 1.0 / std::sqrt(running_var[ch] + eps);
    }
  }
  std::vector<double> out(x.numel());
  const double* gm = gamma.data().data();
  const double* bt = beta.data().data();
  for (std::size_t n = 0; n < b; ++n) {
    for (std::size_t ch = 0; ch < c; ++ch) {
      const double* v = xd + (n * c + ch) * hw;
      double* o = out.data() + (n * c + ch) * hw;
      for (std::size_t i = 0; i < hw; ++i) o[i] = (v[i] - mean[ch]) * invstd[ch] * gm[ch] + bt[ch];
    }
  }
  auto backward = [b, c, hw, count, training, mean = std::move(mean),
                   invstd = std::move(invstd)](Node& self) {
    Node& xn = *self.parents[0];
    Node& gn = *self.parents[1];
    Node& bn = *self.parents[2];
    const double* gy = self.grad.data();
    const double* xv = xn.value.data();
    for (std::size_t ch = 0; ch < c; ++ch) {
      double sg = 0, sgx = 0;
      for (std::size_t n = 0; n < b; ++n) {
        const double* g = gy + (n * c + ch) * hw;
        const double* v = xv + (n * c + ch) * hw;
        for (std::size_t i = 0; i < hw; ++i) {
          sg += g[i];
          sgx += g[i] * (v[i] - mean[ch]) * invstd[ch];
        }
      }
      if (gn.requires_grad) gn.grad_buffer()[ch] += sgx;
      if (bn.requires_grad) bn.grad_buffer()[ch] += sg;
      if (!xn.requires_grad) continue;
      const double gam = gn.value[ch];
      auto& dx = xn.grad_buffer();
      for (std::size_t n = 0; n < b; ++n) {
        const double* g = gy + (n * c + ch) * hw;
        const double* v = xv + (n * c + ch) * hw;
        double* d = dx.data() + (n * c + ch) * hw;
        if (training) {
          for (std::size_t i = 0; i < hw; ++i) {
            const double xhat = (v[i] - mean[ch]) * invstd[ch];
            d[i] += gam * invstd[ch] * (g[i] - sg / count - xhat * sgx / count);
          }
        } else {
          for (std::size_t i = 0; i < hw; ++i) d[i] += gam * invstd[ch] * g[i];
        }
      }
    }
  };
  return make_result(x.shape(), std::move(out), {x, gamma, beta}, backward, "batch_norm2d");
}

Tensor prelu(const Tensor& x, const Tensor& a) {
  if (a.numel() != 1) throw Error(Errc::shape, "prelu slope must have one element");
  const double slope = a.data()[0];
  std::vector<double> out(x.numel());
  const double* xd = x.data().data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = xd[i] > 0 ? xd[i] : slope * xd[i];
  auto backward = [](Node& self) {
    Node& xn = *self.parents[0];
    Node& an = *self.parents[1];
    const double s = an.value[0];
    const double* g = self.grad.data();
    const double* v = xn.value.data();
    const std::size_t n = self.grad.size();
    if (xn.requires_grad) {
      auto& dx = xn.grad_buffer();
      for (std::size_t i = 0; i < n; ++i) dx[i] += v[i] > 0 ? g[i] : s * g[i];
    }
    if (an.requires_grad) {
      double da = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(v[i] > 0)) da += v[i] * g[i];
      }
      an.grad_buffer()[0] += da;
    }
  };
  return make_result(x.shape(), std::move(out), {x, a}, backward, "prelu");
}

Tensor max_pool2d(const Tensor& x, int kernel, int stride) {
  require_rank(x, 4, "max_pool2d");
  if (kernel < 1 || stride < 1) throw Error(Errc::invalid_config, "pool kernel and stride must be positive");
  const std::size_t b = x.dim(0), c = x.dim(1), h = x.dim(2), w = x.dim(3);
  const auto k = static_cast<std::size_t>(kernel), s = static_cast<std::size_t>(stride);
  if (h < k || w < k) throw Error(Errc::shape, "max_pool2d window exceeds input " + to_string(x.shape()));
  const std::size_t ho = (h - k) / s + 1, wo = (w - k) / s + 1;
  std::vector<double> out(b * c * ho * wo);
  std::vector<std::size_t> arg(out.size());
  const double* xd = x.data().data();
  for (std::size_t plane = 0; plane < b * c; ++plane) {
    const double* in = xd + plane * h * w;
    for (std::size_t oh = 0; oh < ho; ++oh) {
      for (std::size_t ow = 0; ow < wo; ++ow) {
        std::size_t best = (oh * s) * w + ow * s;
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            const std::size_t idx = (oh * s + i) * w + ow * s + j;
            if (in[idx] > in[best]) best = idx;
          }
        }
        const std::size_t o = (plane * ho + oh) * wo + ow;
        out[o] = in[best];
        arg[o] = plane * h * w + best;
      }
    }
  }
  auto backward = [arg = std::move(arg)](Node& self) {
    auto& dx = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < arg.size(); ++i) dx[arg[i]] += self.grad[i];
  };
  return make_result({b, c, ho, wo}, std::move(out), {x}, backward, "max_pool2d");
}

Tensor dropout(const Tensor& x, double p, bool training, Rng& rng) {
  if (!(p >= 0 && p < 1)) throw Error(Errc::invalid_config, "dropout probability must be in [0, 1)");
  if (!training || p == 0) return x;
  const double scale = 1.0 / (1.0 - p);
  std::vector<double> mask(x.numel());
  for (double& m : mask) m = rng.uniform() < p ? 0.0 : scale;
  std::vector<double> out(x.numel());
  const double* xd = x.data().data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = xd[i] * mask[i];
  auto backward = [mask = std::move(mask)](Node& self) {
    auto& dx = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < mask.size(); ++i) dx[i] += self.grad[i] * mask[i];
  };
  return make_result(x.shape(), std::move(out), {x}, backward, "dropout");
}

Tensor linear(const Tensor& x, const Tensor& weight, const Tensor& bias) {
  require_rank(x, 2, "linear");
  require_rank(weight, 2, "linear weight");
  const std::size_t b = x.dim(0), in = x.dim(1), outf = weight.dim(0);
  if (weight.dim(1) != in || bias.numel() != outf) {
    throw Error(Errc::shape, "linear input " + to_string(x.shape()) + " vs weight " +
                                 to_string(weight.shape()));
  }
  std::vector<double> out(b * outf);
  const double* xd = x.data().data();
  const double* wd = weight.data().data();
  for (std::size_t n = 0; n < b; ++n) {
    for (std::size_t o = 0; o < outf; ++o) {
      double s = bias.data()[o];
      const double* xr = xd + n * in;
      const double* wr = wd + o * in;
      for (std::size_t i = 0; i < in; ++i) s += xr[i] * wr[i];
      out[n * outf + o] = s;
    }
  }
  auto backward = [b, in, outf](Node& self) {
    Node& xn = *self.parents[0];
    Node& wn = *self.parents[1];
    Node& bn = *self.parents[2];
    const double* g = self.grad.data();
    if (xn.requires_grad) {
      auto& dx = xn.grad_buffer();
      for (std::size_t n = 0; n < b; ++n) {
        for (std::size_t o = 0; o < outf; ++o) {
          const double go = g[n * outf + o];
          const double* wr = wn.value.data() + o * in;
          double* d = dx.data() + n * in;
          for (std::size_t i = 0; i < in; ++i) d[i] += go * wr[i];
        }
      }
    }
    if (wn.requires_grad) {
      auto& dw = wn.grad_buffer();
      for (std::size_t n = 0; n < b; ++n) {
        for (std::size_t o = 0; o < outf; ++o) {
          const double go = g[n * outf + o];
          const double* xr = xn.value.data() + n * in;
          double* d = dw.data() + o * in;
          for (std::size_t i = 0; i < in; ++i) d[i] += go * xr[i];
        }
      }
    }
    if (bn.requires_grad) {
      auto& db = bn.grad_buffer();
      for (std::size_t n = 0; n < b; ++n) {
        for (std::size_t o = 0; o < outf; ++o) db[o] += g[n * outf + o];
      }
    }
  };
  return make_result({b, outf}, std::move(out), {x, weight, bias}, backward, "linear");
}

Tensor permute_1_2(const Tensor& x) {
  require_rank(x, 4, "permute_1_2");
  const std::size_t b = x.dim(0), c = x.dim(1), f = x.dim(2), t = x.dim(3);
  std::vector<double> out(x.numel());
  const double* xd = x.data().data();
  for (std::size_t n = 0; n < b; ++n) {
    for (std::size_t ci = 0; ci < c; ++ci) {
      for (std::size_t fi = 0; fi < f; ++fi) {
        std::copy_n(xd + ((n * c + ci) * f + fi) * t, t, out.data() + ((n * f + fi) * c + ci) * t);
      }
    }
  }
  auto backward = [b, c, f, t](Node& self) {
    auto& dx = self.parents[0]->grad_buffer();
    for (std::size_t n = 0; n < b; ++n) {
      for (std::size_t ci = 0; ci < c; ++ci) {
        for (std::size_t fi = 0; fi < f; ++fi) {
          const double* g = self.grad.data() + ((n * f + fi) * c + ci) * t;
          double* d = dx.data() + ((n * c + ci) * f + fi) * t;
          for (std::size_t i = 0; i < t; ++i) d[i] += g[i];
        }
      }
    }
  };
  return make_result({b, f, c, t}, std::move(out), {x}, backward, "permute_1_2");
}

Tensor flatten(const Tensor& x) {
  if (x.rank() < 1) throw Error(Errc::shape, "flatten needs a batch dimension");
  const std::size_t b = x.dim(0);
  const std::size_t rest = b ? x.numel() / b : 0;
  auto backward = [](Node& self) {
    auto& dx = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += self.grad[i];
  };
  return make_result({b, rest}, std::vector<double>(x.data().begin(), x.data().end()), {x}, backward,
                     "flatten");
}

Tensor softmax_cross_entropy(const Tensor& logits, std::span<const int> labels) {
  require_rank(logits, 2, "softmax_cross_entropy");
  const std::size_t b = logits.dim(0), k = logits.dim(1);
  if (labels.size() != b) throw Error(Errc::shape, "label count does not match batch");
  if (b == 0) throw Error(Errc::empty_data, "cross entropy over an empty batch");
  std::vector<double> prob = softmax_rows(logits);
  double loss = 0;
  const double* z = logits.data().data();
  for (std::size_t n = 0; n < b; ++n) {
    const int y = labels[n];
    if (y < 0 || static_cast<std::size_t>(y) >= k) {
      throw Error(Errc::invalid_config, "label " + std::to_string(y) + " out of range");
    }
    const double* row = z + n * k;
    const double m = *std::max_element(row, row + k);
    double s = 0;
    for (std::size_t j = 0; j < k; ++j) s += std::exp(row[j] - m);
    loss += -(row[y] - m - std::log(s));
  }
  loss /= static_cast<double>(b);
  std::vector<int> ys(labels.begin(), labels.end());
  auto backward = [b, k, prob = std::move(prob), ys = std::move(ys)](Node& self) {
    auto& dz = self.parents[0]->grad_buffer();
    const double g = self.grad[0] / static_cast<double>(b);
    for (std::size_t n = 0; n < b; ++n) {
      for (std::size_t j = 0; j < k; ++j) {
        const double onehot = static_cast<int>(j) == ys[n] ? 1.0 : 0.0;
        dz[n * k + j] += g * (prob[n * k + j] - onehot);
      }
    }
  };
  return make_result({1}, {loss}, {logits}, backward, "softmax_cross_entropy");
}

Tensor select_sum(const Tensor& logits, std::size_t column) {
  require_rank(logits, 2, "select_sum");
  const std::size_t b = logits.dim(0), k = logits.dim(1);
  if (column >= k) throw Error(Errc::shape, "column out of range");
  double s = 0;
  for (std::size_t n = 0; n < b; ++n) s += logits.data()[n * k + column];
  auto backward = [b, k, column](Node& self) {
    auto& dz = self.parents[0]->grad_buffer();
    for (std::size_t n = 0; n < b; ++n) dz[n * k + column] += self.grad[0];
  };
  return make_result({1}, {s}, {logits}, backward, "select_sum");
}

Tensor weighted_sum(const Tensor& x, std::span<const double> w) {
  if (w.size() != x.numel()) throw Error(Errc::shape, "weighted_sum weight size mismatch");
  double s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += x.data()[i] * w[i];
  std::vector<double> wc(w.begin(), w.end());
  auto backward = [wc = std::move(wc)](Node& self) {
    auto& dx = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < wc.size(); ++i) dx[i] += self.grad[0] * wc[i];
  };
  return make_result({1}, {s}, {x}, backward, "weighted_sum");
}

std::vector<double> softmax_rows(const Tensor& logits) {
  require_rank(logits, 2, "softmax");
  const std::size_t b = logits.dim(0), k = logits.dim(1);
  std::vector<double> p(b * k);
  for (std::size_t n = 0; n < b; ++n) {
    const double* row = logits.data().data() + n * k;
    const double m = *std::max_element(row, row + k);
    double s = 0;
    for (std::size_t j = 0; j < k; ++j) s += (p[n * k + j] = std::exp(row[j] - m));
    for (std::size_t j = 0; j < k; ++j) p[n * k + j] /= s;
  }
  return p;
}

}  // namespace wavefprint::nn
