// SPDX-License-Identifier: Apache-2.0
#include <atomic>

#include "kernels_inner.hpp"

namespace asd::kernels {

namespace {
std::atomic<bool> g_parallel{true};
}

void set_parallel(bool enabled) { g_parallel.store(enabled); }
bool parallel_enabled() { return g_parallel.load(); }

namespace par {

using namespace asd::kernels::inner;

void conv2d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv2dDims& d) {
  const int hout = d.hout(), wout = d.wout();
#pragma omp parallel for collapse(2) schedule(static)
  for (int co = 0; co < d.cout; ++co)
    for (int oh = 0; oh < hout; ++oh)
      for (int ow = 0; ow < wout; ++ow)
        out[(static_cast<long>(co) * hout + oh) * wout + ow] = conv2d_out_at(in, w, b, d, co, oh, ow);
}

void conv2d_backward_input(const double* gout, const double* w, double* gin, const Conv2dDims& d) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int ci = 0; ci < d.cin; ++ci)
    for (int ih = 0; ih < d.hin; ++ih)
      for (int iw = 0; iw < d.win; ++iw)
        gin[(static_cast<long>(ci) * d.hin + ih) * d.win + iw] += conv2d_gin_at(gout, w, d, ci, ih, iw);
}

void conv2d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv2dDims& d) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int co = 0; co < d.cout; ++co)
    for (int ci = 0; ci < d.cin; ++ci)
      for (int kh = 0; kh < d.kh; ++kh)
        for (int kw = 0; kw < d.kw; ++kw)
          gw[((static_cast<long>(co) * d.cin + ci) * d.kh + kh) * d.kw + kw] +=
              conv2d_gw_at(gout, in, d, co, ci, kh, kw);
  const int hw = d.hout() * d.wout();
  for (int co = 0; co < d.cout; ++co) {
    double acc = 0.0;
    const double* goc = gout + static_cast<long>(co) * hw;
    for (int i = 0; i < hw; ++i) acc += goc[i];
    gb[co] += acc;
  }
}

void conv1d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv1dDims& d) {
  const int tout = d.tout();
#pragma omp parallel for schedule(static)
  for (int co = 0; co < d.cout; ++co)
    for (int t = 0; t < tout; ++t)
      out[static_cast<long>(co) * tout + t] = conv1d_out_at(in, w, b, d, co, t);
}

void conv1d_backward_input(const double* gout, const double* w, double* gin, const Conv1dDims& d) {
#pragma omp parallel for schedule(static)
  for (int ci = 0; ci < d.cin; ++ci)
    for (int ti = 0; ti < d.tin; ++ti)
      gin[static_cast<long>(ci) * d.tin + ti] += conv1d_gin_at(gout, w, d, ci, ti);
}

void conv1d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv1dDims& d) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int co = 0; co < d.cout; ++co)
    for (int ci = 0; ci < d.cin; ++ci)
      for (int j = 0; j < d.k; ++j)
        gw[(static_cast<long>(co) * d.cin + ci) * d.k + j] += conv1d_gw_at(gout, in, d, co, ci, j);
  const int tout = d.tout();
  for (int co = 0; co < d.cout; ++co) {
    double acc = 0.0;
    for (int t = 0; t < tout; ++t) acc += gout[static_cast<long>(co) * tout + t];
    gb[co] += acc;
  }
}

void fc_forward(const double* in, const double* w, const double* b, double* out, int din,
                int dout) {
#pragma omp parallel for schedule(static)
  for (int j = 0; j < dout; ++j) out[j] = fc_out_at(in, w, b, din, j);
}

void fc_backward_input(const double* gout, const double* w, double* gin, int din, int dout) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < din; ++i) gin[i] += fc_gin_at(gout, w, din, dout, i);
}

void fc_backward_params(const double* gout, const double* in, double* gw, double* gb, int din,
                        int dout) {
#pragma omp parallel for schedule(static)
  for (int j = 0; j < dout; ++j) {
    double g = gout[j];
    double* wr = gw + static_cast<long>(j) * din;
    for (int i = 0; i < din; ++i) wr[i] += g * in[i];
    gb[j] += g;
  }
}

}  // namespace par

// Dispatchers. FC layers in this model are tiny, so they always take the
// serial path; the convolutions are where the time goes.
void conv2d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv2dDims& d) {
  if (parallel_enabled())
    par::conv2d_forward(in, w, b, out, d);
  else
    serial::conv2d_forward(in, w, b, out, d);
}
void conv2d_backward_input(const double* gout, const double* w, double* gin, const Conv2dDims& d) {
  if (parallel_enabled())
    par::conv2d_backward_input(gout, w, gin, d);
  else
    serial::conv2d_backward_input(gout, w, gin, d);
}
void conv2d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv2dDims& d) {
  if (parallel_enabled())
    par::conv2d_backward_params(gout, in, gw, gb, d);
  else
    serial::conv2d_backward_params(gout, in, gw, gb, d);
}
void conv1d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv1dDims& d) {
  if (parallel_enabled() && static_cast<long>(d.cout) * d.tout() * d.cin >= 1 << 14)
    par::conv1d_forward(in, w, b, out, d);
  else
    serial::conv1d_forward(in, w, b, out, d);
}
void conv1d_backward_input(const double* gout, const double* w, double* gin, const Conv1dDims& d) {
  if (parallel_enabled() && static_cast<long>(d.cin) * d.tin * d.cout >= 1 << 14)
    par::conv1d_backward_input(gout, w, gin, d);
  else
    serial::conv1d_backward_input(gout, w, gin, d);
}
void conv1d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv1dDims& d) {
  if (parallel_enabled() && static_cast<long>(d.cout) * d.cin * d.k * d.tout() >= 1 << 14)
    par::conv1d_backward_params(gout, in, gw, gb, d);
  else
    serial::conv1d_backward_params(gout, in, gw, gb, d);
}
void fc_forward(const double* in, const double* w, const double* b, double* out, int din,
                int dout) {
  serial::fc_forward(in, w, b, out, din, dout);
}
void fc_backward_input(const double* gout, const double* w, double* gin, int din, int dout) {
  serial::fc_backward_input(gout, w, gin, din, dout);
}
void fc_backward_params(const double* gout, const double* in, double* gw, double* gb, int din,
                        int dout) {
  serial::fc_backward_params(gout, in, gw, gb, din, dout);
}

}  // namespace asd::kernels
