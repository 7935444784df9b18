// SPDX-License-Identifier: Apache-2.0
// Per-output-element accumulation routines shared by the serial and OpenMP
// kernels. Keeping the loop order in one place is what makes the two paths
// bit-identical.
#pragma once

#include "asd/kernels.hpp"

namespace asd::kernels::inner {

inline double conv2d_out_at(const double* in, const double* w, const double* b,
                            const Conv2dDims& d, int co, int oh, int ow) {
  double acc = b ? b[co] : 0.0;
  const int ih0 = oh * d.stride - d.pad;
  const int iw0 = ow * d.stride - d.pad;
  for (int ci = 0; ci < d.cin; ++ci) {
    const double* inc = in + static_cast<long>(ci) * d.hin * d.win;
    const double* wc = w + (static_cast<long>(co) * d.cin + ci) * d.kh * d.kw;
    for (int kh = 0; kh < d.kh; ++kh) {
      const int ih = ih0 + kh;
      if (ih < 0 || ih >= d.hin) continue;
      const double* row = inc + static_cast<long>(ih) * d.win;
      const double* wrow = wc + static_cast<long>(kh) * d.kw;
      for (int kw = 0; kw < d.kw; ++kw) {
        const int iw = iw0 + kw;
        if (iw < 0 || iw >= d.win) continue;
        acc += row[iw] * wrow[kw];
      }
    }
  }
  return acc;
}

inline double conv2d_gin_at(const double* gout, const double* w, const Conv2dDims& d, int ci,
                            int ih, int iw) {
  const int hout = d.hout(), wout = d.wout();
  double acc = 0.0;
  for (int co = 0; co < d.cout; ++co) {
    const double* goc = gout + static_cast<long>(co) * hout * wout;
    const double* wc = w + (static_cast<long>(co) * d.cin + ci) * d.kh * d.kw;
    for (int kh = 0; kh < d.kh; ++kh) {
      const int num_h = ih + d.pad - kh;
      if (num_h < 0 || num_h % d.stride != 0) continue;
      const int oh = num_h / d.stride;
      if (oh >= hout) continue;
      for (int kw = 0; kw < d.kw; ++kw) {
        const int num_w = iw + d.pad - kw;
        if (num_w < 0 || num_w % d.stride != 0) continue;
        const int ow = num_w / d.stride;
        if (ow >= wout) continue;
        acc += goc[static_cast<long>(oh) * wout + ow] * wc[static_cast<long>(kh) * d.kw + kw];
      }
    }
  }
  return acc;
}

inline double conv2d_gw_at(const double* gout, const double* in, const Conv2dDims& d, int co,
                           int ci, int kh, int kw) {
  const int hout = d.hout(), wout = d.wout();
  const double* goc = gout + static_cast<long>(co) * hout * wout;
  const double* inc = in + static_cast<long>(ci) * d.hin * d.win;
  double acc = 0.0;
  for (int oh = 0; oh < hout; ++oh) {
    const int ih = oh * d.stride - d.pad + kh;
    if (ih < 0 || ih >= d.hin) continue;
    const double* row = inc + static_cast<long>(ih) * d.win;
    const double* gorow = goc + static_cast<long>(oh) * wout;
    for (int ow = 0; ow < wout; ++ow) {
      const int iw = ow * d.stride - d.pad + kw;
      if (iw < 0 || iw >= d.win) continue;
      acc += gorow[ow] * row[iw];
    }
  }
  return acc;
}

inline double conv1d_out_at(const double* in, const double* w, const double* b,
                            const Conv1dDims& d, int co, int t) {
  double acc = b ? b[co] : 0.0;
  for (int ci = 0; ci < d.cin; ++ci) {
    const double* inc = in + static_cast<long>(ci) * d.tin;
    const double* wc = w + (static_cast<long>(co) * d.cin + ci) * d.k;
    for (int j = 0; j < d.k; ++j) acc += inc[t + j * d.dil] * wc[j];
  }
  return acc;
}

inline double conv1d_gin_at(const double* gout, const double* w, const Conv1dDims& d, int ci,
                            int ti) {
  const int tout = d.tout();
  double acc = 0.0;
  for (int co = 0; co < d.cout; ++co) {
    const double* goc = gout + static_cast<long>(co) * tout;
    const double* wc = w + (static_cast<long>(co) * d.cin + ci) * d.k;
    for (int j = 0; j < d.k; ++j) {
      const int t = ti - j * d.dil;
      if (t < 0 || t >= tout) continue;
      acc += goc[t] * wc[j];
    }
  }
  return acc;
}

inline double conv1d_gw_at(const double* gout, const double* in, const Conv1dDims& d, int co,
                           int ci, int j) {
  const int tout = d.tout();
  const double* goc = gout + static_cast<long>(co) * tout;
  const double* inc = in + static_cast<long>(ci) * d.tin;
  double acc = 0.0;
  for (int t = 0; t < tout; ++t) acc += goc[t] * inc[t + j * d.dil];
  return acc;
}

inline double fc_out_at(const double* in, const double* w, const double* b, int din, int j) {
  double acc = b ? b[j] : 0.0;
  const double* wr = w + static_cast<long>(j) * din;
  for (int i = 0; i < din; ++i) acc += wr[i] * in[i];
  return acc;
}

inline double fc_gin_at(const double* gout, const double* w, int din, int dout, int i) {
  double acc = 0.0;
  for (int j = 0; j < dout; ++j) acc += gout[j] * w[static_cast<long>(j) * din + i];
  return acc;
}

}  // namespace asd::kernels::inner
