// SPDX-License-Identifier: Apache-2.0
#include "kernels_inner.hpp"

namespace asd::kernels::serial {

using namespace asd::kernels::inner;

void conv2d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv2dDims& d) {
  const int hout = d.hout(), wout = d.wout();
  for (int co = 0; co < d.cout; ++co)
    for (int oh = 0; oh < hout; ++oh)
      for (int ow = 0; ow < wout; ++ow)
        out[(static_cast<long>(co) * hout + oh) * wout + ow] = conv2d_out_at(in, w, b, d, co, oh, ow);
}

void conv2d_backward_input(const double* gout, const double* w, double* gin, const Conv2dDims& d) {
  for (int ci = 0; ci < d.cin; ++ci)
    for (int ih = 0; ih < d.hin; ++ih)
      for (int iw = 0; iw < d.win; ++iw)
        gin[(static_cast<long>(ci) * d.hin + ih) * d.win + iw] += conv2d_gin_at(gout, w, d, ci, ih, iw);
}

void conv2d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv2dDims& d) {
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
  for (int co = 0; co < d.cout; ++co)
    for (int t = 0; t < tout; ++t)
      out[static_cast<long>(co) * tout + t] = conv1d_out_at(in, w, b, d, co, t);
}

void conv1d_backward_input(const double* gout, const double* w, double* gin, const Conv1dDims& d) {
  for (int ci = 0; ci < d.cin; ++ci)
    for (int ti = 0; ti < d.tin; ++ti)
      gin[static_cast<long>(ci) * d.tin + ti] += conv1d_gin_at(gout, w, d, ci, ti);
}

void conv1d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv1dDims& d) {
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
  for (int j = 0; j < dout; ++j) out[j] = fc_out_at(in, w, b, din, j);
}

void fc_backward_input(const double* gout, const double* w, double* gin, int din, int dout) {
  for (int i = 0; i < din; ++i) gin[i] += fc_gin_at(gout, w, din, dout, i);
}

void fc_backward_params(const double* gout, const double* in, double* gw, double* gb, int din,
                        int dout) {
  for (int j = 0; j < dout; ++j) {
    double g = gout[j];
    double* wr = gw + static_cast<long>(j) * din;
    for (int i = 0; i < din; ++i) wr[i] += g * in[i];
    gb[j] += g;
  }
}

}  // namespace asd::kernels::serial
