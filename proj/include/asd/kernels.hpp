// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace asd::kernels {

// Dims for NCHW single-sample conv2d, zero padding, square stride.
struct Conv2dDims {
  int cin, hin, win;
  int cout, kh, kw;
  int stride = 1;
  int pad = 0;

  int hout() const { return (hin + 2 * pad - kh) / stride + 1; }
  int wout() const { return (win + 2 * pad - kw) / stride + 1; }
};

// Dims for 1-d valid convolution (the causal layers pad on the caller side).
struct Conv1dDims {
  int cin, tin;
  int cout, k;
  int dil = 1;

  int tout() const { return tin - (k - 1) * dil; }
};

// Serial reference implementations.
namespace serial {
void conv2d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv2dDims& d);
void conv2d_backward_input(const double* gout, const double* w, double* gin,
                           const Conv2dDims& d);
void conv2d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv2dDims& d);
void conv1d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv1dDims& d);
void conv1d_backward_input(const double* gout, const double* w, double* gin,
                           const Conv1dDims& d);
void conv1d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv1dDims& d);
void fc_forward(const double* in, const double* w, const double* b, double* out, int din,
                int dout);
void fc_backward_input(const double* gout, const double* w, double* gin, int din, int dout);
void fc_backward_params(const double* gout, const double* in, double* gw, double* gb, int din,
                        int dout);
}  // namespace serial

// OpenMP implementations. Each output element is produced by exactly one
// iteration with the same inner accumulation order as the serial kernels,
// so results are bit-identical regardless of thread count.
namespace par {
void conv2d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv2dDims& d);
void conv2d_backward_input(const double* gout, const double* w, double* gin,
                           const Conv2dDims& d);
void conv2d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv2dDims& d);
void conv1d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv1dDims& d);
void conv1d_backward_input(const double* gout, const double* w, double* gin,
                           const Conv1dDims& d);
void conv1d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv1dDims& d);
void fc_forward(const double* in, const double* w, const double* b, double* out, int din,
                int dout);
void fc_backward_input(const double* gout, const double* w, double* gin, int din, int dout);
void fc_backward_params(const double* gout, const double* in, double* gw, double* gb, int din,
                        int dout);
}  // namespace par

// Process-wide switch the dispatch functions below honor; tests flip it to
// run both paths, everything else leaves it on.
void set_parallel(bool enabled);
bool parallel_enabled();

void conv2d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv2dDims& d);
void conv2d_backward_input(const double* gout, const double* w, double* gin, const Conv2dDims& d);
void conv2d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv2dDims& d);
void conv1d_forward(const double* in, const double* w, const double* b, double* out,
                    const Conv1dDims& d);
void conv1d_backward_input(const double* gout, const double* w, double* gin, const Conv1dDims& d);
void conv1d_backward_params(const double* gout, const double* in, double* gw, double* gb,
                            const Conv1dDims& d);
void fc_forward(const double* in, const double* w, const double* b, double* out, int din,
                int dout);
void fc_backward_input(const double* gout, const double* w, double* gin, int din, int dout);
void fc_backward_params(const double* gout, const double* in, double* gw, double* gb, int din,
                        int dout);

}  // namespace asd::kernels
