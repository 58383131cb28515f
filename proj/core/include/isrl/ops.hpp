#pragma once

#include <functional>
#include <vector>

#include "isrl/metric.hpp"
#include "isrl/tensor.hpp"

// Differentiable tensor operations. Each primitive's backward is itself
// expressed with these ops, so backward passes can be recorded
// (Tape::gradients with create_graph) and differentiated again.

namespace isrl {

// elementwise; shapes must match exactly
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor neg(const Tensor& a);

Tensor scale(const Tensor& a, double c);
Tensor add_const(const Tensor& a, double c);

Tensor exp(const Tensor& a);
Tensor log(const Tensor& a);
Tensor tanh(const Tensor& a);
Tensor relu(const Tensor& a);
Tensor reciprocal(const Tensor& a);

/// s is a size-1 tensor; broadcast multiply.
Tensor scalar_mul(const Tensor& s, const Tensor& a);

Tensor sum_all(const Tensor& a);                      // -> [1]
Tensor row_sum(const Tensor& a);                      // [N,M] -> [N,1]
Tensor broadcast_col(const Tensor& c, int m);         // [N,1] -> [N,M]
Tensor col_sum(const Tensor& a);                      // [N,M] -> [M]
Tensor row_broadcast(const Tensor& b, int n);         // [M] -> [N,M]
Tensor channel_sum(const Tensor& a);                  // [N,C,H,W] -> [C]
Tensor channel_broadcast(const Tensor& b, int n, int h, int w); // [C] -> [N,C,H,W]

Tensor matmul(const Tensor& a, const Tensor& b);      // [M,K]x[K,P] -> [M,P]
Tensor transpose2(const Tensor& a);                   // [M,N] -> [N,M]
Tensor reshape(const Tensor& a, std::vector<int> shape);
Tensor concat_cols(const Tensor& a, const Tensor& b); // [N,Fa],[N,Fb] -> [N,Fa+Fb]
Tensor slice_cols(const Tensor& a, int lo, int hi);   // [N,F] -> [N,hi-lo]
Tensor slice_chan(const Tensor& a, int c);            // [C,H,W] -> [H,W]
Tensor embed_chan(const Tensor& a, int c, int channels); // [H,W] -> [C,H,W], zeros elsewhere

// convolution building blocks
Tensor im2col(const Tensor& x, int k, int stride, int pad);  // [N,C,H,W] -> [C*k*k, N*Ho*Wo]
Tensor col2im(const Tensor& cols, int n, int c, int h, int w, int k, int stride, int pad);
Tensor conv_pack(const Tensor& y, int n, int ho, int wo);    // [Co,N*L] -> [N,Co,Ho,Wo]
Tensor conv_unpack(const Tensor& y4);                        // [N,Co,Ho,Wo] -> [Co,N*L]
Tensor upsample2x(const Tensor& x);                          // [N,C,H,W] -> [N,C,2H,2W]
Tensor poolsum2x(const Tensor& x);                           // [N,C,2H,2W] -> [N,C,H,W]

// grid primitives on [H,W] planes
Tensor fd_dx(const Tensor& f);
Tensor fd_dy(const Tensor& f);
Tensor fd_dx_adj(const Tensor& f);
Tensor fd_dy_adj(const Tensor& f);

/// Component-wise Sobolev metric in the frequency domain; self-adjoint, so
/// its backward is the same multiply.
Tensor spectral_mul(const Tensor& f, const MetricOperator& op, bool inverse);

/// Bilinear sampling of plane f at absolute coordinates (px, py), clamped to
/// the domain. Differentiable w.r.t. f (exactly) and the positions
/// (clamp subgradient: zero where coordinates leave the domain). Second-order
/// differentiation through the position path is rejected with
/// StructuralError.
Tensor interp(const Tensor& f, const Tensor& px, const Tensor& py);

/// Adjoint scatter of interp w.r.t. the field.
Tensor splat(const Tensor& a, const Tensor& px, const Tensor& py, int h, int w);

// composites
Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int stride, int pad);
Tensor linear(const Tensor& x, const Tensor& w, const Tensor& b); // x[N,F], w[O,F], b[O]

/// Mean over rows of softmax cross-entropy; targets are one-hot constants.
Tensor softmax_cross_entropy(const Tensor& logits, const Tensor& onehot);

/// Row-wise softmax probabilities of a plain logits matrix (no recording).
std::vector<double> softmax_rows(const Tensor& logits);

/// Gradient of (d loss / d probe)^2 w.r.t. each parameter, with the scalar
/// probe initialized to 1.0 and fed to the loss builder. Throws
/// StructuralError when the probe does not reach the loss.
std::vector<Tensor> grad_of_grad(const std::function<Tensor(const Tensor& probe)>& build_loss,
                                 std::vector<Tensor>& params);

} // namespace isrl
