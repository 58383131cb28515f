#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace isrl {

class Tape;

// Dense N-d value. Copies share the underlying buffer; buffers are immutable
// by convention once an op has consumed them (parameter updates happen only
// between tapes). A tensor is "tracked" when it refers to a node on some tape.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<int> shape, double fill = 0.0);
    Tensor(std::vector<int> shape, std::vector<double> values);

    static Tensor scalar(double v) { return Tensor({1}, {v}); }
    static Tensor zeros_like(const Tensor& t) { return Tensor(t.shape(), 0.0); }

    bool defined() const { return static_cast<bool>(data_); }
    const std::vector<int>& shape() const { return shape_; }
    std::size_t size() const { return data_ ? data_->size() : 0; }

    const std::vector<double>& data() const { return *data_; }
    /// Mutable access for optimizer updates; only valid between tapes.
    std::vector<double>& mutable_data() { return *data_; }

    /// Value of a scalar (size-1) tensor.
    double value() const;

    bool tracked() const { return node_ >= 0; }
    int node() const { return node_; }
    std::uint64_t tape_serial() const { return tape_serial_; }

    /// Untracked view of the same buffer.
    Tensor detached() const;

    void bind(const Tape& tape, int node);

private:
    std::vector<int> shape_;
    std::shared_ptr<std::vector<double>> data_;
    int node_ = -1;
    std::uint64_t tape_serial_ = 0;
};

enum class OpKind : std::uint8_t {
    Leaf, Add, Sub, Mul, Neg, Scale, AddConst, Exp, Log, Tanh, Relu, Reciprocal,
    ScalarMul, SumAll, RowSum, BroadcastCol, ColSum, RowBroadcast, ChannelSum,
    ChannelBroadcast, MatMul, Transpose2, Reshape, ConcatCols, SliceCols,
    SliceChan, EmbedChan, Im2Col, Col2Im, ConvPack, ConvUnpack, Upsample2x,
    PoolSum2x, FdDx, FdDy, FdDxAdj, FdDyAdj, SpectralMul, Interp, Splat,
    InterpPosGrad,
};

// Ordered record of primitive operations. Backward closures are written in
// terms of the same tensor ops, so a backward pass can itself be recorded
// (create_graph) to differentiate through a gradient.
class Tape {
public:
    using BackwardFn = std::function<std::vector<Tensor>(const Tensor& adj)>;

    Tape();
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    std::uint64_t serial() const { return serial_; }
    std::size_t size() const { return nodes_.size(); }

    /// Registers the tensor's buffer as a leaf; returns a tracked handle.
    Tensor watch(const Tensor& t);

    int record(OpKind kind, std::vector<int> inputs);
    void set_backward(int node, BackwardFn fn);

    // Reverse-mode gradients of a scalar loss w.r.t. each tensor in `wrt`
    // (all must be tracked on this tape; unreachable ones yield zeros and a
    // false flag in `reached`). With create_graph the adjoint computations
    // are recorded on this tape, which must be active on the calling thread.
    std::vector<Tensor> gradients(const Tensor& loss, const std::vector<Tensor>& wrt,
                                  bool create_graph = false,
                                  std::vector<bool>* reached = nullptr);

private:
    struct Node {
        OpKind kind;
        std::vector<int> inputs;
        BackwardFn backward;
    };
    std::vector<Node> nodes_;
    std::uint64_t serial_;
};

/// Makes a tape the active recording target for the current thread.
class TapeScope {
public:
    explicit TapeScope(Tape& tape);
    ~TapeScope();
    TapeScope(const TapeScope&) = delete;

private:
    Tape* previous_;
};

/// Temporarily disables recording on the current thread.
class NoGradScope {
public:
    NoGradScope();
    ~NoGradScope();
    NoGradScope(const NoGradScope&) = delete;

private:
    bool previous_;
};

/// Active tape if recording is enabled on this thread, else nullptr.
Tape* recording_tape();

} // namespace isrl
