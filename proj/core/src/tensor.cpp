#include "isrl/tensor.hpp"

#include <atomic>

#include "isrl/errors.hpp"
#include "isrl/ops.hpp"

namespace isrl {

namespace {

std::size_t shape_numel(const std::vector<int>& shape) {
    std::size_t n = 1;
    for (int d : shape) {
        if (d <= 0) throw DimensionError("Tensor: nonpositive dimension");
        n *= std::size_t(d);
    }
    return n;
}

thread_local Tape* g_active_tape = nullptr;
thread_local bool g_recording = true;

std::uint64_t next_serial() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

} // namespace

Tensor::Tensor(std::vector<int> shape, double fill)
    : shape_(std::move(shape)),
      data_(std::make_shared<std::vector<double>>(shape_numel(shape_), fill)) {}

Tensor::Tensor(std::vector<int> shape, std::vector<double> values)
    : shape_(std::move(shape)),
      data_(std::make_shared<std::vector<double>>(std::move(values))) {
    if (data_->size() != shape_numel(shape_))
        throw DimensionError("Tensor: data length does not match shape");
}

double Tensor::value() const {
    if (size() != 1) throw StructuralError("Tensor::value: tensor is not scalar");
    return (*data_)[0];
}

Tensor Tensor::detached() const {
    Tensor t = *this;
    t.node_ = -1;
    t.tape_serial_ = 0;
    return t;
}

void Tensor::bind(const Tape& tape, int node) {
    node_ = node;
    tape_serial_ = tape.serial();
}

Tape::Tape() : serial_(next_serial()) {}

Tensor Tape::watch(const Tensor& t) {
    Tensor tracked = t.detached();
    tracked.bind(*this, record(OpKind::Leaf, {}));
    return tracked;
}

int Tape::record(OpKind kind, std::vector<int> inputs) {
    nodes_.push_back(Node{kind, std::move(inputs), nullptr});
    return int(nodes_.size()) - 1;
}

void Tape::set_backward(int node, BackwardFn fn) {
    nodes_[std::size_t(node)].backward = std::move(fn);
}

std::vector<Tensor> Tape::gradients(const Tensor& loss, const std::vector<Tensor>& wrt,
                                    bool create_graph, std::vector<bool>* reached) {
    if (loss.size() != 1)
        throw StructuralError("gradients: loss must be a scalar");
    if (!loss.tracked() || loss.tape_serial() != serial_)
        throw StructuralError("gradients: loss is not on this tape");
    for (const Tensor& w : wrt)
        if (!w.tracked() || w.tape_serial() != serial_)
            throw StructuralError("gradients: requested tensor not on tape");

    std::vector<Tensor> adjoint(std::size_t(loss.node()) + 1);
    adjoint[std::size_t(loss.node())] = Tensor::scalar(1.0);

    auto sweep = [&] {
        for (int i = loss.node(); i >= 0; --i) {
            const Node& node = nodes_[std::size_t(i)];
            if (!adjoint[std::size_t(i)].defined() || !node.backward) continue;
            std::vector<Tensor> grads = node.backward(adjoint[std::size_t(i)]);
            for (std::size_t j = 0; j < node.inputs.size(); ++j) {
                const int id = node.inputs[j];
                if (id < 0) continue;
                Tensor& slot = adjoint[std::size_t(id)];
                slot = slot.defined() ? add(slot, grads[j]) : grads[j];
            }
        }
    };

    if (create_graph) {
        if (recording_tape() != this)
            throw StructuralError("gradients: create_graph requires this tape active");
        sweep();
    } else {
        NoGradScope no_grad;
        sweep();
    }

    std::vector<Tensor> out;
    out.reserve(wrt.size());
    if (reached) reached->assign(wrt.size(), false);
    for (std::size_t i = 0; i < wrt.size(); ++i) {
        Tensor& slot = adjoint[std::size_t(wrt[i].node())];
        if (slot.defined()) {
            if (reached) (*reached)[i] = true;
            out.push_back(slot);
        } else {
            out.push_back(Tensor::zeros_like(wrt[i]));
        }
    }
    return out;
}

TapeScope::TapeScope(Tape& tape) : previous_(g_active_tape) { g_active_tape = &tape; }
TapeScope::~TapeScope() { g_active_tape = previous_; }

NoGradScope::NoGradScope() : previous_(g_recording) { g_recording = false; }
NoGradScope::~NoGradScope() { g_recording = previous_; }

Tape* recording_tape() { return g_recording ? g_active_tape : nullptr; }

} // namespace isrl
