from .tensor import (
    Tape,
    Tensor,
    add,
    backward,
    clip,
    concat_cols,
    concat_rows,
    div,
    exp,
    log_softmax_rows,
    matmul,
    mean_all,
    mul,
    neg,
    relu,
    scale,
    sigmoid,
    slice_cols,
    softmax_rows,
    sqrt,
    sub,
    sum_all,
    sum_rows,
    take_per_row,
    tanh,
    transpose,
)
from .layers import (
    Linear,
    LSTMCell,
    ParameterStore,
    concat_features,
    linear_forward,
    one_hot,
    uniform_init,
)
from .optim import adam_update, clip_global_norm

__all__ = [
    "Tape",
    "Tensor",
    "add",
    "backward",
    "clip",
    "concat_cols",
    "concat_rows",
    "div",
    "exp",
    "log_softmax_rows",
    "matmul",
    "mean_all",
    "mul",
    "neg",
    "relu",
    "scale",
    "sigmoid",
    "slice_cols",
    "softmax_rows",
    "sqrt",
    "sub",
    "sum_all",
    "sum_rows",
    "take_per_row",
    "tanh",
    "transpose",
    "Linear",
    "LSTMCell",
    "ParameterStore",
    "concat_features",
    "linear_forward",
    "one_hot",
    "uniform_init",
    "adam_update",
    "clip_global_norm",
]
