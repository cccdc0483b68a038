"""From-scratch LSTM and GRU networks with exact BPTT, softmax readout,
categorical cross-entropy, Adam, and the twin stopping criteria.

Gate weights are stored stacked (all gates in one matrix) so a layer's input
projection is a single matmul over the whole sequence; per-gate matrices are
exposed as views into the stacks.  Everything is float64: the gradient checks
compare BPTT against central finite differences at 1e-4 relative error.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit as sigmoid

PROB_FLOOR = 1e-12


class ShapeError(ValueError):
    pass


class NumericOverflowError(FloatingPointError):
    pass


# ---------------------------------------------------------------------------
# Parameters


@dataclass
class LstmParams:
    """Stacked LSTM weights; gate order i, f, o, c."""

    W: np.ndarray  # (4u, d)
    R: np.ndarray  # (4u, u)
    b: np.ndarray  # (4u,)

    @property
    def units(self) -> int:
        return self.R.shape[1]

    def _w(self, g):
        u = self.units
        return self.W[g * u : (g + 1) * u]

    def _r(self, g):
        u = self.units
        return self.R[g * u : (g + 1) * u]

    def _b(self, g):
        u = self.units
        return self.b[g * u : (g + 1) * u]

    W_i = property(lambda s: s._w(0))
    W_f = property(lambda s: s._w(1))
    W_o = property(lambda s: s._w(2))
    W_c = property(lambda s: s._w(3))
    R_i = property(lambda s: s._r(0))
    R_f = property(lambda s: s._r(1))
    R_o = property(lambda s: s._r(2))
    R_c = property(lambda s: s._r(3))
    b_i = property(lambda s: s._b(0))
    b_f = property(lambda s: s._b(1))
    b_o = property(lambda s: s._b(2))
    b_c = property(lambda s: s._b(3))

    def arrays(self):
        return [self.W, self.R, self.b]


@dataclass
class GruParams:
    """Stacked GRU weights; gate order u, r, then candidate h."""

    W: np.ndarray     # (3u, d)
    R_ur: np.ndarray  # (2u, u)
    R_h: np.ndarray   # (u, u)
    b: np.ndarray     # (3u,)

    @property
    def units(self) -> int:
        return self.R_h.shape[1]

    def _w(self, g):
        u = self.units
        return self.W[g * u : (g + 1) * u]

    def _b(self, g):
        u = self.units
        return self.b[g * u : (g + 1) * u]

    W_u = property(lambda s: s._w(0))
    W_r = property(lambda s: s._w(1))
    W_h = property(lambda s: s._w(2))
    R_u = property(lambda s: s.R_ur[: s.units])
    R_r = property(lambda s: s.R_ur[s.units :])
    b_u = property(lambda s: s._b(0))
    b_r = property(lambda s: s._b(1))
    b_h = property(lambda s: s._b(2))

    def arrays(self):
        return [self.W, self.R_ur, self.R_h, self.b]


@dataclass
class ReadoutParams:
    W_y: np.ndarray  # (p, u)
    b_y: np.ndarray  # (p,)

    def arrays(self):
        return [self.W_y, self.b_y]


@dataclass
class CellState:
    h: np.ndarray
    C: np.ndarray | None = None


@dataclass
class NetworkParams:
    cell_kind: str  # "lstm" | "gru"
    cells: list
    readout: ReadoutParams

    @property
    def layers(self) -> int:
        return len(self.cells)

    @property
    def units(self) -> int:
        return self.cells[0].units

    @property
    def input_size(self) -> int:
        return self.cells[0].W.shape[1]

    def arrays(self):
        out = []
        for c in self.cells:
            out.extend(c.arrays())
        out.extend(self.readout.arrays())
        return out

    def parameter_count(self) -> int:
        return sum(a.size for a in self.arrays())


def _glorot(rng, rows, cols):
    limit = np.sqrt(6.0 / (rows + cols))
    return rng.uniform(-limit, limit, size=(rows, cols))


def init_network(cell_kind: str, layers: int, units: int, input_size: int,
                 seed: int = 0) -> NetworkParams:
    """Glorot-uniform gate matrices, zero biases, seeded."""
    if cell_kind not in ("lstm", "gru"):
        raise ValueError(f"unknown cell kind {cell_kind!r}")
    rng = np.random.default_rng(seed)
    cells = []
    d = input_size
    for _ in range(layers):
        if cell_kind == "lstm":
            W = np.vstack([_glorot(rng, units, d) for _ in range(4)])
            R = np.vstack([_glorot(rng, units, units) for _ in range(4)])
            cells.append(LstmParams(W=W, R=R, b=np.zeros(4 * units)))
        else:
            W = np.vstack([_glorot(rng, units, d) for _ in range(3)])
            R_ur = np.vstack([_glorot(rng, units, units) for _ in range(2)])
            R_h = _glorot(rng, units, units)
            cells.append(GruParams(W=W, R_ur=R_ur, R_h=R_h, b=np.zeros(3 * units)))
        d = units
    readout = ReadoutParams(
        W_y=_glorot(rng, input_size, units), b_y=np.zeros(input_size)
    )
    return NetworkParams(cell_kind=cell_kind, cells=cells, readout=readout)


def zeros_like_params(net: NetworkParams):
    return [np.zeros_like(a) for a in net.arrays()]


# ---------------------------------------------------------------------------
# Single-step cells (spec surface; the training path uses the batched kernels)


def lstm_step(x_t: np.ndarray, state: CellState, params: LstmParams):
    u = params.units
    if x_t.shape[-1] != params.W.shape[1]:
        raise ShapeError(f"input size {x_t.shape[-1]} != {params.W.shape[1]}")
    z = params.W @ x_t + params.R @ state.h + params.b
    i, f, o = sigmoid(z[:u]), sigmoid(z[u : 2 * u]), sigmoid(z[2 * u : 3 * u])
    g = np.tanh(z[3 * u :])
    C = f * state.C + i * g
    h = o * np.tanh(C)
    if not (np.all(np.isfinite(h)) and np.all(np.isfinite(C))):
        raise NumericOverflowError("non-finite LSTM state")
    return CellState(h=h, C=C), h


def gru_step(x_t: np.ndarray, state: CellState, params: GruParams):
    u = params.units
    if x_t.shape[-1] != params.W.shape[1]:
        raise ShapeError(f"input size {x_t.shape[-1]} != {params.W.shape[1]}")
    zur = params.W[: 2 * u] @ x_t + params.R_ur @ state.h + params.b[: 2 * u]
    ug, r = sigmoid(zur[:u]), sigmoid(zur[u:])
    zh = params.W[2 * u :] @ x_t + params.R_h @ (r * state.h) + params.b[2 * u :]
    hcand = np.tanh(zh)
    h = (1.0 - ug) * state.h + ug * hcand
    if not np.all(np.isfinite(h)):
        raise NumericOverflowError("non-finite GRU state")
    return CellState(h=h), h


def initial_state(params) -> CellState:
    u = params.units
    if isinstance(params, LstmParams):
        return CellState(h=np.zeros(u), C=np.zeros(u))
    return CellState(h=np.zeros(u))


# ---------------------------------------------------------------------------
# Batched forward / backward over sequences


def _lstm_forward_layer(X: np.ndarray, p: LstmParams):
    """X: (B, n, d) -> H: (B, n, u) plus the caches BPTT needs."""
    B, n, d = X.shape
    u = p.units
    XW = X.reshape(B * n, d) @ p.W.T
    XW = XW.reshape(B, n, 4 * u) + p.b
    H = np.empty((B, n, u))
    cache = {"i": np.empty((B, n, u)), "f": np.empty((B, n, u)),
             "o": np.empty((B, n, u)), "g": np.empty((B, n, u)),
             "tC": np.empty((B, n, u)), "Cprev": np.empty((B, n, u)),
             "Hprev": np.empty((B, n, u))}
    h = np.zeros((B, u))
    C = np.zeros((B, u))
    for t in range(n):
        z = XW[:, t] + h @ p.R.T
        i = sigmoid(z[:, :u])
        f = sigmoid(z[:, u : 2 * u])
        o = sigmoid(z[:, 2 * u : 3 * u])
        g = np.tanh(z[:, 3 * u :])
        cache["Hprev"][:, t] = h
        cache["Cprev"][:, t] = C
        C = f * C + i * g
        tC = np.tanh(C)
        h = o * tC
        cache["i"][:, t] = i
        cache["f"][:, t] = f
        cache["o"][:, t] = o
        cache["g"][:, t] = g
        cache["tC"][:, t] = tC
        H[:, t] = h
    return H, cache


def _lstm_backward_layer(X, p: LstmParams, cache, dH):
    """dH: per-step upstream gradients (B, n, u).  Returns (dW, dR, db, dX)."""
    B, n, d = X.shape
    u = p.units
    i, f, o, g = cache["i"], cache["f"], cache["o"], cache["g"]
    tC, Cprev, Hprev = cache["tC"], cache["Cprev"], cache["Hprev"]
    dZ = np.empty((B, n, 4 * u))
    dh = np.zeros((B, u))
    dC = np.zeros((B, u))
    for t in range(n - 1, -1, -1):
        dh = dh + dH[:, t]
        it, ft, ot, gt, tCt = i[:, t], f[:, t], o[:, t], g[:, t], tC[:, t]
        dC = dC + dh * ot * (1.0 - tCt * tCt)
        do = dh * tCt
        di = dC * gt
        dg = dC * it
        df = dC * Cprev[:, t]
        dzt = dZ[:, t]
        dzt[:, :u] = di * it * (1.0 - it)
        dzt[:, u : 2 * u] = df * ft * (1.0 - ft)
        dzt[:, 2 * u : 3 * u] = do * ot * (1.0 - ot)
        dzt[:, 3 * u :] = dg * (1.0 - gt * gt)
        dh = dzt @ p.R
        dC = dC * ft
    flatZ = dZ.reshape(B * n, 4 * u)
    dW = flatZ.T @ X.reshape(B * n, d)
    dR = flatZ.T @ Hprev.reshape(B * n, u)
    db = flatZ.sum(axis=0)
    dX = (flatZ @ p.W).reshape(B, n, d)
    return [dW, dR, db], dX


def _gru_forward_layer(X: np.ndarray, p: GruParams):
    B, n, d = X.shape
    u = p.units
    XW = X.reshape(B * n, d) @ p.W.T
    XW = XW.reshape(B, n, 3 * u) + p.b
    H = np.empty((B, n, u))
    cache = {"u": np.empty((B, n, u)), "r": np.empty((B, n, u)),
             "hc": np.empty((B, n, u)), "Hprev": np.empty((B, n, u)),
             "rh": np.empty((B, n, u))}
    h = np.zeros((B, u))
    for t in range(n):
        zur = XW[:, t, : 2 * u] + h @ p.R_ur.T
        ug = sigmoid(zur[:, :u])
        r = sigmoid(zur[:, u:])
        rh = r * h
        hc = np.tanh(XW[:, t, 2 * u :] + rh @ p.R_h.T)
        cache["Hprev"][:, t] = h
        h = (1.0 - ug) * h + ug * hc
        cache["u"][:, t] = ug
        cache["r"][:, t] = r
        cache["hc"][:, t] = hc
        cache["rh"][:, t] = rh
        H[:, t] = h
    return H, cache


def _gru_backward_layer(X, p: GruParams, cache, dH):
    B, n, d = X.shape
    u = p.units
    ug, r, hc = cache["u"], cache["r"], cache["hc"]
    Hprev, rh = cache["Hprev"], cache["rh"]
    dZ = np.empty((B, n, 3 * u))
    dh = np.zeros((B, u))
    for t in range(n - 1, -1, -1):
        dh = dh + dH[:, t]
        ut, rt, hct, hpt = ug[:, t], r[:, t], hc[:, t], Hprev[:, t]
        du = dh * (hct - hpt)
        dzh = dh * ut * (1.0 - hct * hct)
        da = dzh @ p.R_h
        dr = da * hpt
        dzu = du * ut * (1.0 - ut)
        dzr = dr * rt * (1.0 - rt)
        dzt = dZ[:, t]
        dzt[:, :u] = dzu
        dzt[:, u : 2 * u] = dzr
        dzt[:, 2 * u :] = dzh
        dh = dh * (1.0 - ut) + da * rt + np.concatenate([dzu, dzr], axis=1) @ p.R_ur
    flatZ = dZ.reshape(B * n, 3 * u)
    dW = flatZ.T @ X.reshape(B * n, d)
    dR_ur = flatZ[:, : 2 * u].T @ Hprev.reshape(B * n, u)
    dR_h = flatZ[:, 2 * u :].T @ rh.reshape(B * n, u)
    db = flatZ.sum(axis=0)
    dX = (flatZ @ p.W).reshape(B, n, d)
    return [dW, dR_ur, dR_h, db], dX


def _forward_all(net: NetworkParams, X: np.ndarray):
    """Run every layer over the sequence; returns (probs, layer caches)."""
    inp = X
    caches = []
    for cell in net.cells:
        if net.cell_kind == "lstm":
            H, cache = _lstm_forward_layer(inp, cell)
        else:
            H, cache = _gru_forward_layer(inp, cell)
        caches.append((inp, cache))
        inp = H
    h_final = inp[:, -1]
    logits = h_final @ net.readout.W_y.T + net.readout.b_y
    logits -= logits.max(axis=1, keepdims=True)
    e = np.exp(logits)
    probs = e / e.sum(axis=1, keepdims=True)
    return probs, caches, h_final


def forward_sequence(net: NetworkParams, X_window: np.ndarray) -> np.ndarray:
    """Probability vector over the alphabet for one (n, p) window."""
    if X_window.ndim != 2 or X_window.shape[1] != net.input_size:
        raise ShapeError(
            f"window shape {X_window.shape} incompatible with input size {net.input_size}"
        )
    probs, _, _ = _forward_all(net, X_window[None])
    return probs[0]


def forward_batch(net: NetworkParams, X: np.ndarray) -> np.ndarray:
    probs, _, _ = _forward_all(net, X)
    return probs


def loss_and_accuracy(net: NetworkParams, X: np.ndarray, y: np.ndarray):
    """Mean categorical cross-entropy and argmax accuracy."""
    if len(X) == 0:
        raise ValueError("empty evaluation set")
    probs = forward_batch(net, X)
    true_p = np.clip((probs * y).sum(axis=1), PROB_FLOOR, 1.0)
    loss = float(-np.log(true_p).mean())
    acc = float((probs.argmax(axis=1) == y.argmax(axis=1)).mean())
    return loss, acc


def backward_batch(net: NetworkParams, X: np.ndarray, y: np.ndarray):
    """Gradients of the mean cross-entropy over the batch, exact BPTT.

    Returns (grads, loss) with grads ordered as NetworkParams.arrays().
    """
    B, n, _ = X.shape
    probs, caches, h_final = _forward_all(net, X)
    true_p = np.clip((probs * y).sum(axis=1), PROB_FLOOR, 1.0)
    loss = float(-np.log(true_p).mean())
    dlogits = (probs - y) / B
    dW_y = dlogits.T @ h_final
    db_y = dlogits.sum(axis=0)
    dh_final = dlogits @ net.readout.W_y
    u = net.units
    dH = np.zeros((B, n, u))
    dH[:, -1] = dh_final
    cell_grads = [None] * net.layers
    for k in range(net.layers - 1, -1, -1):
        inp, cache = caches[k]
        if net.cell_kind == "lstm":
            g, dX = _lstm_backward_layer(inp, net.cells[k], cache, dH)
        else:
            g, dX = _gru_backward_layer(inp, net.cells[k], cache, dH)
        cell_grads[k] = g
        dH = dX
    grads = []
    for g in cell_grads:
        grads.extend(g)
    grads.extend([dW_y, db_y])
    for g in grads:
        if not np.all(np.isfinite(g)):
            raise NumericOverflowError("non-finite gradient")
    return grads, loss


# ---------------------------------------------------------------------------
# Adam


@dataclass
class AdamState:
    m: list
    v: list
    t: int = 0

    @classmethod
    def for_network(cls, net: NetworkParams) -> "AdamState":
        return cls(m=zeros_like_params(net), v=zeros_like_params(net))


def adam_step(params: list, grads: list, state: AdamState, lr: float,
              beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
    """In-place Adam update with bias-corrected moments."""
    state.t += 1
    t = state.t
    c1 = 1.0 - beta1 ** t
    c2 = 1.0 - beta2 ** t
    for p, g, m, v in zip(params, grads, state.m, state.v):
        if p.shape != g.shape:
            raise ShapeError(f"grad shape {g.shape} != param shape {p.shape}")
        m *= beta1
        m += (1.0 - beta1) * g
        v *= beta2
        v += (1.0 - beta2) * g * g
        p -= lr * (m / c1) / (np.sqrt(v / c2) + eps)


# ---------------------------------------------------------------------------
# Training loop


@dataclass(frozen=True)
class TrainConfig:
    cell_kind: str
    units: int
    learning_rate: float
    layers: int = 1
    max_epochs: int = 999
    stop_rule: str = "loss"  # "loss" (<= 0.1) | "accuracy" (>= 0.99)
    batch_size: int = 32
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    init_seed: int = 0

    def __post_init__(self):
        if self.cell_kind not in ("lstm", "gru"):
            raise ValueError(f"unknown cell kind {self.cell_kind!r}")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")
        if self.stop_rule not in ("loss", "accuracy"):
            raise ValueError(f"unknown stop rule {self.stop_rule!r}")


LOSS_THRESHOLD = 0.1
ACCURACY_THRESHOLD = 0.99


@dataclass
class TrainReport:
    epochs_run: int
    stop_reason: str  # "criterion-met" | "epoch-cap"
    final_loss: float
    final_accuracy: float
    wall_seconds: float
    loss_curve: list = field(default_factory=list)
    accuracy_curve: list = field(default_factory=list)


def train(dataset, config: TrainConfig):
    """Mini-batch Adam with epoch-end evaluation on the test split.

    Stops when the configured criterion fires on the test split or at the
    epoch cap, whichever first.  Falls back to the training split for the
    stopping check only if the test split is empty.
    """
    X_train, y_train = dataset.X_train, dataset.y_train
    if len(X_train) == 0:
        raise ValueError("empty training set")
    if len(dataset.X_test) > 0:
        X_eval, y_eval = dataset.X_test, dataset.y_test
    else:
        X_eval, y_eval = X_train, y_train
    p = dataset.alphabet.size
    net = init_network(config.cell_kind, config.layers, config.units, p,
                       seed=config.init_seed)
    adam = AdamState.for_network(net)
    params = net.arrays()
    shuffle_rng = np.random.default_rng(np.random.SeedSequence([config.init_seed, 1]))
    start = time.perf_counter()
    loss_curve, acc_curve = [], []
    stop_reason = "epoch-cap"
    epochs_run = 0
    for _ in range(config.max_epochs):
        order = shuffle_rng.permutation(len(X_train))
        for lo in range(0, len(order), config.batch_size):
            idx = order[lo : lo + config.batch_size]
            grads, _ = backward_batch(net, X_train[idx], y_train[idx])
            adam_step(params, grads, adam, config.learning_rate,
                      config.beta1, config.beta2, config.eps)
        epochs_run += 1
        loss, acc = loss_and_accuracy(net, X_eval, y_eval)
        loss_curve.append(loss)
        acc_curve.append(acc)
        if config.stop_rule == "loss" and loss <= LOSS_THRESHOLD:
            stop_reason = "criterion-met"
            break
        if config.stop_rule == "accuracy" and acc >= ACCURACY_THRESHOLD:
            stop_reason = "criterion-met"
            break
    wall = time.perf_counter() - start
    report = TrainReport(
        epochs_run=epochs_run,
        stop_reason=stop_reason,
        final_loss=loss_curve[-1],
        final_accuracy=acc_curve[-1],
        wall_seconds=wall,
        loss_curve=loss_curve,
        accuracy_curve=acc_curve,
    )
    return net, report
