"""Dense multi-layer perceptron trained with mini-batch backprop and ADAM.

Plain numpy throughout so every gradient is inspectable and every run is
bit-reproducible from its seed. Hidden layers use the rectifier, the output
layer is linear during the forward pass and softmax-normalized inside the
cross-entropy loss.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..dataset import LabeledDataset
from ..errors import InvalidSpec, NonFiniteLoss, ShapeMismatch


@dataclass
class MlpConfig:
    """Architecture and optimizer settings.

    ``layer_widths`` lists every width from the input to the output layer, so
    it has at least three entries (one hidden layer minimum).
    """

    layer_widths: tuple[int, ...]
    hidden_activation: str = "relu"
    output_activation: str = "softmax"
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    epochs: int = 20
    batch_size: int = 64
    seed: int = 0

    def __post_init__(self):
        self.layer_widths = tuple(int(w) for w in self.layer_widths)
        if len(self.layer_widths) < 3:
            raise InvalidSpec("layer_widths needs input, >=1 hidden, and output entries")
        if any(w < 1 for w in self.layer_widths):
            raise InvalidSpec("all layer widths must be >= 1")
        if self.hidden_activation != "relu":
            raise InvalidSpec(f"unsupported hidden activation {self.hidden_activation!r}")
        if self.output_activation != "softmax":
            raise InvalidSpec(f"unsupported output activation {self.output_activation!r}")
        if not self.learning_rate > 0:
            raise InvalidSpec("learning_rate must be positive")
        if not (0 < self.beta1 < 1 and 0 < self.beta2 < 1):
            raise InvalidSpec("beta1 and beta2 must lie in (0, 1)")
        if self.epochs < 0 or self.batch_size < 1:
            raise InvalidSpec("epochs must be >= 0 and batch_size >= 1")


@dataclass
class MlpModel:
    """Trained (or freshly initialized) MLP parameters plus training history."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]
    config: MlpConfig
    training_history: list[dict] = field(default_factory=list)

    @property
    def layer_widths(self) -> tuple[int, ...]:
        return self.config.layer_widths

    @property
    def n_hidden(self) -> int:
        return len(self.weights) - 1


def _init_params(cfg: MlpConfig) -> tuple[list[np.ndarray], list[np.ndarray]]:
    # Uniform(-c, c) with c = sqrt(6 / fan_in); biases start at zero.
    rng = np.random.default_rng(cfg.seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(cfg.layer_widths[:-1], cfg.layer_widths[1:]):
        c = np.sqrt(6.0 / fan_in)
        weights.append(rng.uniform(-c, c, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def _forward(model: MlpModel, x: np.ndarray) -> list[np.ndarray]:
    """All layer activations: input, post-relu hiddens, final logits."""
    acts = [x]
    h = x
    last = len(model.weights) - 1
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = h @ w + b
        h = z if i == last else np.maximum(z, 0.0)
        acts.append(h)
    return acts


def _check_input(model: MlpModel, data: LabeledDataset) -> None:
    if data.n_dims != model.layer_widths[0]:
        raise ShapeMismatch(
            f"model expects {model.layer_widths[0]} input features, data has {data.n_dims}"
        )


def cross_entropy_loss(model: MlpModel, x: np.ndarray, labels: np.ndarray) -> float:
    """Mean categorical cross-entropy of the softmax outputs."""
    logits = _forward(model, x)[-1]
    probs = _softmax(logits)
    picked = probs[np.arange(x.shape[0]), labels]
    return float(-np.mean(np.log(np.maximum(picked, 1e-300))))


def loss_and_gradients(
    model: MlpModel, x: np.ndarray, labels: np.ndarray
) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    """Loss plus exact gradients for every weight matrix and bias vector."""
    acts = _forward(model, x)
    logits = acts[-1]
    probs = _softmax(logits)
    n = x.shape[0]
    picked = probs[np.arange(n), labels]
    loss = float(-np.mean(np.log(np.maximum(picked, 1e-300))))

    delta = probs.copy()
    delta[np.arange(n), labels] -= 1.0
    delta /= n

    grads_w: list[np.ndarray] = [None] * len(model.weights)
    grads_b: list[np.ndarray] = [None] * len(model.biases)
    for i in range(len(model.weights) - 1, -1, -1):
        grads_w[i] = acts[i].T @ delta
        grads_b[i] = delta.sum(axis=0)
        if i > 0:
            delta = (delta @ model.weights[i].T) * (acts[i] > 0.0)
    return loss, grads_w, grads_b


def mlp_train(cfg: MlpConfig, train: LabeledDataset) -> MlpModel:
    """Train by mini-batch backprop with the ADAM update rule.

    Every label must index a valid output unit. Per-epoch mean batch loss and
    full-train accuracy are recorded in the model's history. The run is fully
    determined by ``cfg.seed``. A non-finite batch loss aborts training.
    """
    if train.n_dims != cfg.layer_widths[0]:
        raise ShapeMismatch(
            f"input width {cfg.layer_widths[0]} != data dimension {train.n_dims}"
        )
    out_width = cfg.layer_widths[-1]
    if int(train.labels.max()) >= out_width:
        raise ShapeMismatch(
            f"label {int(train.labels.max())} out of range for output width {out_width}"
        )

    weights, biases = _init_params(cfg)
    model = MlpModel(weights=weights, biases=biases, config=cfg)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(cfg.seed, 1)))

    m_w = [np.zeros_like(w) for w in weights]
    v_w = [np.zeros_like(w) for w in weights]
    m_b = [np.zeros_like(b) for b in biases]
    v_b = [np.zeros_like(b) for b in biases]
    step = 0

    x, y = train.points, train.labels
    n = x.shape[0]
    for epoch in range(cfg.epochs):
        order = rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, cfg.batch_size):
            batch = order[start : start + cfg.batch_size]
            loss, gw, gb = loss_and_gradients(model, x[batch], y[batch])
            if not np.isfinite(loss):
                raise NonFiniteLoss(f"loss diverged at epoch {epoch}")
            epoch_loss += loss * batch.size
            step += 1
            bc1 = 1.0 - cfg.beta1**step
            bc2 = 1.0 - cfg.beta2**step
            for i in range(len(weights)):
                for params, grads, m, v in (
                    (weights[i], gw[i], m_w[i], v_w[i]),
                    (biases[i], gb[i], m_b[i], v_b[i]),
                ):
                    m *= cfg.beta1
                    m += (1.0 - cfg.beta1) * grads
                    v *= cfg.beta2
                    v += (1.0 - cfg.beta2) * grads**2
                    params -= cfg.learning_rate * (m / bc1) / (np.sqrt(v / bc2) + cfg.epsilon)
        model.training_history.append(
            {
                "epoch": epoch,
                "loss": epoch_loss / n,
                "accuracy": mlp_accuracy(model, train),
            }
        )
    return model


def mlp_layer_activations(model: MlpModel, inputs: LabeledDataset) -> list[LabeledDataset]:
    """Per-layer datasets: the raw input, each post-relu hidden layer, and
    the pre-softmax output, all carrying the input labels."""
    _check_input(model, inputs)
    acts = _forward(model, inputs.points)
    return [inputs.with_points(a) for a in acts]


def mlp_predict(model: MlpModel, inputs: LabeledDataset) -> np.ndarray:
    """Predicted class ids (argmax of the logits; ties go to the lowest id)."""
    _check_input(model, inputs)
    logits = _forward(model, inputs.points)[-1]
    return np.argmax(logits, axis=1)


def mlp_accuracy(model: MlpModel, test: LabeledDataset) -> float:
    """Fraction of points whose predicted class matches the label."""
    return float(np.mean(mlp_predict(model, test) == test.labels))
