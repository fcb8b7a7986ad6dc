"""Restricted Boltzmann machines, greedy deep belief stacks, and prototype
reconstruction by reverse propagation.

Units are Boltzmann neurons: the total input of unit i is
``z_i = b_i + sum_j w_ij y_j`` and it turns on with probability
``p_i = 1 / (1 + exp(-z_i))``. Training is contrastive divergence: hidden
states are sampled when driven by data, while reconstructions use
probabilities, with the final negative-phase statistics taken on
probabilities (the usual low-variance choice).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from ..dataset import LabeledDataset
from ..errors import (
    InvalidInput,
    InvalidSpec,
    LayerOutOfRange,
    NoClassImages,
    ShapeMismatch,
)


@dataclass
class RbmParams:
    """One RBM: weights are (hidden, visible); biases per unit.

    ``reconstruction_errors`` records the per-epoch mean squared one-step
    reconstruction error observed during training.
    """

    weights: np.ndarray
    visible_bias: np.ndarray
    hidden_bias: np.ndarray
    reconstruction_errors: list[float] = field(default_factory=list)

    @property
    def n_visible(self) -> int:
        return self.weights.shape[1]

    @property
    def n_hidden(self) -> int:
        return self.weights.shape[0]


@dataclass
class DbnModel:
    """Stack of RBMs; each hidden layer is the next RBM's visible layer."""

    rbms: list[RbmParams]

    def __post_init__(self):
        for lower, upper in zip(self.rbms, self.rbms[1:]):
            if lower.n_hidden != upper.n_visible:
                raise ShapeMismatch(
                    f"RBM chain broken: hidden width {lower.n_hidden} feeds "
                    f"visible width {upper.n_visible}"
                )

    @property
    def depth(self) -> int:
        return len(self.rbms)

    @property
    def layer_widths(self) -> tuple[int, ...]:
        return (self.rbms[0].n_visible,) + tuple(r.n_hidden for r in self.rbms)


@dataclass
class PrototypeImage:
    """Dreamed 28x28 input pattern for one class at one layer."""

    image: np.ndarray
    class_id: int
    layer_index: int

    def __post_init__(self):
        self.image = np.asarray(self.image, dtype=np.float64)
        if self.image.shape != (28, 28):
            raise ShapeMismatch(f"prototype must be 28x28, got {self.image.shape}")
        self.image = np.clip(self.image, 0.0, 1.0)


def hidden_probabilities(rbm: RbmParams, visible: np.ndarray) -> np.ndarray:
    """p(h=1 | v) for each hidden unit, rows = samples."""
    return expit(visible @ rbm.weights.T + rbm.hidden_bias)


def visible_probabilities(rbm: RbmParams, hidden: np.ndarray) -> np.ndarray:
    """p(v=1 | h) through the transposed weights."""
    return expit(hidden @ rbm.weights + rbm.visible_bias)


def rbm_train_cd(
    visible_width: int,
    hidden_width: int,
    data: np.ndarray,
    epochs: int,
    learning_rate: float,
    cd_steps: int = 1,
    seed: int = 0,
    batch_size: int = 32,
) -> RbmParams:
    """Train one RBM with CD-k on rows of ``data`` (values in [0, 1]).

    Positive statistics use sampled hidden states; the chain then alternates
    probability-valued visible reconstructions with sampled hidden states,
    and the final step uses hidden probabilities. Fully determined by
    ``seed``; weights start Gaussian with standard deviation 0.01, biases at
    zero.
    """
    if visible_width < 1 or hidden_width < 1:
        raise InvalidSpec("widths must be >= 1")
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 2 or data.shape[1] != visible_width:
        raise ShapeMismatch(
            f"data must be (n, {visible_width}), got shape {data.shape}"
        )
    if data.min() < 0.0 or data.max() > 1.0:
        raise InvalidInput("data values must lie in [0, 1]")
    if cd_steps < 1 or epochs < 0 or batch_size < 1:
        raise InvalidSpec("cd_steps >= 1, epochs >= 0, batch_size >= 1 required")

    rng = np.random.default_rng(seed)
    rbm = RbmParams(
        weights=rng.normal(0.0, 0.01, size=(hidden_width, visible_width)),
        visible_bias=np.zeros(visible_width),
        hidden_bias=np.zeros(hidden_width),
    )

    n = data.shape[0]
    for _ in range(epochs):
        order = rng.permutation(n)
        sq_err = 0.0
        for start in range(0, n, batch_size):
            v0 = data[order[start : start + batch_size]]
            b = v0.shape[0]
            h0_prob = hidden_probabilities(rbm, v0)
            h0_sample = (rng.random(h0_prob.shape) < h0_prob).astype(np.float64)

            h = h0_sample
            for step in range(cd_steps):
                vk = visible_probabilities(rbm, h)
                hk_prob = hidden_probabilities(rbm, vk)
                if step < cd_steps - 1:
                    h = (rng.random(hk_prob.shape) < hk_prob).astype(np.float64)

            pos = h0_sample.T @ v0
            neg = hk_prob.T @ vk
            rbm.weights += learning_rate * (pos - neg) / b
            rbm.visible_bias += learning_rate * (v0 - vk).mean(axis=0)
            rbm.hidden_bias += learning_rate * (h0_sample - hk_prob).mean(axis=0)
            sq_err += float(((v0 - vk) ** 2).sum())
        rbm.reconstruction_errors.append(sq_err / (n * visible_width))
    return rbm


def dbn_train_greedy(
    layer_widths,
    data: np.ndarray,
    epochs: int | list[int],
    learning_rate: float,
    seed: int = 0,
    cd_steps: int = 1,
    batch_size: int = 32,
) -> DbnModel:
    """Greedy layer-wise training: each RBM learns on the previous layer's
    deterministic hidden probabilities.

    ``layer_widths`` runs from the visible width through every hidden width;
    ``epochs`` is shared or given per layer. Each layer's CD run re-seeds the
    generator from ``seed``, so a one-layer stack equals a single RBM run
    bit for bit.
    """
    widths = [int(w) for w in layer_widths]
    if len(widths) < 2:
        raise InvalidSpec("need at least visible and one hidden width")
    n_layers = len(widths) - 1
    per_layer = [int(epochs)] * n_layers if np.isscalar(epochs) else [int(e) for e in epochs]
    if len(per_layer) != n_layers:
        raise InvalidSpec(f"need one epoch count per layer ({n_layers}), got {len(per_layer)}")

    rbms = []
    rep = np.asarray(data, dtype=np.float64)
    for i in range(n_layers):
        rbm = rbm_train_cd(
            widths[i],
            widths[i + 1],
            rep,
            per_layer[i],
            learning_rate,
            cd_steps=cd_steps,
            seed=seed,
            batch_size=batch_size,
        )
        rbms.append(rbm)
        rep = hidden_probabilities(rbm, rep)
    return DbnModel(rbms=rbms)


def dbn_layer_representation(
    model: DbnModel, inputs: LabeledDataset, layer_index: int
) -> LabeledDataset:
    """Deterministic upward pass to one layer; index 0 returns the inputs."""
    if not 0 <= layer_index <= model.depth:
        raise LayerOutOfRange(
            f"layer {layer_index} out of range for depth {model.depth}"
        )
    if layer_index == 0:
        return inputs
    if inputs.n_dims != model.rbms[0].n_visible:
        raise ShapeMismatch(
            f"model expects {model.rbms[0].n_visible} inputs, data has {inputs.n_dims}"
        )
    rep = inputs.points
    for rbm in model.rbms[:layer_index]:
        rep = hidden_probabilities(rbm, rep)
    return inputs.with_points(rep)


def dbn_layer_datasets(model: DbnModel, inputs: LabeledDataset) -> list[LabeledDataset]:
    """Representations at every layer, 0 through depth, in one upward sweep."""
    if inputs.n_dims != model.rbms[0].n_visible:
        raise ShapeMismatch(
            f"model expects {model.rbms[0].n_visible} inputs, data has {inputs.n_dims}"
        )
    out = [inputs]
    rep = inputs.points
    for rbm in model.rbms:
        rep = hidden_probabilities(rbm, rep)
        out.append(inputs.with_points(rep))
    return out


def sparsify_top_fraction(activations: np.ndarray, fraction: float = 0.1) -> np.ndarray:
    """Winner-takes-all per row: the ceil(fraction * width) most active units
    become 1, the rest 0. Ties favor the lowest unit index."""
    width = activations.shape[1]
    keep = int(np.ceil(fraction * width))
    order = np.argsort(-activations, axis=1, kind="stable")
    binary = np.zeros_like(activations)
    rows = np.arange(activations.shape[0])[:, None]
    binary[rows, order[:, :keep]] = 1.0
    return binary


def prototype_reconstruct(
    model: DbnModel, layer_index: int, class_id: int, test_set: LabeledDataset
) -> PrototypeImage:
    """Dream the prototypical input for one class as seen from one layer.

    Each class image is propagated up to the layer, sparsified to its ten
    percent most active units, and propagated back down through the
    transposed weights with logistic units. The per-image reconstructions
    are averaged and min-max normalized to [0, 1].

    At layer 0 no sparsification is defined; the plain normalized class mean
    is returned.
    """
    if not 0 <= layer_index <= model.depth:
        raise LayerOutOfRange(
            f"layer {layer_index} out of range for depth {model.depth}"
        )
    if test_set.n_dims != 784:
        raise ShapeMismatch(
            f"prototype reconstruction expects 28x28 inputs (784), got {test_set.n_dims}"
        )
    rows = test_set.class_indices(class_id)
    if rows.size == 0:
        raise NoClassImages(f"no images of class {class_id} in the probe set")
    images = test_set.points[rows]

    if layer_index == 0:
        mean = images.mean(axis=0)
    else:
        rep = images
        for rbm in model.rbms[:layer_index]:
            rep = hidden_probabilities(rbm, rep)
        down = sparsify_top_fraction(rep, 0.1)
        for rbm in reversed(model.rbms[:layer_index]):
            down = visible_probabilities(rbm, down)
        mean = down.mean(axis=0)

    lo, hi = float(mean.min()), float(mean.max())
    if hi > lo:
        mean = (mean - lo) / (hi - lo)
    else:
        mean = np.zeros_like(mean)
    return PrototypeImage(image=mean.reshape(28, 28), class_id=class_id, layer_index=layer_index)
