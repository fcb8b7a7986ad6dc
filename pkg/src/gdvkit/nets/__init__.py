"""From-scratch reference networks whose layer activations feed the metric."""

from .mlp import (
    MlpConfig,
    MlpModel,
    cross_entropy_loss,
    loss_and_gradients,
    mlp_accuracy,
    mlp_layer_activations,
    mlp_train,
)
from .dbn import (
    DbnModel,
    PrototypeImage,
    RbmParams,
    dbn_layer_datasets,
    dbn_layer_representation,
    dbn_train_greedy,
    prototype_reconstruct,
    rbm_train_cd,
)
from .checkpoint import load_model, save_model

__all__ = [
    "MlpConfig",
    "MlpModel",
    "cross_entropy_loss",
    "loss_and_gradients",
    "mlp_accuracy",
    "mlp_layer_activations",
    "mlp_train",
    "DbnModel",
    "PrototypeImage",
    "RbmParams",
    "dbn_layer_datasets",
    "dbn_layer_representation",
    "dbn_train_greedy",
    "prototype_reconstruct",
    "rbm_train_cd",
    "load_model",
    "save_model",
]
