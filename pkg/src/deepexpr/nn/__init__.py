"""From-scratch dense neural-network engine."""

from .activations import apply_activation, relu, sigmoid, softmax
from .gradcheck import gradient_check
from .losses import classification_cross_entropy, reconstruction_cross_entropy
from .network import (
    DenseLayer,
    DenseNetwork,
    ForwardRecord,
    backward,
    forward,
    init_glorot,
    load_network,
    network_from_dict,
    network_to_dict,
    save_network,
)
from .optim import Adam, SGD, TrainConfig, make_optimizer
from .train import TrainHistory, evaluate_loss, train_network

__all__ = [
    "Adam",
    "DenseLayer",
    "DenseNetwork",
    "ForwardRecord",
    "SGD",
    "TrainConfig",
    "TrainHistory",
    "apply_activation",
    "backward",
    "classification_cross_entropy",
    "evaluate_loss",
    "forward",
    "gradient_check",
    "init_glorot",
    "load_network",
    "make_optimizer",
    "network_from_dict",
    "network_to_dict",
    "reconstruction_cross_entropy",
    "relu",
    "save_network",
    "sigmoid",
    "softmax",
    "train_network",
]
