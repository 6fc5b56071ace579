"""Online boosting for binary streams with bandit-scheduled probability
calibration: an OnlineBoost ensemble, online Platt scaling, UCB/Thompson
policies deciding train-vs-calibrate per minibatch, and a prequential
evaluation harness."""

from .bandits import Action, BanditState
from .boosting import Ensemble
from .calibration import Calibrator
from .harness import StreamConfig, run_experiment
from .learners import WeakLearner
from .rng import RngStream
from .scheduler import Orchestrator, PolicySpec
from .types import Example, Minibatch, Prediction

__all__ = [
    "Action",
    "BanditState",
    "Calibrator",
    "Ensemble",
    "Example",
    "Minibatch",
    "Orchestrator",
    "PolicySpec",
    "Prediction",
    "RngStream",
    "StreamConfig",
    "WeakLearner",
    "run_experiment",
]

__version__ = "0.1.0"
