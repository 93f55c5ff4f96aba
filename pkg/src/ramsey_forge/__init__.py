"""Simulation and verification toolkit for online Ramsey path games."""
from .board import BLUE, RED, Color, ColoredGraph
from .engine import GameConfig, GameState, Status, Transcript, Variant, replay, run_game

__version__ = "0.1.0"

__all__ = ["BLUE", "RED", "Color", "ColoredGraph", "GameConfig", "GameState", "Status",
           "Transcript", "Variant", "replay", "run_game", "__version__"]
